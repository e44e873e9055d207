#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "detkit/linalg.hpp"

using namespace detkit;

namespace {

SparseVec sv(std::initializer_list<std::pair<std::uint32_t, long>> entries) {
    SparseVec v;
    for (const auto& [i, c] : entries) v.push(i, Rational(c));
    return v;
}

SparseVec combine(const SparseVec& expr, const std::vector<SparseVec>& fed) {
    SparseVec acc;
    for (const auto& [i, c] : expr.e) acc.add_scaled(fed[i], c);
    return acc;
}

} // namespace

TEST_CASE("add_scaled cancels exactly") {
    SparseVec a = sv({{0, 2}, {2, 3}});
    SparseVec b = sv({{0, 4}, {1, 6}});
    a.add_scaled(b, Rational(-1, 2));
    SparseVec want;
    want.push(1, Rational(-3));
    want.push(2, Rational(3));
    CHECK(a == want);

    a.scale(Rational(1, 3));
    SparseVec scaled;
    scaled.push(1, Rational(-1));
    scaled.push(2, Rational(1));
    CHECK(a == scaled);

    a.add_scaled(scaled, Rational(-1));
    CHECK(a.is_zero());
}

TEST_CASE("echelon rank and span membership") {
    Echelon E;
    CHECK(E.add(sv({{0, 1}, {1, 1}})));
    CHECK(E.add(sv({{1, 1}})));
    CHECK_FALSE(E.add(sv({{0, 2}, {1, 7}}))); // inside the span
    CHECK(E.rank() == 2);
    CHECK(E.contains(sv({{0, 5}}), nullptr));
    CHECK_FALSE(E.contains(sv({{2, 1}}), nullptr));
}

TEST_CASE("feed returns recombining kernel relations") {
    std::vector<SparseVec> fed = {sv({{0, 1}, {1, 1}}), sv({{0, 1}}), sv({{1, 1}})};
    Echelon E;
    CHECK_FALSE(E.feed(fed[0], 0).has_value());
    CHECK_FALSE(E.feed(fed[1], 1).has_value());
    auto rel = E.feed(fed[2], 2);
    REQUIRE(rel.has_value());
    CHECK_FALSE(rel->is_zero());
    CHECK(combine(*rel, fed).is_zero());
}

TEST_CASE("contains produces an exact witness over the fed family") {
    std::vector<SparseVec> fed = {sv({{0, 1}, {2, 1}}), sv({{1, 3}}), sv({{2, 2}})};
    Echelon E;
    for (std::uint32_t i = 0; i < fed.size(); ++i) E.feed(fed[i], i);

    SparseVec target = sv({{0, 2}, {1, 3}, {2, 5}}); // 2*f0 + f1 + 3/2*f2
    SparseVec w;
    REQUIRE(E.contains(target, &w));
    SparseVec back = combine(w, fed);
    back.add_scaled(target, Rational(-1));
    CHECK(back.is_zero());
}

TEST_CASE("reduce transcript reconstructs the subtracted combination") {
    std::vector<SparseVec> fed = {sv({{0, 1}, {1, 1}}), sv({{1, 1}, {2, 1}})};
    Echelon E;
    for (std::uint32_t i = 0; i < fed.size(); ++i) E.feed(fed[i], i);

    SparseVec v = sv({{0, 3}, {1, 4}, {2, 9}});
    SparseVec orig = v, expr;
    E.reduce(v, &expr);
    SparseVec rebuilt = combine(expr, fed);
    rebuilt.add_scaled(v, Rational(1));
    rebuilt.add_scaled(orig, Rational(-1));
    CHECK(rebuilt.is_zero());
}

TEST_CASE("kernel basis has the right dimension and recombines to zero") {
    // columns of a 2x3 matrix of rank 2
    std::vector<SparseVec> cols = {sv({{0, 1}}), sv({{1, 1}}), sv({{0, 1}, {1, 1}})};
    auto ker = kernel_basis(cols);
    REQUIRE(ker.size() == 1);
    CHECK(combine(ker[0], cols).is_zero());

    // independent columns: trivial kernel
    CHECK(kernel_basis({sv({{0, 1}}), sv({{1, 1}})}).empty());

    // zero column: unit relation
    auto k2 = kernel_basis({sv({{0, 1}}), SparseVec{}});
    REQUIRE(k2.size() == 1);
    CHECK(combine(k2[0], {sv({{0, 1}}), SparseVec{}}).is_zero());
}
