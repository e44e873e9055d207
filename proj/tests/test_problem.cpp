#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "detkit/errors.hpp"
#include "detkit/problem.hpp"

using namespace detkit;

namespace {

ParseError capture(const std::string& text) {
    try {
        parse_problem(text);
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("expected a ParseError");
    return ParseError("unreachable");
}

} // namespace

TEST_CASE("minimal problem file") {
    auto p = parse_problem("vars: x y\nideal: x*y - t^2\n");
    REQUIRE(p.ctx);
    CHECK(p.ctx->vars == std::vector<std::string>{"x", "y"});
    REQUIRE(p.ideal.size() == 1);
    CHECK(p.ideal[0] == Poly::parse("x*y - t^2", p.ctx));
    CHECK_FALSE(p.perturbed.has_value());
    CHECK_FALSE(p.k.has_value());
    CHECK_FALSE(p.divisor.has_value());
    CHECK_FALSE(p.box.has_value());
}

TEST_CASE("full problem file with comments and loose whitespace") {
    const std::string text =
        "# a degenerating family\n"
        "vars: x y w   # fibre variables\n"
        "\n"
        "ideal: x*y - w^2*t\n"
        "perturbed: x*y - w^2*t + t^9*w^9*x\n"
        "k: 9\n"
        "divisor: w\n"
        "r: 9\n"
        "cap: 32\n"
        "order: 12\n"
        "box: 4,4\n";
    auto p = parse_problem(text);
    CHECK(p.ctx->vars.size() == 3);
    REQUIRE(p.perturbed.has_value());
    CHECK(p.perturbed->size() == 1);
    CHECK(p.k == 9u);
    REQUIRE(p.divisor.has_value());
    CHECK(p.divisor->first == 2);
    CHECK(p.divisor->second == 9);
    CHECK(p.cap == 32u);
    CHECK(p.order == 12u);
    CHECK(p.box == std::pair<std::uint32_t, std::uint32_t>{4, 4});
}

TEST_CASE("empty ideal and multiple generators") {
    auto none = parse_problem("vars: x y\nideal:\n");
    CHECK(none.ideal.empty());
    auto two = parse_problem("vars: x y z\nideal: x*y, x*z\n");
    CHECK(two.ideal.size() == 2);
}

TEST_CASE("render and parse are inverse on canonical specs") {
    for (const char* text : {
             "vars: x y\nideal: x*y - t^2\n",
             "vars: x y\nideal: x*y - t^2\nperturbed: x*y - t^2 - t^9\nk: 9\n",
             "vars: x y w\nideal: x*y - w^2*t\ndivisor: w\nr: 9\ncap: 16\n",
             "vars: z1\nideal: z1 - t\norder: 8\nbox: 4,4\n",
         }) {
        auto p = parse_problem(text);
        CHECK(parse_problem(render_problem(p)) == p);
    }
}

TEST_CASE("parse errors carry one-based positions") {
    auto e = capture("vars: x y\nfoo: 1\n");
    CHECK(e.line == 2);
    CHECK(e.col == 1);

    e = capture("vars: x y\nideal: x*y - q\n");
    CHECK(e.line == 2);
    CHECK(e.col == 14); // points at the undeclared variable

    e = capture("vars: x y\nideal: x\nideal: y\n");
    CHECK(e.line == 3);

    e = capture("vars: x y\nideal x*y\n");
    CHECK(e.line == 2);
}

TEST_CASE("structural invariants are enforced") {
    // the base parameter cannot be redeclared
    CHECK_THROWS_AS(parse_problem("vars: x t\nideal: x\n"), ParseError);
    CHECK_THROWS_AS(parse_problem("vars: x x\nideal: x\n"), ParseError);
    CHECK_THROWS_AS(parse_problem("vars: 2x\nideal: t\n"), ParseError);

    // perturbed needs k and matching arity
    CHECK_THROWS_AS(parse_problem("vars: x\nideal: x\nperturbed: x - t\n"), ParseError);
    CHECK_THROWS_AS(
        parse_problem("vars: x\nideal: x\nperturbed: x, x - t\nk: 1\n"), ParseError);

    // divisor and r come as a pair, naming a declared variable
    CHECK_THROWS_AS(parse_problem("vars: x w\nideal: x\ndivisor: w\n"), ParseError);
    CHECK_THROWS_AS(parse_problem("vars: x w\nideal: x\nr: 2\n"), ParseError);
    CHECK_THROWS_AS(
        parse_problem("vars: x w\nideal: x\ndivisor: q\nr: 2\n"), ParseError);

    // malformed scalars and boxes
    CHECK_THROWS_AS(parse_problem("vars: x\nideal: x\nk: soon\n"), ParseError);
    CHECK_THROWS_AS(parse_problem("vars: x\nideal: x\nbox: 4\n"), ParseError);
    CHECK_THROWS_AS(parse_problem("vars: x\nideal: x\nbox: 4,\n"), ParseError);
    CHECK_THROWS_AS(parse_problem("vars: x\nideal: x,,x\n"), ParseError);
    CHECK_THROWS_AS(parse_problem("vars: x\nideal: x,\n"), ParseError);
}
