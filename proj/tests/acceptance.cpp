// Acceptance gate: one line per criterion, nonzero exit when any fails.
// Library-level checks call the engine directly; exit-code checks go through
// the installed binary when DETKIT_BIN is set and fall back to the in-process
// dispatcher otherwise.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "detkit/lifting.hpp"
#include "detkit/oracle.hpp"
#include "detkit/report.hpp"

using namespace detkit;
using nlohmann::json;

namespace {

struct Outcome {
    bool ok = true;
    std::string why;
};

#define REQ(cond, msg)                     \
    do {                                   \
        if (!(cond)) return Outcome{false, msg}; \
    } while (0)

int g_file_counter = 0;

// Exit code of `detkit <command> <file>`; -1 when no binary is available.
int cli_exit(const std::string& command, const std::string& file_text) {
    const char* bin = std::getenv("DETKIT_BIN");
    if (!bin) return -1;
    auto path = std::filesystem::temp_directory_path() /
                ("detkit_accept_" + std::to_string(::getpid()) + "_" +
                 std::to_string(g_file_counter++) + ".detkit");
    {
        std::ofstream out(path);
        out << file_text;
    }
    std::string cmd = std::string("'") + bin + "' " + command + " '" + path.string() +
                      "' > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    std::filesystem::remove(path);
    if (rc == -1 || !WIFEXITED(rc)) return -2;
    return WEXITSTATUS(rc);
}

int exit_code_of(const std::string& command, const std::string& file_text) {
    int via_cli = cli_exit(command, file_text);
    int via_lib = run(command, file_text).exit_code;
    if (via_cli >= 0 && via_cli != via_lib) return -3; // binary and library disagree
    return via_lib;
}

Presentation nodal(std::uint32_t e, CtxPtr ctx = nullptr) {
    if (!ctx) ctx = make_ctx({"x", "y"});
    Poly f = Poly::var(ctx, 0) * Poly::var(ctx, 1) - Poly::t_power(ctx, e);
    return Presentation{ctx, {f}};
}

// 1. The order-two degeneration lifts from its threshold order 9 to order 16,
//    the certificate verifies, the published map stays within the identity
//    window t^5, and the closed-form change of coordinates passes the same
//    verifier.
Outcome criterion1() {
    auto ctx = make_ctx({"x", "y"});
    Poly x = Poly::var(ctx, 0), y = Poly::var(ctx, 1);
    Poly f = x * y - Poly::t_power(ctx, 2);
    Poly g = f - Poly::t_power(ctx, 9);

    auto rep = determinacy(Presentation{ctx, {f}}, 16);
    REQ(rep.N == 2 && rep.threshold_k == 9, "expected N = 2 with threshold 9");

    auto pair = make_family_pair(Presentation{ctx, {f}}, {g}, 9);
    auto lift = formal_lift(pair, 16);
    auto chk = verify_lift(lift);
    REQ(chk.ok, "engine lift rejected: " + chk.what);
    REQ(lift.N == 2 && lift.agreement_order == 5, "engine lift carries wrong bounds");
    for (std::size_t j = 0; j < 2; ++j) {
        Poly d = lift.map.images[j] - Poly::var(ctx, static_cast<std::uint32_t>(j));
        REQ(d.is_zero() || d.in_t_power(5), "published map leaves the t^5 window");
    }

    // closed form x -> (1 - t^7 + t^14) x, y -> y, written as a certificate
    Poly c = Poly::one(ctx) - Poly::t_power(ctx, 7) + Poly::t_power(ctx, 14);
    LiftCertificate manual;
    manual.pair = pair;
    manual.target_L = 16;
    manual.working_L = 21;
    manual.N = 2;
    manual.M = 0;
    manual.agreement_order = 5;
    manual.map = MapTruncation{ctx, {c * x, y}, 16};
    GenCert gc;
    gc.image = f.substitute(manual.map.images);
    gc.coeffs = {c};
    gc.cofactor = Poly::t_power(ctx, 7);
    manual.gen_certs = {gc};
    PreimageCert px;
    px.preimage = (Poly::one(ctx) + Poly::t_power(ctx, 7)) * x;
    px.image = px.preimage.substitute(manual.map.images);
    px.coeffs = {Poly::zero(ctx)};
    px.cofactor = Poly::t_power(ctx, 5) * x;
    PreimageCert py;
    py.preimage = y;
    py.image = y;
    py.coeffs = {Poly::zero(ctx)};
    py.cofactor = Poly::zero(ctx);
    manual.preimages = {px, py};
    auto chk2 = verify_lift(manual);
    REQ(chk2.ok, "closed-form certificate rejected: " + chk2.what);

    // both maps present the same ideal identification: their images agree
    // inside the window t^(k - 2N)
    for (std::size_t j = 0; j < 2; ++j) {
        Poly d = lift.map.images[j] - manual.map.images[j];
        REQ(d.is_zero() || d.in_t_power(5), "engine and closed form disagree below t^5");
    }
    return {};
}

// 2. The divisor degeneration has no pure-t bound (the CLI exits 1 under a
//    cap of 16 and the support test says no), while the divisor-refined
//    search certifies (N, M) = (1, 1) through t w in the annihilator.
Outcome criterion2() {
    auto ctx = make_ctx({"x", "y", "w"});
    Poly x = Poly::var(ctx, 0), y = Poly::var(ctx, 1), w = Poly::var(ctx, 2);
    Presentation pres{ctx, {x * y - w * w * Poly::t_power(ctx, 1)}};

    REQ(!t1_support_within(pres, {Poly::t_power(ctx, 1)}),
        "support unexpectedly confined to t = 0");

    const std::string file = "vars: x y w\nideal: x*y - w^2*t\ncap: 16\n";
    int rc = exit_code_of("bound", file);
    REQ(rc == 1, "bound should exit 1, got " + std::to_string(rc));

    auto rep = divisor_report(pres, 2, 16);
    REQ(rep.s0.N == 1 && rep.s0.M == 1, "s = 0 bound is not (1, 1)");
    REQ(rep.s1.N == 1 && rep.s1.M == 1, "s = 1 bound is not (1, 1)");
    REQ(rep.s0.cert.check() && rep.s1.cert.check(), "divisor certificates fail");
    REQ(rep.s0.cert.target == Poly::t_power(ctx, 1) * w, "certificate target is not t w");
    return {};
}

// 3. The boxed cotangent numbers agree with the main pipeline on the whole
//    suite at box (4, 4).
Outcome criterion3() {
    auto cxy = make_ctx({"x", "y"});
    auto cz = make_ctx({"z1"});
    auto cxyw = make_ctx({"x", "y", "w"});
    auto cxyz = make_ctx({"x", "y", "z"});
    std::vector<Presentation> suite = {
        Presentation{cxy, {}},
        Presentation{cz, {Poly::parse("z1 - t", cz)}},
        nodal(1),
        nodal(2),
        Presentation{cxyw, {Poly::parse("x*y - w^2*t", cxyw)}},
        Presentation{cxyz, {Poly::parse("x*y", cxyz), Poly::parse("x*z", cxyz)}},
    };
    TruncationBox box{4, 4};
    for (std::size_t i = 0; i < suite.size(); ++i) {
        std::size_t oracle_dim = truncated_t1_dimension(suite[i], box);
        std::size_t main_dim = truncated_dimension(t1(ls_complex(suite[i])), box);
        REQ(oracle_dim == main_dim,
            "case " + std::to_string(i) + ": oracle " + std::to_string(oracle_dim) +
                " vs main " + std::to_string(main_dim));
    }
    return {};
}

// 4. T2 vanishes for every complete intersection in the suite, in both the
//    main pipeline and the boxed computation.
Outcome criterion4() {
    auto cz = make_ctx({"z1"});
    auto cxyw = make_ctx({"x", "y", "w"});
    std::vector<Presentation> ci = {
        Presentation{make_ctx({"x", "y"}), {}},
        Presentation{cz, {Poly::parse("z1 - t", cz)}},
        nodal(1),
        nodal(2),
        Presentation{cxyw, {Poly::parse("x*y - w^2*t", cxyw)}},
    };
    for (std::size_t i = 0; i < ci.size(); ++i) {
        REQ(is_zero_module(t2(ls_complex(ci[i]))),
            "T2 not zero for complete intersection case " + std::to_string(i));
        REQ(truncated_t2_dimension(ci[i], {4, 4}) == 0,
            "boxed T2 not zero for case " + std::to_string(i));
    }
    return {};
}

// 5. Smooth members have vanishing T1 and determinacy bound N = 0.
Outcome criterion5() {
    auto cz = make_ctx({"z1"});
    std::vector<Presentation> smooth = {
        Presentation{make_ctx({"x", "y"}), {}},
        Presentation{cz, {Poly::parse("z1 - t", cz)}},
    };
    for (std::size_t i = 0; i < smooth.size(); ++i) {
        REQ(is_zero_module(t1(ls_complex(smooth[i]))),
            "T1 not zero for smooth case " + std::to_string(i));
        auto rep = determinacy(smooth[i], 16);
        REQ(rep.N == 0 && rep.threshold_k == 1,
            "N != 0 for smooth case " + std::to_string(i));
    }
    return {};
}

// 6. One hundred randomized hypersurface lifts all verify; maps from
//    successive targets agree inside the window t^(l - 2N).
Outcome criterion6() {
    std::mt19937_64 rng(20260815);
    for (int rep = 0; rep < 100; ++rep) {
        const bool three = rng() % 2 == 0;
        CtxPtr ctx = three ? make_ctx({"x", "y", "w"}) : make_ctx({"x", "y"});
        const std::uint32_t nv = three ? 3 : 2;
        const std::uint32_t a = 1 + static_cast<std::uint32_t>(rng() % 2);
        Poly f = Poly::var(ctx, 0) * Poly::var(ctx, 1) - Poly::t_power(ctx, a);

        const std::uint32_t k = 4 * a + 1 + static_cast<std::uint32_t>(rng() % 4);
        Poly pert = f;
        for (int terms = 0; terms < 2; ++terms) {
            Monomial m(nv);
            m.t = k + static_cast<std::uint32_t>(rng() % 3);
            m.z[rng() % nv] = static_cast<std::uint32_t>(rng() % 3);
            pert += Poly::term(ctx, m, Rational(static_cast<long>(rng() % 5) - 2));
        }
        const std::uint32_t L = k + 1 + static_cast<std::uint32_t>(rng() % 8);

        FamilyPair pair = make_family_pair(Presentation{ctx, {f}}, {pert}, k);
        auto lift = formal_lift(pair, L);
        auto chk = verify_lift(lift);
        REQ(chk.ok, "round " + std::to_string(rep) + ": " + chk.what);
        REQ(lift.N == a, "round " + std::to_string(rep) + ": wrong determinacy bound");

        // tower step: lifting further must not disturb the settled orders
        auto more = formal_lift(pair, L + 2);
        const std::uint32_t settle = L - 2 * lift.N;
        for (std::uint32_t j = 0; j < nv; ++j)
            REQ(lift.map.images[j].truncate_t(settle) ==
                    more.map.images[j].truncate_t(settle),
                "round " + std::to_string(rep) + ": tower step disagrees below t^" +
                    std::to_string(settle));
    }
    return {};
}

// 7. One hundred randomized approximate relations lift to exact ones.
Outcome criterion7() {
    std::mt19937_64 rng(815);
    auto ctx = make_ctx({"x", "y"});
    Poly x = Poly::var(ctx, 0), y = Poly::var(ctx, 1);

    auto rand_poly = [&](std::uint32_t tmax) {
        Poly p = Poly::zero(ctx);
        int terms = static_cast<int>(rng() % 3);
        for (int i = 0; i < terms; ++i) {
            Monomial m(2);
            m.t = static_cast<std::uint32_t>(rng() % (tmax + 1));
            m.z[0] = static_cast<std::uint32_t>(rng() % 3);
            m.z[1] = static_cast<std::uint32_t>(rng() % 2);
            p += Poly::term(ctx, m, Rational(static_cast<long>(rng() % 7) - 3));
        }
        return p;
    };

    for (int rep = 0; rep < 100; ++rep) {
        const std::uint32_t a = 1 + static_cast<std::uint32_t>(rng() % 2);
        Poly f = x * y - Poly::t_power(ctx, a);
        Poly h = rand_poly(2);
        if (h.is_zero()) h = Poly::one(ctx);
        Presentation pres{ctx, {f, h * f}};

        const std::uint32_t l = 2 + static_cast<std::uint32_t>(rng() % 4);
        Poly tl = Poly::t_power(ctx, l);
        std::vector<Poly> approx = {h + tl * rand_poly(2), -Poly::one(ctx) + tl * rand_poly(2)};

        auto exact = lift_relation(pres, approx, l);
        Poly z = exact[0] * pres.f[0] + exact[1] * pres.f[1];
        REQ(z.is_zero(), "round " + std::to_string(rep) + ": lifted relation is inexact");
        for (std::size_t i = 0; i < approx.size(); ++i) {
            Poly d = exact[i] - approx[i];
            REQ(d.is_zero() || d.in_t_power(l),
                "round " + std::to_string(rep) + ": correction below stated order");
        }
    }
    return {};
}

// 8. Base change to Q[t]/(t^L) preserves the truncated T1: forcing the
//    coefficients of the full computation into the quotient gives the same
//    boxed dimensions as re-presenting the family over the truncated ring.
Outcome criterion8() {
    auto cxyw = make_ctx({"x", "y", "w"});
    std::vector<Presentation> suite = {
        nodal(1), nodal(2), Presentation{cxyw, {Poly::parse("x*y - w^2*t", cxyw)}}};
    for (std::size_t i = 0; i < suite.size(); ++i) {
        for (std::uint32_t L : {4u, 6u}) {
            std::vector<Poly> coeff = suite[i].f;
            coeff.push_back(Poly::t_power(suite[i].ctx, L));
            auto before = t1(ls_complex(suite[i]), coeff);
            auto after = t1_truncated(suite[i], L);
            TruncationBox box{L, 3};
            std::size_t db = truncated_dimension(before, box);
            std::size_t da = truncated_dimension(after, box);
            REQ(db == da, "case " + std::to_string(i) + " at L = " + std::to_string(L) +
                              ": " + std::to_string(db) + " vs " + std::to_string(da));
        }
    }
    return {};
}

// 9. Emitted solution systems have residuals that vanish identically to the
//    published order, checked by exact re-expansion.
Outcome criterion9() {
    struct Case {
        FamilyPair pair;
        std::uint32_t L;
    };
    std::vector<Case> cases;

    auto cz = make_ctx({"z1"});
    Poly z = Poly::var(cz, 0);
    Presentation sm{cz, {z - Poly::t_power(cz, 1)}};
    cases.push_back({make_family_pair(sm, {sm.f[0] - Poly::t_power(cz, 6)}, 6), 16});

    auto n2 = nodal(2);
    cases.push_back(
        {make_family_pair(n2, {n2.f[0] - Poly::t_power(n2.ctx, 9)}, 9), 16});

    auto cxyw = make_ctx({"x", "y", "w"});
    Poly fw = Poly::parse("x*y - w^2*t", cxyw);
    Poly gw = fw + Poly::parse("t^9*w^9*x", cxyw);
    cases.push_back(
        {make_family_pair(Presentation{cxyw, {fw}}, {gw}, 9, DivisorDatum{2, 9}), 12});

    for (std::size_t ci = 0; ci < cases.size(); ++ci) {
        auto lift = formal_lift(cases[ci].pair, cases[ci].L);
        auto art = emit_artin_system(lift);
        REQ(art.order == cases[ci].L, "case " + std::to_string(ci) + ": wrong order");
        const auto& pres = cases[ci].pair.orig;
        for (std::size_t i = 0; i < pres.f.size(); ++i) {
            Poly lhs = pres.f[i].substitute(art.a_solution);
            for (std::size_t j = 0; j < cases[ci].pair.pert.size(); ++j)
                lhs -= art.b_solution[i][j] * cases[ci].pair.pert[j];
            Poly window = Poly::t_power(pres.ctx, art.order);
            REQ(lhs == window * art.residual_cofactors[i],
                "case " + std::to_string(ci) + ": residual identity fails");
            REQ(lhs.is_zero() || *lhs.t_order() >= art.order,
                "case " + std::to_string(ci) + ": residual visible below the order");
        }
    }
    return {};
}

// 10. Rerunning any command yields byte-identical results, certificates and
//     run hashes.
Outcome criterion10() {
    const std::string file =
        "vars: x y\nideal: x*y - t^2\nperturbed: x*y - t^2 - t^9\nk: 9\n";
    for (const char* cmd : {"t1", "t2", "bound", "support", "lift", "oracle",
                            "artin-system"}) {
        auto a = run(cmd, file);
        auto b = run(cmd, file);
        REQ(a.exit_code == 0, std::string(cmd) + " failed outright");
        auto ja = json::parse(a.json), jb = json::parse(b.json);
        REQ(ja["results"].dump() == jb["results"].dump(),
            std::string(cmd) + ": results sections differ between reruns");
        REQ(ja["certificates"].dump() == jb["certificates"].dump(),
            std::string(cmd) + ": certificate sections differ between reruns");
        REQ(ja["run_hash"] == jb["run_hash"], std::string(cmd) + ": run hashes differ");
    }
    return {};
}

struct Criterion {
    const char* label;
    std::function<Outcome()> fn;
    double budget_s;
};

} // namespace

int main() {
    const std::vector<Criterion> table = {
        {"threshold lift with closed-form cross-check", criterion1, 5.0},
        {"divisor family: no pure-t bound, (N, M) = (1, 1)", criterion2, 5.0},
        {"boxed T1 dimensions match the main pipeline", criterion3, 30.0},
        {"T2 vanishes for complete intersections", criterion4, 30.0},
        {"smooth members: T1 = 0 and N = 0", criterion5, 30.0},
        {"100 randomized lifts verify and form a tower", criterion6, 300.0},
        {"100 randomized relation lifts are exact", criterion7, 300.0},
        {"base change preserves truncated T1", criterion8, 60.0},
        {"solution-system residuals vanish to the published order", criterion9, 60.0},
        {"reruns are byte-identical", criterion10, 60.0},
    };

    int failures = 0;
    for (std::size_t i = 0; i < table.size(); ++i) {
        auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = table[i].fn();
        } catch (const std::exception& e) {
            out = {false, std::string("unexpected exception: ") + e.what()};
        }
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        if (out.ok && secs > table[i].budget_s) {
            out.ok = false;
            out.why = "over time budget";
        }
        std::printf("criterion %2zu: %s  %s (%.2fs)%s%s\n", i + 1,
                    out.ok ? "PASS" : "FAIL", table[i].label, secs,
                    out.ok ? "" : " -- ", out.ok ? "" : out.why.c_str());
        if (!out.ok) ++failures;
    }
    if (failures == 0)
        std::printf("acceptance: all %zu criteria passed\n", table.size());
    else
        std::printf("acceptance: %d criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
