#include <benchmark/benchmark.h>

#include "detkit/determinacy.hpp"
#include "detkit/lifting.hpp"
#include "detkit/oracle.hpp"

using namespace detkit;

namespace {

Presentation nodal(std::uint32_t e) {
    auto ctx = make_ctx({"x", "y"});
    Poly f = Poly::var(ctx, 0) * Poly::var(ctx, 1) - Poly::t_power(ctx, e);
    return Presentation{ctx, {f}};
}

} // namespace

static void BM_GroebnerNodal(benchmark::State& state) {
    auto pres = nodal(static_cast<std::uint32_t>(state.range(0)));
    for (auto _ : state) {
        auto gb = buchberger_ideal(pres.f, pres.ord, pres.caps);
        benchmark::DoNotOptimize(gb.basis.size());
    }
}
BENCHMARK(BM_GroebnerNodal)->Arg(2)->Arg(4);

static void BM_T1Nodal(benchmark::State& state) {
    auto pres = nodal(static_cast<std::uint32_t>(state.range(0)));
    for (auto _ : state) {
        auto L = ls_complex(pres);
        auto m = t1(L);
        benchmark::DoNotOptimize(m.gens.size());
    }
}
BENCHMARK(BM_T1Nodal)->Arg(2)->Arg(4);

static void BM_Determinacy(benchmark::State& state) {
    auto pres = nodal(static_cast<std::uint32_t>(state.range(0)));
    for (auto _ : state) {
        auto rep = determinacy(pres, 16);
        benchmark::DoNotOptimize(rep.threshold_k);
    }
}
BENCHMARK(BM_Determinacy)->Arg(2)->Arg(3);

static void BM_FormalLift(benchmark::State& state) {
    auto pres = nodal(2);
    Poly pert = pres.f[0] - Poly::t_power(pres.ctx, 9);
    auto pair = make_family_pair(pres, {pert}, 9);
    for (auto _ : state) {
        auto cert = formal_lift(pair, static_cast<std::uint32_t>(state.range(0)));
        benchmark::DoNotOptimize(cert.gen_certs.size());
    }
}
BENCHMARK(BM_FormalLift)->Arg(16)->Arg(32);

static void BM_VerifyLift(benchmark::State& state) {
    auto pres = nodal(2);
    Poly pert = pres.f[0] - Poly::t_power(pres.ctx, 9);
    auto pair = make_family_pair(pres, {pert}, 9);
    auto cert = formal_lift(pair, 16);
    for (auto _ : state) {
        auto chk = verify_lift(cert);
        benchmark::DoNotOptimize(chk.ok);
    }
}
BENCHMARK(BM_VerifyLift);

static void BM_BoxedT1(benchmark::State& state) {
    auto pres = nodal(2);
    TruncationBox box{static_cast<std::uint32_t>(state.range(0)),
                      static_cast<std::uint32_t>(state.range(0))};
    for (auto _ : state) {
        auto d = truncated_t1_dimension(pres, box);
        benchmark::DoNotOptimize(d);
    }
}
BENCHMARK(BM_BoxedT1)->Arg(4)->Arg(6);

BENCHMARK_MAIN();
