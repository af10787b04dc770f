#include <benchmark/benchmark.h>

#include "cohclass/verify.hpp"

using namespace cohclass;

static void BM_TakahashiZ6(benchmark::State& state) {
    for (auto _ : state) {
        Universe u = Universe::affine(Ring::z_mod(Int(6)), FiniteWindow{int(state.range(0))});
        std::vector<int> pool;
        for (size_t i = 0; i < u.size(); ++i) pool.push_back(int(i));
        auto rep = verify_takahashi(u, pool, 1);
        benchmark::DoNotOptimize(rep.pass);
    }
}
BENCHMARK(BM_TakahashiZ6)->Arg(2)->Arg(3);

static void BM_ClosureFixpointZ(benchmark::State& state) {
    Universe u = Universe::affine(
        Ring::integers(), PidWindow{{PidPrime::of(Int(2)), PidPrime::of(Int(3))}, 2, 1});
    u.precompute({ClosureOp::Sub, ClosureOp::Ext});
    const int g = u.index_of_module(
        ModuleNF::of_pid(BackendKind::PidZ, 1, {{PidPrime::of(Int(2)), {2}}}));
    for (auto _ : state) {
        auto fix = u.closure_fixpoint({g}, {ClosureOp::Sub, ClosureOp::Ext});
        benchmark::DoNotOptimize(fix.count());
    }
}
BENCHMARK(BM_ClosureFixpointZ);
