#include <benchmark/benchmark.h>

#include "cohclass/sheaf.hpp"

using namespace cohclass;

static void BM_SheafTriples(benchmark::State& state) {
    const FieldTag f2 = prime_field(2);
    SheafWindow w;
    w.twist_lo = -int(state.range(0));
    w.twist_hi = int(state.range(0));
    w.max_rank = 1;
    w.max_torsion_length = 2;
    w.max_point_degree = 2;
    const auto universe = enumerate_sheaf_window(f2, w);
    for (auto _ : state) {
        int count = 0;
        for (const auto& a : universe)
            for (const auto& b : universe) {
                if (degree(a) + degree(b) > 3) continue;
                for (const auto& e : universe)
                    if (sheaf_triple_exists(a, e, b)) ++count;
            }
        benchmark::DoNotOptimize(count);
    }
}
BENCHMARK(BM_SheafTriples)->Arg(2);

static void BM_Classify(benchmark::State& state) {
    const FieldTag f2 = prime_field(2);
    SheafWindow w;
    w.twist_lo = -4;
    w.twist_hi = 4;
    w.max_rank = 1;
    w.max_torsion_length = 2;
    w.max_point_degree = 2;
    const SheafP1 o = SheafP1::line(f2, 0);
    for (auto _ : state) {
        auto res = classify_window({o}, w);
        benchmark::DoNotOptimize(res.classified);
    }
}
BENCHMARK(BM_Classify);

BENCHMARK_MAIN();
