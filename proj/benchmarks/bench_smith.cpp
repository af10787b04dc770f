#include <benchmark/benchmark.h>

#include "cohclass/smith.hpp"

#include <random>

using namespace cohclass;

static void BM_SmithInt(benchmark::State& state) {
    const int n = int(state.range(0));
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> dist(-20, 20);
    Mat<Int> m(n, n, Int(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = Int(dist(rng));
    for (auto _ : state) {
        auto res = smith_normal_form(m);
        benchmark::DoNotOptimize(res.diagonal.data());
    }
}
BENCHMARK(BM_SmithInt)->Arg(4)->Arg(8)->Arg(12);

static void BM_SmithPoly(benchmark::State& state) {
    const FieldTag f2 = prime_field(2);
    const int n = int(state.range(0));
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> bit(0, 1);
    Mat<Poly> m(n, n, Poly::zero(f2));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<Scalar> c;
            for (int d = 0; d <= 3; ++d) c.push_back(Scalar::mod_p(std::uint32_t(bit(rng)), 2));
            m.at(i, j) = Poly::from_coeffs(f2, c);
        }
    for (auto _ : state) {
        auto res = smith_normal_form(m);
        benchmark::DoNotOptimize(res.diagonal.data());
    }
}
BENCHMARK(BM_SmithPoly)->Arg(3)->Arg(6);
