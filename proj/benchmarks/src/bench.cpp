#include <benchmark/benchmark.h>

#include "grkex/kex.hpp"

using namespace grkex;

namespace {

ContextPtr table_ctx() {
    static ContextPtr ctx = make_context(7, 5);
    return ctx;
}

ContextPtr plain_ctx() {
    static ContextPtr ctx = make_context_tableless(7, 5);
    return ctx;
}

void bm_element_mul(benchmark::State& state, ContextPtr ctx) {
    Rng rng(1);
    GrElement x = GrElement::random(ctx, rng);
    GrElement y = GrElement::random(ctx, rng);
    for (auto _ : state) benchmark::DoNotOptimize(x * y);
}

void bm_matmul(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    Rng rng(2);
    MatGr A = MatGr::random(table_ctx(), k, rng);
    MatGr B = MatGr::random(table_ctx(), k, rng);
    for (auto _ : state) benchmark::DoNotOptimize(A * B);
}

void bm_pow(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    const int digits = static_cast<int>(state.range(1));
    Rng rng(3);
    MatGr M = MatGr::random(table_ctx(), k, rng);
    Exponent e = uniform_exponent(rng, pow10(digits - 1), pow10(digits) - 1);
    for (auto _ : state) benchmark::DoNotOptimize(M.pow(e));
}

void bm_fixed_base_pow(benchmark::State& state) {
    Rng rng(4);
    MatGr M = MatGr::random(table_ctx(), 2, rng);
    FixedBasePow fb(M, 128);
    Exponent e = uniform_exponent(rng, pow10(27), pow10(28) - 1);
    for (auto _ : state) benchmark::DoNotOptimize(fb.pow(e));
}

void bm_encode(benchmark::State& state) {
    Rng rng(5);
    MatGr M = MatGr::random(table_ctx(), 3, rng);
    for (auto _ : state) benchmark::DoNotOptimize(M.encode());
}

void bm_key_exchange(benchmark::State& state) {
    Rng rng(6);
    MatGr base = structured_base(table_ctx(), 3, rng);
    Exponent a = uniform_exponent(rng, pow10(22), pow10(28));
    Exponent b = uniform_exponent(rng, pow10(22), pow10(28));
    for (auto _ : state) {
        KexParty alice(base, a);
        KexParty bob(base, b);
        benchmark::DoNotOptimize(alice.shared_secret(bob.public_key()));
    }
}

}  // namespace

BENCHMARK_CAPTURE(bm_element_mul, table, table_ctx());
BENCHMARK_CAPTURE(bm_element_mul, on_the_fly, plain_ctx());
BENCHMARK(bm_matmul)->Arg(2)->Arg(3);
BENCHMARK(bm_pow)
    ->Args({2, 100})
    ->Args({3, 100})
    ->Args({3, 1000})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(bm_fixed_base_pow);
BENCHMARK(bm_encode);
BENCHMARK(bm_key_exchange)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
