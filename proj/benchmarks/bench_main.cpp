#include <benchmark/benchmark.h>

#include <cmath>
#include <optional>
#include <vector>

#include "coset/channel.hpp"
#include "coset/decoding.hpp"
#include "coset/gf2.hpp"
#include "coset/mapper.hpp"
#include "coset/metrics.hpp"
#include "coset/shaping.hpp"

using namespace coset;

namespace {

// Systematic generator with pseudo-random parity part.
BinMatrix random_systematic(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    BinMatrix g(rows, cols);
    NoiseSource rng({seed, 0});
    for (std::size_t r = 0; r < rows; ++r) {
        g.set(r, r, true);
        for (std::size_t c = rows; c < cols; ++c) {
            g.set(r, c, rng.bit());
        }
    }
    return g;
}

ShapingConstruction bench_construction(std::size_t k_sh) {
    const int m = 2;
    const std::size_t n_s = 64;
    const std::size_t k_c = 64;
    ShapingParams params = default_params(m, n_s, k_c - k_sh, k_sh);
    std::optional<BinMatrix> g_sh;
    if (k_sh > 0) {
        g_sh = random_systematic(k_sh, params.n_sh(), 7);
    }
    return build_construction(random_systematic(k_c, m * n_s, 3), g_sh, params);
}

void BM_EncodeShaped(benchmark::State& state) {
    ShapingConstruction c = bench_construction(static_cast<std::size_t>(state.range(0)));
    NoiseSource rng({11, 0});
    BinVec u(c.params.k);
    for (std::size_t i = 0; i < u.size(); ++i) {
        u.set(i, rng.bit());
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(encode_shaped(u, c));
    }
}
BENCHMARK(BM_EncodeShaped)->Arg(0)->Arg(4)->Arg(8)->Arg(12);

void BM_MapPsi(benchmark::State& state) {
    const int m = 3;
    const std::size_t n = 768;
    NoiseSource rng({5, 0});
    BinVec v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v.set(i, rng.bit());
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(map_psi(v, m));
    }
}
BENCHMARK(BM_MapPsi);

void BM_DemapLlr(benchmark::State& state) {
    const int m = 3;
    const std::size_t n_s = 256;
    ChannelParams ch = ChannelParams::from_snr_db(12.0, 21.0);
    NoiseSource rng({9, 0});
    std::vector<double> y(n_s);
    const GrayTable& t = gray_table_ref(m);
    for (std::size_t j = 0; j < n_s; ++j) {
        y[j] = t.amplitude(rng.next_u64() % t.labels.size()) +
               rng.gaussian(std::sqrt(ch.sigma2));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(demap_llr(y, m, ch.sigma2));
    }
}
BENCHMARK(BM_DemapLlr);

void BM_BpDecode(benchmark::State& state) {
    ParityCheck h = make_peg_ldpc(1024, 512, 3, 2026);
    ChannelParams ch = ChannelParams::from_snr_db(8.0, 5.0);
    NoiseSource rng({13, 0});
    std::vector<double> y(512);
    const GrayTable& t = gray_table_ref(2);
    for (std::size_t j = 0; j < y.size(); ++j) {
        y[j] = t.amplitude(rng.next_u64() % 4) + rng.gaussian(std::sqrt(ch.sigma2));
    }
    LlrVec llr = demap_llr(y, 2, ch.sigma2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(bp_decode(llr, h, 50));
    }
}
BENCHMARK(BM_BpDecode);

void BM_QamCmMi(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(qam_cm_mi(4, 16.0));
    }
}
BENCHMARK(BM_QamCmMi);

}  // namespace

BENCHMARK_MAIN();
