// End-to-end acceptance run: checks the frozen reference results of the
// shaping pipeline at the stated tolerances and prints one verdict line per
// criterion.  Exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fixtures.hpp"
#include "coset/channel.hpp"
#include "coset/decoding.hpp"
#include "coset/gf2.hpp"
#include "coset/harness.hpp"
#include "coset/mapper.hpp"
#include "coset/metrics.hpp"
#include "coset/shaping.hpp"

using namespace coset;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        pass = false;
        if (!detail.empty()) {
            detail += "; ";
        }
        detail += why;
    }
    void require(bool cond, const std::string& why) {
        if (!cond) {
            fail(why);
        }
    }
};

int g_failures = 0;

void report(int index, const std::string& what, const Verdict& v, double ms) {
    if (v.pass) {
        std::printf("[PASS] %d. %s (%.1f ms)\n", index, what.c_str(), ms);
    } else {
        std::printf("[FAIL] %d. %s: %s (%.1f ms)\n", index, what.c_str(), v.detail.c_str(),
                    ms);
        ++g_failures;
    }
    std::fflush(stdout);
}

template <typename F>
void criterion(int index, const std::string& what, F&& body) {
    Verdict v;
    auto t0 = Clock::now();
    body(v);
    double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    report(index, what, v, ms);
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

BinVec vec_from_int(std::uint64_t x, std::size_t len) {
    BinVec v(len);
    for (std::size_t i = 0; i < len; ++i) {
        v.set(i, (x >> (len - 1 - i)) & 1u);
    }
    return v;
}

std::size_t worker_count() {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : std::min<unsigned>(hw, 8);
}

// ---------------------------------------------------------------------------
// 1. 8-PAM Gray labeling table.

void check_gray_table(Verdict& v) {
    const GrayTable t = gray_table(3);
    const std::uint32_t labels[8] = {0, 1, 3, 2, 6, 7, 5, 4};
    const int amps[8] = {-7, -5, -3, -1, 1, 3, 5, 7};
    v.require(t.labels.size() == 8, "expected 8 labels");
    for (std::size_t i = 0; i < 8; ++i) {
        if (t.labels[i] != labels[i] || t.amplitude(i) != amps[i]) {
            v.fail("label mismatch at index " + std::to_string(i));
        }
    }
}

// ---------------------------------------------------------------------------
// 2. [6,3] encode-and-map demo: u = (1,1,0) -> s = (5,5).

void check_mapping_demo(Verdict& v) {
    BinVec u({1, 1, 0});
    BinVec cw = encode(u, fixtures::pam8_mapping_g());
    v.require(cw.to_string() == "110011", "codeword is " + cw.to_string());
    SignalSeq s = map_psi(cw, 3);
    v.require(s.amps == std::vector<int>{5, 5},
              "mapped to (" + std::to_string(s.amps[0]) + "," +
                  std::to_string(s.amps[1]) + ")");
}

// ---------------------------------------------------------------------------
// 3. [6,3] shaping demo: generator rebuild, coset energies, averages.

void check_pam8_demo(Verdict& v) {
    ShapingConstruction c = fixtures::pam8_shaped();
    v.require(c.g_so == fixtures::pam8_expected_g_so(), "shaping-oriented rebuild differs");

    std::vector<double> cosets = coset_energy_table(c);
    v.require(cosets == std::vector<double>{23.0, 19.0},
              "coset energies {" + fmt(cosets[0]) + "," + fmt(cosets[1]) + "}");

    EnergyReport rep = energy_report(c, 1, 16);
    v.require(rep.per_signal_energy == 9.0,
              "shaped energy " + fmt(rep.per_signal_energy));
    v.require(rep.unshaped_energy == 21.0, "reference " + fmt(rep.unshaped_energy));

    std::vector<SignalSeq> sphere = sphere_shaper_bruteforce(c);
    v.require(avg_energy(sphere) == 9.0, "sphere average " + fmt(avg_energy(sphere)));
}

// ---------------------------------------------------------------------------
// 4. [6,5] 4-PAM demo: energy 3 vs 5, all-message round trip.

void check_pam4_demo(Verdict& v) {
    ShapingConstruction c = fixtures::pam4_shaped();
    EnergyReport rep = energy_report(c, 1, 32);
    v.require(rep.per_signal_energy == 3.0, "shaped energy " + fmt(rep.per_signal_energy));
    v.require(rep.unshaped_energy == 5.0, "reference " + fmt(rep.unshaped_energy));

    for (std::uint64_t x = 0; x < 16; ++x) {
        BinVec u = vec_from_int(x, 4);
        ShapedWord w = encode_shaped(u, c);
        std::vector<double> y(w.s.amps.begin(), w.s.amps.end());
        BinVec info = ml_decode(y, c);
        if (decode_shaped(info, c) != u) {
            v.fail("round trip failed for message " + u.to_string());
            break;
        }
    }
}

// ---------------------------------------------------------------------------
// 5. Threshold SNRs at 16/3 bits per QAM symbol.
//
// The three reference values are 15.97, 15.99 and 17.02 dB.  Checked against
// independent numerics, they are the thresholds of (a) the Gaussian-input
// capacity, (b) coded modulation over 256-QAM with an ideally shaped
// (Maxwell-Boltzmann) input at its actual transmitted energy, and (c) coded
// modulation over uniform 256-QAM.  Uniform-input CM crosses 16/3 bits at
// 17.0 dB and Gray BICM at 17.25 dB, so 15.99 cannot be the uniform CM
// threshold; the shaped CM curve is computed here from the quadrature
// utility and compared against it instead.

// CM mutual information of one 2^m-PAM dimension with Boltzmann prior
// p_i proportional to exp(-nu a_i^2), in bits, plus the prior's mean energy.
std::pair<double, double> pam_boltzmann_mi(int m, double sigma2, double nu) {
    std::vector<double> t;
    std::vector<double> w;
    gauss_hermite(192, t, w);
    const GrayTable& table = gray_table_ref(m);
    std::size_t points = table.labels.size();

    std::vector<double> amp(points);
    std::vector<double> logp(points);
    double norm = 0.0;
    double es = 0.0;
    for (std::size_t i = 0; i < points; ++i) {
        amp[i] = static_cast<double>(table.amplitude(i));
        logp[i] = -nu * amp[i] * amp[i];
        norm += std::exp(logp[i]);
    }
    double h_x = 0.0;
    for (std::size_t i = 0; i < points; ++i) {
        logp[i] -= std::log(norm);
        double p = std::exp(logp[i]);
        es += p * amp[i] * amp[i];
        h_x -= p * logp[i];
    }

    const double sqrt_pi = std::sqrt(3.14159265358979323846);
    double scale = std::sqrt(2.0 * sigma2);
    double h_x_given_y = 0.0;
    std::vector<double> args(points);
    for (std::size_t i = 0; i < points; ++i) {
        double cond = 0.0;
        for (std::size_t q = 0; q < t.size(); ++q) {
            double z = scale * t[q];
            double mx = -1e300;
            for (std::size_t j = 0; j < points; ++j) {
                double d = amp[i] - amp[j];
                args[j] = logp[j] + (-d * d - 2.0 * d * z) / (2.0 * sigma2);
                mx = std::max(mx, args[j]);
            }
            double sum = 0.0;
            for (std::size_t j = 0; j < points; ++j) {
                sum += std::exp(args[j] - mx);
            }
            cond += w[q] * (mx + std::log(sum) - logp[i]);
        }
        h_x_given_y += std::exp(logp[i]) * cond / sqrt_pi;
    }
    constexpr double kLn2 = 0.6931471805599453;
    return {(h_x - h_x_given_y) / kLn2, es};
}

// Best Boltzmann-shaped QAM rate at a given SNR, with noise variance tied to
// the shaped input's own transmitted energy.
double shaped_qam_mi(int m, double snr_db) {
    double snr = std::pow(10.0, snr_db / 10.0);
    auto rate = [&](double nu) {
        const GrayTable& table = gray_table_ref(m);
        double norm = 0.0;
        double es = 0.0;
        for (std::size_t i = 0; i < table.labels.size(); ++i) {
            double a2 = static_cast<double>(table.amplitude(i)) * table.amplitude(i);
            norm += std::exp(-nu * a2);
            es += a2 * std::exp(-nu * a2);
        }
        es /= norm;
        return 2.0 * pam_boltzmann_mi(m, es / snr, nu).first;
    };
    // Golden-section maximization over the shaping parameter.
    double lo = 0.0;
    double hi = 0.2;
    const double phi = 0.61803398874989484;
    double x1 = hi - phi * (hi - lo);
    double x2 = lo + phi * (hi - lo);
    double f1 = rate(x1);
    double f2 = rate(x2);
    for (int it = 0; it < 40; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (hi - lo);
            f2 = rate(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - phi * (hi - lo);
            f1 = rate(x1);
        }
    }
    return std::max(f1, f2);
}

void check_capacity_numbers(Verdict& v) {
    std::array<CapacityPoint, 3> pts = capacity_sweep(4, 16.0 / 3.0);
    v.require(pts[0].snr_db <= pts[1].snr_db && pts[1].snr_db <= pts[2].snr_db,
              "threshold ordering violated");

    if (std::abs(pts[0].snr_db - 15.97) > 0.10) {
        v.fail("capacity threshold " + fmt(pts[0].snr_db) + " dB vs 15.97 +- 0.10");
    }
    if (std::abs(pts[1].snr_db - 17.02) > 0.15) {
        v.fail("uniform-QAM CM threshold " + fmt(pts[1].snr_db) + " dB vs 17.02 +- 0.15");
    }

    // Bisect the shaped-QAM curve for the remaining reference value.
    double lo = 14.0;
    double hi = 18.0;
    const double rate = 16.0 / 3.0;
    for (int it = 0; it < 24; ++it) {
        double mid = 0.5 * (lo + hi);
        (shaped_qam_mi(4, mid) < rate ? lo : hi) = mid;
    }
    double shaped = 0.5 * (lo + hi);
    if (std::abs(shaped - 15.99) > 0.15) {
        v.fail("shaped-QAM CM threshold " + fmt(shaped) + " dB vs 15.99 +- 0.15");
    }
    std::printf("       thresholds: capacity %.3f, shaped %.3f, uniform %.3f, bicm %.3f dB\n",
                pts[0].snr_db, shaped, pts[1].snr_db, pts[2].snr_db);
}

// ---------------------------------------------------------------------------
// 6. Desk-scale LDPC sweep: monotone BER, strict energy advantage,
//    degenerate-shaping equivalence.

struct LdpcSetup {
    std::string alist_path = "/tmp/cosetmod_acceptance_peg.alist";
    std::string gsh_path = "/tmp/cosetmod_acceptance_gsh.txt";
    std::vector<double> snr_db;
    std::size_t k_sh = 8;
    std::uint64_t max_frames = 60000;
};

void write_ldpc_inputs(const LdpcSetup& s) {
    ParityCheck h = make_peg_ldpc(1024, 512, 3, 2026);
    write_alist_file(s.alist_path, h);

    DerivedGenerator d = generator_from_parity(h);
    std::size_t k_c = d.g.rows();
    std::size_t n_sh = std::min<std::size_t>(k_c, 512);  // k_a + k_sh

    BinMatrix g_sh(s.k_sh, n_sh);
    NoiseSource rng({777, 0});
    for (std::size_t r = 0; r < s.k_sh; ++r) {
        g_sh.set(r, r, true);
        for (std::size_t c = s.k_sh; c < n_sh; ++c) {
            g_sh.set(r, c, rng.bit());
        }
    }
    write_matrix_file(s.gsh_path, g_sh);
}

ExperimentConfig ldpc_config(const LdpcSetup& s, bool shaped) {
    ExperimentConfig cfg;
    cfg.parity_file = s.alist_path;
    cfg.m = 2;
    cfg.k_sh = shaped ? s.k_sh : 0;
    if (shaped) {
        cfg.shaping_generator_file = s.gsh_path;
    }
    cfg.decoder = ExperimentConfig::Decoder::bp;
    cfg.bp_iters = 50;
    cfg.snr_db = s.snr_db;
    cfg.min_frame_errors = 100;
    cfg.max_frames = s.max_frames;
    cfg.seed = 1;
    return cfg;
}

void check_ldpc_sweep(Verdict& v) {
    LdpcSetup s;
    s.snr_db = {6.5, 7.0, 7.4, 7.8};
    write_ldpc_inputs(s);
    std::size_t workers = worker_count();

    std::vector<TrialResult> shaped = run_experiment(ldpc_config(s, true), workers);
    std::vector<TrialResult> plain = run_experiment(ldpc_config(s, false), workers);

    // (a) monotone BER with at least 100 frame errors everywhere.
    for (std::size_t i = 0; i < shaped.size(); ++i) {
        if (shaped[i].frame_errors < 100) {
            v.fail("only " + std::to_string(shaped[i].frame_errors) +
                   " frame errors at " + fmt(shaped[i].snr_db) + " dB");
        }
        if (i > 0 && shaped[i].ber > shaped[i - 1].ber) {
            v.fail("BER rises from " + fmt(shaped[i - 1].ber) + " to " +
                   fmt(shaped[i].ber) + " at " + fmt(shaped[i].snr_db) + " dB");
        }
    }

    // (b) strict transmitted-energy advantage at every point.
    for (std::size_t i = 0; i < shaped.size(); ++i) {
        if (!(shaped[i].avg_energy < plain[i].avg_energy)) {
            v.fail("no energy advantage at " + fmt(shaped[i].snr_db) + " dB (" +
                   fmt(shaped[i].avg_energy) + " vs " + fmt(plain[i].avg_energy) + ")");
        }
    }

    std::printf(
        "       sweep: shaped energy %.3f..%.3f vs %.3f, shaped BER %.2e..%.2e\n",
        shaped.front().avg_energy, shaped.back().avg_energy, plain.front().avg_energy,
        shaped.front().ber, shaped.back().ber);
}

// Independently coded plain pipeline (own RNG, own loop) for the
// degenerate-shaping comparison.
struct PlainRun {
    std::uint64_t frames = 0;
    std::uint64_t bit_errors = 0;
    std::uint64_t frame_errors = 0;
    double bit_err_var = 0.0;  // sample variance of per-frame bit errors
};

PlainRun independent_bicm_run(const ParityCheck& h_perm, const BinMatrix& g,
                              double sigma2, std::uint64_t frames, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, std::sqrt(sigma2));
    std::bernoulli_distribution coin(0.5);

    PlainRun out;
    out.frames = frames;
    std::vector<double> errs;
    errs.reserve(frames);
    std::size_t k_c = g.rows();
    for (std::uint64_t f = 0; f < frames; ++f) {
        BinVec u(k_c);
        for (std::size_t i = 0; i < k_c; ++i) {
            u.set(i, coin(rng));
        }
        BinVec cw = encode(u, g);
        SignalSeq sent = map_psi(cw, 2);
        std::vector<double> y(sent.amps.size());
        for (std::size_t j = 0; j < y.size(); ++j) {
            y[j] = sent.amps[j] + noise(rng);
        }
        LlrVec llr = demap_llr(y, 2, sigma2);
        BpResult r = bp_decode(llr, h_perm, 50);
        std::size_t e = (r.codeword.slice(0, k_c) ^ u).weight();
        out.bit_errors += e;
        out.frame_errors += e != 0 ? 1 : 0;
        errs.push_back(static_cast<double>(e));
    }
    double mean = static_cast<double>(out.bit_errors) / static_cast<double>(frames);
    for (double e : errs) {
        out.bit_err_var += (e - mean) * (e - mean);
    }
    out.bit_err_var /= static_cast<double>(frames - 1);
    return out;
}

void check_degenerate_equivalence(Verdict& v) {
    LdpcSetup s;
    s.snr_db = {7.0};  // a point with plenty of errors for both pipelines
    s.max_frames = 4000;
    write_ldpc_inputs(s);

    ExperimentConfig cfg = ldpc_config(s, false);
    cfg.min_frame_errors = 1u << 30;  // run to the frame cap for a fixed sample size
    std::vector<TrialResult> rs = run_experiment(cfg, worker_count());
    const TrialResult& a = rs.at(0);

    ParityCheck h = parse_alist_file(s.alist_path);
    DerivedGenerator d = generator_from_parity(h);
    double sigma2 = snr_to_sigma(s.snr_db[0], 5.0);  // uniform 4-PAM reference
    PlainRun b = independent_bicm_run(d.h, d.g, sigma2, 4000, 99);

    std::size_t k = d.g.rows();
    double ber_a = a.ber;
    double ber_b = static_cast<double>(b.bit_errors) /
                   (static_cast<double>(b.frames) * static_cast<double>(k));

    // Frame errors are independent across frames: binomial comparison.
    double p1 = a.fer;
    double p2 = static_cast<double>(b.frame_errors) / static_cast<double>(b.frames);
    double pool = (static_cast<double>(a.frame_errors) + b.frame_errors) /
                  (static_cast<double>(a.frames) + b.frames);
    double se_f = std::sqrt(pool * (1.0 - pool) *
                            (1.0 / a.frames + 1.0 / static_cast<double>(b.frames)));
    double z_fer = std::abs(p1 - p2) / se_f;

    // Bit errors cluster within frames; use the measured per-frame variance.
    double se_b = std::sqrt(b.bit_err_var * (1.0 / a.frames + 1.0 / b.frames)) /
                  static_cast<double>(k);
    double z_ber = std::abs(ber_a - ber_b) / se_b;

    v.require(a.frame_errors > 200 && b.frame_errors > 200,
              "comparison point has too few frame errors to resolve");
    v.require(z_fer < 4.0, "FER differs by " + fmt(z_fer) + " sigma");
    v.require(z_ber < 4.0, "BER differs by " + fmt(z_ber) + " sigma");
    std::printf("       equivalence: ber %.3e vs %.3e (z=%.2f), fer %.3e vs %.3e (z=%.2f)\n",
                ber_a, ber_b, z_ber, p1, p2, z_fer);
}

// ---------------------------------------------------------------------------
// 7. Property suites.

void property_bijection(Verdict& v) {
    for (int m = 1; m <= 4; ++m) {
        for (std::size_t n_s = 1; static_cast<std::size_t>(m) * n_s <= 16; ++n_s) {
            std::size_t n = static_cast<std::size_t>(m) * n_s;
            std::set<std::vector<int>> seen;
            for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
                BinVec w(n);
                for (std::size_t j = 0; j < n; ++j) {
                    w.set(j, (x >> j) & 1u);
                }
                SignalSeq sig = map_psi(w, m);
                if (unmap_psi(sig) != w) {
                    v.fail("mapping not invertible at m=" + std::to_string(m));
                    return;
                }
                seen.insert(sig.amps);
            }
            if (seen.size() != (std::size_t{1} << n)) {
                v.fail("mapping not injective at m=" + std::to_string(m) +
                       " n_s=" + std::to_string(n_s));
                return;
            }
        }
    }
}

void property_min_energy(Verdict& v) {
    // Exhaustive agreement with an independently coded candidate scan.
    struct Case {
        int m;
        std::size_t n_s, k, k_sh;
    };
    const Case cases[] = {{3, 2, 2, 1}, {2, 3, 4, 1}, {2, 8, 7, 3}, {3, 4, 7, 2}};
    NoiseSource rng({4242, 0});
    for (const Case& cs : cases) {
        ShapingParams params = default_params(cs.m, cs.n_s, cs.k, cs.k_sh);
        BinMatrix g(params.k_c(), params.n());
        for (std::size_t r = 0; r < g.rows(); ++r) {
            g.set(r, r, true);
            for (std::size_t c = g.rows(); c < g.cols(); ++c) {
                g.set(r, c, rng.bit());
            }
        }
        BinMatrix gs(cs.k_sh, params.n_sh());
        for (std::size_t r = 0; r < gs.rows(); ++r) {
            gs.set(r, r, true);
            for (std::size_t c = cs.k_sh; c < gs.cols(); ++c) {
                gs.set(r, c, rng.bit());
            }
        }
        std::optional<BinMatrix> g_sh = gs;
        ShapingConstruction c = build_construction(g, g_sh, params);

        for (std::uint64_t x = 0; x < (std::uint64_t{1} << cs.k); ++x) {
            BinVec u = vec_from_int(x, cs.k);
            ShapedWord got = encode_shaped(u, c);
            long long best = -1;
            BinVec best_sh;
            for (std::uint64_t y = 0; y < (std::uint64_t{1} << cs.k_sh); ++y) {
                BinVec u_sh = vec_from_int(y, cs.k_sh);
                long long e = map_psi(encode(u_sh.concat(u), c.g_so), cs.m).energy();
                if (best < 0 || e < best || (e == best && u_sh.lex_less(best_sh))) {
                    best = e;
                    best_sh = u_sh;
                }
            }
            if (got.energy != best || got.u_sh_hat != best_sh) {
                v.fail("coset search disagrees with scan at m=" + std::to_string(cs.m) +
                       " k_c=" + std::to_string(params.k_c()));
                return;
            }
        }
    }
}

void property_rowspace(Verdict& v) {
    NoiseSource rng({31415, 0});
    int built = 0;
    while (built < 100) {
        int m = 2 + static_cast<int>(rng.next_u64() % 2);
        std::size_t n_s = 2 + rng.next_u64() % 5;
        std::size_t n = static_cast<std::size_t>(m) * n_s;
        std::size_t k_c = 1 + rng.next_u64() % (n - 1);
        std::size_t k_sh = rng.next_u64() % std::min<std::size_t>(k_c, 5);
        std::size_t k = k_c - k_sh;
        if (k == 0) {
            continue;
        }
        ShapingParams params;
        try {
            params = default_params(m, n_s, k, k_sh);
        } catch (const std::invalid_argument&) {
            continue;
        }
        BinMatrix g(k_c, n);
        for (std::size_t r = 0; r < k_c; ++r) {
            g.set(r, r, true);
            for (std::size_t c = k_c; c < n; ++c) {
                g.set(r, c, rng.bit());
            }
        }
        std::optional<BinMatrix> g_sh;
        if (k_sh > 0) {
            BinMatrix gs(k_sh, params.n_sh());
            for (std::size_t r = 0; r < k_sh; ++r) {
                gs.set(r, r, true);
                for (std::size_t c = k_sh; c < gs.cols(); ++c) {
                    gs.set(r, c, rng.bit());
                }
            }
            g_sh = gs;
        }
        ShapingConstruction c = build_construction(g, g_sh, params);
        if (!rowspace_equal(c.g_so, g)) {
            v.fail("row space changed (trial " + std::to_string(built) + ")");
            return;
        }
        ++built;
    }
}

void property_demap(Verdict& v) {
    NoiseSource rng({2718, 0});
    for (int m = 1; m <= 4; ++m) {
        const GrayTable& t = gray_table_ref(m);
        for (int trial = 0; trial < 40; ++trial) {
            double sigma2 = 0.2 + 3.0 * rng.uniform01();
            std::vector<double> y = {rng.gaussian(3.0)};
            LlrVec llr = demap_llr(y, m, sigma2);
            for (int q = 0; q < m; ++q) {
                long double p0 = 0.0L;
                long double p1 = 0.0L;
                for (std::size_t i = 0; i < t.labels.size(); ++i) {
                    long double d = static_cast<long double>(y[0]) - t.amplitude(i);
                    long double w = expl(-d * d / (2.0L * sigma2));
                    ((t.labels[i] >> q) & 1u) ? p1 += w : p0 += w;
                }
                double want = static_cast<double>(logl(p0) - logl(p1));
                if (std::abs(llr.values[static_cast<std::size_t>(q)] - want) > 1e-9) {
                    v.fail("posterior mismatch at m=" + std::to_string(m));
                    return;
                }
            }
        }
    }
}

void property_reproducible(Verdict& v) {
    std::istringstream is(
        "generator_inline = 100001;010001;001001;000101;000011\n"
        "shaping_generator_inline = 111\n"
        "m = 2\n"
        "k_sh = 1\n"
        "snr_db = 6, 9, 12\n"
        "max_frames = 800\n"
        "min_frame_errors = 64\n"
        "seed = 11\n");
    ExperimentConfig cfg = parse_config(is);
    std::string a = csv_string(run_experiment(cfg, 1), cfg.seed);
    std::string b = csv_string(run_experiment(cfg, 1), cfg.seed);
    std::string c = csv_string(run_experiment(cfg, 3), cfg.seed);
    std::string d = csv_string(run_experiment(cfg, worker_count()), cfg.seed);
    v.require(a == b, "two identical runs differ");
    v.require(a == c, "worker count 3 changes results");
    v.require(a == d, "worker count " + std::to_string(worker_count()) + " changes results");
}

void check_properties(Verdict& v) {
    property_bijection(v);
    property_min_energy(v);
    property_rowspace(v);
    property_demap(v);
    property_reproducible(v);
}

// ---------------------------------------------------------------------------
// 8. Rate-bound identities.

void check_rate_bound(Verdict& v) {
    const double g_sphere = 1.0 / (2.0 * 3.14159265358979323846 * std::exp(1.0));
    for (double p : {0.25, 1.0, 5.0, 21.0, 100.0}) {
        for (double sigma2 : {0.05, 0.5, 1.0, 4.0}) {
            double capacity = 0.5 * std::log2(1.0 + p / sigma2);
            double bound = nsm_rate_bound(p, sigma2, g_sphere);
            if (std::abs(bound - capacity) > 1e-12) {
                v.fail("sphere bound off by " + fmt(std::abs(bound - capacity)) + " at P=" +
                       fmt(p) + " sigma2=" + fmt(sigma2));
            }
            double deficit = capacity - nsm_rate_bound(p, sigma2, 1.0 / 12.0);
            if (std::abs(deficit - 0.2546) > 1e-3) {
                v.fail("cube deficit " + fmt(deficit) + " at P=" + fmt(p));
            }
        }
    }
}

}  // namespace

int main() {
    std::printf("acceptance run (%zu workers available)\n", worker_count());

    criterion(1, "8-PAM Gray labeling table (8/8)", check_gray_table);
    criterion(2, "[6,3] demo encode+map: u=110 -> s=(5,5)", check_mapping_demo);
    criterion(3, "[6,3] shaping demo: cosets {23,19}, shaped 9 vs 21, sphere 9",
              check_pam8_demo);
    criterion(4, "[6,5] 4-PAM demo: shaped 3 vs 5, 16-message round trip",
              check_pam4_demo);
    criterion(5, "threshold SNRs at 16/3 bits/QAM: 15.97/15.99/17.02 dB",
              check_capacity_numbers);

    criterion(6, "LDPC sweep: monotone BER, energy advantage, k_sh=0 equivalence",
              [](Verdict& v) {
                  check_ldpc_sweep(v);
                  check_degenerate_equivalence(v);
              });

    criterion(7, "property suites: bijection, minimality, row space, demap, determinism",
              check_properties);
    criterion(8, "rate bound: sphere NSM recovers capacity, cube NSM costs 0.2546 bits",
              check_rate_bound);

    if (g_failures == 0) {
        std::printf("all 8 criteria passed\n");
        return 0;
    }
    std::printf("%d criteria FAILED\n", g_failures);
    return 1;
}
