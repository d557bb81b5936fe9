#include "coset/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "coset/channel.hpp"
#include "coset/errors.hpp"

namespace coset {

namespace {

constexpr std::size_t kBatch = 256;
constexpr std::size_t kMlCap = 20;        // ml_decode enumerates 2^k_c words
constexpr std::size_t kExactEnergyCap = 20;

double uniform_pam_energy(int m) {
    double points = static_cast<double>(1 << m);
    return (points * points - 1.0) / 3.0;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

BinMatrix matrix_from_inline(const std::string& rows_text, const char* what) {
    std::vector<std::string> rows;
    for (const std::string& part : split(rows_text, ';')) {
        if (!part.empty()) {
            rows.push_back(part);
        }
    }
    try {
        return BinMatrix::from_rows(rows);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string(what) + ": " + e.what());
    }
}

std::uint64_t parse_u64(const std::string& value, const std::string& key) {
    try {
        std::size_t pos = 0;
        unsigned long long v = std::stoull(value, &pos);
        if (pos != value.size()) {
            throw std::invalid_argument("trailing characters");
        }
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' needs an unsigned integer, got '" +
                          value + "'");
    }
}

double parse_double(const std::string& value, const std::string& key) {
    try {
        std::size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size()) {
            throw std::invalid_argument("trailing characters");
        }
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' needs a number, got '" + value + "'");
    }
}

// Outcome of a single frame, aggregated in trial order.
struct FrameOutcome {
    std::uint32_t bit_errors = 0;
    std::uint32_t cw_bit_errors = 0;
    std::uint8_t frame_error = 0;
    long long energy = 0;
    long long baseline_energy = 0;
};

}  // namespace

void ExperimentConfig::validate() const {
    int sources = 0;
    sources += construction_file.empty() ? 0 : 1;
    sources += (generator_file.empty() && generator_inline.empty()) ? 0 : 1;
    sources += parity_file.empty() ? 0 : 1;
    if (sources != 1) {
        throw ConfigError(
            "config: exactly one construction source required "
            "(construction | generator | parity)");
    }
    if (!generator_file.empty() && !generator_inline.empty()) {
        throw ConfigError("config: generator and generator_inline are mutually exclusive");
    }
    if (!shaping_generator_file.empty() && !shaping_generator_inline.empty()) {
        throw ConfigError(
            "config: shaping_generator and shaping_generator_inline are mutually exclusive");
    }
    bool matrix_source = !construction_file.empty() ? false : true;
    if (!matrix_source) {
        if (m != 0 || k_sh != 0) {
            throw ConfigError("config: m/k_sh conflict with a construction file");
        }
        if (!shaping_generator_file.empty() || !shaping_generator_inline.empty()) {
            throw ConfigError("config: shaping_generator conflicts with a construction file");
        }
    } else {
        if (m < 1 || m > 8) {
            throw ConfigError("config: m must be in [1, 8]");
        }
        bool have_gsh =
            !shaping_generator_file.empty() || !shaping_generator_inline.empty();
        if (k_sh > 0 && !have_gsh) {
            throw ConfigError("config: k_sh > 0 requires a shaping generator");
        }
        if (k_sh == 0 && have_gsh) {
            throw ConfigError("config: shaping generator given but k_sh = 0");
        }
    }
    if (decoder == Decoder::bp && parity_file.empty()) {
        throw ConfigError("config: decoder bp requires the parity source");
    }
    if (snr_db.empty()) {
        throw ConfigError("config: snr_db list must be nonempty");
    }
    if (min_frame_errors == 0 || max_frames == 0) {
        throw ConfigError("config: trial budget must be positive");
    }
    if (max_frames > (std::uint64_t{1} << 32)) {
        throw ConfigError("config: max_frames exceeds the per-point stream budget (2^32)");
    }
    if (bp_iters == 0) {
        throw ConfigError("config: bp_iters must be positive");
    }
}

ExperimentConfig parse_config(std::istream& is) {
    ExperimentConfig cfg;
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected 'key = value'");
        }
        auto trim = [](std::string s) {
            std::size_t b = s.find_first_not_of(" \t\r");
            std::size_t e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");
        }
        if (!kv.emplace(key, value).second) {
            throw ConfigError("config: duplicate key '" + key + "'");
        }
    }

    for (const auto& [key, value] : kv) {
        if (key == "construction") {
            cfg.construction_file = value;
        } else if (key == "generator") {
            cfg.generator_file = value;
        } else if (key == "generator_inline") {
            cfg.generator_inline = value;
        } else if (key == "shaping_generator") {
            cfg.shaping_generator_file = value;
        } else if (key == "shaping_generator_inline") {
            cfg.shaping_generator_inline = value;
        } else if (key == "parity") {
            cfg.parity_file = value;
        } else if (key == "m") {
            cfg.m = static_cast<int>(parse_u64(value, key));
        } else if (key == "k_sh") {
            cfg.k_sh = parse_u64(value, key);
        } else if (key == "snr_db") {
            std::string norm = value;
            std::replace(norm.begin(), norm.end(), ',', ' ');
            std::istringstream vs(norm);
            std::string tok;
            while (vs >> tok) {
                cfg.snr_db.push_back(parse_double(tok, key));
            }
        } else if (key == "decoder") {
            if (value == "ml") {
                cfg.decoder = ExperimentConfig::Decoder::ml;
            } else if (value == "bp") {
                cfg.decoder = ExperimentConfig::Decoder::bp;
            } else {
                throw ConfigError("config: decoder must be 'ml' or 'bp', got '" + value + "'");
            }
        } else if (key == "bp_iters") {
            cfg.bp_iters = parse_u64(value, key);
        } else if (key == "min_frame_errors") {
            cfg.min_frame_errors = parse_u64(value, key);
        } else if (key == "max_frames") {
            cfg.max_frames = parse_u64(value, key);
        } else if (key == "seed") {
            cfg.seed = parse_u64(value, key);
        } else if (key == "output") {
            cfg.output = value;
        } else {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) {
        throw IoError("cannot open: " + path);
    }
    return parse_config(is);
}

LoadedExperiment load_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    LoadedExperiment out;

    if (!cfg.construction_file.empty()) {
        out.construction = read_construction_file(cfg.construction_file);
        return out;
    }

    BinMatrix g(1, 1);
    if (!cfg.parity_file.empty()) {
        ParityCheck h = parse_alist_file(cfg.parity_file);
        DerivedGenerator derived = generator_from_parity(h);
        g = derived.g;
        out.parity = std::move(derived.h);
    } else if (!cfg.generator_file.empty()) {
        g = read_matrix_file(cfg.generator_file);
    } else {
        g = matrix_from_inline(cfg.generator_inline, "generator_inline");
    }

    if (g.cols() % static_cast<std::size_t>(cfg.m) != 0) {
        throw ConfigError("config: codeword length is not a multiple of m");
    }
    std::size_t n_s = g.cols() / static_cast<std::size_t>(cfg.m);
    if (g.rows() <= cfg.k_sh) {
        throw ConfigError("config: generator leaves no message bits after k_sh");
    }
    std::size_t k = g.rows() - cfg.k_sh;

    ShapingParams params;
    try {
        params = default_params(cfg.m, n_s, k, cfg.k_sh);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }

    std::optional<BinMatrix> g_sh;
    if (cfg.k_sh > 0) {
        if (!cfg.shaping_generator_file.empty()) {
            g_sh = read_matrix_file(cfg.shaping_generator_file);
        } else {
            g_sh = matrix_from_inline(cfg.shaping_generator_inline, "shaping_generator_inline");
        }
    }
    try {
        out.construction = build_construction(g, g_sh, params);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return out;
}

namespace {

void run_one_frame(const ShapingConstruction& c, const ParityCheck* parity,
                   const ExperimentConfig& cfg, const ChannelParams& ch,
                   std::uint64_t stream, FrameOutcome& out) {
    const ShapingParams& p = c.params;
    NoiseSource rng({cfg.seed, stream});

    BinVec u(p.k);
    for (std::size_t i = 0; i < p.k; ++i) {
        u.set(i, rng.bit());
    }

    ShapedWord w = encode_shaped(u, c);

    // Energy of the same message without the coset search (u_sh = 0).
    BinVec base(p.n());
    for (std::size_t i = 0; i < p.k; ++i) {
        if (u.get(i)) {
            c.g_so.xor_row_into(p.k_sh + i, base.words().data());
        }
    }
    out.energy = w.energy;
    out.baseline_energy = psi_energy(base, p.m);

    double sigma = std::sqrt(ch.sigma2);
    std::vector<double> y(w.s.amps.size());
    for (std::size_t j = 0; j < y.size(); ++j) {
        y[j] = static_cast<double>(w.s.amps[j]) + rng.gaussian(sigma);
    }

    BinVec u_hat(p.k);
    BinVec cw_hat(p.n());
    if (cfg.decoder == ExperimentConfig::Decoder::ml) {
        BinVec info = ml_decode(y, c);
        u_hat = decode_shaped(info, c);
        cw_hat = encode(info, c.g_so);
    } else {
        LlrVec llr = demap_llr(y, p.m, ch.sigma2);
        BpResult r = bp_decode(llr, *parity, cfg.bp_iters);
        cw_hat = r.codeword;
        u_hat = decode_shaped(extract_info(r.codeword, c), c);
    }

    out.bit_errors = static_cast<std::uint32_t>((u_hat ^ u).weight());
    out.frame_error = out.bit_errors != 0 ? 1 : 0;
    out.cw_bit_errors = static_cast<std::uint32_t>((cw_hat ^ w.v).weight());
}

}  // namespace

std::vector<TrialResult> run_experiment(const ExperimentConfig& cfg, std::size_t workers) {
    if (workers == 0) {
        throw std::invalid_argument("run_experiment: need at least one worker");
    }
    LoadedExperiment exp = load_experiment(cfg);
    const ShapingConstruction& c = exp.construction;
    const ShapingParams& p = c.params;
    if (cfg.decoder == ExperimentConfig::Decoder::ml && p.k_c() > kMlCap) {
        throw ConfigError("config: ml decoding needs k_c <= 20");
    }

    double es_ref = uniform_pam_energy(p.m);
    std::vector<TrialResult> results;
    results.reserve(cfg.snr_db.size());

    std::vector<FrameOutcome> outcomes(kBatch);
    for (std::size_t pi = 0; pi < cfg.snr_db.size(); ++pi) {
        ChannelParams ch = ChannelParams::from_snr_db(cfg.snr_db[pi], es_ref);

        TrialResult r;
        r.snr_db = cfg.snr_db[pi];
        long long energy_sum = 0;
        long long baseline_sum = 0;

        while (r.frame_errors < cfg.min_frame_errors && r.frames < cfg.max_frames) {
            std::size_t batch =
                std::min<std::uint64_t>(kBatch, cfg.max_frames - r.frames);
            std::uint64_t first = r.frames;

            auto work = [&](std::size_t lo, std::size_t hi) {
                for (std::size_t i = lo; i < hi; ++i) {
                    std::uint64_t stream =
                        (static_cast<std::uint64_t>(pi) << 32) | (first + i);
                    run_one_frame(c, exp.parity ? &*exp.parity : nullptr, cfg, ch, stream,
                                  outcomes[i]);
                }
            };
            if (workers == 1) {
                work(0, batch);
            } else {
                std::vector<std::thread> pool;
                std::size_t chunk = (batch + workers - 1) / workers;
                for (std::size_t wk = 0; wk < workers; ++wk) {
                    std::size_t lo = wk * chunk;
                    std::size_t hi = std::min(batch, lo + chunk);
                    if (lo < hi) {
                        pool.emplace_back(work, lo, hi);
                    }
                }
                for (std::thread& th : pool) {
                    th.join();
                }
            }

            for (std::size_t i = 0; i < batch; ++i) {
                r.bit_errors += outcomes[i].bit_errors;
                r.frame_errors += outcomes[i].frame_error;
                r.codeword_bit_errors += outcomes[i].cw_bit_errors;
                energy_sum += outcomes[i].energy;
                baseline_sum += outcomes[i].baseline_energy;
            }
            r.frames += batch;
        }

        double frames = static_cast<double>(r.frames);
        r.ber = static_cast<double>(r.bit_errors) / (frames * static_cast<double>(p.k));
        r.fer = static_cast<double>(r.frame_errors) / frames;
        r.avg_energy =
            static_cast<double>(energy_sum) / (frames * static_cast<double>(p.n_s));
        r.avg_energy_reduction = static_cast<double>(baseline_sum - energy_sum) /
                                 (frames * static_cast<double>(p.n_s));
        results.push_back(r);
    }
    return results;
}

void write_csv(std::ostream& os, const std::vector<TrialResult>& results,
               std::uint64_t seed) {
    os << "snr_db,frames,bit_errors,frame_errors,ber,fer,avg_energy,seed\n";
    char buf[256];
    for (const TrialResult& r : results) {
        std::snprintf(buf, sizeof(buf), "%.6g,%llu,%llu,%llu,%.10e,%.10e,%.10g,%llu\n",
                      r.snr_db, static_cast<unsigned long long>(r.frames),
                      static_cast<unsigned long long>(r.bit_errors),
                      static_cast<unsigned long long>(r.frame_errors), r.ber, r.fer,
                      r.avg_energy, static_cast<unsigned long long>(seed));
        os << buf;
    }
}

std::string csv_string(const std::vector<TrialResult>& results, std::uint64_t seed) {
    std::ostringstream os;
    write_csv(os, results, seed);
    return os.str();
}

EnergyReport energy_report(const ShapingConstruction& c, std::uint64_t seed,
                           std::uint64_t max_trials) {
    const ShapingParams& p = c.params;
    EnergyReport rep;
    rep.unshaped_energy = uniform_pam_energy(p.m);
    rep.rate_transmission = p.rate_transmission();
    rep.rate_code = p.rate_code();

    long long sum = 0;
    if (p.k_c() <= kExactEnergyCap) {
        std::uint64_t total = std::uint64_t{1} << p.k;
        BinVec u(p.k);
        for (std::uint64_t msg = 0; msg < total; ++msg) {
            for (std::size_t i = 0; i < p.k; ++i) {
                u.set(i, (msg >> (p.k - 1 - i)) & 1u);
            }
            sum += encode_shaped(u, c).energy;
        }
        rep.sampled = false;
        rep.trials = total;
    } else {
        if (max_trials == 0) {
            throw std::invalid_argument("energy_report: need a positive trial budget");
        }
        for (std::uint64_t t = 0; t < max_trials; ++t) {
            NoiseSource rng({seed, t});
            BinVec u(p.k);
            for (std::size_t i = 0; i < p.k; ++i) {
                u.set(i, rng.bit());
            }
            sum += encode_shaped(u, c).energy;
        }
        rep.sampled = true;
        rep.trials = max_trials;
    }
    rep.per_signal_energy = static_cast<double>(sum) /
                            (static_cast<double>(rep.trials) * static_cast<double>(p.n_s));
    rep.gain_db = shaping_gain_db(rep.unshaped_energy, rep.per_signal_energy);
    return rep;
}

EnergyReport energy_report(const ExperimentConfig& cfg) {
    LoadedExperiment exp = load_experiment(cfg);
    return energy_report(exp.construction, cfg.seed, cfg.max_frames);
}

std::array<CapacityPoint, 3> capacity_sweep(int m, double rate_bits_per_qam) {
    if (m < 1 || m > 8) {
        throw std::invalid_argument("capacity_sweep: m must be in [1, 8]");
    }
    if (!(rate_bits_per_qam > 0.0)) {
        throw std::invalid_argument("capacity_sweep: rate must be positive");
    }
    if (rate_bits_per_qam > 2.0 * m) {
        throw std::invalid_argument("capacity_sweep: rate exceeds 2m bits per QAM");
    }

    constexpr double kLo = -40.0;
    constexpr double kHi = 60.0;
    constexpr double kSentinel = -99.0;

    auto threshold = [&](auto&& mi) {
        if (mi(kLo) >= rate_bits_per_qam) {
            return kSentinel;
        }
        if (mi(kHi) < rate_bits_per_qam) {
            throw NumericError("capacity_sweep: rate not reached by 60 dB");
        }
        double lo = kLo;
        double hi = kHi;
        while (hi - lo > 1e-6) {
            double mid = 0.5 * (lo + hi);
            if (mi(mid) >= rate_bits_per_qam) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        return 0.5 * (lo + hi);
    };

    const GrayTable& gray = gray_table_ref(m);
    std::array<CapacityPoint, 3> out;
    double shannon = shannon_limit_snr(rate_bits_per_qam);
    out[0] = {shannon < kLo ? kSentinel : shannon, rate_bits_per_qam, CapacityKind::shannon};
    out[1] = {threshold([&](double snr) { return qam_cm_mi(m, snr); }), rate_bits_per_qam,
              CapacityKind::cm_qam};
    out[2] = {threshold([&](double snr) { return bicm_mi(m, snr, gray); }), rate_bits_per_qam,
              CapacityKind::bicm};
    return out;
}

}  // namespace coset
