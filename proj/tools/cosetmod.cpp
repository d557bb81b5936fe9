// Command-line front end: shaped encoding, energy reports, Monte Carlo
// sweeps, capacity thresholds and Gray tables.
//
// Exit codes: 0 success, 1 config/usage error, 2 I/O error, 3 numerical
// failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coset/errors.hpp"
#include "coset/harness.hpp"
#include "coset/mapper.hpp"
#include "coset/metrics.hpp"
#include "coset/shaping.hpp"

namespace {

struct SourceFlags {
    std::string construction;
    std::string generator;
    std::string generator_inline;
    std::string shaping_generator;
    std::string shaping_generator_inline;
    int m = 0;
    std::size_t k_sh = 0;
};

void add_source_flags(CLI::App* cmd, SourceFlags& src) {
    cmd->add_option("--construction", src.construction, "Serialized construction file");
    cmd->add_option("--generator", src.generator, "Generator matrix file");
    cmd->add_option("--generator-inline", src.generator_inline,
                    "Generator rows, ';'-separated 0/1 strings");
    cmd->add_option("--shaping-generator", src.shaping_generator, "Shaping generator file");
    cmd->add_option("--shaping-generator-inline", src.shaping_generator_inline,
                    "Shaping generator rows, ';'-separated");
    cmd->add_option("--m", src.m, "Bits per PAM signal (generator source)");
    cmd->add_option("--k-sh", src.k_sh, "Shaping bits (generator source)");
}

coset::ExperimentConfig config_from_flags(const SourceFlags& src) {
    coset::ExperimentConfig cfg;
    cfg.construction_file = src.construction;
    cfg.generator_file = src.generator;
    cfg.generator_inline = src.generator_inline;
    cfg.shaping_generator_file = src.shaping_generator;
    cfg.shaping_generator_inline = src.shaping_generator_inline;
    cfg.m = src.m;
    cfg.k_sh = src.k_sh;
    cfg.snr_db = {0.0};  // unused by encode/energy, keeps validate() happy
    return cfg;
}

int cmd_encode(const SourceFlags& src, const std::string& message) {
    coset::LoadedExperiment exp = coset::load_experiment(config_from_flags(src));
    const coset::ShapingConstruction& c = exp.construction;
    if (message.size() != c.params.k) {
        throw coset::ConfigError("encode: message must have exactly " +
                                 std::to_string(c.params.k) + " bits");
    }
    coset::BinVec u = coset::BinVec::from_string(message);
    coset::ShapedWord w = coset::encode_shaped(u, c);

    std::cout << "message   " << w.u.to_string() << "\n";
    std::cout << "shaping   "
              << (c.params.k_sh > 0 ? w.u_sh_hat.to_string() : std::string("(none)")) << "\n";
    std::cout << "codeword  " << w.v.to_string() << "\n";
    std::cout << "signals  ";
    for (int a : w.s.amps) {
        std::cout << ' ' << a;
    }
    std::cout << "\n";
    std::cout << "energy    " << w.energy << " ("
              << static_cast<double>(w.energy) / static_cast<double>(c.params.n_s)
              << " per signal)\n";
    return 0;
}

int cmd_energy(const SourceFlags& src, std::uint64_t seed, std::uint64_t trials) {
    coset::ExperimentConfig cfg = config_from_flags(src);
    cfg.seed = seed;
    cfg.max_frames = trials;
    coset::EnergyReport rep = coset::energy_report(cfg);

    std::printf("per_signal_energy  %.10g\n", rep.per_signal_energy);
    std::printf("unshaped_energy    %.10g\n", rep.unshaped_energy);
    std::printf("gain_db            %.6g\n", rep.gain_db);
    std::printf("rate_transmission  %.10g bits/signal\n", rep.rate_transmission);
    std::printf("rate_code          %.10g bits/signal\n", rep.rate_code);
    std::printf("messages           %llu (%s)\n",
                static_cast<unsigned long long>(rep.trials),
                rep.sampled ? "sampled" : "exact");
    return 0;
}

int cmd_simulate(const std::string& config_path, std::size_t threads) {
    coset::ExperimentConfig cfg = coset::parse_config_file(config_path);
    std::vector<coset::TrialResult> results = coset::run_experiment(cfg, threads);

    const coset::LoadedExperiment exp = coset::load_experiment(cfg);
    double n = static_cast<double>(exp.construction.params.n());
    for (const coset::TrialResult& r : results) {
        double frames = static_cast<double>(r.frames);
        std::fprintf(stderr,
                     "snr %7.3f dB  frames %7llu  ber %.4e  fer %.4e  cw_ber %.4e"
                     "  energy %.4f  saved %.4f\n",
                     r.snr_db, static_cast<unsigned long long>(r.frames), r.ber, r.fer,
                     static_cast<double>(r.codeword_bit_errors) / (frames * n), r.avg_energy,
                     r.avg_energy_reduction);
    }

    if (cfg.output.empty() || cfg.output == "-") {
        coset::write_csv(std::cout, results, cfg.seed);
    } else {
        std::ofstream os(cfg.output);
        if (!os) {
            throw coset::IoError("cannot open for writing: " + cfg.output);
        }
        coset::write_csv(os, results, cfg.seed);
        std::fprintf(stderr, "wrote %s\n", cfg.output.c_str());
    }
    return 0;
}

int cmd_capacity(int m, double rate) {
    auto points = coset::capacity_sweep(m, rate);
    const char* names[3] = {"shannon", "cm_qam", "bicm"};
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].snr_db <= -98.0) {
            std::printf("%-8s below -40 dB\n", names[i]);
        } else {
            std::printf("%-8s %.6f dB\n", names[i], points[i].snr_db);
        }
    }
    return 0;
}

int cmd_tables(int m) {
    const coset::GrayTable& t = coset::gray_table_ref(m);
    std::printf("# %d-PAM Gray labels (msb..lsb -> amplitude)\n", 1 << m);
    for (std::size_t i = 0; i < t.labels.size(); ++i) {
        std::printf("%s  %4d\n", t.label_string(i).c_str(), t.amplitude(i));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coset-based constellation shaping toolkit"};
    app.require_subcommand(1);

    SourceFlags enc_src;
    std::string message;
    CLI::App* enc = app.add_subcommand("encode", "Shaped-encode one message");
    add_source_flags(enc, enc_src);
    enc->add_option("--message", message, "Message bits, e.g. 110")->required();

    SourceFlags nrg_src;
    std::uint64_t nrg_seed = 1;
    std::uint64_t nrg_trials = 10000;
    CLI::App* nrg = app.add_subcommand("energy", "Average-energy report");
    add_source_flags(nrg, nrg_src);
    nrg->add_option("--seed", nrg_seed, "Sampling seed (large codes)");
    nrg->add_option("--trials", nrg_trials, "Sample size (large codes)");

    std::string sim_config;
    std::size_t sim_threads = 1;
    CLI::App* sim = app.add_subcommand("simulate", "Monte Carlo BER/FER sweep");
    sim->add_option("--config", sim_config, "Experiment config file")->required();
    sim->add_option("--threads", sim_threads, "Worker threads")->check(CLI::PositiveNumber);

    int cap_m = 0;
    double cap_rate = 0.0;
    CLI::App* cap = app.add_subcommand("capacity", "Threshold SNRs at a target rate");
    cap->add_option("--m", cap_m, "Bits per PAM signal")->required();
    cap->add_option("--rate", cap_rate, "Target rate, bits per QAM symbol")->required();

    int tab_m = 0;
    CLI::App* tab = app.add_subcommand("tables", "Print the Gray label table");
    tab->add_option("--m", tab_m, "Bits per PAM signal")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (enc->parsed()) {
            return cmd_encode(enc_src, message);
        }
        if (nrg->parsed()) {
            return cmd_energy(nrg_src, nrg_seed, nrg_trials);
        }
        if (sim->parsed()) {
            return cmd_simulate(sim_config, sim_threads);
        }
        if (cap->parsed()) {
            return cmd_capacity(cap_m, cap_rate);
        }
        if (tab->parsed()) {
            return cmd_tables(tab_m);
        }
    } catch (const coset::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const coset::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const coset::NumericError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
