#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "coset/decoding.hpp"
#include "coset/metrics.hpp"
#include "coset/shaping.hpp"

namespace coset {

/// Monte Carlo experiment description.  Exactly one construction source must
/// be set: a serialized construction file, a generator matrix (file or
/// inline rows), or a parity-check file (alist) from which a systematic
/// generator is derived.  BP decoding requires the parity source.
struct ExperimentConfig {
    std::string construction_file;
    std::string generator_file;
    std::string generator_inline;          // rows of '0'/'1', ';'-separated
    std::string shaping_generator_file;
    std::string shaping_generator_inline;
    std::string parity_file;

    int m = 0;                 // bits per PAM signal (generator/parity sources)
    std::size_t k_sh = 0;      // shaping bits

    std::vector<double> snr_db;

    enum class Decoder { ml, bp };
    Decoder decoder = Decoder::ml;
    std::size_t bp_iters = 50;

    std::size_t min_frame_errors = 100;
    std::size_t max_frames = 10000;
    std::uint64_t seed = 1;
    std::string output;        // CSV destination; empty or "-" means stdout

    void validate() const;
};

/// Parse the key-value config format ("key = value" lines, full-line '#'
/// comments).  Unknown or duplicate keys are rejected.
ExperimentConfig parse_config(std::istream& is);
ExperimentConfig parse_config_file(const std::string& path);

struct LoadedExperiment {
    ShapingConstruction construction;
    /// Present for the parity source, with columns permuted to match the
    /// construction's codeword coordinates.
    std::optional<ParityCheck> parity;
};
LoadedExperiment load_experiment(const ExperimentConfig& cfg);

/// Aggregated outcome of one SNR point.
struct TrialResult {
    double snr_db = 0.0;
    std::uint64_t frames = 0;
    std::uint64_t bit_errors = 0;           // message bits after shaping removal
    std::uint64_t frame_errors = 0;
    double ber = 0.0;                       // bit_errors / (frames * k)
    double fer = 0.0;                       // frame_errors / frames
    double avg_energy = 0.0;                // transmitted, per PAM signal
    double avg_energy_reduction = 0.0;      // vs the u_sh = 0 encoding, per signal
    std::uint64_t codeword_bit_errors = 0;  // pre-shaping-removal, logged only
};

/// Run the sweep.  The dB axis is anchored to the uniform 2^m-PAM reference
/// energy (M^2-1)/3, so shaped systems transmit less than `es` at the same
/// point; avg_energy reports what was actually sent.  Results are
/// bit-identical for any worker count: trials use per-(point, trial) RNG
/// streams, stopping happens on fixed batch boundaries (once frame errors
/// reach min_frame_errors or frames reach max_frames), and aggregation is
/// integer arithmetic in trial order.
std::vector<TrialResult> run_experiment(const ExperimentConfig& cfg, std::size_t workers = 1);

/// CSV with header: snr_db,frames,bit_errors,frame_errors,ber,fer,avg_energy,seed
void write_csv(std::ostream& os, const std::vector<TrialResult>& results, std::uint64_t seed);
std::string csv_string(const std::vector<TrialResult>& results, std::uint64_t seed);

/// Shaped vs uniform-reference energy.  Exact enumeration over all 2^k
/// messages when 2^k_c is small enough; otherwise a seeded sample of
/// max_trials messages (reported via `sampled`/`trials`).
EnergyReport energy_report(const ShapingConstruction& c, std::uint64_t seed,
                           std::uint64_t max_trials);
EnergyReport energy_report(const ExperimentConfig& cfg);

/// Shannon, CM and BICM threshold SNRs (dB) at the target rate in bits per
/// QAM symbol, by bisection on the monotone MI curves.  Thresholds below
/// -40 dB are reported as the sentinel -99.
std::array<CapacityPoint, 3> capacity_sweep(int m, double rate_bits_per_qam);

}  // namespace coset
