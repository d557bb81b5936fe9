#pragma once

#include <cstdint>
#include <vector>

#include "coset/mapper.hpp"

namespace coset {

/// AWGN channel description.  SNR is defined per real (PAM) dimension:
/// snr_db = 10*log10(es / sigma2) where es is the reference average energy
/// per PAM signal.  QAM-level SNR is identical because I and Q share the
/// convention.
struct ChannelParams {
    double sigma2 = 0.0;
    double es = 0.0;
    double snr_db = 0.0;

    static ChannelParams from_snr_db(double snr_db, double es);
    static ChannelParams from_sigma2(double sigma2, double es);
    void validate() const;
};

/// sigma2 = es / 10^(snr_db / 10)
double snr_to_sigma(double snr_db, double es);
/// snr_db = 10*log10(es / sigma2)
double sigma_to_snr(double sigma2, double es);

/// Identifies one reproducible random stream: the same (master, stream)
/// always yields the same sample sequence.
struct RngSeed {
    std::uint64_t master = 0;
    std::uint64_t stream = 0;
};

/// Deterministic Gaussian/uniform source: xoshiro256++ seeded via splitmix64
/// from (master, stream), Gaussians by Box-Muller.  Both algorithms are
/// spelled out in this library so the sample stream does not depend on the
/// standard library's unspecified distribution internals.
class NoiseSource {
public:
    explicit NoiseSource(RngSeed seed);

    std::uint64_t next_u64();
    /// Uniform in (0, 1].
    double uniform01();
    bool bit();
    /// Zero-mean Gaussian with standard deviation sigma.
    double gaussian(double sigma);

private:
    std::uint64_t state_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// y_i = s_i + e_i with e_i i.i.d. N(0, sigma2); deterministic given seed.
std::vector<double> add_noise(const SignalSeq& s, const ChannelParams& p, RngSeed seed);

}  // namespace coset
