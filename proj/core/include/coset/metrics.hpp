#pragma once

#include <cstdint>
#include <vector>

#include "coset/mapper.hpp"

namespace coset {

enum class CapacityKind { shannon, cm_qam, bicm };

struct CapacityPoint {
    double snr_db = 0.0;
    double bits_per_qam = 0.0;
    CapacityKind kind = CapacityKind::shannon;
};

/// Energy summary of a shaping construction.
struct EnergyReport {
    double per_signal_energy = 0.0;  // shaped average, per PAM signal
    double unshaped_energy = 0.0;    // uniform 2^m-PAM reference (M^2-1)/3
    double gain_db = 0.0;
    double rate_transmission = 0.0;  // message bits per PAM signal
    double rate_code = 0.0;          // code bits per PAM signal
    bool sampled = false;            // true when estimated from random messages
    std::uint64_t trials = 0;        // messages evaluated
};

/// Mean squared norm per signal: (1/|points|) * sum ||s||^2 / n_s.
double avg_energy(const std::vector<SignalSeq>& points);

/// 10*log10(e_unshaped / e_shaped).
double shaping_gain_db(double e_unshaped, double e_shaped);

/// SNR (dB, per real dimension) where log2(1 + snr) reaches the target rate
/// in bits per QAM symbol (a QAM symbol spans two real dimensions at the
/// same per-dimension SNR).
double shannon_limit_snr(double bits_per_qam);

/// Mutual information of uniform square 2^(2m)-QAM over AWGN, bits per QAM
/// symbol.  Gauss-Hermite quadrature with adaptive node doubling until two
/// successive estimates agree within 0.002 bit, so the result is accurate
/// to 0.005 bit.
double qam_cm_mi(int m, double snr_db);

/// Sum of bit-level mutual informations sum_l I(B_l; Y) under the given
/// labeling, bits per QAM symbol (two PAM dimensions); same accuracy
/// contract as qam_cm_mi.
double bicm_mi(int m, double snr_db, const GrayTable& labeling);

/// Discrete normalized-second-moment estimate of a signal set: each point
/// is assigned a hypercubic cell of side `spacing` (2 is the PAM grid
/// spacing), giving  G = P / (spacing^2 * |set|^(2/n_s))  with P the
/// per-signal average energy.  Converges to the continuous NSM of the
/// underlying region as the set grows dense.
double nsm_estimate(const std::vector<SignalSeq>& points, double spacing = 2.0);

/// Achievable-rate bound for shaping regions of normalized second moment g
/// over an AWGN channel with signal power p and noise variance sigma2:
///   (1/2)*log2(1 + p/sigma2) - (1/2)*log2(2*pi*e*g)   bits per dimension.
/// The penalty term vanishes at the sphere's g = 1/(2*pi*e) and costs
/// 0.2546 bits (the 1.53 dB gap) at the cube's g = 1/12.
double nsm_rate_bound(double p, double sigma2, double g);

/// Asymptotic volume of the n_s-dimensional sphere of radius sigma*sqrt(n_s):
/// (2*pi*e*sigma2)^(n_s/2) / sqrt(2*pi*n_s).  This is the large-n_s form,
/// not the exact Gamma-function volume; n_s must be even.
double sphere_volume(std::size_t n_s, double sigma2);

/// Gauss-Hermite nodes/weights for integrals of exp(-t^2)*f(t); weights sum
/// to sqrt(pi).  Exposed for tests of the quadrature itself.
void gauss_hermite(std::size_t n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace coset
