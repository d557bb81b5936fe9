#include "coset/metrics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "coset/channel.hpp"
#include "coset/errors.hpp"

namespace coset {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;

/// Uniform 2^m-PAM average energy (M^2 - 1) / 3.
double uniform_pam_energy(int m) {
    double points = static_cast<double>(1 << m);
    return (points * points - 1.0) / 3.0;
}

double log_sum_exp(const double* vals, const char* keep, std::size_t count) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < count; ++i) {
        if (keep[i] && vals[i] > best) {
            best = vals[i];
        }
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        if (keep[i]) {
            sum += std::exp(vals[i] - best);
        }
    }
    return best + std::log(sum);
}

/// One-dimensional CM mutual information of 2^m-PAM, bits per PAM signal,
/// at a fixed quadrature size.
double pam_cm_mi(int m, double sigma2, std::size_t nodes) {
    std::vector<double> t;
    std::vector<double> w;
    gauss_hermite(nodes, t, w);

    const GrayTable& table = gray_table_ref(m);
    std::size_t points = table.labels.size();
    std::vector<double> amp(points);
    for (std::size_t i = 0; i < points; ++i) {
        amp[i] = static_cast<double>(table.amplitude(i));
    }

    std::vector<double> args(points);
    std::vector<char> all(points, 1);
    double scale = std::sqrt(2.0 * sigma2);
    double acc = 0.0;
    for (std::size_t i = 0; i < points; ++i) {
        for (std::size_t q = 0; q < nodes; ++q) {
            double z = scale * t[q];
            for (std::size_t j = 0; j < points; ++j) {
                double d = amp[i] - amp[j];
                args[j] = (-d * d - 2.0 * d * z) / (2.0 * sigma2);
            }
            acc += w[q] * log_sum_exp(args.data(), all.data(), points);
        }
    }
    double avg_nats = acc / (static_cast<double>(points) * std::sqrt(kPi));
    return std::log2(static_cast<double>(points)) - avg_nats / kLn2;
}

/// One-dimensional sum of bit-level MIs of 2^m-PAM under `labeling`.
double pam_bicm_mi(const GrayTable& labeling, double sigma2, std::size_t nodes) {
    std::vector<double> t;
    std::vector<double> w;
    gauss_hermite(nodes, t, w);

    std::size_t points = labeling.labels.size();
    int m = labeling.m;
    std::vector<double> amp(points);
    for (std::size_t i = 0; i < points; ++i) {
        amp[i] = static_cast<double>(labeling.amplitude(i));
    }

    std::vector<double> args(points);
    std::vector<char> all(points, 1);
    std::vector<char> same(points);
    double scale = std::sqrt(2.0 * sigma2);
    double total = 0.0;
    for (int level = 0; level < m; ++level) {
        double acc = 0.0;
        for (std::size_t i = 0; i < points; ++i) {
            bool bit_i = (labeling.labels[i] >> level) & 1u;
            for (std::size_t j = 0; j < points; ++j) {
                same[j] = (((labeling.labels[j] >> level) & 1u) == bit_i) ? 1 : 0;
            }
            for (std::size_t q = 0; q < nodes; ++q) {
                double z = scale * t[q];
                for (std::size_t j = 0; j < points; ++j) {
                    double d = amp[i] - amp[j];
                    args[j] = (-d * d - 2.0 * d * z) / (2.0 * sigma2);
                }
                double lse_all = log_sum_exp(args.data(), all.data(), points);
                double lse_same = log_sum_exp(args.data(), same.data(), points);
                acc += w[q] * (lse_all - lse_same);
            }
        }
        total += 1.0 - acc / (static_cast<double>(points) * std::sqrt(kPi) * kLn2);
    }
    return total;
}

template <typename Eval>
double adaptive_mi(const Eval& eval) {
    double prev = eval(48);
    for (std::size_t nodes : {std::size_t{96}, std::size_t{192}, std::size_t{384}}) {
        double cur = eval(nodes);
        if (std::abs(cur - prev) <= 0.002) {
            return cur;
        }
        prev = cur;
    }
    throw NumericError("mutual information quadrature did not converge");
}

}  // namespace

double avg_energy(const std::vector<SignalSeq>& points) {
    if (points.empty()) {
        throw std::invalid_argument("avg_energy: empty set");
    }
    std::size_t n_s = points.front().size();
    double sum = 0.0;
    for (const SignalSeq& s : points) {
        if (s.size() != n_s) {
            throw std::invalid_argument("avg_energy: mixed sequence lengths");
        }
        sum += static_cast<double>(s.energy());
    }
    return sum / (static_cast<double>(points.size()) * static_cast<double>(n_s));
}

double shaping_gain_db(double e_unshaped, double e_shaped) {
    if (!(e_unshaped > 0.0) || !(e_shaped > 0.0)) {
        throw std::invalid_argument("shaping_gain_db: energies must be positive");
    }
    return 10.0 * std::log10(e_unshaped / e_shaped);
}

double shannon_limit_snr(double bits_per_qam) {
    if (!(bits_per_qam > 0.0)) {
        throw std::invalid_argument("shannon_limit_snr: rate must be positive");
    }
    return 10.0 * std::log10(std::exp2(bits_per_qam) - 1.0);
}

double qam_cm_mi(int m, double snr_db) {
    double es = uniform_pam_energy(m);
    double sigma2 = snr_to_sigma(snr_db, es);
    // Square QAM is a product of two identical PAM dimensions.
    return 2.0 * adaptive_mi([&](std::size_t nodes) { return pam_cm_mi(m, sigma2, nodes); });
}

double bicm_mi(int m, double snr_db, const GrayTable& labeling) {
    if (labeling.m != m || labeling.labels.size() != (std::size_t{1} << m)) {
        throw std::invalid_argument("bicm_mi: labeling does not match m");
    }
    double es = uniform_pam_energy(m);
    double sigma2 = snr_to_sigma(snr_db, es);
    return 2.0 *
           adaptive_mi([&](std::size_t nodes) { return pam_bicm_mi(labeling, sigma2, nodes); });
}

double nsm_estimate(const std::vector<SignalSeq>& points, double spacing) {
    if (!(spacing > 0.0)) {
        throw std::invalid_argument("nsm_estimate: spacing must be positive");
    }
    double p = avg_energy(points);
    double n_s = static_cast<double>(points.front().size());
    double volume_term =
        spacing * spacing * std::pow(static_cast<double>(points.size()), 2.0 / n_s);
    return p / volume_term;
}

double nsm_rate_bound(double p, double sigma2, double g) {
    if (!(p > 0.0) || !(sigma2 > 0.0) || !(g > 0.0)) {
        throw std::invalid_argument("nsm_rate_bound: arguments must be positive");
    }
    return 0.5 * std::log2(1.0 + p / sigma2) - 0.5 * std::log2(2.0 * kPi * std::numbers::e * g);
}

double sphere_volume(std::size_t n_s, double sigma2) {
    if (n_s < 2 || n_s % 2 != 0) {
        throw std::invalid_argument("sphere_volume: n_s must be even and >= 2");
    }
    if (!(sigma2 > 0.0)) {
        throw std::invalid_argument("sphere_volume: sigma2 must be positive");
    }
    double half_n = static_cast<double>(n_s) / 2.0;
    double log_vol = half_n * std::log(2.0 * kPi * std::numbers::e * sigma2) -
                     0.5 * std::log(2.0 * kPi * static_cast<double>(n_s));
    return std::exp(log_vol);
}

void gauss_hermite(std::size_t n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n == 0) {
        throw std::invalid_argument("gauss_hermite: need at least one node");
    }
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const double eps = 1e-14;
    double z = 0.0;
    double pp = 0.0;
    std::size_t half = (n + 1) / 2;
    std::vector<double> root(half, 0.0);
    for (std::size_t i = 0; i < half; ++i) {
        // Standard initial guesses for the descending positive roots.
        if (i == 0) {
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        } else if (i == 1) {
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * root[0];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * root[1];
        } else {
            z = 2.0 * z - root[i - 2];
        }
        for (int iter = 0; iter < 100; ++iter) {
            // Orthonormal Hermite recurrence (weight exp(-t^2)).
            double p1 = std::pow(kPi, -0.25);
            double p2 = 0.0;
            for (std::size_t j = 1; j <= n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / static_cast<double>(j)) * p2 -
                     std::sqrt(static_cast<double>(j - 1) / static_cast<double>(j)) * p3;
            }
            pp = std::sqrt(2.0 * static_cast<double>(n)) * p2;
            double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= eps) {
                break;
            }
        }
        root[i] = z;
        // Ascending output: negative mirror first, positive root at the far end.
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        weights[i] = 2.0 / (pp * pp);
        weights[n - 1 - i] = weights[i];
    }
}

}  // namespace coset
