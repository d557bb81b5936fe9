#include "coset/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace coset {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

ChannelParams ChannelParams::from_snr_db(double snr_db, double es) {
    ChannelParams p;
    p.es = es;
    p.snr_db = snr_db;
    p.sigma2 = snr_to_sigma(snr_db, es);
    p.validate();
    return p;
}

ChannelParams ChannelParams::from_sigma2(double sigma2, double es) {
    ChannelParams p;
    p.es = es;
    p.sigma2 = sigma2;
    p.snr_db = sigma_to_snr(sigma2, es);
    p.validate();
    return p;
}

void ChannelParams::validate() const {
    if (!(sigma2 > 0.0)) {
        throw std::invalid_argument("ChannelParams: sigma2 must be positive");
    }
    if (!(es > 0.0)) {
        throw std::invalid_argument("ChannelParams: es must be positive");
    }
    double expected = 10.0 * std::log10(es / sigma2);
    if (std::abs(expected - snr_db) > 1e-9 * std::max(1.0, std::abs(expected))) {
        throw std::invalid_argument("ChannelParams: snr_db inconsistent with es/sigma2");
    }
}

double snr_to_sigma(double snr_db, double es) {
    if (!(es > 0.0)) {
        throw std::invalid_argument("snr_to_sigma: es must be positive");
    }
    return es / std::pow(10.0, snr_db / 10.0);
}

double sigma_to_snr(double sigma2, double es) {
    if (!(es > 0.0) || !(sigma2 > 0.0)) {
        throw std::invalid_argument("sigma_to_snr: es and sigma2 must be positive");
    }
    return 10.0 * std::log10(es / sigma2);
}

NoiseSource::NoiseSource(RngSeed seed) {
    std::uint64_t x = seed.master + 0x9E3779B97F4A7C15ull * (seed.stream + 1);
    for (std::uint64_t& s : state_) {
        s = splitmix64(x);
    }
}

std::uint64_t NoiseSource::next_u64() {
    std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double NoiseSource::uniform01() {
    // (0, 1]: safe as a log() argument.
    return 1.0 - static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

bool NoiseSource::bit() {
    return (next_u64() >> 63) != 0;
}

double NoiseSource::gaussian(double sigma) {
    if (has_spare_) {
        has_spare_ = false;
        return spare_ * sigma;
    }
    double u1 = uniform01();
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta) * sigma;
}

std::vector<double> add_noise(const SignalSeq& s, const ChannelParams& p, RngSeed seed) {
    p.validate();
    NoiseSource rng(seed);
    double sigma = std::sqrt(p.sigma2);
    std::vector<double> y(s.amps.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] = static_cast<double>(s.amps[i]) + rng.gaussian(sigma);
    }
    return y;
}

}  // namespace coset
