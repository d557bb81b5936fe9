#include "coset/mapper.hpp"

#include <mutex>
#include <stdexcept>

namespace coset {

namespace {

std::uint32_t gray_encode(std::uint32_t i) {
    return i ^ (i >> 1);
}

std::uint32_t gray_decode(std::uint32_t g) {
    g ^= g >> 1;
    g ^= g >> 2;
    g ^= g >> 4;
    g ^= g >> 8;
    g ^= g >> 16;
    return g;
}

void check_m(int m) {
    if (m < 1 || m > 8) {
        throw std::invalid_argument("gray_table: m must be in [1, 8]");
    }
}

}  // namespace

int GrayTable::amplitude(std::size_t index) const {
    if (index >= labels.size()) {
        throw std::invalid_argument("GrayTable::amplitude: index out of range");
    }
    return 2 * static_cast<int>(index) - (1 << m) + 1;
}

std::size_t GrayTable::index_of_amplitude(int amp) const {
    int shifted = amp + (1 << m) - 1;
    if (shifted < 0 || shifted % 2 != 0 || shifted / 2 >= (1 << m)) {
        throw std::invalid_argument("GrayTable::index_of_amplitude: amplitude not in alphabet");
    }
    return static_cast<std::size_t>(shifted / 2);
}

std::string GrayTable::label_string(std::size_t index) const {
    if (index >= labels.size()) {
        throw std::invalid_argument("GrayTable::label_string: index out of range");
    }
    std::string s(static_cast<std::size_t>(m), '0');
    for (int b = 0; b < m; ++b) {
        if ((labels[index] >> (m - 1 - b)) & 1u) {
            s[static_cast<std::size_t>(b)] = '1';
        }
    }
    return s;
}

GrayTable gray_table(int m) {
    check_m(m);
    GrayTable t;
    t.m = m;
    t.labels.resize(std::size_t{1} << m);
    for (std::uint32_t i = 0; i < t.labels.size(); ++i) {
        t.labels[i] = gray_encode(i);
    }
    return t;
}

const GrayTable& gray_table_ref(int m) {
    check_m(m);
    static const std::array<GrayTable, 8> tables = [] {
        std::array<GrayTable, 8> a;
        for (int mm = 1; mm <= 8; ++mm) {
            a[static_cast<std::size_t>(mm - 1)] = gray_table(mm);
        }
        return a;
    }();
    return tables[static_cast<std::size_t>(m - 1)];
}

long long SignalSeq::energy() const {
    long long e = 0;
    for (int a : amps) {
        e += static_cast<long long>(a) * a;
    }
    return e;
}

SignalSeq map_psi(const BinVec& v, int m) {
    check_m(m);
    if (v.size() == 0 || v.size() % static_cast<std::size_t>(m) != 0) {
        throw std::invalid_argument("map_psi: codeword length must be a positive multiple of m");
    }
    std::size_t n_s = v.size() / static_cast<std::size_t>(m);
    SignalSeq s;
    s.m = m;
    s.amps.resize(n_s);
    for (std::size_t j = 0; j < n_s; ++j) {
        std::uint32_t label = 0;
        for (int q = 0; q < m; ++q) {
            if (v.get(static_cast<std::size_t>(q) * n_s + j)) {
                label |= 1u << q;
            }
        }
        std::uint32_t index = gray_decode(label);
        s.amps[j] = 2 * static_cast<int>(index) - (1 << m) + 1;
    }
    return s;
}

BinVec unmap_psi(const SignalSeq& s) {
    check_m(s.m);
    if (s.amps.empty()) {
        throw std::invalid_argument("unmap_psi: empty sequence");
    }
    std::size_t n_s = s.amps.size();
    int m = s.m;
    BinVec v(n_s * static_cast<std::size_t>(m));
    for (std::size_t j = 0; j < n_s; ++j) {
        int shifted = s.amps[j] + (1 << m) - 1;
        if (shifted < 0 || shifted % 2 != 0 || shifted / 2 >= (1 << m)) {
            throw std::invalid_argument("unmap_psi: amplitude not in the 2^m-ary alphabet");
        }
        std::uint32_t label = gray_encode(static_cast<std::uint32_t>(shifted / 2));
        for (int q = 0; q < m; ++q) {
            if ((label >> q) & 1u) {
                v.set(static_cast<std::size_t>(q) * n_s + j, true);
            }
        }
    }
    return v;
}

long long psi_energy(const BinVec& v, int m) {
    check_m(m);
    if (v.size() == 0 || v.size() % static_cast<std::size_t>(m) != 0) {
        throw std::invalid_argument("psi_energy: codeword length must be a positive multiple of m");
    }
    std::size_t n_s = v.size() / static_cast<std::size_t>(m);
    long long e = 0;
    for (std::size_t j = 0; j < n_s; ++j) {
        std::uint32_t label = 0;
        for (int q = 0; q < m; ++q) {
            if (v.get(static_cast<std::size_t>(q) * n_s + j)) {
                label |= 1u << q;
            }
        }
        long long amp = 2 * static_cast<long long>(gray_decode(label)) - (1 << m) + 1;
        e += amp * amp;
    }
    return e;
}

std::vector<std::array<int, 2>> pair_qam(const SignalSeq& s) {
    if (s.amps.size() % 2 != 0) {
        throw std::invalid_argument("pair_qam: sequence length must be even");
    }
    std::vector<std::array<int, 2>> out(s.amps.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = {s.amps[2 * i], s.amps[2 * i + 1]};
    }
    return out;
}

}  // namespace coset
