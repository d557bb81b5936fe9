#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "coset/gf2.hpp"

namespace coset {

/// Binary reflected Gray labeling of the 2^m-ary amplitude alphabet
/// {-(2^m - 1), ..., -1, 1, ..., 2^m - 1}.  Index i (amplitude 2i - 2^m + 1)
/// carries label i XOR (i >> 1), read MSB first.
struct GrayTable {
    int m = 0;
    std::vector<std::uint32_t> labels;  // labels[i], value of the m-bit label

    int amplitude(std::size_t index) const;
    std::size_t index_of_amplitude(int amp) const;
    std::string label_string(std::size_t index) const;
};

/// Build the labeling for 1 <= m <= 8.
GrayTable gray_table(int m);

/// Shared immutable instance (the tables are tiny and pure).
const GrayTable& gray_table_ref(int m);

/// A block of one-dimensional 2^m-ary amplitudes.
struct SignalSeq {
    int m = 0;
    std::vector<int> amps;

    std::size_t size() const { return amps.size(); }
    /// Sum of squared amplitudes (exact: amplitudes are odd integers).
    long long energy() const;
    bool operator==(const SignalSeq&) const = default;
};

/// Map a codeword of length m * n_s to n_s amplitudes.  The codeword is read
/// as m stacked length-n_s blocks; signal j collects bit j of every block,
/// the first block contributing the least significant label bit and the last
/// block the most significant (sign) bit.
SignalSeq map_psi(const BinVec& v, int m);

/// Inverse of map_psi.  Throws std::invalid_argument when an amplitude is not
/// in the 2^m-ary alphabet.
BinVec unmap_psi(const SignalSeq& s);

/// Group consecutive amplitude pairs into QAM symbols (I, Q).  The sequence
/// length must be even.
std::vector<std::array<int, 2>> pair_qam(const SignalSeq& s);

/// Squared norm of map_psi(v, m) without materializing the amplitudes.
/// Useful in the inner loop of the coset-leader search.
long long psi_energy(const BinVec& v, int m);

}  // namespace coset
