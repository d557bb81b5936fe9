#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "coset/gf2.hpp"
#include "coset/mapper.hpp"

namespace coset {

/// Dimension bookkeeping for a coset-shaped coded modulation scheme.
///
///   n    = m * n_s          codeword bits
///   k_c  = k + k_sh         code dimension (message + shaping bits)
///   n_sh = k_a + k_sh       shaping code length
///
/// Amplitude positions are the first (m-1)*n_s codeword coordinates, sign
/// positions the last n_s.  k_a/k_s count message bits and r_a/r_s parity
/// bits landing on each kind; see validate() for the counting identities.
struct ShapingParams {
    int m = 0;
    std::size_t n_s = 0;
    std::size_t k = 0;
    std::size_t k_sh = 0;
    std::size_t k_a = 0;
    std::size_t k_s = 0;
    std::size_t r_a = 0;
    std::size_t r_s = 0;

    std::size_t n() const { return static_cast<std::size_t>(m) * n_s; }
    std::size_t k_c() const { return k + k_sh; }
    std::size_t n_sh() const { return k_a + k_sh; }

    /// Message bits per PAM signal (k / n_s).
    double rate_transmission() const;
    /// Code bits per PAM signal (k_c / n_s).
    double rate_code() const;

    /// Enforce: 1 <= m <= 8, n_s >= 1, k_c in [1, n], k = k_a + k_s,
    /// k_s + r_s = n_s, k_a + r_a + k_sh = (m-1)*n_s.
    void validate() const;
};

/// Fill in the amplitude/sign split for the canonical systematic layout:
/// shaping bits on coordinates [0, k_sh), message on [k_sh, k_c), parity on
/// [k_c, n), with coordinate c an amplitude position iff c < (m-1)*n_s.
ShapingParams default_params(int m, std::size_t n_s, std::size_t k, std::size_t k_sh);

/// Per-coordinate role string: 'a' for amplitude positions, 's' for sign.
std::string default_layout(int m, std::size_t n_s);

/// Generator matrix in shaping-oriented form: the top k_sh rows span the
/// shaping code used for coset-leader search, the bottom k rows carry the
/// message and keep an identity block on the message coordinates.
struct ShapingConstruction {
    ShapingParams params;
    BinMatrix g_so;
    std::string layout;

    std::size_t shaping_rows() const { return params.k_sh; }
};

/// Rebuild the top k_sh rows of a systematic generator g = (I | B) so they
/// equal g_sh = (I | P_sh) on the first n_sh coordinates: shaping row i is
/// the XOR of the g rows indexed by the support of g_sh row i.  The row
/// space is unchanged.  g_sh must be present exactly when k_sh > 0.
ShapingConstruction build_construction(const BinMatrix& g,
                                       const std::optional<BinMatrix>& g_sh,
                                       const ShapingParams& params);

/// One shaped encoding result.
struct ShapedWord {
    BinVec u;
    BinVec u_sh_hat;
    BinVec v;
    SignalSeq s;
    long long energy = 0;
};

struct EncodeOptions {
    /// Upper bound on k_sh for the exhaustive 2^k_sh coset-leader search.
    std::size_t max_shaping_bits = 24;
};

/// Min-energy coset-leader encoding: evaluate v(u_sh, u) = (u_sh u) * G_so
/// for every u_sh and keep the candidate with the smallest signal energy,
/// ties broken by lexicographically smallest u_sh.
ShapedWord encode_shaped(const BinVec& u, const ShapingConstruction& c,
                         const EncodeOptions& opts = {});

/// Strip the shaping component from a decoded information vector
/// (u_sh_tilde, u_tilde) of length k_c and return the k message bits.
BinVec decode_shaped(const BinVec& info_hat, const ShapingConstruction& c);

/// Read (u_sh | u) from a codeword of the construction's code.
BinVec extract_info(const BinVec& codeword, const ShapingConstruction& c);

/// Brute-force baseline: the 2^k minimum-energy points of the code's PAM
/// image, ties broken by lexicographic order of the codeword.  Returned in
/// (energy, codeword) order.
std::vector<SignalSeq> sphere_shaper_bruteforce(const ShapingConstruction& c);

/// Per-signal average energy of each coset, indexed by the integer value of
/// u_sh (all-zero leader first).
std::vector<double> coset_energy_table(const ShapingConstruction& c);

// Serialization: key-value parameter lines (m, n_s, k, k_sh, k_a, k_s, r_a,
// r_s, layout) followed by the generator matrix in the text format.
void write_construction(std::ostream& os, const ShapingConstruction& c);
ShapingConstruction read_construction(std::istream& is);
void write_construction_file(const std::string& path, const ShapingConstruction& c);
ShapingConstruction read_construction_file(const std::string& path);

}  // namespace coset
