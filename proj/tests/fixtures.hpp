#pragma once

// Small constructions shared across the test binaries, with hand-checked
// energies used as frozen expected values.

#include <optional>

#include "coset/gf2.hpp"
#include "coset/shaping.hpp"

namespace fixtures {

// [6,3] code for 8-PAM (m = 3, n_s = 2).  Systematic generator used by the
// mapping round-trip checks: u = (1,1,0) encodes to 110011 -> (5, 5).
inline coset::BinMatrix pam8_mapping_g() {
    return coset::BinMatrix::from_rows({"100110", "010101", "001011"});
}

// Row-equivalent [6,3] generator whose shaping-oriented form has the
// all-amplitude top row 111000 (rows: r0+r1+r2, r1, r2 of this matrix).
inline coset::BinMatrix pam8_shaping_g() {
    return coset::BinMatrix::from_rows({"100011", "010101", "001110"});
}

// One shaping bit riding on the three amplitude-heavy rows.
inline coset::ShapingConstruction pam8_shaped() {
    coset::ShapingParams params = coset::default_params(3, 2, 2, 1);
    std::optional<coset::BinMatrix> g_sh = coset::BinMatrix::from_rows({"111"});
    return coset::build_construction(pam8_shaping_g(), g_sh, params);
}

// Expected shaping-oriented generator of pam8_shaped().
inline coset::BinMatrix pam8_expected_g_so() {
    return coset::BinMatrix::from_rows({"111000", "010101", "001110"});
}

// [6,5] single-parity-check code for 4-PAM (m = 2, n_s = 3), one shaping
// bit.  Shaped per-signal energy 3 vs the uniform reference 5.
inline coset::ShapingConstruction pam4_shaped() {
    coset::BinMatrix g = coset::BinMatrix::from_rows(
        {"100001", "010001", "001001", "000101", "000011"});
    coset::ShapingParams params = coset::default_params(2, 3, 4, 1);
    std::optional<coset::BinMatrix> g_sh = coset::BinMatrix::from_rows({"111"});
    return coset::build_construction(g, g_sh, params);
}

// [7,4] Hamming parity-check matrix in alist form:
//   1 0 1 0 1 0 1
//   0 1 1 0 0 1 1
//   0 0 0 1 1 1 1
inline const char* hamming74_alist() {
    return "7 3\n"
           "3 4\n"
           "1 1 2 1 2 2 3\n"
           "4 4 4\n"
           "1 0 0\n"
           "2 0 0\n"
           "1 2 0\n"
           "3 0 0\n"
           "1 3 0\n"
           "2 3 0\n"
           "1 2 3\n"
           "1 3 5 7\n"
           "2 3 6 7\n"
           "4 5 6 7\n";
}

}  // namespace fixtures
