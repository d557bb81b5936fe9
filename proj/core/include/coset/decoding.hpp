#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "coset/gf2.hpp"
#include "coset/shaping.hpp"

namespace coset {

/// Per-codeword-bit log-likelihood ratios, natural log, positive favors 0.
struct LlrVec {
    std::vector<double> values;
};

enum class DemapMode { exact, max_log };

/// Sparse binary parity-check matrix as adjacency lists.
struct ParityCheck {
    std::size_t n = 0;       // variable nodes (codeword bits)
    std::size_t n_chk = 0;   // check nodes
    std::vector<std::vector<std::uint32_t>> check_vars;  // per check, ascending
    std::vector<std::vector<std::uint32_t>> var_checks;  // per variable, ascending

    /// Enforce consistent dimensions and no empty row or column.
    void validate() const;
    bool syndrome_ok(const BinVec& v) const;
};

/// Exact maximum-likelihood decoding: the information vector (u_sh, u) whose
/// codeword image minimizes the squared distance to y.  Ties go to the
/// lexicographically smaller information vector.  Enumerates 2^k_c words.
BinVec ml_decode(const std::vector<double>& y, const ShapingConstruction& c);

/// Bit LLRs for Gray-labeled 2^m-PAM observations.  Output is in codeword
/// coordinate order (same layout map_psi reads).  The exact mode sums both
/// label subsets; max_log keeps only the dominant term of each.
LlrVec demap_llr(const std::vector<double>& y, int m, double sigma2,
                 DemapMode mode = DemapMode::exact);

struct BpOptions {
    std::size_t max_iters = 50;
    bool min_sum = false;     // full sum-product is the default
    double llr_clip = 30.0;   // channel LLR magnitude cap
};

struct BpResult {
    BinVec codeword;
    bool satisfied = false;   // all parity checks hold for the decision
    std::size_t iterations = 0;
};

/// Flooding-schedule belief propagation (tanh-product check update), early
/// exit once the hard decision satisfies every check.  A decision resting on
/// exactly-zero posteriors is never reported as satisfied.
BpResult bp_decode(const LlrVec& llr, const ParityCheck& h, const BpOptions& opts = {});
BpResult bp_decode(const LlrVec& llr, const ParityCheck& h, std::size_t max_iters);

// alist interchange format (n m / max degrees / degree lists / 1-based
// adjacency rows, zero-padded rows allowed).
ParityCheck parse_alist(std::istream& is);
ParityCheck parse_alist(const std::string& text);
ParityCheck parse_alist_file(const std::string& path);
void write_alist(std::ostream& os, const ParityCheck& h);
void write_alist_file(const std::string& path, const ParityCheck& h);

/// Progressive edge-growth LDPC constructor: n variables of degree
/// var_degree over n_chk checks, each new edge placed on the check that is
/// farthest from the variable's current subtree (lowest degree, then lowest
/// index, among candidates).  Deterministic for a given seed.
ParityCheck make_peg_ldpc(std::size_t n, std::size_t n_chk, std::size_t var_degree,
                          std::uint64_t seed);

/// Systematic generator for the null space of h.
struct DerivedGenerator {
    BinMatrix g;                     // k_c x n, (I | B) in the permuted order
    std::vector<std::size_t> perm;   // output coordinate j = original column perm[j]
    ParityCheck h;                   // h with columns permuted to match g
};
DerivedGenerator generator_from_parity(const ParityCheck& h);

ParityCheck permute_parity_columns(const ParityCheck& h, const std::vector<std::size_t>& perm);

}  // namespace coset
