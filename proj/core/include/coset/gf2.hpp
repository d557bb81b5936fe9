#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace coset {

/// Bit vector over GF(2), packed 64 bits per word.  Unused high bits of the
/// last word are kept zero so whole-word comparison and XOR stay valid.
class BinVec {
public:
    BinVec() = default;
    explicit BinVec(std::size_t len) : len_(len), words_(word_count(len), 0) {}
    BinVec(std::initializer_list<int> bits);

    /// Parse from a string of '0'/'1' characters, e.g. "100110".
    static BinVec from_string(std::string_view s);

    std::size_t size() const { return len_; }
    bool empty() const { return len_ == 0; }

    bool get(std::size_t i) const;
    void set(std::size_t i, bool value);
    void flip(std::size_t i);

    BinVec& operator^=(const BinVec& other);
    friend BinVec operator^(BinVec a, const BinVec& b) {
        a ^= b;
        return a;
    }
    bool operator==(const BinVec&) const = default;

    /// Lexicographic order on the bit string, position 0 most significant.
    bool lex_less(const BinVec& other) const;

    std::size_t weight() const;
    bool any() const;

    BinVec slice(std::size_t begin, std::size_t end) const;
    BinVec concat(const BinVec& tail) const;

    std::string to_string() const;

    const std::vector<std::uint64_t>& words() const { return words_; }
    std::vector<std::uint64_t>& words() { return words_; }

    static std::size_t word_count(std::size_t bits) { return (bits + 63) / 64; }

private:
    std::size_t len_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Dense bit matrix over GF(2), rows packed like BinVec.
class BinMatrix {
public:
    BinMatrix() = default;
    BinMatrix(std::size_t rows, std::size_t cols);

    static BinMatrix identity(std::size_t n);
    /// Build from row strings of '0'/'1', all the same length.
    static BinMatrix from_rows(std::initializer_list<std::string_view> rows);
    static BinMatrix from_rows(const std::vector<std::string>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, bool value);

    BinVec row(std::size_t r) const;
    void set_row(std::size_t r, const BinVec& v);
    /// rows[dst] ^= rows[src]
    void xor_rows(std::size_t src, std::size_t dst);
    void swap_rows(std::size_t a, std::size_t b);

    /// XOR row r into an external word accumulator of matching width.
    void xor_row_into(std::size_t r, std::uint64_t* acc) const;

    bool operator==(const BinMatrix&) const = default;

    std::string to_string() const;

    std::size_t words_per_row() const { return wpr_; }
    const std::uint64_t* row_words(std::size_t r) const { return bits_.data() + r * wpr_; }
    std::uint64_t* row_words(std::size_t r) { return bits_.data() + r * wpr_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t wpr_ = 0;
    std::vector<std::uint64_t> bits_;
};

/// u * G over GF(2).  u must have length g.rows(); the result has length g.cols().
BinVec encode(const BinVec& u, const BinMatrix& g);

std::size_t rank(const BinMatrix& g);

/// Result of to_systematic: `reduced` is row-equivalent to the input and kept
/// in the original column order; applying `perm` (output position j takes
/// input column perm[j]) yields the systematic form (I | B).
struct SystematicForm {
    BinMatrix reduced;
    std::vector<std::size_t> perm;

    /// reduced with perm applied, i.e. the (I | B) matrix itself.
    BinMatrix applied() const;
};

/// Row-reduce g to systematic form without row swaps: row i pivots on its
/// leftmost set bit among columns not already used as pivots.  Throws
/// std::invalid_argument if the rows are linearly dependent.
SystematicForm to_systematic(const BinMatrix& g);

/// True when the row spaces coincide (compared via canonical reduced row
/// echelon forms, so row order and basis choice do not matter).
bool rowspace_equal(const BinMatrix& a, const BinMatrix& b);

/// Reorder columns: output column j = input column perm[j].
BinMatrix permute_columns(const BinMatrix& g, const std::vector<std::size_t>& perm);

std::vector<std::size_t> identity_permutation(std::size_t n);
std::vector<std::size_t> inverse_permutation(const std::vector<std::size_t>& perm);

// Plain text matrix exchange format: first line "rows cols", then one line
// per row of space-separated 0/1 entries.
void write_matrix(std::ostream& os, const BinMatrix& g);
BinMatrix read_matrix(std::istream& is);
void write_matrix_file(const std::string& path, const BinMatrix& g);
BinMatrix read_matrix_file(const std::string& path);

}  // namespace coset
