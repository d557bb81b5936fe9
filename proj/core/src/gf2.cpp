#include "coset/gf2.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "coset/errors.hpp"

namespace coset {

namespace {

void check_index(std::size_t i, std::size_t len, const char* what) {
    if (i >= len) {
        throw std::invalid_argument(std::string(what) + ": index out of range");
    }
}

}  // namespace

BinVec::BinVec(std::initializer_list<int> bits) : BinVec(bits.size()) {
    std::size_t i = 0;
    for (int b : bits) {
        if (b != 0 && b != 1) {
            throw std::invalid_argument("BinVec: entries must be 0 or 1");
        }
        set(i++, b != 0);
    }
}

BinVec BinVec::from_string(std::string_view s) {
    BinVec v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1') {
            v.set(i, true);
        } else if (s[i] != '0') {
            throw std::invalid_argument("BinVec: characters must be '0' or '1'");
        }
    }
    return v;
}

bool BinVec::get(std::size_t i) const {
    check_index(i, len_, "BinVec::get");
    return (words_[i >> 6] >> (i & 63)) & 1u;
}

void BinVec::set(std::size_t i, bool value) {
    check_index(i, len_, "BinVec::set");
    std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value) {
        words_[i >> 6] |= mask;
    } else {
        words_[i >> 6] &= ~mask;
    }
}

void BinVec::flip(std::size_t i) {
    check_index(i, len_, "BinVec::flip");
    words_[i >> 6] ^= std::uint64_t{1} << (i & 63);
}

BinVec& BinVec::operator^=(const BinVec& other) {
    if (len_ != other.len_) {
        throw std::invalid_argument("BinVec::operator^=: length mismatch");
    }
    for (std::size_t w = 0; w < words_.size(); ++w) {
        words_[w] ^= other.words_[w];
    }
    return *this;
}

bool BinVec::lex_less(const BinVec& other) const {
    if (len_ != other.len_) {
        throw std::invalid_argument("BinVec::lex_less: length mismatch");
    }
    for (std::size_t w = 0; w < words_.size(); ++w) {
        std::uint64_t diff = words_[w] ^ other.words_[w];
        if (diff) {
            std::size_t bit = static_cast<std::size_t>(std::countr_zero(diff));
            // First differing position: the vector with 0 there sorts first.
            return ((words_[w] >> bit) & 1u) == 0;
        }
    }
    return false;
}

std::size_t BinVec::weight() const {
    std::size_t w = 0;
    for (std::uint64_t word : words_) {
        w += static_cast<std::size_t>(std::popcount(word));
    }
    return w;
}

bool BinVec::any() const {
    for (std::uint64_t word : words_) {
        if (word) {
            return true;
        }
    }
    return false;
}

BinVec BinVec::slice(std::size_t begin, std::size_t end) const {
    if (begin > end || end > len_) {
        throw std::invalid_argument("BinVec::slice: bad range");
    }
    BinVec out(end - begin);
    for (std::size_t i = begin; i < end; ++i) {
        out.set(i - begin, get(i));
    }
    return out;
}

BinVec BinVec::concat(const BinVec& tail) const {
    BinVec out(len_ + tail.len_);
    for (std::size_t i = 0; i < len_; ++i) {
        out.set(i, get(i));
    }
    for (std::size_t i = 0; i < tail.len_; ++i) {
        out.set(len_ + i, tail.get(i));
    }
    return out;
}

std::string BinVec::to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i) {
        if (get(i)) {
            s[i] = '1';
        }
    }
    return s;
}

BinMatrix::BinMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), wpr_(BinVec::word_count(cols)), bits_(rows * wpr_, 0) {
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("BinMatrix: dimensions must be positive");
    }
}

BinMatrix BinMatrix::identity(std::size_t n) {
    BinMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m.set(i, i, true);
    }
    return m;
}

BinMatrix BinMatrix::from_rows(std::initializer_list<std::string_view> rows) {
    std::vector<std::string> copy;
    copy.reserve(rows.size());
    for (std::string_view r : rows) {
        copy.emplace_back(r);
    }
    return from_rows(copy);
}

BinMatrix BinMatrix::from_rows(const std::vector<std::string>& rows) {
    if (rows.empty() || rows.front().empty()) {
        throw std::invalid_argument("BinMatrix::from_rows: empty input");
    }
    BinMatrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols_) {
            throw std::invalid_argument("BinMatrix::from_rows: ragged rows");
        }
        for (std::size_t c = 0; c < m.cols_; ++c) {
            if (rows[r][c] == '1') {
                m.set(r, c, true);
            } else if (rows[r][c] != '0') {
                throw std::invalid_argument("BinMatrix::from_rows: bad character");
            }
        }
    }
    return m;
}

bool BinMatrix::get(std::size_t r, std::size_t c) const {
    check_index(r, rows_, "BinMatrix::get row");
    check_index(c, cols_, "BinMatrix::get col");
    return (bits_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1u;
}

void BinMatrix::set(std::size_t r, std::size_t c, bool value) {
    check_index(r, rows_, "BinMatrix::set row");
    check_index(c, cols_, "BinMatrix::set col");
    std::uint64_t mask = std::uint64_t{1} << (c & 63);
    if (value) {
        bits_[r * wpr_ + (c >> 6)] |= mask;
    } else {
        bits_[r * wpr_ + (c >> 6)] &= ~mask;
    }
}

BinVec BinMatrix::row(std::size_t r) const {
    check_index(r, rows_, "BinMatrix::row");
    BinVec v(cols_);
    std::copy(bits_.begin() + r * wpr_, bits_.begin() + (r + 1) * wpr_, v.words().begin());
    return v;
}

void BinMatrix::set_row(std::size_t r, const BinVec& v) {
    check_index(r, rows_, "BinMatrix::set_row");
    if (v.size() != cols_) {
        throw std::invalid_argument("BinMatrix::set_row: length mismatch");
    }
    std::copy(v.words().begin(), v.words().end(), bits_.begin() + r * wpr_);
}

void BinMatrix::xor_rows(std::size_t src, std::size_t dst) {
    check_index(src, rows_, "BinMatrix::xor_rows");
    check_index(dst, rows_, "BinMatrix::xor_rows");
    const std::uint64_t* s = row_words(src);
    std::uint64_t* d = row_words(dst);
    for (std::size_t w = 0; w < wpr_; ++w) {
        d[w] ^= s[w];
    }
}

void BinMatrix::swap_rows(std::size_t a, std::size_t b) {
    check_index(a, rows_, "BinMatrix::swap_rows");
    check_index(b, rows_, "BinMatrix::swap_rows");
    if (a == b) {
        return;
    }
    std::swap_ranges(bits_.begin() + a * wpr_, bits_.begin() + (a + 1) * wpr_,
                     bits_.begin() + b * wpr_);
}

void BinMatrix::xor_row_into(std::size_t r, std::uint64_t* acc) const {
    check_index(r, rows_, "BinMatrix::xor_row_into");
    const std::uint64_t* s = row_words(r);
    for (std::size_t w = 0; w < wpr_; ++w) {
        acc[w] ^= s[w];
    }
}

std::string BinMatrix::to_string() const {
    std::string s;
    s.reserve(rows_ * (cols_ + 1));
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            s += get(r, c) ? '1' : '0';
        }
        s += '\n';
    }
    return s;
}

BinVec encode(const BinVec& u, const BinMatrix& g) {
    if (u.size() != g.rows()) {
        throw std::invalid_argument("encode: message length must equal generator rows");
    }
    BinVec v(g.cols());
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u.get(i)) {
            g.xor_row_into(i, v.words().data());
        }
    }
    return v;
}

namespace {

// Canonical reduced row echelon form; returns the rank.  Rows below the rank
// are zero.  Used for rank() and rowspace_equal().
std::size_t rref_in_place(BinMatrix& m) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t pivot = r;
        while (pivot < m.rows() && !m.get(pivot, c)) {
            ++pivot;
        }
        if (pivot == m.rows()) {
            continue;
        }
        m.swap_rows(pivot, r);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i != r && m.get(i, c)) {
                m.xor_rows(r, i);
            }
        }
        ++r;
    }
    return r;
}

}  // namespace

std::size_t rank(const BinMatrix& g) {
    BinMatrix copy = g;
    return rref_in_place(copy);
}

SystematicForm to_systematic(const BinMatrix& g) {
    BinMatrix m = g;
    std::vector<std::size_t> pivots;
    std::vector<bool> is_pivot(m.cols(), false);
    pivots.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::size_t c = 0;
        while (c < m.cols() && (is_pivot[c] || !m.get(r, c))) {
            ++c;
        }
        if (c == m.cols()) {
            throw std::invalid_argument("to_systematic: rows are linearly dependent");
        }
        is_pivot[c] = true;
        pivots.push_back(c);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i != r && m.get(i, c)) {
                m.xor_rows(r, i);
            }
        }
    }
    SystematicForm out;
    out.reduced = std::move(m);
    out.perm = pivots;
    for (std::size_t c = 0; c < g.cols(); ++c) {
        if (!is_pivot[c]) {
            out.perm.push_back(c);
        }
    }
    return out;
}

BinMatrix SystematicForm::applied() const {
    return permute_columns(reduced, perm);
}

bool rowspace_equal(const BinMatrix& a, const BinMatrix& b) {
    if (a.cols() != b.cols()) {
        throw std::invalid_argument("rowspace_equal: column count mismatch");
    }
    BinMatrix ra = a;
    BinMatrix rb = b;
    std::size_t rank_a = rref_in_place(ra);
    std::size_t rank_b = rref_in_place(rb);
    if (rank_a != rank_b) {
        return false;
    }
    for (std::size_t r = 0; r < rank_a; ++r) {
        if (ra.row(r) != rb.row(r)) {
            return false;
        }
    }
    return true;
}

BinMatrix permute_columns(const BinMatrix& g, const std::vector<std::size_t>& perm) {
    if (perm.size() != g.cols()) {
        throw std::invalid_argument("permute_columns: permutation length mismatch");
    }
    std::vector<bool> seen(g.cols(), false);
    for (std::size_t c : perm) {
        if (c >= g.cols() || seen[c]) {
            throw std::invalid_argument("permute_columns: not a permutation");
        }
        seen[c] = true;
    }
    BinMatrix out(g.rows(), g.cols());
    for (std::size_t r = 0; r < g.rows(); ++r) {
        for (std::size_t j = 0; j < g.cols(); ++j) {
            if (g.get(r, perm[j])) {
                out.set(r, j, true);
            }
        }
    }
    return out;
}

std::vector<std::size_t> identity_permutation(std::size_t n) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) {
        p[i] = i;
    }
    return p;
}

std::vector<std::size_t> inverse_permutation(const std::vector<std::size_t>& perm) {
    std::vector<std::size_t> inv(perm.size());
    std::vector<bool> seen(perm.size(), false);
    for (std::size_t j = 0; j < perm.size(); ++j) {
        if (perm[j] >= perm.size() || seen[perm[j]]) {
            throw std::invalid_argument("inverse_permutation: not a permutation");
        }
        seen[perm[j]] = true;
        inv[perm[j]] = j;
    }
    return inv;
}

void write_matrix(std::ostream& os, const BinMatrix& g) {
    os << g.rows() << ' ' << g.cols() << '\n';
    for (std::size_t r = 0; r < g.rows(); ++r) {
        for (std::size_t c = 0; c < g.cols(); ++c) {
            os << (g.get(r, c) ? '1' : '0');
            os << (c + 1 == g.cols() ? '\n' : ' ');
        }
    }
}

BinMatrix read_matrix(std::istream& is) {
    std::size_t rows = 0;
    std::size_t cols = 0;
    if (!(is >> rows >> cols)) {
        throw IoError("matrix: malformed header, expected 'rows cols'");
    }
    if (rows == 0 || cols == 0) {
        throw IoError("matrix: dimensions must be positive");
    }
    BinMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            std::string tok;
            if (!(is >> tok)) {
                throw IoError("matrix: truncated entries");
            }
            if (tok == "1") {
                m.set(r, c, true);
            } else if (tok != "0") {
                throw IoError("matrix: entries must be 0 or 1, got '" + tok + "'");
            }
        }
    }
    return m;
}

void write_matrix_file(const std::string& path, const BinMatrix& g) {
    std::ofstream os(path);
    if (!os) {
        throw IoError("cannot open for writing: " + path);
    }
    write_matrix(os, g);
    if (!os) {
        throw IoError("write failed: " + path);
    }
}

BinMatrix read_matrix_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) {
        throw IoError("cannot open: " + path);
    }
    return read_matrix(is);
}

}  // namespace coset
