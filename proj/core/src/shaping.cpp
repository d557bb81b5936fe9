#include "coset/shaping.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "coset/errors.hpp"

namespace coset {

namespace {

constexpr std::size_t kEnumerationCap = 24;

void check_enumerable(std::size_t k_c, const char* what) {
    if (k_c > kEnumerationCap) {
        throw std::invalid_argument(std::string(what) + ": enumeration too large (k_c > 24)");
    }
}

// XOR of the rows of g selected by the bits of `mask` interpreted over
// rows [first, first + count): bit b selects row first + count - 1 - b, so
// the mask equals the integer value of the selecting bit vector.
BinVec combine_rows(const BinMatrix& g, std::size_t first, std::size_t count,
                    std::uint64_t mask) {
    BinVec v(g.cols());
    for (std::size_t i = 0; i < count; ++i) {
        if ((mask >> (count - 1 - i)) & 1u) {
            g.xor_row_into(first + i, v.words().data());
        }
    }
    return v;
}

BinVec vec_from_int(std::uint64_t value, std::size_t len) {
    BinVec v(len);
    for (std::size_t i = 0; i < len; ++i) {
        if ((value >> (len - 1 - i)) & 1u) {
            v.set(i, true);
        }
    }
    return v;
}

void check_systematic(const BinMatrix& g, const char* what) {
    for (std::size_t r = 0; r < g.rows(); ++r) {
        for (std::size_t c = 0; c < g.rows(); ++c) {
            if (g.get(r, c) != (r == c)) {
                throw std::invalid_argument(std::string(what) +
                                            ": matrix is not in systematic form (I | B)");
            }
        }
    }
}

}  // namespace

double ShapingParams::rate_transmission() const {
    return static_cast<double>(k) / static_cast<double>(n_s);
}

double ShapingParams::rate_code() const {
    return static_cast<double>(k_c()) / static_cast<double>(n_s);
}

void ShapingParams::validate() const {
    if (m < 1 || m > 8) {
        throw std::invalid_argument("ShapingParams: m must be in [1, 8]");
    }
    if (n_s == 0) {
        throw std::invalid_argument("ShapingParams: n_s must be positive");
    }
    if (k_c() == 0 || k_c() > n()) {
        throw std::invalid_argument("ShapingParams: need 1 <= k + k_sh <= m * n_s");
    }
    if (k != k_a + k_s) {
        throw std::invalid_argument("ShapingParams: k must equal k_a + k_s");
    }
    if (k_s + r_s != n_s) {
        throw std::invalid_argument("ShapingParams: k_s + r_s must equal n_s");
    }
    if (k_a + r_a + k_sh != static_cast<std::size_t>(m - 1) * n_s) {
        throw std::invalid_argument("ShapingParams: k_a + r_a + k_sh must equal (m-1) * n_s");
    }
}

ShapingParams default_params(int m, std::size_t n_s, std::size_t k, std::size_t k_sh) {
    ShapingParams p;
    p.m = m;
    p.n_s = n_s;
    p.k = k;
    p.k_sh = k_sh;
    if (m < 1 || m > 8 || n_s == 0) {
        throw std::invalid_argument("default_params: need m in [1, 8] and n_s >= 1");
    }
    std::size_t amp = static_cast<std::size_t>(m - 1) * n_s;
    std::size_t info_on_amp = std::min(p.k_c(), amp);
    if (info_on_amp < k_sh) {
        throw std::invalid_argument("default_params: k_sh exceeds the amplitude positions");
    }
    p.k_a = info_on_amp - k_sh;
    p.k_s = p.k_c() - info_on_amp;
    p.r_a = amp - info_on_amp;
    p.r_s = n_s - p.k_s;
    p.validate();
    return p;
}

std::string default_layout(int m, std::size_t n_s) {
    if (m < 1 || m > 8 || n_s == 0) {
        throw std::invalid_argument("default_layout: need m in [1, 8] and n_s >= 1");
    }
    std::string layout(static_cast<std::size_t>(m - 1) * n_s, 'a');
    layout.append(n_s, 's');
    return layout;
}

ShapingConstruction build_construction(const BinMatrix& g,
                                       const std::optional<BinMatrix>& g_sh,
                                       const ShapingParams& params) {
    params.validate();
    ShapingParams expected =
        default_params(params.m, params.n_s, params.k, params.k_sh);
    if (params.k_a != expected.k_a || params.k_s != expected.k_s ||
        params.r_a != expected.r_a || params.r_s != expected.r_s) {
        throw std::invalid_argument(
            "build_construction: amplitude/sign split does not match the systematic layout");
    }
    if (g.rows() != params.k_c() || g.cols() != params.n()) {
        throw std::invalid_argument("build_construction: generator must be k_c x n");
    }
    check_systematic(g, "build_construction: g");

    ShapingConstruction c;
    c.params = params;
    c.layout = default_layout(params.m, params.n_s);
    c.g_so = g;

    if (params.k_sh == 0) {
        if (g_sh.has_value()) {
            throw std::invalid_argument("build_construction: g_sh given but k_sh = 0");
        }
        return c;
    }
    if (!g_sh.has_value()) {
        throw std::invalid_argument("build_construction: k_sh > 0 requires g_sh");
    }
    if (g_sh->rows() != params.k_sh || g_sh->cols() != params.n_sh()) {
        throw std::invalid_argument("build_construction: g_sh must be k_sh x n_sh");
    }
    check_systematic(*g_sh, "build_construction: g_sh");

    for (std::size_t i = 0; i < params.k_sh; ++i) {
        BinVec row(g.cols());
        for (std::size_t j = 0; j < params.n_sh(); ++j) {
            if (g_sh->get(i, j)) {
                g.xor_row_into(j, row.words().data());
            }
        }
        c.g_so.set_row(i, row);
    }
    if (!rowspace_equal(c.g_so, g)) {
        throw std::invalid_argument("build_construction: rank loss while forming shaping rows");
    }
    return c;
}

ShapedWord encode_shaped(const BinVec& u, const ShapingConstruction& c,
                         const EncodeOptions& opts) {
    const ShapingParams& p = c.params;
    if (u.size() != p.k) {
        throw std::invalid_argument("encode_shaped: message length must equal k");
    }
    if (p.k_sh > opts.max_shaping_bits) {
        throw std::invalid_argument(
            "encode_shaped: k_sh exceeds the configured coset-search cap");
    }

    BinVec cur(p.n());
    for (std::size_t i = 0; i < p.k; ++i) {
        if (u.get(i)) {
            c.g_so.xor_row_into(p.k_sh + i, cur.words().data());
        }
    }

    BinVec best = cur;
    long long best_energy = psi_energy(cur, p.m);
    std::uint64_t best_leader = 0;

    // Walk the 2^k_sh leaders in Gray-code order: step t flips one shaping
    // row and lands on leader value t ^ (t >> 1).
    std::uint64_t total = std::uint64_t{1} << p.k_sh;
    std::uint64_t gray = 0;
    for (std::uint64_t t = 1; t < total; ++t) {
        unsigned bit = static_cast<unsigned>(std::countr_zero(t));
        gray ^= std::uint64_t{1} << bit;
        c.g_so.xor_row_into(p.k_sh - 1 - bit, cur.words().data());
        long long e = psi_energy(cur, p.m);
        if (e < best_energy || (e == best_energy && gray < best_leader)) {
            best_energy = e;
            best_leader = gray;
            best = cur;
        }
    }

    ShapedWord w;
    w.u = u;
    w.u_sh_hat = vec_from_int(best_leader, p.k_sh);
    w.v = std::move(best);
    w.s = map_psi(w.v, p.m);
    w.energy = best_energy;
    return w;
}

BinVec decode_shaped(const BinVec& info_hat, const ShapingConstruction& c) {
    const ShapingParams& p = c.params;
    if (info_hat.size() != p.k_c()) {
        throw std::invalid_argument("decode_shaped: info vector length must equal k_c");
    }
    BinVec v = encode(info_hat, c.g_so);
    for (std::size_t i = 0; i < p.k_sh; ++i) {
        if (info_hat.get(i)) {
            c.g_so.xor_row_into(i, v.words().data());
        }
    }
    return v.slice(p.k_sh, p.k_c());
}

BinVec extract_info(const BinVec& codeword, const ShapingConstruction& c) {
    const ShapingParams& p = c.params;
    if (codeword.size() != p.n()) {
        throw std::invalid_argument("extract_info: codeword length must equal n");
    }
    BinVec u_sh = codeword.slice(0, p.k_sh);
    BinVec stripped = codeword;
    for (std::size_t i = 0; i < p.k_sh; ++i) {
        if (u_sh.get(i)) {
            c.g_so.xor_row_into(i, stripped.words().data());
        }
    }
    return u_sh.concat(stripped.slice(p.k_sh, p.k_c()));
}

std::vector<SignalSeq> sphere_shaper_bruteforce(const ShapingConstruction& c) {
    const ShapingParams& p = c.params;
    check_enumerable(p.k_c(), "sphere_shaper_bruteforce");

    std::uint64_t total = std::uint64_t{1} << p.k_c();
    std::vector<std::pair<long long, BinVec>> entries;
    entries.reserve(total);

    BinVec cur(p.n());
    entries.emplace_back(psi_energy(cur, p.m), cur);
    for (std::uint64_t t = 1; t < total; ++t) {
        unsigned bit = static_cast<unsigned>(std::countr_zero(t));
        c.g_so.xor_row_into(bit, cur.words().data());
        entries.emplace_back(psi_energy(cur, p.m), cur);
    }

    auto cmp = [](const std::pair<long long, BinVec>& a,
                  const std::pair<long long, BinVec>& b) {
        if (a.first != b.first) {
            return a.first < b.first;
        }
        return a.second.lex_less(b.second);
    };
    std::size_t keep = std::size_t{1} << p.k;
    std::nth_element(entries.begin(), entries.begin() + keep - 1, entries.end(), cmp);
    std::sort(entries.begin(), entries.begin() + keep, cmp);

    std::vector<SignalSeq> out;
    out.reserve(keep);
    for (std::size_t i = 0; i < keep; ++i) {
        out.push_back(map_psi(entries[i].second, p.m));
    }
    return out;
}

std::vector<double> coset_energy_table(const ShapingConstruction& c) {
    const ShapingParams& p = c.params;
    check_enumerable(p.k_c(), "coset_energy_table");

    std::vector<double> table;
    table.reserve(std::size_t{1} << p.k_sh);
    std::uint64_t messages = std::uint64_t{1} << p.k;
    for (std::uint64_t leader = 0; leader < (std::uint64_t{1} << p.k_sh); ++leader) {
        BinVec cur = combine_rows(c.g_so, 0, p.k_sh, leader);
        long long sum = psi_energy(cur, p.m);
        for (std::uint64_t t = 1; t < messages; ++t) {
            unsigned bit = static_cast<unsigned>(std::countr_zero(t));
            c.g_so.xor_row_into(p.k_sh + (p.k - 1 - bit), cur.words().data());
            sum += psi_energy(cur, p.m);
        }
        table.push_back(static_cast<double>(sum) /
                        (static_cast<double>(messages) * static_cast<double>(p.n_s)));
    }
    return table;
}

namespace {

const char* const kParamKeys[] = {"m", "n_s", "k", "k_sh", "k_a", "k_s", "r_a", "r_s"};

}  // namespace

void write_construction(std::ostream& os, const ShapingConstruction& c) {
    const ShapingParams& p = c.params;
    os << "m = " << p.m << '\n'
       << "n_s = " << p.n_s << '\n'
       << "k = " << p.k << '\n'
       << "k_sh = " << p.k_sh << '\n'
       << "k_a = " << p.k_a << '\n'
       << "k_s = " << p.k_s << '\n'
       << "r_a = " << p.r_a << '\n'
       << "r_s = " << p.r_s << '\n'
       << "layout = " << c.layout << '\n';
    write_matrix(os, c.g_so);
}

ShapingConstruction read_construction(std::istream& is) {
    std::map<std::string, std::string> kv;
    std::string line;
    // Key-value block first; the matrix header (a line without '=') ends it.
    while (true) {
        std::streampos before = is.tellg();
        if (!std::getline(is, line)) {
            throw IoError("construction: missing generator matrix");
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            is.seekg(before);
            break;
        }
        auto trim = [](std::string s) {
            std::size_t b = s.find_first_not_of(" \t\r");
            std::size_t e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw IoError("construction: malformed key-value line '" + line + "'");
        }
        if (kv.count(key)) {
            throw IoError("construction: duplicate key '" + key + "'");
        }
        kv[key] = value;
    }

    ShapingParams p;
    for (const char* key : kParamKeys) {
        auto it = kv.find(key);
        if (it == kv.end()) {
            throw IoError("construction: missing key '" + std::string(key) + "'");
        }
        unsigned long long parsed = 0;
        try {
            std::size_t pos = 0;
            parsed = std::stoull(it->second, &pos);
            if (pos != it->second.size()) {
                throw std::invalid_argument("trailing characters");
            }
        } catch (const std::exception&) {
            throw IoError("construction: key '" + std::string(key) +
                          "' is not a count: '" + it->second + "'");
        }
        std::string name = key;
        if (name == "m") {
            p.m = static_cast<int>(parsed);
        } else if (name == "n_s") {
            p.n_s = parsed;
        } else if (name == "k") {
            p.k = parsed;
        } else if (name == "k_sh") {
            p.k_sh = parsed;
        } else if (name == "k_a") {
            p.k_a = parsed;
        } else if (name == "k_s") {
            p.k_s = parsed;
        } else if (name == "r_a") {
            p.r_a = parsed;
        } else {
            p.r_s = parsed;
        }
    }
    auto layout_it = kv.find("layout");
    if (layout_it == kv.end()) {
        throw IoError("construction: missing key 'layout'");
    }
    if (kv.size() != 9) {
        for (const auto& [key, value] : kv) {
            bool known = key == "layout";
            for (const char* k : kParamKeys) {
                known = known || key == k;
            }
            if (!known) {
                throw IoError("construction: unknown key '" + key + "'");
            }
        }
    }

    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw IoError(std::string("construction: ") + e.what());
    }

    ShapingConstruction c;
    c.params = p;
    c.layout = layout_it->second;
    if (c.layout != default_layout(p.m, p.n_s)) {
        throw IoError("construction: layout does not match (m-1)*n_s 'a' + n_s 's'");
    }
    c.g_so = read_matrix(is);
    if (c.g_so.rows() != p.k_c() || c.g_so.cols() != p.n()) {
        throw IoError("construction: generator dimensions do not match parameters");
    }
    for (std::size_t i = 0; i < p.k_sh; ++i) {
        for (std::size_t j = 0; j < p.k_sh; ++j) {
            if (c.g_so.get(i, j) != (i == j)) {
                throw IoError("construction: shaping rows lack the identity block");
            }
        }
        for (std::size_t cc = p.n_sh(); cc < p.k_c(); ++cc) {
            if (c.g_so.get(i, cc)) {
                throw IoError("construction: shaping rows spill past n_sh info columns");
            }
        }
    }
    for (std::size_t i = 0; i < p.k; ++i) {
        for (std::size_t cc = 0; cc < p.k_c(); ++cc) {
            if (c.g_so.get(p.k_sh + i, cc) != (cc == p.k_sh + i)) {
                throw IoError("construction: message rows lack the identity block");
            }
        }
    }
    if (rank(c.g_so) != p.k_c()) {
        throw IoError("construction: generator is rank deficient");
    }
    return c;
}

void write_construction_file(const std::string& path, const ShapingConstruction& c) {
    std::ofstream os(path);
    if (!os) {
        throw IoError("cannot open for writing: " + path);
    }
    write_construction(os, c);
    if (!os) {
        throw IoError("write failed: " + path);
    }
}

ShapingConstruction read_construction_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) {
        throw IoError("cannot open: " + path);
    }
    return read_construction(is);
}

}  // namespace coset
