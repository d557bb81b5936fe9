#include "coset/decoding.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "coset/channel.hpp"
#include "coset/errors.hpp"

namespace coset {

void ParityCheck::validate() const {
    if (n == 0 || n_chk == 0) {
        throw std::invalid_argument("ParityCheck: dimensions must be positive");
    }
    if (check_vars.size() != n_chk || var_checks.size() != n) {
        throw std::invalid_argument("ParityCheck: adjacency sizes do not match dimensions");
    }
    for (const auto& row : check_vars) {
        if (row.empty()) {
            throw std::invalid_argument("ParityCheck: empty check row");
        }
        for (std::uint32_t v : row) {
            if (v >= n) {
                throw std::invalid_argument("ParityCheck: variable index out of range");
            }
        }
    }
    for (const auto& col : var_checks) {
        if (col.empty()) {
            throw std::invalid_argument("ParityCheck: empty variable column");
        }
        for (std::uint32_t c : col) {
            if (c >= n_chk) {
                throw std::invalid_argument("ParityCheck: check index out of range");
            }
        }
    }
}

bool ParityCheck::syndrome_ok(const BinVec& v) const {
    if (v.size() != n) {
        throw std::invalid_argument("ParityCheck::syndrome_ok: length mismatch");
    }
    for (const auto& row : check_vars) {
        bool parity = false;
        for (std::uint32_t var : row) {
            parity ^= v.get(var);
        }
        if (parity) {
            return false;
        }
    }
    return true;
}

BinVec ml_decode(const std::vector<double>& y, const ShapingConstruction& c) {
    const ShapingParams& p = c.params;
    if (y.size() != p.n_s) {
        throw std::invalid_argument("ml_decode: observation length must equal n_s");
    }
    if (p.k_c() > 20) {
        throw std::invalid_argument("ml_decode: enumeration too large (k_c > 20)");
    }

    // Gray-walk all information vectors; bit b of the walk counter flips
    // info position k_c-1-b so the visited integer equals the info vector's
    // value and lexicographic tie-breaks reduce to integer comparison.
    std::uint64_t total = std::uint64_t{1} << p.k_c();
    BinVec cur(p.n());
    std::uint64_t gray = 0;

    auto distance2 = [&](const BinVec& v) {
        SignalSeq s = map_psi(v, p.m);
        double d = 0.0;
        for (std::size_t j = 0; j < y.size(); ++j) {
            double diff = y[j] - static_cast<double>(s.amps[j]);
            d += diff * diff;
        }
        return d;
    };

    double best_d = distance2(cur);
    std::uint64_t best_info = 0;
    for (std::uint64_t t = 1; t < total; ++t) {
        unsigned bit = static_cast<unsigned>(std::countr_zero(t));
        gray ^= std::uint64_t{1} << bit;
        c.g_so.xor_row_into(p.k_c() - 1 - bit, cur.words().data());
        double d = distance2(cur);
        if (d < best_d || (d == best_d && gray < best_info)) {
            best_d = d;
            best_info = gray;
        }
    }

    BinVec info(p.k_c());
    for (std::size_t i = 0; i < p.k_c(); ++i) {
        if ((best_info >> (p.k_c() - 1 - i)) & 1u) {
            info.set(i, true);
        }
    }
    return info;
}

LlrVec demap_llr(const std::vector<double>& y, int m, double sigma2, DemapMode mode) {
    if (!(sigma2 > 0.0)) {
        throw std::invalid_argument("demap_llr: sigma2 must be positive");
    }
    const GrayTable& table = gray_table_ref(m);
    std::size_t n_s = y.size();
    if (n_s == 0) {
        throw std::invalid_argument("demap_llr: empty observation");
    }
    std::size_t points = table.labels.size();

    LlrVec out;
    out.values.assign(n_s * static_cast<std::size_t>(m), 0.0);

    std::vector<double> metric(points);
    for (std::size_t j = 0; j < n_s; ++j) {
        for (std::size_t i = 0; i < points; ++i) {
            double diff = y[j] - static_cast<double>(table.amplitude(i));
            metric[i] = -diff * diff / (2.0 * sigma2);
        }
        // Codeword coordinate q*n_s + j carries label bit q of signal j.
        for (int q = 0; q < m; ++q) {
            double best0 = -std::numeric_limits<double>::infinity();
            double best1 = best0;
            double sum0 = 0.0;
            double sum1 = 0.0;
            for (std::size_t i = 0; i < points; ++i) {
                bool one = (table.labels[i] >> q) & 1u;
                (one ? best1 : best0) = std::max(one ? best1 : best0, metric[i]);
            }
            if (mode == DemapMode::exact) {
                for (std::size_t i = 0; i < points; ++i) {
                    bool one = (table.labels[i] >> q) & 1u;
                    if (one) {
                        sum1 += std::exp(metric[i] - best1);
                    } else {
                        sum0 += std::exp(metric[i] - best0);
                    }
                }
                out.values[static_cast<std::size_t>(q) * n_s + j] =
                    (best0 + std::log(sum0)) - (best1 + std::log(sum1));
            } else {
                out.values[static_cast<std::size_t>(q) * n_s + j] = best0 - best1;
            }
        }
    }
    return out;
}

BpResult bp_decode(const LlrVec& llr, const ParityCheck& h, std::size_t max_iters) {
    BpOptions opts;
    opts.max_iters = max_iters;
    return bp_decode(llr, h, opts);
}

BpResult bp_decode(const LlrVec& llr, const ParityCheck& h, const BpOptions& opts) {
    h.validate();
    if (llr.values.size() != h.n) {
        throw std::invalid_argument("bp_decode: LLR length must equal variable count");
    }

    // Flattened edge arrays in check-major order.
    std::vector<std::size_t> chk_offset(h.n_chk + 1, 0);
    for (std::size_t c = 0; c < h.n_chk; ++c) {
        chk_offset[c + 1] = chk_offset[c] + h.check_vars[c].size();
    }
    std::size_t n_edges = chk_offset[h.n_chk];
    std::vector<std::uint32_t> edge_var(n_edges);
    std::vector<std::vector<std::size_t>> var_edges(h.n);
    for (std::size_t c = 0; c < h.n_chk; ++c) {
        for (std::size_t i = 0; i < h.check_vars[c].size(); ++i) {
            std::size_t e = chk_offset[c] + i;
            edge_var[e] = h.check_vars[c][i];
            var_edges[h.check_vars[c][i]].push_back(e);
        }
    }

    std::vector<double> channel(h.n);
    for (std::size_t v = 0; v < h.n; ++v) {
        channel[v] = std::clamp(llr.values[v], -opts.llr_clip, opts.llr_clip);
    }

    std::vector<double> msg_vc(n_edges);   // variable -> check
    std::vector<double> msg_cv(n_edges, 0.0);
    for (std::size_t e = 0; e < n_edges; ++e) {
        msg_vc[e] = channel[edge_var[e]];
    }

    std::vector<double> total(h.n);
    BinVec decision(h.n);
    std::vector<double> buf;

    auto hard_decide = [&]() {
        bool decisive = true;
        for (std::size_t v = 0; v < h.n; ++v) {
            total[v] = channel[v];
            for (std::size_t e : var_edges[v]) {
                total[v] += msg_cv[e];
            }
            decision.set(v, total[v] < 0.0);
            decisive = decisive && total[v] != 0.0;
        }
        return decisive;
    };

    std::size_t iter = 0;
    bool satisfied = false;
    for (iter = 1; iter <= opts.max_iters; ++iter) {
        for (std::size_t c = 0; c < h.n_chk; ++c) {
            std::size_t deg = chk_offset[c + 1] - chk_offset[c];
            buf.resize(deg);
            if (opts.min_sum) {
                double min1 = std::numeric_limits<double>::infinity();
                double min2 = min1;
                std::size_t argmin = 0;
                int sign = 1;
                for (std::size_t i = 0; i < deg; ++i) {
                    double v = msg_vc[chk_offset[c] + i];
                    if (v < 0.0) {
                        sign = -sign;
                    }
                    double mag = std::abs(v);
                    if (mag < min1) {
                        min2 = min1;
                        min1 = mag;
                        argmin = i;
                    } else if (mag < min2) {
                        min2 = mag;
                    }
                }
                for (std::size_t i = 0; i < deg; ++i) {
                    double v = msg_vc[chk_offset[c] + i];
                    double mag = (i == argmin) ? min2 : min1;
                    if (!std::isfinite(mag)) {
                        mag = opts.llr_clip;  // degree-1 check: pin the bit
                    }
                    int s = sign * (v < 0.0 ? -1 : 1);
                    msg_cv[chk_offset[c] + i] = s * mag;
                }
            } else {
                // tanh-product with prefix/suffix products so each outgoing
                // message excludes its own edge without division.
                for (std::size_t i = 0; i < deg; ++i) {
                    buf[i] = std::tanh(0.5 * msg_vc[chk_offset[c] + i]);
                }
                double suffix = 1.0;
                for (std::size_t i = deg; i-- > 0;) {
                    msg_cv[chk_offset[c] + i] = suffix;
                    suffix *= buf[i];
                }
                double prefix = 1.0;
                for (std::size_t i = 0; i < deg; ++i) {
                    double prod = prefix * msg_cv[chk_offset[c] + i];
                    prefix *= buf[i];
                    prod = std::clamp(prod, -(1.0 - 1e-15), 1.0 - 1e-15);
                    msg_cv[chk_offset[c] + i] = 2.0 * std::atanh(prod);
                }
            }
        }

        bool decisive = hard_decide();
        if (decisive && h.syndrome_ok(decision)) {
            satisfied = true;
            break;
        }

        for (std::size_t v = 0; v < h.n; ++v) {
            for (std::size_t e : var_edges[v]) {
                msg_vc[e] = total[v] - msg_cv[e];
            }
        }
    }

    BpResult result;
    result.codeword = decision;
    result.satisfied = satisfied;
    result.iterations = std::min(iter, opts.max_iters);
    return result;
}

namespace {

std::vector<long long> read_ints_line(std::istream& is, const char* what) {
    std::string line;
    do {
        if (!std::getline(is, line)) {
            throw IoError(std::string("alist: missing ") + what);
        }
    } while (line.find_first_not_of(" \t\r") == std::string::npos);
    std::istringstream ls(line);
    std::vector<long long> vals;
    long long v = 0;
    while (ls >> v) {
        vals.push_back(v);
    }
    if (!ls.eof()) {
        throw IoError(std::string("alist: non-integer token in ") + what);
    }
    if (vals.empty()) {
        throw IoError(std::string("alist: empty ") + what);
    }
    return vals;
}

std::vector<std::uint32_t> parse_adjacency_row(const std::vector<long long>& vals,
                                               long long degree, long long limit,
                                               const char* what) {
    std::vector<std::uint32_t> row;
    bool in_padding = false;
    for (long long v : vals) {
        if (v == 0) {
            in_padding = true;
            continue;
        }
        if (in_padding) {
            throw IoError(std::string("alist: nonzero entry after padding in ") + what);
        }
        if (v < 1 || v > limit) {
            throw IoError(std::string("alist: index out of range in ") + what);
        }
        row.push_back(static_cast<std::uint32_t>(v - 1));
    }
    if (static_cast<long long>(row.size()) != degree) {
        throw IoError(std::string("alist: degree mismatch in ") + what);
    }
    std::sort(row.begin(), row.end());
    if (std::adjacent_find(row.begin(), row.end()) != row.end()) {
        throw IoError(std::string("alist: duplicate index in ") + what);
    }
    return row;
}

}  // namespace

ParityCheck parse_alist(std::istream& is) {
    auto header = read_ints_line(is, "header");
    if (header.size() != 2 || header[0] < 1 || header[1] < 1) {
        throw IoError("alist: malformed header, expected 'n m'");
    }
    std::size_t n = static_cast<std::size_t>(header[0]);
    std::size_t n_chk = static_cast<std::size_t>(header[1]);

    auto maxdeg = read_ints_line(is, "max-degree line");
    if (maxdeg.size() != 2 || maxdeg[0] < 1 || maxdeg[1] < 1) {
        throw IoError("alist: malformed max-degree line");
    }

    auto var_deg = read_ints_line(is, "variable degree list");
    auto chk_deg = read_ints_line(is, "check degree list");
    if (var_deg.size() != n || chk_deg.size() != n_chk) {
        throw IoError("alist: degree list length mismatch");
    }
    for (long long d : var_deg) {
        if (d < 1 || d > maxdeg[0]) {
            throw IoError("alist: variable degree out of range");
        }
    }
    for (long long d : chk_deg) {
        if (d < 1 || d > maxdeg[1]) {
            throw IoError("alist: check degree out of range");
        }
    }

    ParityCheck h;
    h.n = n;
    h.n_chk = n_chk;
    h.var_checks.resize(n);
    h.check_vars.resize(n_chk);
    for (std::size_t v = 0; v < n; ++v) {
        h.var_checks[v] = parse_adjacency_row(
            read_ints_line(is, "variable adjacency row"), var_deg[v],
            static_cast<long long>(n_chk), "variable adjacency row");
    }
    for (std::size_t c = 0; c < n_chk; ++c) {
        h.check_vars[c] = parse_adjacency_row(
            read_ints_line(is, "check adjacency row"), chk_deg[c],
            static_cast<long long>(n), "check adjacency row");
    }

    // The two adjacency views must describe the same edge set.
    std::vector<std::vector<std::uint32_t>> from_checks(n);
    for (std::size_t c = 0; c < n_chk; ++c) {
        for (std::uint32_t v : h.check_vars[c]) {
            from_checks[v].push_back(static_cast<std::uint32_t>(c));
        }
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (from_checks[v] != h.var_checks[v]) {
            throw IoError("alist: variable and check adjacency lists disagree");
        }
    }
    h.validate();
    return h;
}

ParityCheck parse_alist(const std::string& text) {
    std::istringstream is(text);
    return parse_alist(is);
}

ParityCheck parse_alist_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) {
        throw IoError("cannot open: " + path);
    }
    return parse_alist(is);
}

void write_alist(std::ostream& os, const ParityCheck& h) {
    h.validate();
    std::size_t dv_max = 0;
    std::size_t dc_max = 0;
    for (const auto& col : h.var_checks) {
        dv_max = std::max(dv_max, col.size());
    }
    for (const auto& row : h.check_vars) {
        dc_max = std::max(dc_max, row.size());
    }
    os << h.n << ' ' << h.n_chk << '\n' << dv_max << ' ' << dc_max << '\n';
    for (std::size_t v = 0; v < h.n; ++v) {
        os << h.var_checks[v].size() << (v + 1 == h.n ? '\n' : ' ');
    }
    for (std::size_t c = 0; c < h.n_chk; ++c) {
        os << h.check_vars[c].size() << (c + 1 == h.n_chk ? '\n' : ' ');
    }
    auto write_row = [&os](const std::vector<std::uint32_t>& row, std::size_t width) {
        for (std::size_t i = 0; i < width; ++i) {
            os << (i < row.size() ? row[i] + 1 : 0) << (i + 1 == width ? '\n' : ' ');
        }
    };
    for (const auto& col : h.var_checks) {
        write_row(col, dv_max);
    }
    for (const auto& row : h.check_vars) {
        write_row(row, dc_max);
    }
}

void write_alist_file(const std::string& path, const ParityCheck& h) {
    std::ofstream os(path);
    if (!os) {
        throw IoError("cannot open for writing: " + path);
    }
    write_alist(os, h);
    if (!os) {
        throw IoError("write failed: " + path);
    }
}

ParityCheck make_peg_ldpc(std::size_t n, std::size_t n_chk, std::size_t var_degree,
                          std::uint64_t seed) {
    if (n == 0 || n_chk == 0 || var_degree == 0 || var_degree > n_chk) {
        throw std::invalid_argument("make_peg_ldpc: bad dimensions");
    }
    ParityCheck h;
    h.n = n;
    h.n_chk = n_chk;
    h.var_checks.resize(n);
    h.check_vars.resize(n_chk);
    std::vector<std::size_t> chk_degree(n_chk, 0);

    // Seeded variable processing order; the edge placement itself is
    // deterministic given the order.
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    NoiseSource rng({seed, 0});
    for (std::size_t i = n; i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.next_u64() % i);
        std::swap(order[i - 1], order[j]);
    }

    std::vector<int> mark(n_chk, -1);
    int epoch = 0;
    std::vector<std::uint32_t> frontier;
    std::vector<std::uint32_t> next_frontier;
    std::vector<int> depth(n_chk, 0);

    auto pick_lowest_degree = [&](auto&& eligible) {
        std::size_t best = n_chk;
        for (std::size_t c = 0; c < n_chk; ++c) {
            if (!eligible(c)) {
                continue;
            }
            if (best == n_chk || chk_degree[c] < chk_degree[best]) {
                best = c;
            }
        }
        return best;
    };

    for (std::uint32_t v : order) {
        for (std::size_t e = 0; e < var_degree; ++e) {
            std::size_t chosen = n_chk;
            if (h.var_checks[v].empty()) {
                chosen = pick_lowest_degree([](std::size_t) { return true; });
            } else {
                // BFS over the bipartite graph from v; stop when the reached
                // check set saturates or covers everything.
                ++epoch;
                frontier.clear();
                int max_depth = 0;
                std::size_t reached = 0;
                for (std::uint32_t c : h.var_checks[v]) {
                    mark[c] = epoch;
                    depth[c] = 0;
                    frontier.push_back(c);
                    ++reached;
                }
                while (!frontier.empty() && reached < n_chk) {
                    next_frontier.clear();
                    for (std::uint32_t c : frontier) {
                        for (std::uint32_t w : h.check_vars[c]) {
                            for (std::uint32_t c2 : h.var_checks[w]) {
                                if (mark[c2] != epoch) {
                                    mark[c2] = epoch;
                                    depth[c2] = depth[c] + 1;
                                    next_frontier.push_back(c2);
                                    ++reached;
                                }
                            }
                        }
                    }
                    if (next_frontier.empty()) {
                        break;
                    }
                    max_depth = depth[next_frontier.front()];
                    std::swap(frontier, next_frontier);
                }
                if (reached < n_chk) {
                    chosen = pick_lowest_degree(
                        [&](std::size_t c) { return mark[c] != epoch; });
                } else {
                    // Graph covers all checks: take the deepest layer, which
                    // by construction excludes v's direct neighbors.
                    chosen = pick_lowest_degree([&](std::size_t c) {
                        return mark[c] == epoch && depth[c] == max_depth && depth[c] > 0;
                    });
                }
            }
            if (chosen == n_chk) {
                throw NumericError("make_peg_ldpc: no eligible check found");
            }
            h.var_checks[v].push_back(static_cast<std::uint32_t>(chosen));
            h.check_vars[chosen].push_back(v);
            ++chk_degree[chosen];
        }
        std::sort(h.var_checks[v].begin(), h.var_checks[v].end());
    }
    for (auto& row : h.check_vars) {
        std::sort(row.begin(), row.end());
    }
    h.validate();
    return h;
}

ParityCheck permute_parity_columns(const ParityCheck& h, const std::vector<std::size_t>& perm) {
    h.validate();
    if (perm.size() != h.n) {
        throw std::invalid_argument("permute_parity_columns: permutation length mismatch");
    }
    std::vector<std::size_t> inv = inverse_permutation(perm);
    ParityCheck out;
    out.n = h.n;
    out.n_chk = h.n_chk;
    out.check_vars.resize(h.n_chk);
    out.var_checks.resize(h.n);
    for (std::size_t c = 0; c < h.n_chk; ++c) {
        for (std::uint32_t v : h.check_vars[c]) {
            out.check_vars[c].push_back(static_cast<std::uint32_t>(inv[v]));
        }
        std::sort(out.check_vars[c].begin(), out.check_vars[c].end());
    }
    for (std::size_t v = 0; v < h.n; ++v) {
        for (std::uint32_t c : h.var_checks[perm[v]]) {
            out.var_checks[v].push_back(c);
        }
        std::sort(out.var_checks[v].begin(), out.var_checks[v].end());
    }
    out.validate();
    return out;
}

DerivedGenerator generator_from_parity(const ParityCheck& h) {
    h.validate();
    BinMatrix dense(h.n_chk, h.n);
    for (std::size_t c = 0; c < h.n_chk; ++c) {
        for (std::uint32_t v : h.check_vars[c]) {
            dense.set(c, v, true);
        }
    }

    // RREF of H; pivot columns become the parity positions, the rest the
    // information positions.
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < h.n && r < h.n_chk; ++c) {
        std::size_t pivot = r;
        while (pivot < h.n_chk && !dense.get(pivot, c)) {
            ++pivot;
        }
        if (pivot == h.n_chk) {
            continue;
        }
        dense.swap_rows(pivot, r);
        for (std::size_t i = 0; i < h.n_chk; ++i) {
            if (i != r && dense.get(i, c)) {
                dense.xor_rows(r, i);
            }
        }
        pivot_cols.push_back(c);
        ++r;
    }
    std::size_t rank_h = r;
    std::size_t k_c = h.n - rank_h;
    if (k_c == 0) {
        throw std::invalid_argument("generator_from_parity: code has dimension zero");
    }

    std::vector<bool> is_pivot(h.n, false);
    for (std::size_t c : pivot_cols) {
        is_pivot[c] = true;
    }
    DerivedGenerator out;
    out.perm.reserve(h.n);
    for (std::size_t c = 0; c < h.n; ++c) {
        if (!is_pivot[c]) {
            out.perm.push_back(c);
        }
    }
    for (std::size_t c : pivot_cols) {
        out.perm.push_back(c);
    }

    // In the permuted order H looks like (A | I_rank); G = (I_kc | A^T).
    out.g = BinMatrix(k_c, h.n);
    for (std::size_t i = 0; i < k_c; ++i) {
        out.g.set(i, i, true);
        for (std::size_t row = 0; row < rank_h; ++row) {
            if (dense.get(row, out.perm[i])) {
                out.g.set(i, k_c + row, true);
            }
        }
    }
    out.h = permute_parity_columns(h, out.perm);
    return out;
}

}  // namespace coset
