#include "qsc/code.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qsc {

ParityCheckCode ParityCheckCode::from_edges(int n_bits, int n_checks,
                                            const std::vector<std::pair<int, int>>& edges,
                                            int symbol_width) {
    if (n_bits < 1 || n_checks < 1) throw std::invalid_argument("from_edges: empty code");
    if (symbol_width < 1 || n_bits % symbol_width != 0)
        throw std::invalid_argument("from_edges: n_bits not divisible by symbol_width");
    ParityCheckCode code;
    code.n_bits = n_bits;
    code.n_checks = n_checks;
    code.symbol_width = symbol_width;
    code.bit_checks.resize(n_bits);
    code.check_bits.resize(n_checks);
    for (auto [c, b] : edges) {
        if (c < 0 || c >= n_checks || b < 0 || b >= n_bits)
            throw std::invalid_argument("from_edges: edge index out of range");
        code.check_bits[c].push_back(b);
        code.bit_checks[b].push_back(c);
    }
    for (auto& v : code.check_bits) {
        std::sort(v.begin(), v.end());
        if (std::adjacent_find(v.begin(), v.end()) != v.end())
            throw std::invalid_argument("from_edges: duplicate edge");
    }
    for (auto& v : code.bit_checks) std::sort(v.begin(), v.end());
    return code;
}

std::size_t ParityCheckCode::n_edges() const {
    std::size_t e = 0;
    for (const auto& v : check_bits) e += v.size();
    return e;
}

namespace {

struct LineReader {
    std::istringstream in;
    int line_no = 0;
    explicit LineReader(const std::string& text) : in(text) {}

    std::vector<long> next_ints() {
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            std::istringstream ls(line);
            std::vector<long> vals;
            long v;
            while (ls >> v) vals.push_back(v);
            std::string tail;
            if (!ls.eof() && ls.fail()) {
                ls.clear();
                ls >> tail;
                throw std::runtime_error("alist parse error at line " + std::to_string(line_no) +
                                         ": non-integer token '" + tail + "'");
            }
            if (!vals.empty()) return vals;
        }
        throw std::runtime_error("alist parse error at line " + std::to_string(line_no + 1) +
                                 ": unexpected end of input");
    }
};

}  // namespace

ParityCheckCode load_alist(const std::string& text, int symbol_width) {
    LineReader r(text);
    auto header = r.next_ints();
    if (header.size() != 2 || header[0] < 1 || header[1] < 1)
        throw std::runtime_error("alist parse error at line " + std::to_string(r.line_no) +
                                 ": expected 'n_bits n_checks'");
    const int n = static_cast<int>(header[0]);
    const int m = static_cast<int>(header[1]);
    auto maxdeg = r.next_ints();
    if (maxdeg.size() != 2)
        throw std::runtime_error("alist parse error at line " + std::to_string(r.line_no) +
                                 ": expected 'max_bit_degree max_check_degree'");
    auto read_degrees = [&](int count, const char* what) {
        std::vector<int> deg;
        deg.reserve(count);
        while (static_cast<int>(deg.size()) < count) {
            for (long v : r.next_ints()) {
                if (v < 0) throw std::runtime_error("alist parse error at line " + std::to_string(r.line_no) +
                                                    ": negative " + std::string(what) + " degree");
                deg.push_back(static_cast<int>(v));
            }
        }
        if (static_cast<int>(deg.size()) != count)
            throw std::runtime_error("alist parse error at line " + std::to_string(r.line_no) +
                                     ": too many " + std::string(what) + " degrees");
        return deg;
    };
    const std::vector<int> bit_deg = read_degrees(n, "bit");
    const std::vector<int> check_deg = read_degrees(m, "check");

    std::vector<std::pair<int, int>> edges;
    auto read_adjacency = [&](int count, const std::vector<int>& deg, int other_limit, bool bit_side) {
        for (int i = 0; i < count; ++i) {
            auto vals = r.next_ints();
            int nonzero = 0;
            for (long v : vals) {
                if (v < 0 || v > other_limit)
                    throw std::runtime_error("alist parse error at line " + std::to_string(r.line_no) +
                                             ": index out of range");
                if (v == 0) continue;
                ++nonzero;
                if (bit_side) edges.emplace_back(static_cast<int>(v) - 1, i);
            }
            if (nonzero != deg[i])
                throw std::runtime_error("alist parse error at line " + std::to_string(r.line_no) +
                                         ": adjacency count does not match declared degree");
        }
    };
    read_adjacency(n, bit_deg, m, true);
    read_adjacency(m, check_deg, n, false);  // validated for consistency only

    ParityCheckCode code = ParityCheckCode::from_edges(n, m, edges, symbol_width);
    for (int c = 0; c < m; ++c)
        if (static_cast<int>(code.check_bits[c].size()) != check_deg[c])
            throw std::runtime_error("alist parse error: bit and check adjacency lists disagree for check " +
                                     std::to_string(c + 1));
    return code;
}

std::string save_alist(const ParityCheckCode& code) {
    std::ostringstream out;
    int max_dv = 0, max_dc = 0;
    for (const auto& v : code.bit_checks) max_dv = std::max(max_dv, static_cast<int>(v.size()));
    for (const auto& v : code.check_bits) max_dc = std::max(max_dc, static_cast<int>(v.size()));
    out << code.n_bits << ' ' << code.n_checks << '\n';
    out << max_dv << ' ' << max_dc << '\n';
    for (int i = 0; i < code.n_bits; ++i) out << code.bit_checks[i].size() << (i + 1 < code.n_bits ? ' ' : '\n');
    for (int i = 0; i < code.n_checks; ++i) out << code.check_bits[i].size() << (i + 1 < code.n_checks ? ' ' : '\n');
    auto emit = [&](const std::vector<std::vector<int>>& adj, int width) {
        for (const auto& v : adj) {
            for (int k = 0; k < width; ++k) {
                if (k) out << ' ';
                out << (k < static_cast<int>(v.size()) ? v[k] + 1 : 0);
            }
            out << '\n';
        }
    };
    emit(code.bit_checks, max_dv);
    emit(code.check_bits, max_dc);
    return out.str();
}

std::vector<std::uint8_t> syndrome(const ParityCheckCode& code, const std::vector<std::uint8_t>& bits) {
    if (static_cast<int>(bits.size()) != code.n_bits) throw std::invalid_argument("syndrome: length mismatch");
    std::vector<std::uint8_t> s(code.n_checks, 0);
    for (int c = 0; c < code.n_checks; ++c) {
        std::uint8_t acc = 0;
        for (int b : code.check_bits[c]) acc ^= bits[b] & 1u;
        s[c] = acc;
    }
    return s;
}

Gf2Encoder::Gf2Encoder(const ParityCheckCode& code) : n_(code.n_bits) {
    const int m = code.n_checks;
    const int words = (n_ + 63) / 64;
    std::vector<std::vector<std::uint64_t>> rows(m, std::vector<std::uint64_t>(words, 0));
    for (int c = 0; c < m; ++c)
        for (int b : code.check_bits[c]) rows[c][b / 64] ^= std::uint64_t{1} << (b % 64);

    auto test_bit = [&](const std::vector<std::uint64_t>& row, int col) {
        return (row[col / 64] >> (col % 64)) & 1u;
    };

    // Reduced row echelon form with column pivoting.
    int rank = 0;
    std::vector<char> is_pivot(n_, 0);
    for (int col = 0; col < n_ && rank < m; ++col) {
        int pivot = -1;
        for (int r = rank; r < m; ++r)
            if (test_bit(rows[r], col)) { pivot = r; break; }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        for (int r = 0; r < m; ++r) {
            if (r != rank && test_bit(rows[r], col)) {
                for (int w = 0; w < words; ++w) rows[r][w] ^= rows[rank][w];
            }
        }
        pivot_cols_.push_back(col);
        is_pivot[col] = 1;
        ++rank;
    }
    rows.resize(rank);

    info_cols_.reserve(n_ - rank);
    std::vector<int> info_index(n_, -1);
    for (int col = 0; col < n_; ++col) {
        if (!is_pivot[col]) {
            info_index[col] = static_cast<int>(info_cols_.size());
            info_cols_.push_back(col);
        }
    }

    // Re-pack each RREF row over the info columns only.
    const int kwords = (static_cast<int>(info_cols_.size()) + 63) / 64;
    rows_.assign(rank, std::vector<std::uint64_t>(kwords, 0));
    for (int r = 0; r < rank; ++r) {
        for (int col = 0; col < n_; ++col) {
            if (info_index[col] >= 0 && test_bit(rows[r], col)) {
                const int k = info_index[col];
                rows_[r][k / 64] ^= std::uint64_t{1} << (k % 64);
            }
        }
    }
}

std::vector<std::uint8_t> Gf2Encoder::encode(const std::vector<std::uint8_t>& info_bits) const {
    if (info_bits.size() != info_cols_.size()) throw std::invalid_argument("encode: wrong info length");
    const int kwords = (static_cast<int>(info_cols_.size()) + 63) / 64;
    std::vector<std::uint64_t> packed(kwords, 0);
    for (std::size_t k = 0; k < info_bits.size(); ++k)
        if (info_bits[k] & 1u) packed[k / 64] ^= std::uint64_t{1} << (k % 64);

    std::vector<std::uint8_t> cw(n_, 0);
    for (std::size_t k = 0; k < info_bits.size(); ++k) cw[info_cols_[k]] = info_bits[k] & 1u;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        int parity = 0;
        for (int w = 0; w < kwords; ++w) parity ^= std::popcount(rows_[r][w] & packed[w]) & 1;
        cw[pivot_cols_[r]] = static_cast<std::uint8_t>(parity);
    }
    return cw;
}

void DegreeDistribution::validate() const {
    auto check_side = [](const std::map<int, double>& side, const char* name) {
        double sum = 0.0;
        for (auto [d, f] : side) {
            if (d < 1) throw std::invalid_argument(std::string(name) + ": degree < 1");
            if (f < -1e-12) throw std::invalid_argument(std::string(name) + ": negative fraction");
            sum += f;
        }
        if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument(std::string(name) + ": fractions do not sum to 1");
    };
    check_side(lambda, "lambda");
    check_side(rho, "rho");
    const double r = rate();
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("DegreeDistribution: design rate outside (0,1)");
}

double DegreeDistribution::rate() const {
    double lsum = 0.0, rsum = 0.0;
    for (auto [d, f] : lambda) lsum += f / d;
    for (auto [d, f] : rho) rsum += f / d;
    return 1.0 - rsum / lsum;
}

double boxplus(double a, double b) {
    const double s = (a < 0) == (b < 0) ? 1.0 : -1.0;
    return s * std::min(std::abs(a), std::abs(b)) + std::log1p(std::exp(-std::abs(a + b))) -
           std::log1p(std::exp(-std::abs(a - b)));
}

void check_node_update(std::span<const double> in, std::span<double> out) {
    const std::size_t d = in.size();
    if (d < 2) throw std::invalid_argument("check_node_update: degree must be >= 2");
    if (out.size() != d) throw std::invalid_argument("check_node_update: size mismatch");
    // prefix[i] = boxplus of in[0..i-1], suffix[i] = boxplus of in[i+1..d-1]
    static thread_local std::vector<double> prefix, suffix;
    prefix.resize(d + 1);
    suffix.resize(d + 1);
    prefix[0] = std::numeric_limits<double>::infinity();
    suffix[d] = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < d; ++i)
        prefix[i + 1] = i == 0 ? in[0] : boxplus(prefix[i], in[i]);
    for (std::size_t i = d; i-- > 0;)
        suffix[i] = i == d - 1 ? in[d - 1] : boxplus(suffix[i + 1], in[i]);
    out[0] = suffix[1];
    out[d - 1] = prefix[d - 1];
    for (std::size_t i = 1; i + 1 < d; ++i) out[i] = boxplus(prefix[i], suffix[i + 1]);
}

void FixedLlrProvider::initial(std::span<double> l_ch) {
    std::copy(l_.begin(), l_.end(), l_ch.begin());
}

DecodeResult decode(const ParityCheckCode& code, ChannelLlrProvider& frontend, const DecodeOptions& opts) {
    if (frontend.n_bits() != code.n_bits) throw std::invalid_argument("decode: front-end size mismatch");
    const int n = code.n_bits;

    // flat edge arrays, grouped by check
    std::vector<int> check_offset(code.n_checks + 1, 0);
    for (int c = 0; c < code.n_checks; ++c)
        check_offset[c + 1] = check_offset[c] + static_cast<int>(code.check_bits[c].size());
    const int n_edges = check_offset.back();
    std::vector<int> edge_bit(n_edges);
    std::vector<std::vector<int>> bit_edges(n);
    for (int c = 0; c < code.n_checks; ++c) {
        int e = check_offset[c];
        for (int b : code.check_bits[c]) {
            edge_bit[e] = b;
            bit_edges[b].push_back(e);
            ++e;
        }
    }

    std::vector<double> l_ch(n, 0.0), v2c(n_edges, 0.0), c2v(n_edges, 0.0);
    DecodeResult res;
    res.app_llr.assign(n, 0.0);
    res.hard.assign(n, 0);
    frontend.initial(l_ch);

    const double clip = opts.clip;
    auto clipped = [clip](double x) { return x > clip ? clip : (x < -clip ? -clip : x); };

    for (int iter = 1; iter <= opts.max_iter; ++iter) {
        // variable nodes
        for (int b = 0; b < n; ++b) {
            double sum = l_ch[b];
            for (int e : bit_edges[b]) sum += c2v[e];
            for (int e : bit_edges[b]) v2c[e] = clipped(sum - c2v[e]);
        }
        // check nodes
        for (int c = 0; c < code.n_checks; ++c) {
            const int lo = check_offset[c], hi = check_offset[c + 1];
            if (hi - lo == 1) {
                c2v[lo] = clip;  // degree-1 check pins its bit to 0
                continue;
            }
            check_node_update(std::span<const double>(v2c).subspan(lo, hi - lo),
                              std::span<double>(c2v).subspan(lo, hi - lo));
            for (int e = lo; e < hi; ++e) c2v[e] = clipped(c2v[e]);
        }
        // app and hard decision
        for (int b = 0; b < n; ++b) {
            double sum = l_ch[b];
            for (int e : bit_edges[b]) sum += c2v[e];
            res.app_llr[b] = clipped(sum);
            res.hard[b] = sum < 0.0 ? 1 : 0;
        }
        res.iterations = iter;
        if (opts.early_stop) {
            bool ok = true;
            for (int c = 0; c < code.n_checks && ok; ++c) {
                std::uint8_t acc = 0;
                for (int e = check_offset[c]; e < check_offset[c + 1]; ++e) acc ^= res.hard[edge_bit[e]];
                ok = acc == 0;
            }
            if (ok) {
                res.converged = true;
                return res;
            }
        }
        if (iter < opts.max_iter && iter % opts.refresh_period == 0) {
            static thread_local std::vector<double> extr;
            extr.assign(n, 0.0);
            for (int b = 0; b < n; ++b) {
                double sum = 0.0;
                for (int e : bit_edges[b]) sum += c2v[e];
                extr[b] = sum;
            }
            frontend.refresh(extr, l_ch);
        }
    }
    res.converged = false;
    return res;
}

}  // namespace qsc
