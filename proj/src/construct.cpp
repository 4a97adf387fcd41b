#include "qsc/construct.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace qsc {
namespace construct {

void ConstructionSpec::validate() const {
    if (n_bits < 2 || d_v < 1) throw std::invalid_argument("ConstructionSpec: invalid sizes");
    if (symbol_width < 1 || n_bits % symbol_width != 0)
        throw std::invalid_argument("ConstructionSpec: n_bits not divisible by symbol_width");
    double sum = 0.0;
    for (auto [d, f] : rho) {
        if (d < 1 || f < 0.0) throw std::invalid_argument("ConstructionSpec: bad rho entry");
        sum += f;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("ConstructionSpec: rho does not sum to 1");
}

std::vector<int> check_degree_targets(const ConstructionSpec& spec) {
    spec.validate();
    const long edges = static_cast<long>(spec.n_bits) * spec.d_v;
    std::vector<std::pair<int, double>> real_counts;  // (degree, node-perspective count)
    for (auto [d, f] : spec.rho)
        if (f > 0.0) real_counts.emplace_back(d, edges * f / d);
    std::vector<long> counts(real_counts.size());
    long total_edges = 0;
    for (std::size_t k = 0; k < real_counts.size(); ++k) {
        counts[k] = static_cast<long>(std::floor(real_counts[k].second));
        total_edges += counts[k] * real_counts[k].first;
    }
    // largest fractional remainder first for the +1 count increments
    std::vector<std::size_t> order(real_counts.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double ra = real_counts[a].second - std::floor(real_counts[a].second);
        const double rb = real_counts[b].second - std::floor(real_counts[b].second);
        if (ra != rb) return ra > rb;
        return a < b;
    });
    for (std::size_t k : order) {
        if (total_edges + real_counts[k].first <= edges) {
            ++counts[k];
            total_edges += real_counts[k].first;
        }
    }
    std::vector<int> targets;
    for (std::size_t k = 0; k < counts.size(); ++k)
        targets.insert(targets.end(), counts[k], real_counts[k].first);
    std::sort(targets.begin(), targets.end());
    // residual edges become +1 degree bumps, largest degrees first
    long residual = edges - total_edges;
    for (auto it = targets.rbegin(); residual > 0 && it != targets.rend(); ++it, --residual) ++*it;
    if (std::accumulate(targets.begin(), targets.end(), 0L) != edges)
        throw std::runtime_error("check_degree_targets: could not realize edge total");
    return targets;
}

ParityCheckCode peg_construct(const ConstructionSpec& spec) {
    const std::vector<int> targets = check_degree_targets(spec);
    const int n = spec.n_bits;
    const int mch = static_cast<int>(targets.size());
    const int w = spec.symbol_width;

    std::vector<std::vector<int>> bit_checks(n), check_bits(mch);
    std::vector<std::vector<int>> check_symbols(mch);  // sorted, for the separation constraint

    std::vector<int> check_seen(mch, -1), bit_seen(n, -1);
    std::vector<int> check_depth(mch, 0);
    int stamp = 0;
    std::vector<int> frontier, next, layer_checks;

    auto has_bit = [&](int c, int b) {
        return std::find(check_bits[c].begin(), check_bits[c].end(), b) != check_bits[c].end();
    };
    auto drop_edge = [&](int c, int b) {
        check_bits[c].erase(std::find(check_bits[c].begin(), check_bits[c].end(), b));
        bit_checks[b].erase(std::find(bit_checks[b].begin(), bit_checks[b].end(), c));
        auto& syms = check_symbols[c];
        syms.erase(std::lower_bound(syms.begin(), syms.end(), b / w));
    };
    auto add_edge = [&](int c, int b) {
        check_bits[c].push_back(b);
        bit_checks[b].push_back(c);
        const int sym = b / w;
        auto& syms = check_symbols[c];
        syms.insert(std::lower_bound(syms.begin(), syms.end(), sym), sym);
    };
    auto symbol_ok = [&](int c, int b) {
        return !std::binary_search(check_symbols[c].begin(), check_symbols[c].end(), b / w);
    };
    // Would attaching b to c close a 4-cycle (b--c--x--c'--b for some other
    // check c' of b and a common bit x)?
    auto closes_four_cycle = [&](int c, int b) {
        for (int c2 : bit_checks[b]) {
            if (c2 == c) continue;
            for (int x : check_bits[c2])
                if (x != b && has_bit(c, x)) return true;
        }
        return false;
    };
    auto allowed = [&](int c, int bit) {
        return static_cast<int>(check_bits[c].size()) < targets[c] && symbol_ok(c, bit);
    };
    // Tie-breaking among equally deep candidates mimics uniform random socket
    // matching: pick with probability proportional to residual capacity. Any
    // deterministic rule would let runs of consecutive bits chase the same
    // degree class, wiring whole stretches of the code exclusively to the
    // highest-degree checks and leaving an effectively isolated weak subgraph.
    std::mt19937_64 rng(spec.seed);
    auto pick_weighted = [&](const std::vector<int>& cands) {
        std::uint64_t total = 0;
        for (int c : cands) total += targets[c] - check_bits[c].size();
        std::uint64_t r = rng() % total;
        for (int c : cands) {
            const std::uint64_t wgt = targets[c] - check_bits[c].size();
            if (r < wgt) return c;
            r -= wgt;
        }
        return cands.back();
    };
    std::vector<int> cands;

    for (int bit = 0; bit < n; ++bit) {
        for (int e = 0; e < spec.d_v; ++e) {
            int chosen = -1;
            if (bit_checks[bit].empty()) {
                cands.clear();
                for (int c = 0; c < mch; ++c)
                    if (allowed(c, bit)) cands.push_back(c);
                if (!cands.empty()) chosen = pick_weighted(cands);
            } else {
                // Breadth-first expansion of the bit's computation tree,
                // recording each check's discovery depth. Connecting to a
                // check at depth d closes a cycle of length 2d + 2, so the
                // candidate maximizing depth (unreached counting as infinite)
                // is the girth-greedy choice.
                ++stamp;
                int reached = 0;
                bit_seen[bit] = stamp;
                frontier.assign(1, bit);
                int depth = 0;
                while (true) {
                    ++depth;
                    next.clear();
                    layer_checks.clear();
                    for (int b : frontier) {
                        for (int c : bit_checks[b]) {
                            if (check_seen[c] != stamp) {
                                check_seen[c] = stamp;
                                check_depth[c] = depth;
                                ++reached;
                                layer_checks.push_back(c);
                                for (int b2 : check_bits[c])
                                    if (bit_seen[b2] != stamp) {
                                        bit_seen[b2] = stamp;
                                        next.push_back(b2);
                                    }
                            }
                        }
                    }
                    if (layer_checks.empty() || reached == mch || next.empty()) break;
                    std::swap(frontier, next);
                }
                // Connecting at depth >= 3 already yields a cycle of length
                // >= 8, so cap the preference there; distinguishing further
                // would shrink the candidate set and skew the socket
                // statistics for no girth benefit.
                constexpr int kDepthCap = 3;
                int best_depth = -1;
                cands.clear();
                for (int c = 0; c < mch; ++c) {
                    if (!allowed(c, bit)) continue;
                    const int d = check_seen[c] != stamp ? kDepthCap
                                                         : std::min(check_depth[c], kDepthCap);
                    if (d > best_depth) {
                        best_depth = d;
                        cands.clear();
                    }
                    if (d == best_depth) cands.push_back(c);
                }
                if (!cands.empty()) chosen = pick_weighted(cands);
            }
            if (chosen < 0) {
                // Every symbol-compatible check is full. Free a slot by
                // relocating one bit out of such a check; prefer relocations
                // that close no 4-cycle, but accept any rather than fail
                // (the repair pass below cleans up short cycles).
                for (int strict = 1; strict >= 0 && chosen < 0; --strict) {
                    for (int c = 0; c < mch && chosen < 0; ++c) {
                        if (!symbol_ok(c, bit) || has_bit(c, bit)) continue;
                        for (int b3 : std::vector<int>(check_bits[c])) {
                            int dest = -1;
                            for (int c3 = 0; c3 < mch; ++c3) {
                                if (c3 == c || !allowed(c3, b3) || has_bit(c3, b3)) continue;
                                if (strict && closes_four_cycle(c3, b3)) continue;
                                dest = c3;
                                break;
                            }
                            if (dest >= 0) {
                                drop_edge(c, b3);
                                add_edge(dest, b3);
                                chosen = c;
                                break;
                            }
                        }
                    }
                }
            }
            if (chosen < 0)
                throw std::runtime_error("peg_construct: no feasible check for bit " + std::to_string(bit));
            add_edge(chosen, bit);
        }
    }

    // Capacity exhaustion can force the last few placements into checks that
    // already share a bit, closing 4-cycles the greedy pass cannot avoid.
    // Repair them with degree-preserving edge swaps: for a check pair sharing
    // two bits, trade one of the shared bits against a bit of another check,
    // provided both new edges respect the symbol constraint and close no new
    // 4-cycle.
    auto find_conflict = [&]() -> std::array<int, 3> {  // {c1, c2, shared bit}
        for (int b = 0; b < n; ++b) {
            for (std::size_t i = 0; i < bit_checks[b].size(); ++i)
                for (std::size_t j = i + 1; j < bit_checks[b].size(); ++j) {
                    const int c1 = bit_checks[b][i], c2 = bit_checks[b][j];
                    for (int x : check_bits[c1])
                        if (x != b && has_bit(c2, x)) return {c1, c2, b};
                }
        }
        return {-1, -1, -1};
    };
    for (int pass = 0; pass < n; ++pass) {
        const auto conflict = find_conflict();
        if (conflict[0] < 0) break;
        const int c2 = conflict[1], b2 = conflict[2];
        drop_edge(c2, b2);
        bool fixed = false;
        for (int c3 = 0; c3 < mch && !fixed; ++c3) {
            if (c3 == c2 || has_bit(c3, b2)) continue;
            if (!symbol_ok(c3, b2) || closes_four_cycle(c3, b2)) continue;
            for (int b3 : std::vector<int>(check_bits[c3])) {
                if (b3 == b2 || has_bit(c2, b3)) continue;
                drop_edge(c3, b3);
                if (symbol_ok(c2, b3) && !closes_four_cycle(c2, b3) &&
                    !closes_four_cycle(c3, b2)) {
                    add_edge(c2, b3);
                    add_edge(c3, b2);
                    fixed = true;
                    break;
                }
                add_edge(c3, b3);
            }
        }
        if (!fixed) {
            add_edge(c2, b2);  // leave the cycle in place rather than lose an edge
            break;
        }
    }

    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(n) * spec.d_v);
    for (int c = 0; c < mch; ++c)
        for (int b : check_bits[c]) edges.emplace_back(c, b);
    return ParityCheckCode::from_edges(n, mch, edges, w);
}

std::vector<std::pair<int, int>> validate_symbol_constraint(const ParityCheckCode& code) {
    std::vector<std::pair<int, int>> violations;
    const int w = code.symbol_width;
    for (int c = 0; c < code.n_checks; ++c) {
        int prev_sym = -1;
        bool reported = false;
        for (int b : code.check_bits[c]) {  // sorted, so same-symbol bits are adjacent
            const int sym = b / w;
            if (sym == prev_sym) {
                if (!reported) violations.emplace_back(c, sym);
                reported = true;
            } else {
                prev_sym = sym;
                reported = false;
            }
        }
    }
    return violations;
}

std::optional<int> girth(const ParityCheckCode& code) {
    // node ids: checks 0..M-1, then bits M..M+N-1; edges get global ids
    const int mch = code.n_checks, n = code.n_bits;
    std::vector<std::vector<std::pair<int, int>>> adj(mch + n);  // (node, edge id)
    int eid = 0;
    for (int c = 0; c < mch; ++c)
        for (int b : code.check_bits[c]) {
            adj[c].emplace_back(mch + b, eid);
            adj[mch + b].emplace_back(c, eid);
            ++eid;
        }

    int best = std::numeric_limits<int>::max();
    std::vector<int> dist(mch + n), parent(mch + n);
    std::vector<int> queue;
    for (int root = 0; root < mch; ++root) {  // every cycle contains a check
        std::fill(dist.begin(), dist.end(), -1);
        dist[root] = 0;
        parent[root] = -1;
        queue.assign(1, root);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const int u = queue[head];
            if (2 * dist[u] >= best) break;
            for (auto [v, e] : adj[u]) {
                if (e == parent[u]) continue;
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    parent[v] = e;
                    queue.push_back(v);
                } else {
                    best = std::min(best, dist[u] + dist[v] + 1);
                }
            }
        }
    }
    if (best == std::numeric_limits<int>::max()) return std::nullopt;
    return best;
}

ConstructionReport construction_report(const ParityCheckCode& code) {
    ConstructionReport rep;
    for (const auto& v : code.check_bits) ++rep.check_degree_histogram[static_cast<int>(v.size())];
    for (const auto& v : code.bit_checks) ++rep.bit_degree_histogram[static_cast<int>(v.size())];
    rep.girth = girth(code);
    rep.symbol_violations = validate_symbol_constraint(code).size();
    return rep;
}

}  // namespace construct
}  // namespace qsc
