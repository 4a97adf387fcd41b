#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "qsc/code.hpp"

namespace qsc {
namespace construct {

struct ConstructionSpec {
    int n_bits = 0;
    int symbol_width = 1;  // n_bits must be divisible by it
    int d_v = 3;
    std::map<int, double> rho;  // target edge-perspective check degree distribution
    std::uint64_t seed = 0;

    void validate() const;
};

/// Integer check-degree targets realizing rho over n_bits*d_v edges
/// (largest-remainder rounding, then +-1 degree adjustments to hit the edge
/// total exactly). Returned per check index, ascending degree.
std::vector<int> check_degree_targets(const ConstructionSpec& spec);

/// Modified progressive edge growth: girth-greedy placement where candidate
/// checks must have residual degree capacity and must not already contain a
/// bit of the same symbol. Among candidates of equal (capped) BFS depth the
/// check is drawn with probability proportional to its residual capacity,
/// reproducing uniform socket-matching statistics across degree classes; a
/// final pass repairs residual 4-cycles with degree-preserving edge swaps.
/// Deterministic for a fixed spec (the seed drives all draws).
ParityCheckCode peg_construct(const ConstructionSpec& spec);

/// Every (check, symbol) pair with two or more incident bits.
std::vector<std::pair<int, int>> validate_symbol_constraint(const ParityCheckCode& code);

/// Shortest cycle length of the bipartite graph; nullopt when cycle-free.
std::optional<int> girth(const ParityCheckCode& code);

struct ConstructionReport {
    std::map<int, int> check_degree_histogram;
    std::map<int, int> bit_degree_histogram;
    std::optional<int> girth;
    std::size_t symbol_violations = 0;
};
ConstructionReport construction_report(const ParityCheckCode& code);

}  // namespace construct
}  // namespace qsc
