#pragma once

#include <vector>

#include "qsc/channel.hpp"

namespace qsc {

/// Per-layer BSEC parameters of the successive (layered) scheme.
/// Layer i (1-based) sees crossover eps[i-1] and erasure delta[i-1].
struct LayerProfile {
    int m;
    double epsilon;
    std::vector<double> eps;    // eps_i = 2^(m-i)/(2^m-1) * epsilon
    std::vector<double> delta;  // delta_i = sum_{j<i} eps_j
};

LayerProfile layer_params(int m, double epsilon);

/// Sum of the m BSEC layer capacities; equals capacity_qsc(m, epsilon).
double layered_rate_sum(int m, double epsilon);

/// Variant with mu thin layers followed by one thick layer of width m-mu,
/// all m-mu bits sent over BSEC(delta_{mu+1}, eps_{mu+1}).
double thick_layer_rate(int m, int mu, double epsilon);

}  // namespace qsc
