#include "qsc/layered.hpp"

#include <cmath>
#include <stdexcept>

namespace qsc {

LayerProfile layer_params(int m, double epsilon) {
    ChannelParams p(m, epsilon);  // validates
    LayerProfile prof;
    prof.m = m;
    prof.epsilon = epsilon;
    prof.eps.resize(m);
    prof.delta.resize(m);
    const double denom = std::ldexp(1.0, m) - 1.0;  // 2^m - 1
    double acc = 0.0;
    for (int i = 1; i <= m; ++i) {
        prof.delta[i - 1] = acc;
        prof.eps[i - 1] = std::ldexp(1.0, m - i) / denom * epsilon;
        acc += prof.eps[i - 1];
    }
    return prof;
}

double layered_rate_sum(int m, double epsilon) {
    const LayerProfile prof = layer_params(m, epsilon);
    double sum = 0.0;
    for (int i = 0; i < m; ++i) sum += capacity_bsec(prof.delta[i], prof.eps[i]);
    return sum;
}

double thick_layer_rate(int m, int mu, double epsilon) {
    if (mu < 0 || mu > m - 1) throw std::invalid_argument("thick_layer_rate: mu must be in [0, m-1]");
    const LayerProfile prof = layer_params(m, epsilon);
    double sum = 0.0;
    for (int i = 0; i < mu; ++i) sum += capacity_bsec(prof.delta[i], prof.eps[i]);
    sum += (m - mu) * capacity_bsec(prof.delta[mu], prof.eps[mu]);
    return sum;
}

}  // namespace qsc
