#include "qsc/exit.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "qsc/frontend.hpp"
#include "qsc/layered.hpp"

namespace qsc {
namespace exit_chart {

double lambda_t(double i_a, int m, int t) {
    if (!(i_a >= 0.0 && i_a <= 1.0)) throw std::domain_error("lambda_t: i_a outside [0,1]");
    if (t < 0 || t > m - 1) throw std::invalid_argument("lambda_t: t outside [0, m-1]");
    // binom(m-1, t) (1-i_a)^t i_a^(m-1-t), with 0^0 = 1 at the corners
    double binom = 1.0;
    for (int k = 0; k < t; ++k) binom = binom * (m - 1 - k) / (k + 1);
    auto powi = [](double x, int n) { return n == 0 ? 1.0 : std::pow(x, n); };
    return binom * powi(1.0 - i_a, t) * powi(i_a, m - 1 - t);
}

double layer_info(int t, int m, double epsilon) {
    if (t < 0 || t > m - 1) throw std::invalid_argument("layer_info: t outside [0, m-1]");
    const LayerProfile prof = layer_params(m, epsilon);
    const int i = m - t;  // layer index, 1-based
    return capacity_bsec(prof.delta[i - 1], prof.eps[i - 1]);
}

double exit_bec(double i_a, int m, double epsilon) {
    const LayerProfile prof = layer_params(m, epsilon);
    double sum = 0.0;
    for (int t = 0; t <= m - 1; ++t) {
        const int i = m - t;
        sum += capacity_bsec(prof.delta[i - 1], prof.eps[i - 1]) * lambda_t(i_a, m, t);
    }
    return sum;
}

AreaIdentity area_identity(int m, double epsilon, int quad_points) {
    AreaIdentity out;
    out.capacity = capacity_qsc(ChannelParams(m, epsilon));
    const LayerProfile prof = layer_params(m, epsilon);
    out.analytic_sum = 0.0;
    for (int t = 0; t <= m - 1; ++t)
        out.analytic_sum += capacity_bsec(prof.delta[m - t - 1], prof.eps[m - t - 1]);
    // trapezoid of m * exit_bec over [0,1]
    double acc = 0.5 * (exit_bec(0.0, m, epsilon) + exit_bec(1.0, m, epsilon));
    for (int k = 1; k < quad_points; ++k)
        acc += exit_bec(static_cast<double>(k) / quad_points, m, epsilon);
    out.quadrature = m * acc / quad_points;
    return out;
}

double j_map(double sigma) {
    if (sigma < 0.0) throw std::domain_error("j_map: sigma must be >= 0");
    if (sigma == 0.0) return 0.0;
    if (sigma > 60.0) return 1.0;
    // I = 1 - E[log2(1 + e^-L)], L ~ N(sigma^2/2, sigma^2); composite Simpson in z
    const double mu = sigma * sigma / 2.0;
    const int n = 4000;  // even
    const double zmax = 12.0, h = 2.0 * zmax / n;
    const double inv_sqrt2pi = 0.3989422804014327;
    auto f = [&](double z) {
        const double l = mu + sigma * z;
        const double loss = l > 0 ? std::log1p(std::exp(-l)) : -l + std::log1p(std::exp(l));
        return inv_sqrt2pi * std::exp(-0.5 * z * z) * loss;
    };
    double acc = f(-zmax) + f(zmax);
    for (int k = 1; k < n; ++k) acc += (k % 2 ? 4.0 : 2.0) * f(-zmax + k * h);
    const double expected_loss = acc * h / 3.0 / std::log(2.0);
    double i = 1.0 - expected_loss;
    return i < 0.0 ? 0.0 : (i > 1.0 ? 1.0 : i);
}

double j_inv(double i) {
    if (!(i >= 0.0 && i < 1.0)) throw std::domain_error("j_inv: i outside [0,1)");
    if (i == 0.0) return 0.0;
    double lo = 0.0, hi = 60.0;
    for (int it = 0; it < 200 && hi - lo > 1e-12 * (1.0 + hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        (j_map(mid) < i ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

GaussianExitEstimate exit_gaussian_mc(double i_a, int m, double epsilon, std::size_t n_samples,
                                      std::uint64_t seed) {
    const ChannelParams params(m, epsilon);
    const double sigma = j_inv(std::min(i_a, 1.0 - 1e-12));
    const double mu = sigma * sigma / 2.0;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    SymbolBlock x(m, 1);
    std::vector<double> l_a(m), l_ch(m);
    double sum = 0.0, sumsq = 0.0;
    std::size_t count = 0;
    const double q = static_cast<double>(params.q());
    for (std::size_t s = 0; s < n_samples; ++s) {
        x.symbols[0] = static_cast<std::uint32_t>(uniform_double(rng) * q);
        if (x.symbols[0] >= params.q()) x.symbols[0] = static_cast<std::uint32_t>(params.q() - 1);
        const SymbolBlock y = transmit(x, params, rng);
        for (int i = 0; i < m; ++i) {
            const int xi = x.bit(0, i);
            l_a[i] = (1 - 2 * xi) * (mu + sigma * gauss(rng));
        }
        frontend::refresh(y.symbols[0], l_a, params, l_ch);
        for (int i = 0; i < m; ++i) {
            const double corrected = (1 - 2 * x.bit(0, i)) * l_ch[i];
            const double info = 1.0 - (corrected > 0
                                           ? std::log1p(std::exp(-corrected))
                                           : -corrected + std::log1p(std::exp(corrected))) /
                                          std::log(2.0);
            sum += info;
            sumsq += info * info;
            ++count;
        }
    }
    GaussianExitEstimate est;
    est.i_e = sum / count;
    const double var = std::max(0.0, sumsq / count - est.i_e * est.i_e);
    // symbols are independent; bits within a symbol are not, so scale by symbol count
    est.std_err = std::sqrt(var * m / static_cast<double>(count));
    return est;
}

ExitCurve make_bec_curve(int m, double epsilon, int grid_points) {
    ExitCurve c;
    c.m = m;
    c.epsilon = epsilon;
    c.prior_model = PriorModel::Bec;
    for (int k = 0; k < grid_points; ++k) {
        const double i_a = static_cast<double>(k) / (grid_points - 1);
        c.points.emplace_back(i_a, exit_bec(i_a, m, epsilon));
    }
    return c;
}

ExitCurve make_gaussian_curve(int m, double epsilon, int grid_points, std::size_t n_samples,
                              std::uint64_t seed) {
    ExitCurve c;
    c.m = m;
    c.epsilon = epsilon;
    c.prior_model = PriorModel::Gaussian;
    c.n_samples = n_samples;
    c.seed = seed;
    for (int k = 0; k < grid_points; ++k) {
        const double i_a = static_cast<double>(k) / (grid_points - 1);
        c.points.emplace_back(i_a, exit_gaussian_mc(i_a, m, epsilon, n_samples,
                                                    mix_seed(seed, static_cast<std::uint64_t>(k)))
                                       .i_e);
    }
    return c;
}

std::string to_csv(const std::vector<ExitCurve>& curves) {
    std::ostringstream out;
    out << "i_a,i_e,model,m,epsilon,n_samples\n";
    out.precision(12);
    for (const auto& c : curves) {
        const char* model = c.prior_model == PriorModel::Bec ? "bec" : "gauss";
        for (auto [ia, ie] : c.points)
            out << ia << ',' << ie << ',' << model << ',' << c.m << ',' << c.epsilon << ','
                << c.n_samples << '\n';
    }
    return out.str();
}

}  // namespace exit_chart
}  // namespace qsc
