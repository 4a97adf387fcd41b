#include "qsc/design.hpp"

#include <algorithm>
#include <cmath>

#include "qsc/lp.hpp"

namespace qsc {
namespace design {

using exit_chart::exit_gaussian_mc;
using exit_chart::j_inv;
using exit_chart::j_map;

FrontEndCurve::FrontEndCurve(std::vector<double> i_a, std::vector<double> i_e)
    : i_a_(std::move(i_a)), i_e_(std::move(i_e)) {
    if (i_a_.size() != i_e_.size() || i_a_.size() < 2)
        throw std::invalid_argument("FrontEndCurve: need at least two points");
    for (std::size_t k = 1; k < i_a_.size(); ++k)
        if (i_a_[k] <= i_a_[k - 1]) throw std::invalid_argument("FrontEndCurve: grid not increasing");
}

double FrontEndCurve::operator()(double i_a) const {
    if (i_a <= i_a_.front()) return i_e_.front();
    if (i_a >= i_a_.back()) return i_e_.back();
    const auto it = std::upper_bound(i_a_.begin(), i_a_.end(), i_a);
    const std::size_t k = it - i_a_.begin();
    const double w = (i_a - i_a_[k - 1]) / (i_a_[k] - i_a_[k - 1]);
    return i_e_[k - 1] + w * (i_e_[k] - i_e_[k - 1]);
}

FrontEndCurve build_frontend_curve(int m, double epsilon, int grid_points, std::size_t n_samples,
                                   std::uint64_t seed) {
    std::vector<double> ia(grid_points), ie(grid_points);
    for (int k = 0; k < grid_points; ++k) {
        ia[k] = static_cast<double>(k) / (grid_points - 1);
        ie[k] = exit_gaussian_mc(ia[k], m, epsilon, n_samples,
                                 mix_seed(seed, 0xfe, static_cast<std::uint64_t>(k)))
                    .i_e;
    }
    return FrontEndCurve(std::move(ia), std::move(ie));
}

double combined_vn_exit(double i_check, int d_v, const FrontEndCurve& fe_curve) {
    const double i = std::clamp(i_check, 0.0, 1.0 - 1e-12);
    const double sigma_a = j_inv(i);
    // a-priori at the front-end: sum of all d_v check-side messages
    const double i_fe_in = j_map(std::sqrt(static_cast<double>(d_v)) * sigma_a);
    const double i_ch = std::clamp(fe_curve(i_fe_in), 0.0, 1.0 - 1e-12);
    const double sigma_ch = j_inv(i_ch);
    return j_map(std::sqrt((d_v - 1) * sigma_a * sigma_a + sigma_ch * sigma_ch));
}

double check_node_exit(double i_a, int d) {
    if (d < 2) throw std::invalid_argument("check_node_exit: degree must be >= 2");
    const double i = std::clamp(i_a, 1e-12, 1.0 - 1e-12);
    return 1.0 - j_map(std::sqrt(static_cast<double>(d - 1)) * j_inv(1.0 - i));
}

namespace {

// rows of the tunnel constraint: for grid point I, sum_d rho_d * e_c(v(I), d) >= I + margin
std::vector<std::vector<double>> constraint_matrix(const FrontEndCurve& fe, int d_v, int d_c_max,
                                                   const std::vector<double>& grid) {
    std::vector<std::vector<double>> rows;
    rows.reserve(grid.size());
    for (double i_a : grid) {
        const double v = combined_vn_exit(i_a, d_v, fe);
        std::vector<double> row(d_c_max - 1);
        for (int d = 2; d <= d_c_max; ++d) row[d - 2] = check_node_exit(v, d);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<double> make_grid(int points, double grid_max) {
    std::vector<double> g(points);
    for (int k = 0; k < points; ++k) g[k] = grid_max * k / (points - 1);
    return g;
}

}  // namespace

DesignResult optimize_rho(const DesignProblem& problem) {
    problem.validate();
    const FrontEndCurve fe = build_frontend_curve(problem.m, problem.epsilon, problem.grid_points,
                                                  problem.fe_samples, problem.seed);
    const std::vector<double> grid = make_grid(problem.grid_points, problem.grid_max);
    LpProblem lp;
    const int nvar = problem.d_c_max - 1;  // rho_2 .. rho_dcmax
    // maximize rate = 1 - d_v * sum rho_d/d  <=>  minimize sum rho_d/d
    lp.c.resize(nvar);
    for (int d = 2; d <= problem.d_c_max; ++d) lp.c[d - 2] = 1.0 / d;
    lp.a_ge = constraint_matrix(fe, problem.d_v, problem.d_c_max, grid);
    for (double i_a : grid) lp.b_ge.push_back(i_a + problem.margin);
    lp.a_eq.push_back(std::vector<double>(nvar, 1.0));
    lp.b_eq.push_back(1.0);
    // rate floor: 1 - d_v * sum rho_d/d >= min_rate. Without it the Gaussian
    // model declares degree-2-heavy (negative-rate) mixtures convergent at any
    // epsilon and infeasibility would never be detected.
    {
        std::vector<double> row(nvar);
        for (int d = 2; d <= problem.d_c_max; ++d) row[d - 2] = -1.0 / d;
        lp.a_ge.push_back(std::move(row));
        lp.b_ge.push_back(-(1.0 - problem.min_rate) / problem.d_v);
    }

    const LpSolution sol = lp_solve(lp);
    if (sol.status != LpStatus::Optimal) throw DesignInfeasible(sol.infeasible_rows);

    DesignResult res;
    res.dist.lambda[problem.d_v] = 1.0;
    double kept = 0.0;
    for (int d = 2; d <= problem.d_c_max; ++d) {
        if (sol.x[d - 2] > 1e-9) {
            res.dist.rho[d] = sol.x[d - 2];
            kept += sol.x[d - 2];
        }
    }
    for (auto& [d, f] : res.dist.rho) f /= kept;
    res.dist.validate();
    res.rate = res.dist.rate();
    return res;
}

bool tunnel_open(const DegreeDistribution& dist, int d_v, const FrontEndCurve& fe_curve,
                 int grid_points, double grid_max) {
    for (double i_a : make_grid(grid_points, grid_max)) {
        const double v = combined_vn_exit(i_a, d_v, fe_curve);
        double out = 0.0;
        for (auto [d, f] : dist.rho) out += f * check_node_exit(v, d);
        if (out <= i_a) return false;
    }
    return true;
}

double predict_threshold(const DegreeDistribution& dist, int m, const ThresholdOptions& opts) {
    int d_v = 0;
    for (auto [d, f] : dist.lambda)
        if (f > 0.5) d_v = d;
    if (d_v == 0) throw std::invalid_argument("predict_threshold: need a variable-regular lambda");

    auto open_at = [&](double eps) {
        if (eps <= 0.0) return true;
        if (eps >= 1.0) return false;
        const FrontEndCurve fe = build_frontend_curve(m, eps, opts.grid_points, opts.fe_samples,
                                                      opts.seed);
        return tunnel_open(dist, d_v, fe, opts.grid_points, opts.grid_max);
    };
    double lo = 0.0, hi = 1.0 - std::ldexp(1.0, -m);
    if (open_at(hi)) return hi;
    for (int it = 0; it < opts.bisection_steps; ++it) {
        const double mid = 0.5 * (lo + hi);
        (open_at(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace design
}  // namespace qsc
