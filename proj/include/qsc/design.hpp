#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qsc/code.hpp"
#include "qsc/exit.hpp"

namespace qsc {
namespace design {

struct DesignProblem {
    int m = 4;
    double epsilon = 0.26;
    int d_v = 3;
    int d_c_max = 50;
    int grid_points = 101;       // convergence-constraint grid over [0, grid_max]
    double grid_max = 0.99;
    double margin = 5e-3;        // required tunnel opening at every grid point
    double min_rate = 0.0;       // lower bound on the design rate 1 - d_v * sum rho_d/d
    std::size_t fe_samples = 100000;  // Monte-Carlo samples per front-end curve point
    std::uint64_t seed = 1;

    void validate() const {
        if (d_v < 2 || d_c_max < d_v || margin <= 0.0 || grid_points < 2 || min_rate < 0.0 ||
            min_rate >= 1.0)
            throw std::invalid_argument("DesignProblem: invalid parameters");
    }
};

/// Sampled front-end transfer curve with linear interpolation.
class FrontEndCurve {
  public:
    FrontEndCurve(std::vector<double> i_a, std::vector<double> i_e);
    double operator()(double i_a) const;

  private:
    std::vector<double> i_a_, i_e_;
};

/// Gaussian-prior Monte-Carlo front-end curve on a uniform [0,1] grid.
FrontEndCurve build_frontend_curve(int m, double epsilon, int grid_points, std::size_t n_samples,
                                   std::uint64_t seed);

/// EXIT of the variable-node-plus-front-end super-node: check-side prior
/// information in, extrinsic information toward the checks out.
double combined_vn_exit(double i_check, int d_v, const FrontEndCurve& fe_curve);

/// Check-node EXIT under the Gaussian (dual) approximation.
double check_node_exit(double i_a, int d);

struct DesignResult {
    DegreeDistribution dist;
    double rate = 0.0;
};

struct DesignInfeasible : std::runtime_error {
    std::vector<int> binding_grid_points;
    explicit DesignInfeasible(std::vector<int> pts)
        : std::runtime_error("degree-distribution LP infeasible"), binding_grid_points(std::move(pts)) {}
};

/// Maximizes the design rate of a variable-regular code over the check degree
/// distribution, subject to the decoding tunnel staying open by `margin` at
/// every grid point. Throws DesignInfeasible with the binding points.
DesignResult optimize_rho(const DesignProblem& problem);

/// True when the fixed-point iteration of the combined curves progresses at
/// every grid point (margin 0 tunnel test).
bool tunnel_open(const DegreeDistribution& dist, int d_v, const FrontEndCurve& fe_curve,
                 int grid_points = 101, double grid_max = 0.99);

struct ThresholdOptions {
    int grid_points = 101;
    double grid_max = 0.99;
    std::size_t fe_samples = 30000;
    std::uint64_t seed = 1;
    int bisection_steps = 16;
};

/// Largest epsilon with an open tunnel, by bisection.
double predict_threshold(const DegreeDistribution& dist, int m, const ThresholdOptions& opts = {});

}  // namespace design
}  // namespace qsc
