#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsc/channel.hpp"

namespace qsc {
namespace exit_chart {

/// Probability that t of the m-1 intra-symbol messages are erased at a-priori
/// information i_a (BEC prior): binom(m-1,t) (1-i_a)^t i_a^(m-1-t).
double lambda_t(double i_a, int m, int t);

/// BSEC capacity seen by a bit when t intra-symbol messages are erased
/// (layer index m-t of the layered profile).
double layer_info(int t, int m, double epsilon);

/// Closed-form front-end EXIT function for BEC a-priori messages.
double exit_bec(double i_a, int m, double epsilon);

struct AreaIdentity {
    double analytic_sum;  // sum_t I_t
    double quadrature;    // trapezoid of m * exit_bec over [0,1]
    double capacity;      // capacity_qsc(m, epsilon)
};
/// Both evaluations of the area under the EXIT curve, next to C_qSC.
AreaIdentity area_identity(int m, double epsilon, int quad_points = 10000);

/// Mutual information of a symmetric Gaussian LLR (mean sigma^2/2, variance
/// sigma^2), by numeric quadrature; inverse by bisection.
double j_map(double sigma);
double j_inv(double i);

struct GaussianExitEstimate {
    double i_e = 0.0;
    double std_err = 0.0;
};
/// Monte-Carlo front-end EXIT point for Gaussian a-priori messages.
GaussianExitEstimate exit_gaussian_mc(double i_a, int m, double epsilon, std::size_t n_samples,
                                      std::uint64_t seed);

enum class PriorModel { Bec, Gaussian };

struct ExitCurve {
    std::vector<std::pair<double, double>> points;  // (i_a, i_e)
    int m = 1;
    double epsilon = 0.0;
    PriorModel prior_model = PriorModel::Bec;
    std::size_t n_samples = 0;  // Gaussian only
    std::uint64_t seed = 0;
};

ExitCurve make_bec_curve(int m, double epsilon, int grid_points = 101);
ExitCurve make_gaussian_curve(int m, double epsilon, int grid_points, std::size_t n_samples,
                              std::uint64_t seed);

std::string to_csv(const std::vector<ExitCurve>& curves);

}  // namespace exit_chart
}  // namespace qsc
