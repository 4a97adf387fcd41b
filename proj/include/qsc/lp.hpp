#pragma once

#include <vector>

namespace qsc {

/// Dense linear program: minimize c.x subject to A_ge x >= b_ge,
/// A_eq x = b_eq, x >= 0.
struct LpProblem {
    std::vector<double> c;
    std::vector<std::vector<double>> a_ge;
    std::vector<double> b_ge;
    std::vector<std::vector<double>> a_eq;
    std::vector<double> b_eq;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    std::vector<double> x;
    double objective = 0.0;
    /// On infeasibility: indices of >= rows whose artificial variable stayed
    /// basic with positive value (the binding constraints).
    std::vector<int> infeasible_rows;
};

/// Two-phase primal simplex with Bland's rule.
LpSolution lp_solve(const LpProblem& prob);

}  // namespace qsc
