#include "qsc/lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qsc {

namespace {
constexpr double kTol = 1e-9;
}

LpSolution lp_solve(const LpProblem& prob) {
    const int n = static_cast<int>(prob.c.size());
    const int m_ge = static_cast<int>(prob.a_ge.size());
    const int m_eq = static_cast<int>(prob.a_eq.size());
    const int m = m_ge + m_eq;
    // columns: n structural | m_ge surplus | m artificial
    const int n_total = n + m_ge + m;

    // rows in standard form A x - s = b (>=) and A x = b (eq), with b >= 0
    std::vector<std::vector<double>> tab(m, std::vector<double>(n_total + 1, 0.0));
    for (int r = 0; r < m; ++r) {
        const bool ge = r < m_ge;
        const auto& arow = ge ? prob.a_ge[r] : prob.a_eq[r - m_ge];
        double brhs = ge ? prob.b_ge[r] : prob.b_eq[r - m_ge];
        if (static_cast<int>(arow.size()) != n) throw std::invalid_argument("lp_solve: row size mismatch");
        double sign = 1.0;
        if (brhs < 0.0) sign = -1.0;
        for (int j = 0; j < n; ++j) tab[r][j] = sign * arow[j];
        if (ge) tab[r][n + r] = -sign;
        tab[r][n + m_ge + r] = 1.0;
        tab[r][n_total] = sign * brhs;
    }

    std::vector<int> basis(m);
    for (int r = 0; r < m; ++r) basis[r] = n + m_ge + r;

    auto pivot = [&](int prow, int pcol, std::vector<double>& obj) {
        const double pv = tab[prow][pcol];
        for (double& v : tab[prow]) v /= pv;
        for (int r = 0; r < m; ++r) {
            if (r == prow) continue;
            const double f = tab[r][pcol];
            if (std::abs(f) < 1e-15) continue;
            for (int j = 0; j <= n_total; ++j) tab[r][j] -= f * tab[prow][j];
        }
        const double f = obj[pcol];
        if (std::abs(f) > 0.0)
            for (int j = 0; j <= n_total; ++j) obj[j] -= f * tab[prow][j];
        basis[prow] = pcol;
    };

    // objective row: reduced costs; obj[n_total] = -objective value
    auto run_simplex = [&](std::vector<double>& obj, int allowed_cols) {
        for (long iter = 0; iter < 200000; ++iter) {
            int pcol = -1;
            for (int j = 0; j < allowed_cols; ++j) {
                if (obj[j] < -kTol) { pcol = j; break; }  // Bland: first improving column
            }
            if (pcol < 0) return true;
            int prow = -1;
            double best = std::numeric_limits<double>::infinity();
            for (int r = 0; r < m; ++r) {
                if (tab[r][pcol] > kTol) {
                    const double ratio = tab[r][n_total] / tab[r][pcol];
                    if (ratio < best - 1e-12 || (ratio < best + 1e-12 && (prow < 0 || basis[r] < basis[prow]))) {
                        best = ratio;
                        prow = r;
                    }
                }
            }
            if (prow < 0) return false;  // unbounded
            pivot(prow, pcol, obj);
        }
        throw std::runtime_error("lp_solve: iteration limit exceeded");
    };

    LpSolution sol;

    // phase 1: minimize sum of artificials
    std::vector<double> obj1(n_total + 1, 0.0);
    for (int j = n + m_ge; j < n_total; ++j) obj1[j] = 1.0;
    for (int r = 0; r < m; ++r)
        for (int j = 0; j <= n_total; ++j) obj1[j] -= tab[r][j];
    if (!run_simplex(obj1, n_total)) throw std::runtime_error("lp_solve: phase 1 unbounded");
    const double phase1 = -obj1[n_total];
    if (phase1 > 1e-7) {
        sol.status = LpStatus::Infeasible;
        for (int r = 0; r < m; ++r)
            if (basis[r] >= n + m_ge && tab[r][n_total] > 1e-7) {
                const int art = basis[r] - (n + m_ge);
                if (art < m_ge) sol.infeasible_rows.push_back(art);
            }
        return sol;
    }
    // drive any degenerate artificials out of the basis
    for (int r = 0; r < m; ++r) {
        if (basis[r] >= n + m_ge) {
            int pcol = -1;
            for (int j = 0; j < n + m_ge; ++j)
                if (std::abs(tab[r][j]) > kTol) { pcol = j; break; }
            if (pcol >= 0) pivot(r, pcol, obj1);
        }
    }

    // phase 2: original objective over structural + surplus columns
    std::vector<double> obj2(n_total + 1, 0.0);
    for (int j = 0; j < n; ++j) obj2[j] = prob.c[j];
    for (int r = 0; r < m; ++r) {
        if (basis[r] < n && std::abs(obj2[basis[r]]) > 0.0) {
            const double f = obj2[basis[r]];
            for (int j = 0; j <= n_total; ++j) obj2[j] -= f * tab[r][j];
        }
    }
    if (!run_simplex(obj2, n + m_ge)) {
        sol.status = LpStatus::Unbounded;
        return sol;
    }

    sol.status = LpStatus::Optimal;
    sol.x.assign(n, 0.0);
    for (int r = 0; r < m; ++r)
        if (basis[r] < n) sol.x[basis[r]] = tab[r][n_total];
    sol.objective = 0.0;
    for (int j = 0; j < n; ++j) sol.objective += prob.c[j] * sol.x[j];
    return sol;
}

}  // namespace qsc
