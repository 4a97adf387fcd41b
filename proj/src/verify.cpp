#include "qsc/verify.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "qsc/channel.hpp"
#include "qsc/exit.hpp"
#include "qsc/frontend.hpp"
#include "qsc/layered.hpp"

namespace qsc {

namespace {

const double kEpsGrid[] = {0.001, 0.01, 0.05, 0.1, 0.25, 0.4, 0.6};

CheckResult check(const std::string& name, double worst, double tol) {
    std::ostringstream d;
    d << "max deviation " << worst << " (tolerance " << tol << ")";
    return {name, worst <= tol, d.str()};
}

CheckResult theorem1_identity() {
    double worst = 0.0;
    for (int m = 1; m <= 16; ++m)
        for (double eps : kEpsGrid)
            worst = std::max(worst, std::abs(layered_rate_sum(m, eps) -
                                             capacity_qsc(ChannelParams(m, eps))));
    return check("layered rate sum equals q-SC capacity", worst, 1e-9);
}

CheckResult area_identity_check() {
    double worst = 0.0;
    for (int m = 1; m <= 12; ++m)
        for (double eps : kEpsGrid) {
            const auto a = exit_chart::area_identity(m, eps, 2000);
            worst = std::max(worst, std::abs(a.analytic_sum - a.capacity));
        }
    return check("EXIT area identity (analytic)", worst, 1e-9);
}

CheckResult init_llr_consistency() {
    double worst = 0.0;
    for (int m = 1; m <= 20; ++m) {
        const ChannelParams p(m, 0.25);
        const double eb = marginal_bsc_eps(p);
        worst = std::max(worst, std::abs(frontend::init_llr(p) - std::log((1.0 - eb) / eb)));
    }
    return check("initial LLR equals marginal-BSC LLR", worst, 1e-12);
}

CheckResult qsc_star_capacity_reduction() {
    double worst = 0.0;
    for (int m = 1; m <= 10; ++m)
        for (double eps : kEpsGrid) {
            const QscStarParams star(m, eps, std::vector<double>(m, 0.5));
            worst = std::max(worst, std::abs(capacity_qsc_star(star) -
                                             capacity_qsc(ChannelParams(m, eps))));
        }
    return check("q-SC* capacity reduces to q-SC at eps_cond = 1/2", worst, 1e-12);
}

CheckResult frontend_equivalence() {
    std::mt19937_64 rng(7);
    double worst = 0.0;
    for (int m = 1; m <= 6; ++m) {
        const ChannelParams p(m, 0.25);
        std::vector<double> l_a(m), l_ch(m), probs(m);
        for (int rep = 0; rep < 500; ++rep) {
            const auto y = static_cast<std::uint32_t>(rng() & (p.q() - 1));
            for (int i = 0; i < m; ++i) l_a[i] = 8.0 * (uniform_double(rng) - 0.5);
            frontend::refresh(y, l_a, p, l_ch);
            for (int i = 0; i < m; ++i)
                probs[i] = 1.0 / (1.0 + std::exp(-(1 - 2 * static_cast<int>((y >> i) & 1)) * l_a[i]));
            const auto oracle = frontend::brute_force_marginal(y, probs, p);
            const auto direct = frontend::app_llr_direct(y, l_a, p);
            for (int i = 0; i < m; ++i) {
                const int yi = (y >> i) & 1;
                const double app_oracle = std::log(oracle[i] / (1.0 - oracle[i])) * (1 - 2 * yi);
                worst = std::max(worst, std::abs(direct[i] - app_oracle));
                worst = std::max(worst, std::abs((l_ch[i] + l_a[i]) - direct[i]));
            }
        }
    }
    return check("front-end direct/message/oracle agreement", worst, 1e-9);
}

CheckResult channel_normalization() {
    double worst = 0.0;
    for (int m = 1; m <= 8; ++m)
        for (double eps : kEpsGrid) {
            // q-SC: sum over all q outcomes
            const ChannelParams p(m, eps);
            const double q = static_cast<double>(p.q());
            worst = std::max(worst, std::abs((1.0 - eps) + (q - 1.0) * (eps / (q - 1.0)) - 1.0));
            // q-SC*: sum over all error patterns
            std::vector<double> ec(m);
            for (int i = 0; i < m; ++i) ec[i] = 0.1 + 0.7 * i / std::max(1, m - 1);
            const QscStarParams star(m, eps, ec);
            double total = 1.0 - eps;
            for (std::uint32_t e = 1; e < p.q(); ++e) {
                double w = star.alpha;
                for (int i = 0; i < m; ++i) w *= ((e >> i) & 1u) ? ec[i] : 1.0 - ec[i];
                total += w;
            }
            worst = std::max(worst, std::abs(total - 1.0));
        }
    return check("channel transition probabilities normalize", worst, 1e-12);
}

}  // namespace

std::vector<CheckResult> verify_all() {
    return {
        theorem1_identity(),      area_identity_check(),  init_llr_consistency(),
        qsc_star_capacity_reduction(), frontend_equivalence(), channel_normalization(),
    };
}

}  // namespace qsc
