// End-to-end acceptance gate. Each criterion prints exactly one PASS/FAIL
// line with the measured quantities; the process exits nonzero if any fails.
// Tolerances and runtime budgets are pinned next to each criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "qsc/channel.hpp"
#include "qsc/code.hpp"
#include "qsc/construct.hpp"
#include "qsc/design.hpp"
#include "qsc/exit.hpp"
#include "qsc/frontend.hpp"
#include "qsc/layered.hpp"
#include "qsc/sim.hpp"

using namespace qsc;

namespace {

int g_failures = 0;

class Timer {
  public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

void report(int criterion, bool ok, const std::string& detail, double secs, double budget) {
    const bool in_budget = secs <= budget;
    if (!ok || !in_budget) ++g_failures;
    std::printf("%s  criterion %2d: %s [%.2fs / budget %.0fs]\n",
                ok && in_budget ? "PASS" : "FAIL", criterion, detail.c_str(), secs, budget);
    std::fflush(stdout);
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

double logistic(double l) { return 1.0 / (1.0 + std::exp(-l)); }

// ---- criterion 1: layered-scheme rate identity ------------------------------
void criterion1() {
    Timer t;
    double worst = 0.0;
    for (int m = 1; m <= 16; ++m)
        for (double eps : {0.001, 0.01, 0.05, 0.1, 0.25, 0.4, 0.6})
            worst = std::max(worst,
                             std::abs(layered_rate_sum(m, eps) - capacity_qsc(ChannelParams(m, eps))));
    report(1, worst <= 1e-9, fmt("layered rate vs capacity, max |diff| = %.2e (tol 1e-9)", worst),
           t.seconds(), 1.0);
}

// ---- criterion 2: area under the erasure-prior curve -------------------------
void criterion2() {
    Timer t;
    double worst_sum = 0.0, worst_quad = 0.0;
    for (int m = 1; m <= 16; ++m)
        for (double eps : {0.001, 0.01, 0.05, 0.1, 0.25, 0.4, 0.6}) {
            const auto a = exit_chart::area_identity(m, eps);
            worst_sum = std::max(worst_sum, std::abs(a.analytic_sum - a.capacity));
            worst_quad = std::max(worst_quad, std::abs(a.quadrature - a.capacity));
        }
    report(2, worst_sum <= 1e-9 && worst_quad <= 1e-6,
           fmt("area identity, analytic %.2e (tol 1e-9), quadrature %.2e (tol 1e-6)", worst_sum,
               worst_quad),
           t.seconds(), 1.0);
}

// ---- criterion 3: transfer-curve anchor points -------------------------------
void criterion3() {
    Timer t;
    double worst_anchor = 0.0;
    for (int m = 1; m <= 8; ++m)
        for (double eps : {0.05, 0.25, 0.4})
            worst_anchor = std::max(
                worst_anchor, std::abs(exit_chart::exit_bec(0.0, m, eps) -
                                       capacity_bsc(marginal_bsc_eps(ChannelParams(m, eps)))));
    const double start_m4 = exit_chart::exit_bec(0.0, 4, 0.25);
    bool monotone = true, ordered = true;
    double prev = -1.0;
    for (int k = 0; k <= 100; ++k) {
        const double ia = k / 100.0;
        const double v4 = exit_chart::exit_bec(ia, 4, 0.25);
        monotone &= v4 >= prev - 1e-12;
        ordered &= exit_chart::exit_bec(ia, 8, 0.25) > v4;
        prev = v4;
    }
    const bool ok = worst_anchor <= 1e-12 && std::abs(start_m4 - 0.433492) < 5e-4 && monotone &&
                    ordered;
    report(3, ok,
           fmt("anchors: |I_e(0)-C_BSC| = %.2e (tol 1e-12), I_e(0)|m=4 = %.6f (ref 0.433492), "
               "monotone %d, m=8 above m=4 %d",
               worst_anchor, start_m4, monotone ? 1 : 0, ordered ? 1 : 0),
           t.seconds(), 5.0);
}

// ---- criterion 4: front-end equals brute-force marginalization ---------------
void criterion4() {
    Timer t;
    double worst = 0.0;
    long cases = 0;
    for (int m = 1; m <= 6; ++m)
        for (double eps : {0.05, 0.25, 0.4}) {
            const ChannelParams p(m, eps);
            std::mt19937_64 rng(mix_seed(2024, m, static_cast<std::uint64_t>(eps * 1000)));
            std::uniform_real_distribution<double> u(-6.0, 6.0);
            std::vector<double> l_a(m), l_ch(m), agree(m);
            for (int rep = 0; rep < 10000; ++rep, ++cases) {
                const auto y = static_cast<std::uint32_t>(rng() & (p.q() - 1));
                for (int i = 0; i < m; ++i) {
                    l_a[i] = u(rng);
                    agree[i] = logistic((1 - 2 * static_cast<int>((y >> i) & 1)) * l_a[i]);
                }
                frontend::refresh(y, l_a, p, l_ch);
                const auto direct = frontend::app_llr_direct(y, l_a, p);
                // Exhaustive APP oracle: accumulate the posterior weight of
                // x_i == y_i and x_i != y_i separately and take log(num/den),
                // which stays exact even when one side dominates.
                std::vector<double> num(m, 0.0), den(m, 0.0);
                for (std::uint32_t x = 0; x < p.q(); ++x) {
                    double wgt = x == y ? 1.0 - eps : eps / static_cast<double>(p.q() - 1);
                    for (int i = 0; i < m; ++i)
                        wgt *= ((x ^ y) >> i & 1) ? 1.0 - agree[i] : agree[i];
                    for (int i = 0; i < m; ++i)
                        (((x ^ y) >> i & 1) ? den[i] : num[i]) += wgt;
                }
                for (int i = 0; i < m; ++i) {
                    const int sgn = 1 - 2 * static_cast<int>((y >> i) & 1);
                    const double oracle = sgn * std::log(num[i] / den[i]);
                    worst = std::max(worst, std::abs(l_ch[i] + l_a[i] - oracle));
                    worst = std::max(worst, std::abs(direct[i] - oracle));
                }
            }
        }
    report(4, worst <= 1e-10,
           fmt("message/direct/oracle agreement over %ld cases, max |diff| = %.2e (tol 1e-10)",
               cases, worst),
           t.seconds(), 10.0);
}

// ---- criterion 5: generalized-channel reductions ------------------------------
void criterion5() {
    Timer t;
    double worst_reduction = 0.0, worst_flat = 0.0, worst_oracle = 0.0;
    std::mt19937_64 rng(515);
    std::uniform_real_distribution<double> u(-6.0, 6.0);
    std::uniform_real_distribution<double> e(0.1, 0.9);
    for (int m = 1; m <= 6; ++m)
        for (double eps : {0.05, 0.25, 0.4}) {
            const ChannelParams p(m, eps);
            const QscStarParams fair(m, eps, std::vector<double>(m, 0.5));
            std::vector<double> l_a(m), out(m), out_star(m), agree(m);
            for (int rep = 0; rep < 10000; ++rep) {
                const auto y = static_cast<std::uint32_t>(rng() & (p.q() - 1));
                for (int i = 0; i < m; ++i) {
                    l_a[i] = u(rng);
                    agree[i] = logistic((1 - 2 * static_cast<int>((y >> i) & 1)) * l_a[i]);
                }
                // (a) fair conditional bits reduce to the plain symbol channel
                frontend::refresh(y, l_a, p, out);
                frontend::refresh_qsc_star(y, l_a, fair, out_star);
                for (int i = 0; i < m; ++i)
                    worst_reduction = std::max(worst_reduction, std::abs(out[i] - out_star[i]));
                // (c) oracle agreement with random conditional profiles
                std::vector<double> ec(m);
                for (auto& v : ec) v = e(rng);
                const QscStarParams ps(m, eps, ec);
                frontend::refresh_qsc_star(y, l_a, ps, out_star);
                // Exhaustive APP oracle over error patterns, cancellation-free
                // as in criterion 4.
                std::vector<double> num(m, 0.0), den(m, 0.0);
                for (std::uint32_t err = 0; err < ps.q(); ++err) {
                    double wgt = err == 0 ? 1.0 - eps : ps.alpha;
                    for (int i = 0; i < m; ++i) {
                        if (err != 0) wgt *= (err >> i & 1) ? ec[i] : 1.0 - ec[i];
                        wgt *= (err >> i & 1) ? 1.0 - agree[i] : agree[i];
                    }
                    for (int i = 0; i < m; ++i) ((err >> i & 1) ? den[i] : num[i]) += wgt;
                }
                for (int i = 0; i < m; ++i) {
                    const int sgn = 1 - 2 * static_cast<int>((y >> i) & 1);
                    const double oracle = sgn * std::log(num[i] / den[i]);
                    worst_oracle = std::max(worst_oracle, std::abs(out_star[i] + l_a[i] - oracle));
                }
            }
            // (b) uninformative beliefs give each bit its marginal-BSC LLR
            std::vector<double> zeros(m, 0.0);
            std::vector<double> flat(m);
            std::vector<double> ec(m);
            for (int i = 0; i < m; ++i) ec[i] = 0.15 + 0.7 * i / std::max(1, m - 1);
            const QscStarParams ps(m, eps, ec);
            for (std::uint32_t y = 0; y < std::min<std::uint64_t>(p.q(), 16); ++y) {
                frontend::refresh_qsc_star(y, zeros, ps, flat);
                for (int i = 0; i < m; ++i) {
                    const double eb = ps.marginal_eps(i);
                    const double want =
                        (1 - 2 * static_cast<int>((y >> i) & 1)) * std::log((1.0 - eb) / eb);
                    worst_flat = std::max(worst_flat, std::abs(flat[i] - want));
                }
            }
        }
    report(5, worst_reduction <= 1e-9 && worst_flat <= 1e-12 && worst_oracle <= 1e-10,
           fmt("reduction %.2e (tol 1e-9), marginal-BSC %.2e (tol 1e-12), oracle %.2e (tol 1e-10)",
               worst_reduction, worst_flat, worst_oracle),
           t.seconds(), 30.0);
}

// ---- criterion 6: initialization ----------------------------------------------
void criterion6() {
    Timer t;
    double worst = 0.0;
    for (int m = 1; m <= 20; ++m)
        for (double eps : {0.001, 0.05, 0.25, 0.45}) {
            const ChannelParams p(m, eps);
            const double eb = marginal_bsc_eps(p);
            worst = std::max(worst,
                             std::abs(frontend::init_llr(p) - std::log((1.0 - eb) / eb)));
        }
    report(6, worst <= 1e-12, fmt("init LLR vs marginal-BSC LLR, max |diff| = %.2e (tol 1e-12)", worst),
           t.seconds(), 1.0);
}

// ---- criterion 7: exact bitwise MAP on a cycle-free toy code -------------------
void criterion7() {
    Timer t;
    // Six bits in three 2-bit symbols; two checks; the combined graph of
    // symbol factors and parity factors is a tree.
    const auto code = ParityCheckCode::from_edges(6, 2, {{0, 0}, {0, 2}, {1, 3}, {1, 4}}, 2);
    const ChannelParams p(2, 0.2);

    // Codebook for the MAP oracle.
    std::vector<std::uint32_t> codebook;
    for (std::uint32_t w = 0; w < 64; ++w) {
        std::vector<std::uint8_t> x(6);
        for (int i = 0; i < 6; ++i) x[i] = (w >> i) & 1;
        bool ok = true;
        for (auto s : syndrome(code, x)) ok &= s == 0;
        if (ok) codebook.push_back(w);
    }

    double worst = 0.0;
    std::mt19937_64 rng(720);
    DecodeOptions opts;
    opts.max_iter = 30;
    opts.early_stop = false;  // run to the fixed point, then compare beliefs
    opts.clip = 60.0;
    for (int rep = 0; rep < 400; ++rep) {
        const auto y_word = static_cast<std::uint32_t>(rng() & 63u);
        std::vector<std::uint8_t> ybits(6);
        for (int i = 0; i < 6; ++i) ybits[i] = (y_word >> i) & 1;
        QscFrontEnd fe(SymbolBlock::from_bits(ybits, 2), p);
        const auto res = decode(code, fe, opts);

        // Oracle: P(y_s | x_s) = 1 - eps if equal, eps / (q-1) otherwise.
        std::vector<double> num(6, 0.0), den(6, 0.0);
        for (auto cw : codebook) {
            double w = 1.0;
            for (int s = 0; s < 3; ++s) {
                const auto xs = (cw >> (2 * s)) & 3u;
                const auto ys = (y_word >> (2 * s)) & 3u;
                w *= xs == ys ? 1.0 - p.epsilon : p.epsilon / 3.0;
            }
            for (int i = 0; i < 6; ++i) (((cw >> i) & 1u) ? den : num)[i] += w;
        }
        for (int i = 0; i < 6; ++i) {
            const double map_llr = std::log(num[i] / den[i]);
            worst = std::max(worst, std::abs(res.app_llr[i] - map_llr));
        }
    }
    report(7, worst <= 1e-9,
           fmt("belief propagation vs exact MAP on a tree, max |diff| = %.2e (tol 1e-9)", worst),
           t.seconds(), 5.0);
}

// ---- criterion 9 helper reused by 8: construction ------------------------------
construct::ConstructionSpec big_spec(const std::map<int, double>& rho, std::uint64_t seed) {
    construct::ConstructionSpec spec;
    spec.n_bits = 12000;
    spec.symbol_width = 4;
    spec.d_v = 3;
    spec.rho = rho;
    spec.seed = seed;
    return spec;
}

struct FrameStats {
    double mean = 0.0;
    double half95 = 0.0;  // 1.96 * sd / sqrt(n), frames as sampling units
    long frames = 0;
    long bit_errors = 0;
};

FrameStats frame_ber(const ParityCheckCode& code, double eps, int frames, std::uint64_t seed) {
    const ChannelParams p(4, eps);
    const Gf2Encoder enc(code);
    std::vector<double> fracs;
    long total_err = 0;
    DecodeOptions opts;
    opts.max_iter = 300;  // near-threshold frames can need well over 100 iterations
    for (int f = 0; f < frames; ++f) {
        std::mt19937_64 rng(mix_seed(seed, 0xf5a3e, f));
        std::vector<std::uint8_t> info(enc.k());
        for (auto& v : info) v = rng() & 1;
        const auto x = enc.encode(info);
        const auto y = transmit(SymbolBlock::from_bits(x, 4), p, rng);
        QscFrontEnd fe(y, p);
        const auto res = decode(code, fe, opts);
        long err = 0;
        for (int i = 0; i < code.n_bits; ++i) err += res.hard[i] != x[i];
        total_err += err;
        fracs.push_back(static_cast<double>(err) / code.n_bits);
    }
    FrameStats st;
    st.frames = frames;
    st.bit_errors = total_err;
    for (double v : fracs) st.mean += v;
    st.mean /= frames;
    double var = 0.0;
    for (double v : fracs) var += (v - st.mean) * (v - st.mean);
    var /= std::max(1, frames - 1);
    st.half95 = 1.96 * std::sqrt(var / frames);
    return st;
}

// ---- criteria 8 and 9: design, construction, BER bracket -----------------------
void criteria8and9() {
    Timer t_design;
    design::DesignProblem prob;  // m = 4, eps = 0.26, d_v = 3, d_c,max = 50
    bool rate_ok = false, tunnel_ok = false;
    design::DesignResult res;
    try {
        res = design::optimize_rho(prob);
        rate_ok = std::abs(res.rate - 0.5) <= 0.02;
        const auto fe = design::build_frontend_curve(prob.m, prob.epsilon, prob.grid_points,
                                                     prob.fe_samples, prob.seed);
        tunnel_ok = design::tunnel_open(res.dist, prob.d_v, fe, prob.grid_points, prob.grid_max);
    } catch (const design::DesignInfeasible&) {
        report(8, false, "degree-distribution optimization infeasible at eps = 0.26", t_design.seconds(),
               600.0);
        report(9, false, "skipped: no optimized distribution", 0.0, 60.0);
        return;
    }

    // criterion 9: structural checks on the N = 12000 construction
    Timer t9;
    const auto spec = big_spec(res.dist.rho, 424242);
    const auto code = construct::peg_construct(spec);
    const auto code2 = construct::peg_construct(spec);
    const bool deterministic = save_alist(code) == save_alist(code2);
    const auto violations = construct::validate_symbol_constraint(code);
    bool dv_ok = true;
    for (const auto& bc : code.bit_checks) dv_ok &= bc.size() == 3;
    const auto targets = construct::check_degree_targets(spec);
    bool hist_ok = code.n_checks == static_cast<int>(targets.size());
    if (hist_ok) {
        std::map<int, int> want, got;
        for (int d : targets) ++want[d];
        for (const auto& cb : code.check_bits) ++got[static_cast<int>(cb.size())];
        for (auto [d, c] : want) hist_ok &= std::abs(got[d] - c) <= 1;
        for (auto [d, c] : got) hist_ok &= want.count(d) || c <= 1;
    }
    const auto g = construct::girth(code);
    const bool girth_ok = g.has_value() && *g >= 6;
    report(9, violations.empty() && dv_ok && hist_ok && girth_ok && deterministic,
           fmt("N=12000 construction: violations %zu, d_v exact %d, histogram %d, girth %d, "
               "deterministic %d",
               violations.size(), dv_ok ? 1 : 0, hist_ok ? 1 : 0, g.value_or(-1),
               deterministic ? 1 : 0),
           t9.seconds(), 60.0);

    // criterion 8: BER bracket around the design point
    Timer t8;
    sim::SimConfig cfg;
    cfg.m = 4;
    cfg.seed = 808;
    cfg.max_iter = 300;  // near-threshold frames can need well over 100 iterations

    cfg.epsilon_sweep = {0.24};
    cfg.min_bit_errors = 150;
    cfg.max_codewords = 100;
    const auto low = sim::run_ber(cfg, code);

    cfg.epsilon_sweep = {0.28};
    cfg.min_bit_errors = 4000;
    cfg.max_codewords = 25;
    const auto high = sim::run_ber(cfg, code);

    // Regular (3,6) comparison, frames as sampling units. The regular code
    // still decodes eps = 0.22 cleanly, so the curves are compared at 0.24
    // where the regular code is past its waterfall and the optimized one is
    // not.
    const auto reg_code = construct::peg_construct(big_spec({{6, 1.0}}, 424242));
    const auto opt_cmp = frame_ber(code, 0.24, 40, 2201);
    const auto reg_cmp = frame_ber(reg_code, 0.24, 40, 2202);
    const bool separated = opt_cmp.mean + opt_cmp.half95 < reg_cmp.mean - reg_cmp.half95;

    const bool ok = rate_ok && tunnel_ok && low[0].ber <= 1e-4 && high[0].ber >= 1e-2 && separated;
    report(8, ok,
           fmt("rate %.4f (|rate-0.5| <= 0.02: %d), tunnel open %d, BER(0.24) = %.2e (<= 1e-4), "
               "BER(0.28) = %.2e (>= 1e-2), at 0.24 optimized %.2e+-%.2e vs regular %.2e+-%.2e "
               "(separated %d)",
               res.rate, rate_ok ? 1 : 0, tunnel_ok ? 1 : 0, low[0].ber, high[0].ber, opt_cmp.mean,
               opt_cmp.half95, reg_cmp.mean, reg_cmp.half95, separated ? 1 : 0),
           t_design.seconds() + t8.seconds(), 600.0);
}

// ---- criterion 10: channel transmit statistics ---------------------------------
void criterion10() {
    Timer t;
    const std::size_t n = 1000000;
    bool ok = true;
    std::string detail;

    {
        const ChannelParams p(4, 0.25);
        SymbolBlock x(4, n);
        std::mt19937_64 gen(mix_seed(1001, 0));
        for (auto& s : x.symbols) s = static_cast<std::uint32_t>(gen() & 15u);
        std::mt19937_64 ch(mix_seed(1001, 1));
        const auto y = transmit(x, p, ch);
        std::size_t errs = 0;
        for (std::size_t j = 0; j < n; ++j) errs += y.symbols[j] != x.symbols[j];
        const double dev = std::abs(static_cast<double>(errs) - n * p.epsilon) /
                           std::sqrt(n * p.epsilon * (1 - p.epsilon));
        ok &= dev < 4.0;
        detail += fmt("symbol errors %.1f sigma", dev);
    }
    {
        const QscStarParams p(4, 0.3, {0.6, 0.4, 0.25, 0.1});
        SymbolBlock x(4, n);
        std::mt19937_64 gen(mix_seed(1002, 0));
        for (auto& s : x.symbols) s = static_cast<std::uint32_t>(gen() & 15u);
        std::mt19937_64 ch(mix_seed(1002, 1));
        const auto y = transmit_qsc_star(x, p, ch);
        for (int i = 0; i < 4; ++i) {
            std::size_t errs = 0;
            for (std::size_t j = 0; j < n; ++j) errs += x.bit(j, i) != y.bit(j, i);
            const double eb = p.marginal_eps(i);
            const double dev =
                std::abs(static_cast<double>(errs) - n * eb) / std::sqrt(n * eb * (1 - eb));
            ok &= dev < 4.0;
            detail += fmt(", bit %d %.1f sigma", i, dev);
        }
    }
    report(10, ok, "transmit statistics within 4 sigma binomial bounds (" + detail + ")",
           t.seconds(), 60.0);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criteria8and9();
    criterion10();
    if (g_failures) std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures ? 1 : 0;
}
