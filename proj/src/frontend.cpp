#include "qsc/frontend.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qsc {
namespace frontend {

namespace {

constexpr double kProbClamp = 1e-12;

double clamp_prob(double p) {
    if (p < kProbClamp) return kProbClamp;
    if (p > 1.0 - kProbClamp) return 1.0 - kProbClamp;
    return p;
}

// p_i = P(X_i = y_i) from the a-priori LLR L(X_i): logistic of (1-2y_i)*L.
double agree_prob(int y_bit, double l_a) {
    const double t = (1 - 2 * y_bit) * l_a;
    return clamp_prob(1.0 / (1.0 + std::exp(-t)));
}

}  // namespace

void exclusion_products(std::span<const double> values, std::span<double> out, std::size_t* op_count) {
    const std::size_t m = values.size();
    if (out.size() != m) throw std::invalid_argument("exclusion_products: size mismatch");
    if (m == 0) return;
    // out[i] = prefix(i) * suffix(i)
    double acc = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
        out[i] = acc;
        acc *= values[i];
        if (op_count) ++*op_count;
    }
    acc = 1.0;
    for (std::size_t i = m; i-- > 0;) {
        out[i] *= acc;
        acc *= values[i];
        if (op_count) *op_count += 2;
    }
}

double init_llr(const ChannelParams& p) {
    const double top = 2.0 * (1.0 - std::ldexp(1.0, -p.m));
    if (!(p.epsilon > 0.0 && p.epsilon < top))
        throw std::domain_error("init_llr: epsilon outside (0, 2(1-2^-m))");
    return std::log((top - p.epsilon) / p.epsilon);
}

FrontEndState analyze_symbol(std::uint32_t y_symbol, std::span<const double> l_a, const ChannelParams& p) {
    const int m = p.m;
    if (static_cast<int>(l_a.size()) != m) throw std::invalid_argument("analyze_symbol: size mismatch");
    FrontEndState st;
    st.p.resize(m);
    st.beta_excl.resize(m);
    st.eps_out.resize(m);
    st.l_ch.resize(m);
    for (int i = 0; i < m; ++i) st.p[i] = agree_prob((y_symbol >> i) & 1u, l_a[i]);
    exclusion_products(st.p, st.beta_excl);
    st.beta = st.beta_excl[0] * st.p[0];
    const double q = static_cast<double>(p.q());
    const double c = q - p.epsilon * q - 1.0;
    for (int i = 0; i < m; ++i) {
        const double denom = 2.0 * p.epsilon + st.beta_excl[i] * c;
        const double eps_i = p.epsilon > 0.0 ? p.epsilon / denom : 0.0;
        st.eps_out[i] = eps_i;
        const int y = (y_symbol >> i) & 1u;
        double mag;
        if (eps_i <= 0.0) {
            mag = std::numeric_limits<double>::infinity();
        } else {
            mag = std::log((1.0 - eps_i) / eps_i);
        }
        st.l_ch[i] = (1 - 2 * y) * mag;
    }
    return st;
}

void refresh(std::uint32_t y_symbol, std::span<const double> l_a, const ChannelParams& p,
             std::span<double> l_ch_out) {
    const FrontEndState st = analyze_symbol(y_symbol, l_a, p);
    std::copy(st.l_ch.begin(), st.l_ch.end(), l_ch_out.begin());
}

std::vector<double> app_llr_direct(std::uint32_t y_symbol, std::span<const double> l_extr,
                                   const ChannelParams& p) {
    const int m = p.m;
    if (static_cast<int>(l_extr.size()) != m) throw std::invalid_argument("app_llr_direct: size mismatch");
    std::vector<double> probs(m), beta_excl(m), out(m);
    for (int i = 0; i < m; ++i) probs[i] = agree_prob((y_symbol >> i) & 1u, l_extr[i]);
    exclusion_products(probs, beta_excl);
    const double q = static_cast<double>(p.q());
    const double c = q - q * p.epsilon - 1.0;
    for (int i = 0; i < m; ++i) {
        const int y = (y_symbol >> i) & 1u;
        double channel_term;
        if (p.epsilon <= 0.0) {
            channel_term = std::numeric_limits<double>::infinity();
        } else {
            channel_term = std::log1p(beta_excl[i] * c / p.epsilon);
        }
        out[i] = (1 - 2 * y) * channel_term + l_extr[i];
    }
    return out;
}

std::vector<double> brute_force_marginal(std::uint32_t y_symbol, std::span<const double> extr_probs,
                                         const ChannelParams& p) {
    const int m = p.m;
    if (m > 12) throw std::invalid_argument("brute_force_marginal: m > 12");
    if (static_cast<int>(extr_probs.size()) != m) throw std::invalid_argument("brute_force_marginal: size mismatch");
    const std::uint32_t q = static_cast<std::uint32_t>(p.q());
    std::vector<double> agree(m, 0.0);
    double total = 0.0;
    for (std::uint32_t x = 0; x < q; ++x) {
        const std::uint32_t e = x ^ y_symbol;
        double w = (e == 0) ? 1.0 - p.epsilon : p.epsilon / (q - 1.0);
        for (int i = 0; i < m; ++i) {
            const double pi = extr_probs[i];
            w *= ((e >> i) & 1u) ? 1.0 - pi : pi;
        }
        total += w;
        for (int i = 0; i < m; ++i)
            if (((e >> i) & 1u) == 0) agree[i] += w;
    }
    for (auto& a : agree) a /= total;
    return agree;
}

void refresh_qsc_star(std::uint32_t y_symbol, std::span<const double> l_a, const QscStarParams& p,
                      std::span<double> l_ch_out) {
    const int m = p.m;
    if (static_cast<int>(l_a.size()) != m || static_cast<int>(l_ch_out.size()) != m)
        throw std::invalid_argument("refresh_qsc_star: size mismatch");
    std::vector<double> probs(m), t(m), beta_excl(m), t_excl(m);
    for (int i = 0; i < m; ++i) {
        probs[i] = agree_prob((y_symbol >> i) & 1u, l_a[i]);
        // P(bit i agrees under conditional error | error pattern bit model)
        t[i] = p.eps_cond[i] + probs[i] - 2.0 * p.eps_cond[i] * probs[i];
    }
    exclusion_products(probs, beta_excl);
    exclusion_products(t, t_excl);
    for (int i = 0; i < m; ++i) {
        const double ec = p.eps_cond[i];
        double arg;
        if (t_excl[i] <= 0.0) {
            arg = (1.0 - ec) / ec;  // conditional-BSC limit
        } else {
            arg = ((1.0 - p.alpha) * beta_excl[i] + p.alpha * (1.0 - ec) * t_excl[i]) /
                  (p.alpha * ec * t_excl[i]);
            if (arg < kProbClamp) arg = kProbClamp;  // rounding guard; argument is nonnegative
        }
        const int y = (y_symbol >> i) & 1u;
        l_ch_out[i] = (1 - 2 * y) * std::log(arg);
    }
}

std::vector<double> brute_force_marginal_qsc_star(std::uint32_t y_symbol,
                                                  std::span<const double> extr_probs,
                                                  const QscStarParams& p) {
    const int m = p.m;
    if (m > 12) throw std::invalid_argument("brute_force_marginal_qsc_star: m > 12");
    if (static_cast<int>(extr_probs.size()) != m)
        throw std::invalid_argument("brute_force_marginal_qsc_star: size mismatch");
    const std::uint32_t q = static_cast<std::uint32_t>(p.q());
    std::vector<double> agree(m, 0.0);
    double total = 0.0;
    for (std::uint32_t e = 0; e < q; ++e) {
        double w;
        if (e == 0) {
            w = 1.0 - p.epsilon;
        } else {
            w = p.alpha;
            for (int i = 0; i < m; ++i) w *= ((e >> i) & 1u) ? p.eps_cond[i] : 1.0 - p.eps_cond[i];
        }
        for (int i = 0; i < m; ++i) {
            const double pi = extr_probs[i];
            w *= ((e >> i) & 1u) ? 1.0 - pi : pi;
        }
        total += w;
        for (int i = 0; i < m; ++i)
            if (((e >> i) & 1u) == 0) agree[i] += w;
    }
    for (auto& a : agree) a /= total;
    return agree;
}

}  // namespace frontend

QscFrontEnd::QscFrontEnd(SymbolBlock received, ChannelParams params, bool refresh_enabled)
    : received_(std::move(received)), params_(params), refresh_enabled_(refresh_enabled),
      init_llr_(frontend::init_llr(params)) {
    if (received_.width != params_.m) throw std::invalid_argument("QscFrontEnd: width mismatch");
}

void QscFrontEnd::initial(std::span<double> l_ch) {
    const int m = params_.m;
    for (std::size_t j = 0; j < received_.size(); ++j)
        for (int i = 0; i < m; ++i)
            l_ch[j * m + i] = (1 - 2 * received_.bit(j, i)) * init_llr_;
}

void QscFrontEnd::refresh(std::span<const double> extrinsic, std::span<double> l_ch) {
    if (!refresh_enabled_) return;
    const int m = params_.m;
    for (std::size_t j = 0; j < received_.size(); ++j)
        frontend::refresh(received_.symbols[j], extrinsic.subspan(j * m, m), params_,
                          l_ch.subspan(j * m, m));
}

QscStarFrontEnd::QscStarFrontEnd(SymbolBlock received, QscStarParams params, bool refresh_enabled)
    : received_(std::move(received)), params_(std::move(params)), refresh_enabled_(refresh_enabled) {
    if (received_.width != params_.m) throw std::invalid_argument("QscStarFrontEnd: width mismatch");
}

void QscStarFrontEnd::initial(std::span<double> l_ch) {
    const int m = params_.m;
    for (std::size_t j = 0; j < received_.size(); ++j)
        for (int i = 0; i < m; ++i) {
            const double eps_i = params_.marginal_eps(i);
            l_ch[j * m + i] = (1 - 2 * received_.bit(j, i)) * std::log((1.0 - eps_i) / eps_i);
        }
}

void QscStarFrontEnd::refresh(std::span<const double> extrinsic, std::span<double> l_ch) {
    if (!refresh_enabled_) return;
    const int m = params_.m;
    for (std::size_t j = 0; j < received_.size(); ++j)
        frontend::refresh_qsc_star(received_.symbols[j], extrinsic.subspan(j * m, m), params_,
                                   l_ch.subspan(j * m, m));
}

}  // namespace qsc
