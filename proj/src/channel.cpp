#include "qsc/channel.hpp"

#include <algorithm>
#include <cmath>

namespace qsc {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    auto finalize = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return finalize(finalize(finalize(seed) + a) + b);
}

ChannelParams::ChannelParams(int m_, double epsilon_) : m(m_), epsilon(epsilon_) {
    if (m < 1 || m > 31) throw std::invalid_argument("ChannelParams: m must be in [1,31]");
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw std::invalid_argument("ChannelParams: epsilon must be in [0,1]");
}

QscStarParams::QscStarParams(int m_, double epsilon_, std::vector<double> eps_cond_)
    : m(m_), epsilon(epsilon_), eps_cond(std::move(eps_cond_)) {
    if (m < 1 || m > 31) throw std::invalid_argument("QscStarParams: m must be in [1,31]");
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw std::invalid_argument("QscStarParams: epsilon must be in [0,1]");
    if (static_cast<int>(eps_cond.size()) != m) throw std::invalid_argument("QscStarParams: eps_cond must have m entries");
    double prod = 1.0;
    for (double e : eps_cond) {
        if (!(e > 0.0 && e < 1.0)) throw std::invalid_argument("QscStarParams: eps_cond entries must be in (0,1)");
        prod *= 1.0 - e;
    }
    if (!(prod < 1.0)) throw std::invalid_argument("QscStarParams: prod(1-eps_cond) must be < 1");
    alpha = epsilon / (1.0 - prod);
    for (double e : eps_cond) {
        if (alpha * e > 1.0 + 1e-12)
            throw std::invalid_argument("QscStarParams: marginal bit error probability exceeds 1");
    }
}

SymbolBlock SymbolBlock::from_bits(const std::vector<std::uint8_t>& bits, int width) {
    if (width < 1 || width > 31) throw std::invalid_argument("from_bits: width out of range");
    if (bits.size() % width != 0) throw std::invalid_argument("from_bits: bit count not divisible by width");
    SymbolBlock b(width, bits.size() / width);
    for (std::size_t j = 0; j < b.size(); ++j) {
        std::uint32_t s = 0;
        for (int i = 0; i < width; ++i) s |= static_cast<std::uint32_t>(bits[j * width + i] & 1u) << i;
        b.symbols[j] = s;
    }
    return b;
}

std::vector<std::uint8_t> SymbolBlock::to_bits() const {
    std::vector<std::uint8_t> bits(size() * width);
    for (std::size_t j = 0; j < size(); ++j)
        for (int i = 0; i < width; ++i) bits[j * width + i] = static_cast<std::uint8_t>(bit(j, i));
    return bits;
}

double binary_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("binary_entropy: argument outside [0,1]");
    if (x == 0.0 || x == 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double capacity_qsc(const ChannelParams& p) {
    double c = p.m - binary_entropy(p.epsilon);
    if (p.m > 1) c -= p.epsilon * std::log2(static_cast<double>(p.q()) - 1.0);
    return c;
}

double marginal_bsc_eps(const ChannelParams& p) {
    const double q = static_cast<double>(p.q());
    return q * p.epsilon / (2.0 * (q - 1.0));
}

double capacity_bsc(double eps_bsc) { return 1.0 - binary_entropy(eps_bsc); }

double capacity_bsec(double delta, double eps) {
    if (delta < 0.0 || eps < 0.0 || delta + eps > 1.0 + 1e-15)
        throw std::domain_error("capacity_bsec: require delta,eps >= 0 and delta+eps <= 1");
    if (delta >= 1.0) return 0.0;
    return (1.0 - delta) * (1.0 - binary_entropy(eps / (1.0 - delta)));
}

std::optional<double> relative_capacity_loss(const ChannelParams& p) {
    const double cq = capacity_qsc(p);
    if (cq <= 0.0) return std::nullopt;
    const double cb = capacity_bsc(marginal_bsc_eps(p));
    return 1.0 - p.m * cb / cq;
}

double capacity_qsc_star(const QscStarParams& p) {
    // xlog2(x) with the x->0 limit.
    auto xlog2 = [](double x) { return x > 0.0 ? x * std::log2(x) : 0.0; };
    double hsum = 0.0;
    for (double e : p.eps_cond) hsum += binary_entropy(e);
    return p.m - p.alpha * hsum + xlog2(1.0 - p.epsilon) + xlog2(p.alpha) - xlog2(p.alpha - p.epsilon);
}

SymbolBlock transmit(const SymbolBlock& x, const ChannelParams& p, std::mt19937_64& rng) {
    if (x.width != p.m) throw std::invalid_argument("transmit: block width does not match channel");
    SymbolBlock y = x;
    const std::uint64_t q = p.q();
    for (auto& s : y.symbols) {
        if (uniform_double(rng) < p.epsilon) {
            // uniform over the q-1 alternatives: draw in [0, q-1), skip s itself
            std::uint64_t r = static_cast<std::uint64_t>(uniform_double(rng) * static_cast<double>(q - 1));
            if (r >= q - 1) r = q - 2;  // guard the open-interval edge
            s = static_cast<std::uint32_t>(r >= s ? r + 1 : r);
        }
    }
    return y;
}

namespace {

// Conditional error-pattern CDF for q-SC*, over e in {1, ..., q-1}.
std::vector<double> star_pattern_cdf(const QscStarParams& p) {
    const std::uint64_t q = p.q();
    std::vector<double> cdf(q - 1);
    double total = 0.0;
    for (std::uint64_t e = 1; e < q; ++e) {
        double w = 1.0;
        for (int i = 0; i < p.m; ++i) w *= ((e >> i) & 1u) ? p.eps_cond[i] : 1.0 - p.eps_cond[i];
        total += w;
        cdf[e - 1] = total;
    }
    for (auto& c : cdf) c /= total;
    cdf.back() = 1.0;
    return cdf;
}

}  // namespace

SymbolBlock transmit_qsc_star(const SymbolBlock& x, const QscStarParams& p, std::mt19937_64& rng) {
    if (x.width != p.m) throw std::invalid_argument("transmit_qsc_star: block width does not match channel");
    SymbolBlock y = x;
    if (p.m <= 20) {
        // exact inverse-CDF sampling from the precomputed pattern table
        const std::vector<double> cdf = star_pattern_cdf(p);
        for (auto& s : y.symbols) {
            if (uniform_double(rng) < p.epsilon) {
                const double u = uniform_double(rng);
                std::size_t lo = std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
                s ^= static_cast<std::uint32_t>(lo + 1);
            }
        }
    } else {
        // per-bit sampling with rejection of the all-zero pattern
        for (auto& s : y.symbols) {
            if (uniform_double(rng) < p.epsilon) {
                std::uint32_t e = 0;
                do {
                    e = 0;
                    for (int i = 0; i < p.m; ++i)
                        if (uniform_double(rng) < p.eps_cond[i]) e |= 1u << i;
                } while (e == 0);
                s ^= e;
            }
        }
    }
    return y;
}

}  // namespace qsc
