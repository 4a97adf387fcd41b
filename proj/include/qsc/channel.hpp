#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

namespace qsc {

/// Draws a uniform double in [0,1) from the top 53 bits of the generator.
inline double uniform_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Mixes integers into a well-spread 64-bit stream seed (splitmix64 finalizer).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

/// q-ary symmetric channel: a symbol survives with probability 1-epsilon,
/// otherwise it is replaced by one of the other q-1 symbols uniformly.
struct ChannelParams {
    int m;           // bits per symbol
    double epsilon;  // symbol error probability

    ChannelParams(int m_, double epsilon_);

    std::uint64_t q() const { return std::uint64_t{1} << m; }
};

/// q-SC* channel: conditioned on a symbol error, the m error bits are
/// independent with probabilities eps_cond[i].
struct QscStarParams {
    int m;
    double epsilon;
    std::vector<double> eps_cond;  // conditional bit-error probabilities
    double alpha;                  // epsilon / (1 - prod(1 - eps_cond))

    QscStarParams(int m_, double epsilon_, std::vector<double> eps_cond_);

    std::uint64_t q() const { return std::uint64_t{1} << m; }
    /// Marginal bit-error probability of sub-channel i (alpha * eps_cond[i]).
    double marginal_eps(int i) const { return alpha * eps_cond[i]; }
};

/// A block of n symbols, each m bits wide, packed little-endian
/// (bit i of symbol s is (s >> i) & 1).
struct SymbolBlock {
    int width = 1;
    std::vector<std::uint32_t> symbols;

    SymbolBlock() = default;
    SymbolBlock(int width_, std::size_t n) : width(width_), symbols(n, 0) {
        if (width_ < 1 || width_ > 31) throw std::invalid_argument("SymbolBlock: width out of range");
    }
    std::size_t size() const { return symbols.size(); }
    int bit(std::size_t j, int i) const { return (symbols[j] >> i) & 1u; }

    /// Packs n_bits/width symbols from a flat bit vector (bit j*m+i -> bit i of symbol j).
    static SymbolBlock from_bits(const std::vector<std::uint8_t>& bits, int width);
    std::vector<std::uint8_t> to_bits() const;
};

/// h(x) = -x log2 x - (1-x) log2(1-x), with h(0) = h(1) = 0.
double binary_entropy(double x);

/// C = m - h(eps) - eps*log2(2^m - 1), in bits per channel use.
double capacity_qsc(const ChannelParams& p);

/// Crossover probability of the marginal BSC: q*eps / (2(q-1)).
double marginal_bsc_eps(const ChannelParams& p);

/// C = 1 - h(eps_bsc).
double capacity_bsc(double eps_bsc);

/// BSEC(delta, eps) capacity: (1-delta)*(1 - h(eps/(1-delta))).
double capacity_bsec(double delta, double eps);

/// Relative loss 1 - m*C_BSC/C_qSC of the independent-BSC decomposition.
/// Undefined (nullopt) when C_qSC = 0.
std::optional<double> relative_capacity_loss(const ChannelParams& p);

/// Capacity of the q-SC* channel.
double capacity_qsc_star(const QscStarParams& p);

SymbolBlock transmit(const SymbolBlock& x, const ChannelParams& p, std::mt19937_64& rng);
SymbolBlock transmit_qsc_star(const SymbolBlock& x, const QscStarParams& p, std::mt19937_64& rng);

}  // namespace qsc
