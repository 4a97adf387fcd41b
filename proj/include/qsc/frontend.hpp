#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qsc/channel.hpp"
#include "qsc/code.hpp"

namespace qsc {
namespace frontend {

/// Per-symbol quantities exchanged between the symbol front-end and the bit nodes.
struct FrontEndState {
    std::vector<double> p;          // p_i: extrinsic probability bit i agrees with y_i
    double beta = 1.0;              // prod p_i
    std::vector<double> beta_excl;  // beta_[i] = prod_{k != i} p_k (exclusion products)
    std::vector<double> eps_out;    // per-bit crossover toward the code
    std::vector<double> l_ch;       // refreshed channel LLRs, L(X_i) convention
};

/// out[i] = prod of values[k] for k != i, via prefix/suffix products (O(m),
/// no division). op_count, when given, is incremented once per multiplication.
void exclusion_products(std::span<const double> values, std::span<double> out,
                        std::size_t* op_count = nullptr);

/// Initial channel LLR magnitude log((2(1-2^-m) - eps)/eps); per-bit sign is
/// (1-2y_i). Requires 0 < eps < 2(1-2^-m).
double init_llr(const ChannelParams& p);

/// Message-form front-end update for one symbol: a-priori LLRs in, refreshed
/// channel LLRs out (both in L(X) convention).
FrontEndState analyze_symbol(std::uint32_t y_symbol, std::span<const double> l_a,
                             const ChannelParams& p);
void refresh(std::uint32_t y_symbol, std::span<const double> l_a, const ChannelParams& p,
             std::span<double> l_ch_out);

/// Direct-form APP LLR: channel term log(1 + beta_[i](q - q*eps - 1)/eps)
/// plus the extrinsic term, sign-flipped to the L(X_i) convention.
std::vector<double> app_llr_direct(std::uint32_t y_symbol, std::span<const double> l_extr,
                                   const ChannelParams& p);

/// Oracle: exact bit APPs P(X_i = y_i | Y = y) by enumerating all 2^m symbol
/// values. extr_probs[i] = extrinsic P(X_i = y_i). Requires m <= 12.
std::vector<double> brute_force_marginal(std::uint32_t y_symbol, std::span<const double> extr_probs,
                                         const ChannelParams& p);

/// q-SC* front-end update (generalized channel LLR).
void refresh_qsc_star(std::uint32_t y_symbol, std::span<const double> l_a, const QscStarParams& p,
                      std::span<double> l_ch_out);

/// Oracle: exact q-SC* bit APPs by enumerating all 2^m error patterns.
std::vector<double> brute_force_marginal_qsc_star(std::uint32_t y_symbol,
                                                  std::span<const double> extr_probs,
                                                  const QscStarParams& p);

}  // namespace frontend

/// Decoder front-end for the q-SC: holds the received block and refreshes the
/// per-bit channel LLRs from the current extrinsic estimates.
class QscFrontEnd : public ChannelLlrProvider {
  public:
    QscFrontEnd(SymbolBlock received, ChannelParams params, bool refresh_enabled = true);

    int n_bits() const override { return static_cast<int>(received_.size()) * params_.m; }
    void initial(std::span<double> l_ch) override;
    void refresh(std::span<const double> extrinsic, std::span<double> l_ch) override;

  private:
    SymbolBlock received_;
    ChannelParams params_;
    bool refresh_enabled_;
    double init_llr_;
};

/// Same contract for the q-SC* channel.
class QscStarFrontEnd : public ChannelLlrProvider {
  public:
    QscStarFrontEnd(SymbolBlock received, QscStarParams params, bool refresh_enabled = true);

    int n_bits() const override { return static_cast<int>(received_.size()) * params_.m; }
    void initial(std::span<double> l_ch) override;
    void refresh(std::span<const double> extrinsic, std::span<double> l_ch) override;

  private:
    SymbolBlock received_;
    QscStarParams params_;
    bool refresh_enabled_;
};

}  // namespace qsc
