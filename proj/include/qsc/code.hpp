#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace qsc {

/// Sparse binary parity-check code. Bit j belongs to symbol j / symbol_width.
struct ParityCheckCode {
    int n_bits = 0;
    int n_checks = 0;
    int symbol_width = 1;
    std::vector<std::vector<int>> bit_checks;  // per bit: incident check indices (sorted)
    std::vector<std::vector<int>> check_bits;  // per check: incident bit indices (sorted)

    static ParityCheckCode from_edges(int n_bits, int n_checks,
                                      const std::vector<std::pair<int, int>>& check_bit_edges,
                                      int symbol_width = 1);
    std::size_t n_edges() const;
};

/// Parses the standard alist text format (1-indexed, zero-padded adjacency).
/// Throws std::runtime_error naming the offending line on malformed input.
ParityCheckCode load_alist(const std::string& text, int symbol_width = 1);
std::string save_alist(const ParityCheckCode& code);

/// H*x over GF(2).
std::vector<std::uint8_t> syndrome(const ParityCheckCode& code, const std::vector<std::uint8_t>& bits);

/// Systematic encoder derived by GF(2) Gaussian elimination of H.
/// K = n_bits - rank(H); info bits are placed at the non-pivot columns.
class Gf2Encoder {
  public:
    explicit Gf2Encoder(const ParityCheckCode& code);

    int n_bits() const { return n_; }
    int k() const { return static_cast<int>(info_cols_.size()); }
    const std::vector<int>& info_positions() const { return info_cols_; }

    std::vector<std::uint8_t> encode(const std::vector<std::uint8_t>& info_bits) const;

  private:
    int n_ = 0;
    std::vector<int> pivot_cols_;           // one per reduced row
    std::vector<int> info_cols_;            // non-pivot columns, ascending
    std::vector<std::vector<std::uint64_t>> rows_;  // RREF rows restricted to info columns
};

/// Edge-perspective degree distribution pair (lambda, rho).
struct DegreeDistribution {
    std::map<int, double> lambda;
    std::map<int, double> rho;

    void validate() const;  // nonneg entries, both sides sum to 1 within 1e-9
    /// R = 1 - (sum rho_d/d) / (sum lambda_d/d).
    double rate() const;
};

/// Check node update: out[e] = boxplus of all inputs except e, computed with
/// the numerically stable pairwise recursion via prefix/suffix arrays.
void check_node_update(std::span<const double> in, std::span<double> out);

/// Stable two-argument boxplus: log((1+e^{a+b})/(e^a+e^b)).
double boxplus(double a, double b);

/// Supplies channel LLRs to the decoder: once initially, then refreshed from
/// the current extrinsic bit estimates per the decoder's schedule.
class ChannelLlrProvider {
  public:
    virtual ~ChannelLlrProvider() = default;
    virtual int n_bits() const = 0;
    virtual void initial(std::span<double> l_ch) = 0;
    virtual void refresh(std::span<const double> extrinsic, std::span<double> l_ch) = 0;
};

/// Fixed channel LLRs; refresh keeps the initial values (independent-BSC baseline).
class FixedLlrProvider : public ChannelLlrProvider {
  public:
    explicit FixedLlrProvider(std::vector<double> l_ch) : l_(std::move(l_ch)) {}
    int n_bits() const override { return static_cast<int>(l_.size()); }
    void initial(std::span<double> l_ch) override;
    void refresh(std::span<const double>, std::span<double> l_ch) override { initial(l_ch); }

  private:
    std::vector<double> l_;
};

struct DecodeOptions {
    int max_iter = 100;
    int refresh_period = 1;  // refresh channel LLRs every k iterations
    double clip = 30.0;      // LLR clip applied to messages and app values
    bool early_stop = true;  // stop when the syndrome is zero
};

struct DecodeResult {
    std::vector<std::uint8_t> hard;
    std::vector<double> app_llr;
    int iterations = 0;
    bool converged = false;
};

/// Flooding sum-product decoder with a pluggable channel-LLR front-end.
/// Hard decisions: app > 0 -> 0, app < 0 -> 1, ties -> 0.
DecodeResult decode(const ParityCheckCode& code, ChannelLlrProvider& frontend,
                    const DecodeOptions& opts = {});

}  // namespace qsc
