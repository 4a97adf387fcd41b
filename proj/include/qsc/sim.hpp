#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qsc/channel.hpp"
#include "qsc/code.hpp"

namespace qsc {
namespace sim {

enum class ChannelKind { Qsc, QscStar };

struct SimConfig {
    ChannelKind channel = ChannelKind::Qsc;
    int m = 1;
    std::vector<double> epsilon_sweep;
    std::vector<double> eps_cond;  // q-SC* only
    int max_iter = 100;
    int refresh_period = 1;
    bool frontend_refresh = true;  // false: independent-BSC baseline (frozen init LLRs)
    long min_bit_errors = 100;
    long max_codewords = 10000;
    bool all_zero = false;  // send the all-zero codeword instead of random info
    std::uint64_t seed = 1;
    int workers = 1;

    void validate(const ParityCheckCode& code) const;
};

struct BerRecord {
    double epsilon = 0.0;
    long bits = 0;
    long bit_errors = 0;
    double ber = 0.0;
    long codewords = 0;
    long frame_errors = 0;
    double fer = 0.0;
    double mean_iterations = 0.0;
    double seconds = 0.0;
};

using ProgressFn = std::function<void(const BerRecord&)>;

/// Monte-Carlo BER sweep: encode random info (or all-zero), transmit, decode
/// with the symbol front-end, count residual errors. Stops per point at
/// min_bit_errors or max_codewords. Deterministic for a fixed seed,
/// independent of the worker count.
std::vector<BerRecord> run_ber(const SimConfig& config, const ParityCheckCode& code,
                               const ProgressFn& progress = {});

/// Same pipeline with the front-end frozen at the initial channel LLRs.
std::vector<BerRecord> run_comparison_bsc_decomposition(SimConfig config, const ParityCheckCode& code,
                                                        const ProgressFn& progress = {});

std::string to_csv(const std::vector<BerRecord>& records);

}  // namespace sim
}  // namespace qsc
