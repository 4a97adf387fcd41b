#include "qsc/sim.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qsc/construct.hpp"
#include "qsc/frontend.hpp"

namespace qsc {
namespace sim {

void SimConfig::validate(const ParityCheckCode& code) const {
    if (epsilon_sweep.empty()) throw std::invalid_argument("SimConfig: empty epsilon sweep");
    if (m < 1) throw std::invalid_argument("SimConfig: m < 1");
    if (code.n_bits % m != 0) throw std::invalid_argument("SimConfig: code length not divisible by m");
    if (channel == ChannelKind::QscStar && static_cast<int>(eps_cond.size()) != m)
        throw std::invalid_argument("SimConfig: eps_cond must have m entries");
    if (min_bit_errors < 1 || max_codewords < 1) throw std::invalid_argument("SimConfig: bad stopping rule");
    if (workers < 1) throw std::invalid_argument("SimConfig: workers < 1");
    if (code.symbol_width != m)
        throw std::invalid_argument("SimConfig: code symbol_width does not match channel m");
    if (!construct::validate_symbol_constraint(code).empty())
        throw std::invalid_argument("SimConfig: code violates the symbol-separation constraint");
}

namespace {

struct TrialResult {
    long bit_errors = 0;
    bool frame_error = false;
    int iterations = 0;
};

TrialResult run_trial(const SimConfig& cfg, const ParityCheckCode& code, const Gf2Encoder& encoder,
                      double epsilon, std::size_t point_idx, long trial_idx) {
    std::mt19937_64 rng(mix_seed(cfg.seed, point_idx, static_cast<std::uint64_t>(trial_idx)));

    std::vector<std::uint8_t> cw;
    if (cfg.all_zero) {
        cw.assign(code.n_bits, 0);
    } else {
        std::vector<std::uint8_t> info(encoder.k());
        for (auto& b : info) b = static_cast<std::uint8_t>(rng() & 1u);
        cw = encoder.encode(info);
    }
    const SymbolBlock x = SymbolBlock::from_bits(cw, cfg.m);

    DecodeOptions opts;
    opts.max_iter = cfg.max_iter;
    opts.refresh_period = cfg.refresh_period;

    DecodeResult res;
    if (cfg.channel == ChannelKind::Qsc) {
        const ChannelParams p(cfg.m, epsilon);
        QscFrontEnd fe(transmit(x, p, rng), p, cfg.frontend_refresh);
        res = decode(code, fe, opts);
    } else {
        const QscStarParams p(cfg.m, epsilon, cfg.eps_cond);
        QscStarFrontEnd fe(transmit_qsc_star(x, p, rng), p, cfg.frontend_refresh);
        res = decode(code, fe, opts);
    }

    TrialResult t;
    t.iterations = res.iterations;
    for (int b = 0; b < code.n_bits; ++b)
        if (res.hard[b] != cw[b]) ++t.bit_errors;
    t.frame_error = t.bit_errors > 0;
    return t;
}

}  // namespace

std::vector<BerRecord> run_ber(const SimConfig& cfg, const ParityCheckCode& code,
                               const ProgressFn& progress) {
    cfg.validate(code);
    const Gf2Encoder encoder(code);
    std::vector<BerRecord> records;

    constexpr long kBatch = 32;  // stopping rule evaluated on fixed batch boundaries

    for (std::size_t pi = 0; pi < cfg.epsilon_sweep.size(); ++pi) {
        const double eps = cfg.epsilon_sweep[pi];
        const auto start = std::chrono::steady_clock::now();
        BerRecord rec;
        rec.epsilon = eps;
        long iter_sum = 0;

        long next_trial = 0;
        while (rec.codewords < cfg.max_codewords && rec.bit_errors < cfg.min_bit_errors) {
            const long batch = std::min(kBatch, cfg.max_codewords - rec.codewords);
            std::vector<TrialResult> results(batch);
            if (cfg.workers == 1) {
                for (long t = 0; t < batch; ++t)
                    results[t] = run_trial(cfg, code, encoder, eps, pi, next_trial + t);
            } else {
                std::atomic<long> cursor{0};
                std::vector<std::thread> pool;
                for (int w = 0; w < cfg.workers; ++w) {
                    pool.emplace_back([&] {
                        for (long t = cursor.fetch_add(1); t < batch; t = cursor.fetch_add(1))
                            results[t] = run_trial(cfg, code, encoder, eps, pi, next_trial + t);
                    });
                }
                for (auto& th : pool) th.join();
            }
            for (const auto& t : results) {
                rec.bit_errors += t.bit_errors;
                rec.frame_errors += t.frame_error ? 1 : 0;
                iter_sum += t.iterations;
            }
            rec.codewords += batch;
            next_trial += batch;
        }

        rec.bits = rec.codewords * static_cast<long>(code.n_bits);
        rec.ber = static_cast<double>(rec.bit_errors) / rec.bits;
        rec.fer = static_cast<double>(rec.frame_errors) / rec.codewords;
        rec.mean_iterations = static_cast<double>(iter_sum) / rec.codewords;
        rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (progress) progress(rec);
        records.push_back(rec);
    }
    return records;
}

std::vector<BerRecord> run_comparison_bsc_decomposition(SimConfig config, const ParityCheckCode& code,
                                                        const ProgressFn& progress) {
    config.frontend_refresh = false;
    return run_ber(config, code, progress);
}

std::string to_csv(const std::vector<BerRecord>& records) {
    std::ostringstream out;
    out << "epsilon,bits,bit_errors,ber,codewords,frame_errors,fer,mean_iterations,seconds\n";
    out.precision(10);
    for (const auto& r : records)
        out << r.epsilon << ',' << r.bits << ',' << r.bit_errors << ',' << r.ber << ',' << r.codewords
            << ',' << r.frame_errors << ',' << r.fer << ',' << r.mean_iterations << ',' << r.seconds
            << '\n';
    return out.str();
}

}  // namespace sim
}  // namespace qsc
