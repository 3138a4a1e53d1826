#ifndef RFSO_MC_ORACLE_HPP
#define RFSO_MC_ORACLE_HPP

#include <cstdint>

#include "rfso/arq.hpp"
#include "rfso/clt_engine.hpp"
#include "rfso/types.hpp"

namespace rfso::mc {

/// Monte Carlo settings. Every random draw is keyed by (root_seed, trial,
/// round, link, index), so results are bit-identical for a given root_seed
/// no matter how many worker threads run the trials.
struct McConfig {
    long long trials = 100000;
    std::uint64_t root_seed = 1;
    int batch_count = 32;
    int threads = 0; // 0 = hardware concurrency

    void validate() const;
};

struct McEstimate {
    double mean = 0.0;
    double ci_halfwidth = 0.0; // 3-sigma batch-means half-width
    long long trials = 0;
};

/// Empirical per-round failure probability: one RF gain and n_fso FSO gains
/// per trial, failure when the accumulated mutual information stays below
/// the rate.
McEstimate simulate_phi(const GammaGammaParams& params, const RfChannelModel& rf,
                        const clt::RoundParams& round, const McConfig& cfg);

/// Full ARQ protocol simulation: fresh channel draws each round, stop on
/// first success or after max_rounds. Throughput is the renewal-reward
/// ratio of totals.
arq::ArqResult simulate_arq(const GammaGammaParams& params, const RfChannelModel& rf,
                            const arq::ArqConfig& config, const arq::PowerSchedule& schedule,
                            int n_fso, const McConfig& cfg);

} // namespace rfso::mc

#endif
