#include "rfso/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "rfso/channels.hpp"
#include "rfso/errors.hpp"
#include "rfso/rng.hpp"

namespace rfso::mc {

namespace {

constexpr std::uint64_t kLinkRf = 0;
constexpr std::uint64_t kLinkFso = 1;

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

double round_failure(const GammaGammaParams& params, const RfChannelModel& rf,
                     double rate, double p_rf, double p_fso, int n_fso,
                     std::uint64_t root_seed, std::uint64_t trial, std::uint64_t round) {
    double info = 0.0;
    if (p_rf > 0.0) {
        rng::RngStream s(root_seed, rng::derive_stream({trial, round, kLinkRf, 0}));
        info += std::log1p(p_rf * channels::sample_rf_gain(rf, s));
    }
    if (p_fso > 0.0) {
        double acc = 0.0;
        for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(n_fso); ++i) {
            rng::RngStream s(root_seed, rng::derive_stream({trial, round, kLinkFso, i}));
            acc += std::log1p(p_fso * channels::sample_gamma_gamma(params, s));
        }
        info += acc / static_cast<double>(n_fso);
    }
    return info < rate ? 1.0 : 0.0;
}

struct BatchStats {
    double mean_of_batches = 0.0;
    double ci = 0.0;
};

BatchStats batch_ci(const std::vector<double>& batch_means) {
    const std::size_t b = batch_means.size();
    double mean = 0.0;
    for (double v : batch_means) mean += v;
    mean /= static_cast<double>(b);
    double var = 0.0;
    for (double v : batch_means) var += (v - mean) * (v - mean);
    var /= static_cast<double>(b - 1);
    return {mean, 3.0 * std::sqrt(var / static_cast<double>(b))};
}

template <class PerBatch>
void run_batches(int batch_count, int threads, PerBatch&& body) {
    if (threads <= 1) {
        for (int b = 0; b < batch_count; ++b) body(b);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([=]() {
            for (int b = t; b < batch_count; b += threads) body(b);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace

void McConfig::validate() const {
    if (trials < 10000)
        throw config_error("McConfig: need at least 10^4 trials for valid batch CIs");
    if (batch_count < 2) throw config_error("McConfig: batch_count must be >= 2");
    if (trials % batch_count != 0)
        throw config_error("McConfig: batch_count must divide trials");
}

McEstimate simulate_phi(const GammaGammaParams& params, const RfChannelModel& rf,
                        const clt::RoundParams& round, const McConfig& cfg) {
    params.validate();
    round.validate();
    cfg.validate();

    const long long per_batch = cfg.trials / cfg.batch_count;
    std::vector<double> batch_means(cfg.batch_count, 0.0);

    run_batches(cfg.batch_count, resolve_threads(cfg.threads), [&](int b) {
        long long fails = 0;
        const long long t0 = static_cast<long long>(b) * per_batch;
        for (long long t = t0; t < t0 + per_batch; ++t) {
            fails += static_cast<long long>(
                round_failure(params, rf, round.rate, round.p_rf, round.p_fso, round.n_fso,
                              cfg.root_seed, static_cast<std::uint64_t>(t), 0));
        }
        batch_means[b] = static_cast<double>(fails) / static_cast<double>(per_batch);
    });

    const BatchStats stats = batch_ci(batch_means);
    return {stats.mean_of_batches, stats.ci, cfg.trials};
}

arq::ArqResult simulate_arq(const GammaGammaParams& params, const RfChannelModel& rf,
                            const arq::ArqConfig& config, const arq::PowerSchedule& schedule,
                            int n_fso, const McConfig& cfg) {
    params.validate();
    config.validate();
    cfg.validate();
    if (static_cast<int>(schedule.rounds.size()) != config.max_rounds)
        throw std::domain_error("simulate_arq: schedule length must equal max_rounds");
    if (n_fso < 1) throw std::domain_error("simulate_arq: n_fso must be >= 1");

    const int m = config.max_rounds;
    const long long per_batch = cfg.trials / cfg.batch_count;

    struct Batch {
        std::vector<long long> failed_through; // [j] = trials failing rounds 1..j+1
        long long rounds_used = 0;
        long long successes = 0;
        double energy = 0.0;
    };
    std::vector<Batch> batches(cfg.batch_count);
    for (auto& b : batches) b.failed_through.assign(m, 0);

    run_batches(cfg.batch_count, resolve_threads(cfg.threads), [&](int bi) {
        Batch& batch = batches[bi];
        const long long t0 = static_cast<long long>(bi) * per_batch;
        for (long long t = t0; t < t0 + per_batch; ++t) {
            bool decoded = false;
            for (int j = 0; j < m; ++j) {
                const auto& rp = schedule.rounds[j];
                batch.rounds_used += 1;
                batch.energy += rp.total();
                const double fail = round_failure(
                    params, rf, config.rate, rp.p_rf, rp.p_fso, n_fso, cfg.root_seed,
                    static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(j) + 1);
                if (fail == 0.0) {
                    decoded = true;
                    break;
                }
                batch.failed_through[j] += 1;
            }
            if (decoded) batch.successes += 1;
        }
    });

    // deterministic merge in batch order
    std::vector<long long> failed_through(m, 0);
    long long rounds_used = 0, successes = 0;
    double energy = 0.0;
    std::vector<double> outage_b(cfg.batch_count), throughput_b(cfg.batch_count),
        energy_b(cfg.batch_count);
    for (int bi = 0; bi < cfg.batch_count; ++bi) {
        const Batch& b = batches[bi];
        for (int j = 0; j < m; ++j) failed_through[j] += b.failed_through[j];
        rounds_used += b.rounds_used;
        successes += b.successes;
        energy += b.energy;
        outage_b[bi] = static_cast<double>(b.failed_through[m - 1]) / static_cast<double>(per_batch);
        throughput_b[bi] = config.rate * static_cast<double>(b.successes) /
                           static_cast<double>(b.rounds_used);
        energy_b[bi] = b.energy / static_cast<double>(per_batch);
    }

    arq::ArqResult res;
    res.engine = arq::Engine::montecarlo;
    res.capital_phi.assign(m + 1, 1.0);
    res.phi.assign(m, 0.0);
    const double trials = static_cast<double>(cfg.trials);
    for (int j = 0; j < m; ++j) {
        res.capital_phi[j + 1] = static_cast<double>(failed_through[j]) / trials;
        const double reached = j == 0 ? trials : static_cast<double>(failed_through[j - 1]);
        res.phi[j] = reached > 0.0 ? static_cast<double>(failed_through[j]) / reached : 0.0;
    }
    res.outage = res.capital_phi[m];
    res.throughput = config.rate * static_cast<double>(successes) /
                     static_cast<double>(rounds_used);
    res.expected_energy = energy / trials;

    arq::CiSet ci;
    ci.outage = batch_ci(outage_b).ci;
    ci.throughput = batch_ci(throughput_b).ci;
    ci.energy = batch_ci(energy_b).ci;
    res.ci = ci;
    return res;
}

} // namespace rfso::mc
