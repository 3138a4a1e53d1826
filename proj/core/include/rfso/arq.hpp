#ifndef RFSO_ARQ_HPP
#define RFSO_ARQ_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rfso::arq {

/// ARQ protocol settings: at most max_rounds transmissions of a rate-R
/// codeword. max_rounds = 1 is plain one-shot transmission.
struct ArqConfig {
    int max_rounds;
    double rate;

    void validate() const {
        if (max_rounds < 1) throw std::domain_error("ArqConfig: max_rounds must be >= 1");
        if (!(rate > 0.0)) throw std::domain_error("ArqConfig: rate must be positive");
    }
};

struct RoundPower {
    double p_rf;
    double p_fso;
    double total() const { return p_rf + p_fso; }
};

/// Per-round transmit powers. `truncated` marks schedules cut short because
/// a round's failure probability hit zero and later rounds are unreachable.
struct PowerSchedule {
    std::vector<RoundPower> rounds;
    bool truncated = false;
};

enum class Engine { clt, clt_exactq, minkowski, montecarlo };

std::string engine_name(Engine e);

/// Confidence-interval half-widths attached to Monte Carlo results.
struct CiSet {
    double outage = 0.0;
    double throughput = 0.0;
    double energy = 0.0;
};

/// Full per-scenario outcome: per-round failure probabilities, their running
/// products, and the derived metrics.
struct ArqResult {
    std::vector<double> phi;
    std::vector<double> capital_phi; // Phi_0 .. Phi_M, Phi_0 = 1
    double throughput = 0.0;
    double outage = 0.0;
    double expected_energy = 0.0;
    Engine engine = Engine::clt;
    std::optional<CiSet> ci;

    std::optional<double> ci_halfwidth() const {
        return ci ? std::optional<double>(ci->outage) : std::nullopt;
    }
};

/// Phi_0 = 1, Phi_m = prod_{j<=m} phi_j.
std::vector<double> cumulative_probs(std::span<const double> phi);

/// R (1 - Phi_M) / sum_{m=1..M} Phi_{m-1}.
double throughput(double rate, std::span<const double> capital_phi);

/// First-round shortcut R (1 - phi_1); for equal per-round failure
/// probabilities it coincides with the exact expression. Comparison helper
/// only; reporting always goes through throughput().
double throughput_first_round_shortcut(double rate, double phi_1);

/// Phi_M, the probability of failing every round.
double outage(std::span<const double> capital_phi);

/// Expected consumed energy sum_m P_m Phi_{m-1}, P_m the total round power.
double expected_energy(const PowerSchedule& schedule, std::span<const double> capital_phi);

/// Assemble a result from per-round failure probabilities and a schedule.
ArqResult assemble(double rate, std::span<const double> phi, const PowerSchedule& schedule,
                   Engine engine);

} // namespace rfso::arq

#endif
