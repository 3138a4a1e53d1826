#ifndef RFSO_POWER_ALLOC_HPP
#define RFSO_POWER_ALLOC_HPP

#include <functional>

#include "rfso/arq.hpp"

namespace rfso::alloc {

/// Normalized expected energy available per codeword.
struct EnergyBudget {
    double total;

    void validate() const {
        if (!(total > 0.0)) throw std::domain_error("EnergyBudget: total must be positive");
    }
};

/// Maps a total round power P to the decoding failure probability of a
/// round transmitted at that power, for fixed channel, rate and N. The
/// RF/FSO split is owned by whoever builds the evaluator.
using PhiEvaluator = std::function<double(double)>;

/// Equal-expected-energy scheme: P_1 = budget/M and P_n = P_1 / Phi_{n-1}.
/// Powers are non-decreasing; if some phi(P_j) reaches zero the remaining
/// rounds are unreachable and the schedule is returned truncated.
arq::PowerSchedule suboptimal_schedule(const EnergyBudget& budget, int m,
                                       const PhiEvaluator& phi, double rf_split = 0.5);

/// Exhaustive grid search (m <= 3) minimizing the outage over schedules that
/// meet the expected-energy budget, the last free power solved from the
/// budget equation, followed by one golden-section refinement pass. The
/// equal-expected-energy and uniform schedules are seeded as candidates.
arq::PowerSchedule optimal_schedule(const EnergyBudget& budget, int m, const PhiEvaluator& phi,
                                    int grid_resolution, double rf_split = 0.5);

/// Equal per-round powers meeting the expected-energy budget, solved by
/// bisection of P * sum_m phi(P)^(m-1) = budget.
arq::PowerSchedule uniform_schedule(const EnergyBudget& budget, int m, const PhiEvaluator& phi,
                                    double rf_split = 0.5);

} // namespace rfso::alloc

#endif
