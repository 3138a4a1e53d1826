#include "rfso/power_alloc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "rfso/errors.hpp"

namespace rfso::alloc {

namespace {

void check_args(const EnergyBudget& budget, int m, double rf_split) {
    budget.validate();
    if (m < 1) throw std::domain_error("power allocation: m must be >= 1");
    if (!(rf_split >= 0.0) || !(rf_split <= 1.0))
        throw std::domain_error("power allocation: rf_split must lie in [0,1]");
}

arq::RoundPower split_power(double total, double rf_split) {
    return {rf_split * total, (1.0 - rf_split) * total};
}

double checked_phi(const PhiEvaluator& phi, double p) {
    const double v = phi(p);
    if (!(v >= 0.0) || !(v <= 1.0))
        throw std::domain_error("power allocation: evaluator returned a value outside [0,1]");
    return v;
}

arq::PowerSchedule schedule_from_totals(const std::vector<double>& totals, double rf_split) {
    arq::PowerSchedule s;
    s.rounds.reserve(totals.size());
    for (double p : totals) s.rounds.push_back(split_power(p, rf_split));
    return s;
}

std::vector<double> log_grid(double lo, double hi, int count) {
    std::vector<double> g;
    g.reserve(count);
    const double ratio = std::pow(hi / lo, 1.0 / static_cast<double>(count - 1));
    double v = lo;
    for (int i = 0; i < count; ++i) {
        g.push_back(std::min(v, hi));
        v *= ratio;
    }
    return g;
}

class OptimalSearch {
public:
    OptimalSearch(double budget, const PhiEvaluator& phi) : budget_(budget), phi_(phi) {}

    /// Outage of a complete power vector, or nothing when it is infeasible
    /// (non-positive round power or budget missed).
    std::optional<double> outage_of(const std::vector<double>& totals) const {
        double cum = 1.0;
        double spent = 0.0;
        for (double p : totals) {
            if (!(p > 0.0) || !std::isfinite(p)) return std::nullopt;
            spent += p * cum;
            cum *= checked_phi(phi_, p);
        }
        if (std::abs(spent - budget_) > 1e-9 * budget_) return std::nullopt;
        return cum;
    }

    /// Complete a vector of free powers with the last round solved from the
    /// budget equation.
    std::optional<std::vector<double>> complete(const std::vector<double>& free) const {
        std::vector<double> totals = free;
        double cum = 1.0;
        double spent = 0.0;
        for (double p : free) {
            if (!(p > 0.0)) return std::nullopt;
            spent += p * cum;
            cum *= checked_phi(phi_, p);
        }
        if (!(cum > 0.0)) return std::nullopt;
        const double last = (budget_ - spent) / cum;
        if (!(last > 0.0) || !std::isfinite(last)) return std::nullopt;
        totals.push_back(last);
        return totals;
    }

    void consider(const std::vector<double>& totals) {
        const auto out = outage_of(totals);
        if (!out) return;
        if (*out < best_outage_ || (*out == best_outage_ && totals < best_totals_)) {
            best_outage_ = *out;
            best_totals_ = totals;
        }
    }

    void consider_free(const std::vector<double>& free) {
        if (const auto totals = complete(free)) consider(*totals);
    }

    double free_objective(const std::vector<double>& free) const {
        const auto totals = complete(free);
        if (!totals) return std::numeric_limits<double>::infinity();
        const auto out = outage_of(*totals);
        return out ? *out : std::numeric_limits<double>::infinity();
    }

    bool found() const { return !best_totals_.empty(); }
    const std::vector<double>& best_totals() const { return best_totals_; }

private:
    double budget_;
    const PhiEvaluator& phi_;
    double best_outage_ = std::numeric_limits<double>::infinity();
    std::vector<double> best_totals_;
};

} // namespace

arq::PowerSchedule suboptimal_schedule(const EnergyBudget& budget, int m,
                                       const PhiEvaluator& phi, double rf_split) {
    check_args(budget, m, rf_split);
    const double p1 = budget.total / static_cast<double>(m);
    arq::PowerSchedule s;
    double cum = 1.0;
    for (int n = 1; n <= m; ++n) {
        const double pn = p1 / cum;
        s.rounds.push_back(split_power(pn, rf_split));
        if (n == m) break;
        const double f = checked_phi(phi, pn);
        if (f == 0.0) {
            s.truncated = true;
            break;
        }
        cum *= f;
    }
    return s;
}

arq::PowerSchedule uniform_schedule(const EnergyBudget& budget, int m, const PhiEvaluator& phi,
                                    double rf_split) {
    check_args(budget, m, rf_split);
    if (m == 1) return schedule_from_totals({budget.total}, rf_split);

    const auto spend = [&](double p) {
        const double f = checked_phi(phi, p);
        double cum = 1.0;
        double total = 0.0;
        for (int k = 0; k < m; ++k) {
            total += p * cum;
            cum *= f;
        }
        return total;
    };

    double lo = budget.total / static_cast<double>(m);
    double hi = budget.total;
    for (int it = 0; it < 200 && (hi - lo) > 1e-13 * budget.total; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (spend(mid) < budget.total)
            lo = mid;
        else
            hi = mid;
    }
    const double p = 0.5 * (lo + hi);
    return schedule_from_totals(std::vector<double>(m, p), rf_split);
}

arq::PowerSchedule optimal_schedule(const EnergyBudget& budget, int m, const PhiEvaluator& phi,
                                    int grid_resolution, double rf_split) {
    check_args(budget, m, rf_split);
    if (m > 3)
        throw config_error("optimal_schedule: exhaustive search supports at most 3 rounds");
    if (grid_resolution < 50)
        throw config_error("optimal_schedule: grid_resolution must be >= 50");
    if (m == 1) return schedule_from_totals({budget.total}, rf_split);

    OptimalSearch search(budget.total, phi);

    // seed with the analytic schemes so the search result can only improve
    // on them
    {
        const arq::PowerSchedule sub = suboptimal_schedule(budget, m, phi, rf_split);
        if (!sub.truncated && static_cast<int>(sub.rounds.size()) == m) {
            std::vector<double> totals;
            for (const auto& r : sub.rounds) totals.push_back(r.total());
            search.consider(totals);
        }
        const arq::PowerSchedule uni = uniform_schedule(budget, m, phi, rf_split);
        std::vector<double> totals;
        for (const auto& r : uni.rounds) totals.push_back(r.total());
        search.consider(totals);
    }

    const double lo = budget.total * 1e-3;
    const double hi = budget.total * (1.0 - 1e-9);

    if (m == 2) {
        for (double p1 : log_grid(lo, hi, grid_resolution)) search.consider_free({p1});
    } else {
        for (double p1 : log_grid(lo, hi, grid_resolution)) {
            const double f1 = checked_phi(phi, p1);
            if (!(f1 > 0.0)) continue;
            const double p2_hi = (budget.total - p1) / f1 * (1.0 - 1e-9);
            if (!(p2_hi > lo)) continue;
            for (double p2 : log_grid(lo, p2_hi, grid_resolution)) search.consider_free({p1, p2});
        }
    }

    if (!search.found())
        throw std::domain_error("optimal_schedule: no feasible schedule for this budget");

    // one golden-section refinement pass per free coordinate
    const double ratio = std::pow(hi / lo, 1.0 / static_cast<double>(grid_resolution - 1));
    constexpr double kInvPhi = 0.6180339887498949;
    for (std::size_t idx = 0; idx + 1 < static_cast<std::size_t>(m); ++idx) {
        std::vector<double> free(search.best_totals().begin(), search.best_totals().end() - 1);
        double a = std::max(lo, free[idx] / (ratio * ratio));
        double b = std::min(hi, free[idx] * ratio * ratio);
        const auto eval = [&](double v) {
            std::vector<double> probe = free;
            probe[idx] = v;
            return search.free_objective(probe);
        };
        double c = b - kInvPhi * (b - a);
        double d = a + kInvPhi * (b - a);
        double fc = eval(c);
        double fd = eval(d);
        for (int it = 0; it < 40 && (b - a) > 1e-10 * budget.total; ++it) {
            if (fc <= fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - kInvPhi * (b - a);
                fc = eval(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + kInvPhi * (b - a);
                fd = eval(d);
            }
        }
        std::vector<double> refined = free;
        refined[idx] = fc <= fd ? c : d;
        search.consider_free(refined);
    }

    return schedule_from_totals(search.best_totals(), rf_split);
}

} // namespace rfso::alloc
