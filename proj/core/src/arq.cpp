#include "rfso/arq.hpp"

#include <stdexcept>

namespace rfso::arq {

std::string engine_name(Engine e) {
    switch (e) {
        case Engine::clt: return "clt";
        case Engine::clt_exactq: return "clt_exactq";
        case Engine::minkowski: return "minkowski";
        case Engine::montecarlo: return "montecarlo";
    }
    return "unknown";
}

std::vector<double> cumulative_probs(std::span<const double> phi) {
    std::vector<double> out;
    out.reserve(phi.size() + 1);
    out.push_back(1.0);
    double running = 1.0;
    for (double p : phi) {
        if (!(p >= 0.0) || !(p <= 1.0))
            throw std::domain_error("cumulative_probs: phi values must lie in [0,1]");
        running *= p;
        out.push_back(running);
    }
    return out;
}

double throughput(double rate, std::span<const double> capital_phi) {
    if (capital_phi.size() < 2)
        throw std::domain_error("throughput: need Phi_0 and at least one round");
    double denom = 0.0;
    for (std::size_t m = 0; m + 1 < capital_phi.size(); ++m) denom += capital_phi[m];
    return rate * (1.0 - capital_phi.back()) / denom;
}

double throughput_first_round_shortcut(double rate, double phi_1) {
    return rate * (1.0 - phi_1);
}

double outage(std::span<const double> capital_phi) {
    if (capital_phi.empty()) throw std::domain_error("outage: empty probability list");
    return capital_phi.back();
}

double expected_energy(const PowerSchedule& schedule, std::span<const double> capital_phi) {
    if (capital_phi.size() != schedule.rounds.size() + 1)
        throw std::domain_error("expected_energy: schedule and Phi lengths do not match");
    double acc = 0.0;
    for (std::size_t m = 0; m < schedule.rounds.size(); ++m)
        acc += schedule.rounds[m].total() * capital_phi[m];
    return acc;
}

ArqResult assemble(double rate, std::span<const double> phi, const PowerSchedule& schedule,
                   Engine engine) {
    if (phi.size() != schedule.rounds.size())
        throw std::domain_error("assemble: phi and schedule lengths do not match");
    ArqResult res;
    res.phi.assign(phi.begin(), phi.end());
    res.capital_phi = cumulative_probs(phi);
    res.throughput = throughput(rate, res.capital_phi);
    res.outage = outage(res.capital_phi);
    res.expected_energy = expected_energy(schedule, res.capital_phi);
    res.engine = engine;
    return res;
}

} // namespace rfso::arq
