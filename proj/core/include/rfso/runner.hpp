#ifndef RFSO_RUNNER_HPP
#define RFSO_RUNNER_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rfso/arq.hpp"
#include "rfso/clt_engine.hpp"
#include "rfso/scenario.hpp"

namespace rfso::cli {

struct SweepRow {
    double sweep_value;
    arq::ArqResult result;
};

/// One row per (sweep point, engine), ordered by sweep value then engine.
std::vector<SweepRow> run_sweep(const ScenarioFile& sc);
void write_sweep_csv(const ScenarioFile& sc, const std::vector<SweepRow>& rows,
                     std::ostream& out);
void run_sweep_to_csv(const ScenarioFile& sc);

struct AllocRow {
    double budget;
    std::string scheme; // uniform | suboptimal | optimal | rf_only | fso_only
    std::vector<double> round_powers;
    arq::ArqResult result;
};

/// Power-allocation comparison per budget point: the three joint schemes
/// plus single-link baselines at the same expected-energy budget.
std::vector<AllocRow> run_power_alloc(const ScenarioFile& sc);
void write_alloc_csv(const ScenarioFile& sc, const std::vector<AllocRow>& rows,
                     std::ostream& out);
void run_power_alloc_to_csv(const ScenarioFile& sc);

struct ValidatePoint {
    double sweep_value;
    std::optional<double> phi_clt;
    std::optional<double> phi_clt_exactq;
    std::optional<double> phi_minkowski;
    std::optional<double> phi_mc;
    std::optional<double> mc_ci;
};

/// Cross-engine comparison of the per-round failure probability over the
/// sweep grid; every applicable engine runs regardless of the scenario's
/// engine choice.
std::vector<ValidatePoint> run_validate(const ScenarioFile& sc);
void write_validate_csv(const std::vector<ValidatePoint>& pts, std::ostream& out);
void write_validate_summary(const std::vector<ValidatePoint>& pts, std::ostream& out);
void run_validate_to_csv(const ScenarioFile& sc, std::ostream& summary);

struct MomentsReport {
    double p_fso;
    clt::LogMoments moments;
    double rho2;
};

MomentsReport run_moments(const ScenarioFile& sc);
void write_moments(const MomentsReport& report, std::ostream& out);

/// Failure probability of one round under the scenario's engine choice
/// (analytic engines only).
double analytic_phi(const ScenarioFile& sc, EngineChoice engine, const clt::RoundParams& round);

} // namespace rfso::cli

#endif
