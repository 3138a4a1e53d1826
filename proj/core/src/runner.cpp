#include "rfso/runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include "rfso/errors.hpp"
#include "rfso/mc_oracle.hpp"
#include "rfso/power_alloc.hpp"
#include "rfso/product_bound.hpp"

namespace rfso::cli {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

mc::McConfig mc_config(const ScenarioFile& sc) {
    mc::McConfig cfg;
    cfg.trials = sc.trials;
    cfg.root_seed = sc.seed;
    cfg.batch_count = sc.batch_count;
    return cfg;
}

bound::BoundConfig bound_config(const ScenarioFile& sc) {
    bound::BoundConfig cfg = bound::BoundConfig::defaults(sc.channel);
    cfg.max_n = sc.max_n;
    return cfg;
}

arq::PowerSchedule flat_schedule(int rounds, double p_rf, double p_fso) {
    arq::PowerSchedule s;
    s.rounds.assign(rounds, {p_rf, p_fso});
    return s;
}

std::vector<EngineChoice> engines_for(const ScenarioFile& sc) {
    if (sc.engine != EngineChoice::all) return {sc.engine};
    std::vector<EngineChoice> out{EngineChoice::clt, EngineChoice::clt_exactq};
    if (sc.n_fso <= sc.max_n) out.push_back(EngineChoice::minkowski);
    out.push_back(EngineChoice::montecarlo);
    return out;
}

arq::Engine engine_tag(EngineChoice e) {
    switch (e) {
        case EngineChoice::clt: return arq::Engine::clt;
        case EngineChoice::clt_exactq: return arq::Engine::clt_exactq;
        case EngineChoice::minkowski: return arq::Engine::minkowski;
        case EngineChoice::montecarlo: return arq::Engine::montecarlo;
        case EngineChoice::all: break;
    }
    throw config_error("engine 'all' is not a single engine");
}

} // namespace

double analytic_phi(const ScenarioFile& sc, EngineChoice engine, const clt::RoundParams& round) {
    switch (engine) {
        case EngineChoice::clt:
            if (round.p_rf == 0.0)
                return clt::phi_fso_only_clt(sc.channel, round.rate, round.p_fso, round.n_fso);
            return sc.rf_model.is_rayleigh()
                       ? clt::phi_rayleigh_clt(sc.channel, round)
                       : clt::phi_rician_clt(sc.channel, sc.rf_model.rician, round);
        case EngineChoice::clt_exactq:
            if (round.p_rf == 0.0)
                return clt::phi_fso_only_clt(sc.channel, round.rate, round.p_fso, round.n_fso);
            return sc.rf_model.is_rayleigh()
                       ? clt::phi_rayleigh_clt_exactq(sc.channel, round)
                       : clt::phi_rician_clt_exactq(sc.channel, sc.rf_model.rician, round);
        case EngineChoice::minkowski:
            return bound::phi_upper_bound(sc.channel, sc.rf_model, round, bound_config(sc));
        case EngineChoice::montecarlo:
        case EngineChoice::all:
            break;
    }
    throw config_error("analytic_phi: engine must be clt, clt_exactq or minkowski");
}

std::vector<SweepRow> run_sweep(const ScenarioFile& sc) {
    if (sc.power_mode != PowerMode::peak)
        throw config_error("run_sweep handles peak-power scenarios; use the alloc command for "
                           "expected-energy budgets");
    std::vector<SweepRow> rows;
    for (double v : sc.grid) {
        const double rate = sc.sweep == SweepVar::rate ? v : sc.rate;
        const double total = sc.sweep == SweepVar::power ? v : sc.power_value;
        const double p_rf = sc.rf_split * total;
        const double p_fso = (1.0 - sc.rf_split) * total;
        const clt::RoundParams round{rate, p_rf, p_fso, sc.n_fso};
        const arq::PowerSchedule schedule = flat_schedule(sc.max_rounds, p_rf, p_fso);

        for (EngineChoice engine : engines_for(sc)) {
            if (engine == EngineChoice::montecarlo) {
                const arq::ArqConfig arq_cfg{sc.max_rounds, rate};
                rows.push_back(
                    {v, mc::simulate_arq(sc.channel, sc.rf_model, arq_cfg, schedule, sc.n_fso,
                                         mc_config(sc))});
            } else {
                const double phi = analytic_phi(sc, engine, round);
                const std::vector<double> phis(sc.max_rounds, phi);
                rows.push_back({v, arq::assemble(rate, phis, schedule, engine_tag(engine))});
            }
        }
    }
    return rows;
}

void write_sweep_csv(const ScenarioFile& sc, const std::vector<SweepRow>& rows,
                     std::ostream& out) {
    out << "sweep_value,engine";
    for (int j = 1; j <= sc.max_rounds; ++j) out << ",phi_" << j;
    out << ",outage,throughput,expected_energy,ci_halfwidth\n";
    for (const SweepRow& row : rows) {
        out << fmt(row.sweep_value) << ',' << arq::engine_name(row.result.engine);
        for (int j = 0; j < sc.max_rounds; ++j)
            out << ',' << (j < static_cast<int>(row.result.phi.size()) ? fmt(row.result.phi[j])
                                                                       : std::string());
        out << ',' << fmt(row.result.outage) << ',' << fmt(row.result.throughput) << ','
            << fmt(row.result.expected_energy) << ',';
        if (const auto ci = row.result.ci_halfwidth()) out << fmt(*ci);
        out << '\n';
    }
}

void run_sweep_to_csv(const ScenarioFile& sc) {
    const std::vector<SweepRow> rows = run_sweep(sc);
    std::ofstream out(sc.csv_path, std::ios::binary);
    if (!out) throw config_error("cannot open output file: " + sc.csv_path);
    write_sweep_csv(sc, rows, out);
}

namespace {

struct MemoPhi {
    alloc::PhiEvaluator eval;
    std::shared_ptr<std::map<double, double>> cache = std::make_shared<std::map<double, double>>();

    double operator()(double p) const {
        auto it = cache->find(p);
        if (it != cache->end()) return it->second;
        const double v = eval(p);
        (*cache)[p] = v;
        return v;
    }
};

AllocRow make_alloc_row(const ScenarioFile& sc, double budget, const std::string& scheme,
                        const arq::PowerSchedule& schedule, const alloc::PhiEvaluator& phi) {
    std::vector<double> phis;
    std::vector<double> powers;
    phis.reserve(schedule.rounds.size());
    for (const auto& r : schedule.rounds) {
        powers.push_back(r.total());
        phis.push_back(phi(r.total()));
    }
    return AllocRow{budget, scheme, powers,
                    arq::assemble(sc.rate, phis, schedule, engine_tag(sc.engine))};
}

} // namespace

std::vector<AllocRow> run_power_alloc(const ScenarioFile& sc) {
    if (sc.power_mode != PowerMode::expected_energy)
        throw config_error("run_power_alloc needs power mode = expected_energy");
    if (sc.engine == EngineChoice::montecarlo || sc.engine == EngineChoice::all)
        throw config_error("run_power_alloc needs an analytic engine (clt, clt_exactq or "
                           "minkowski); a Monte Carlo evaluator inside the exhaustive search is "
                           "computationally prohibitive");
    if (sc.engine == EngineChoice::minkowski && sc.n_fso > sc.max_n)
        throw config_error("engine minkowski requires n_fso <= max_n");

    const double split = sc.rf_split;
    const MemoPhi joint{[&sc, split](double p) {
        return analytic_phi(sc, sc.engine,
                            {sc.rate, split * p, (1.0 - split) * p, sc.n_fso});
    }};
    const MemoPhi rf_only{[&sc](double p) {
        return analytic_phi(sc, sc.engine, {sc.rate, p, 0.0, sc.n_fso});
    }};
    const MemoPhi fso_only{[&sc](double p) {
        return analytic_phi(sc, sc.engine, {sc.rate, 0.0, p, sc.n_fso});
    }};

    std::vector<AllocRow> rows;
    for (double budget_value : sc.grid) {
        const alloc::EnergyBudget budget{budget_value};
        const int m = sc.max_rounds;
        rows.push_back(make_alloc_row(
            sc, budget_value, "uniform", alloc::uniform_schedule(budget, m, joint, split), joint));
        rows.push_back(make_alloc_row(sc, budget_value, "suboptimal",
                                      alloc::suboptimal_schedule(budget, m, joint, split), joint));
        rows.push_back(make_alloc_row(
            sc, budget_value, "optimal",
            alloc::optimal_schedule(budget, m, joint, sc.grid_resolution, split), joint));
        rows.push_back(make_alloc_row(sc, budget_value, "rf_only",
                                      alloc::uniform_schedule(budget, m, rf_only, 1.0), rf_only));
        rows.push_back(make_alloc_row(sc, budget_value, "fso_only",
                                      alloc::uniform_schedule(budget, m, fso_only, 0.0), fso_only));
    }
    return rows;
}

void write_alloc_csv(const ScenarioFile& sc, const std::vector<AllocRow>& rows,
                     std::ostream& out) {
    out << "budget,scheme";
    for (int j = 1; j <= sc.max_rounds; ++j) out << ",p_" << j;
    out << ",outage,throughput,expected_energy\n";
    for (const AllocRow& row : rows) {
        out << fmt(row.budget) << ',' << row.scheme;
        for (int j = 0; j < sc.max_rounds; ++j)
            out << ',' << (j < static_cast<int>(row.round_powers.size())
                               ? fmt(row.round_powers[j])
                               : std::string());
        out << ',' << fmt(row.result.outage) << ',' << fmt(row.result.throughput) << ','
            << fmt(row.result.expected_energy) << '\n';
    }
}

void run_power_alloc_to_csv(const ScenarioFile& sc) {
    const std::vector<AllocRow> rows = run_power_alloc(sc);
    std::ofstream out(sc.csv_path, std::ios::binary);
    if (!out) throw config_error("cannot open output file: " + sc.csv_path);
    write_alloc_csv(sc, rows, out);
}

std::vector<ValidatePoint> run_validate(const ScenarioFile& sc) {
    if (sc.power_mode != PowerMode::peak)
        throw config_error("run_validate handles peak-power scenarios");
    std::vector<ValidatePoint> pts;
    for (double v : sc.grid) {
        const double rate = sc.sweep == SweepVar::rate ? v : sc.rate;
        const double total = sc.sweep == SweepVar::power ? v : sc.power_value;
        const clt::RoundParams round{rate, sc.rf_split * total, (1.0 - sc.rf_split) * total,
                                     sc.n_fso};
        ValidatePoint pt;
        pt.sweep_value = v;
        pt.phi_clt = analytic_phi(sc, EngineChoice::clt, round);
        pt.phi_clt_exactq = analytic_phi(sc, EngineChoice::clt_exactq, round);
        if (sc.n_fso <= sc.max_n)
            pt.phi_minkowski = analytic_phi(sc, EngineChoice::minkowski, round);
        const mc::McEstimate est = mc::simulate_phi(sc.channel, sc.rf_model, round, mc_config(sc));
        pt.phi_mc = est.mean;
        pt.mc_ci = est.ci_halfwidth;
        pts.push_back(pt);
    }
    return pts;
}

void write_validate_csv(const std::vector<ValidatePoint>& pts, std::ostream& out) {
    out << "sweep_value,phi_clt,phi_clt_exactq,phi_minkowski,phi_mc,mc_ci_halfwidth\n";
    const auto cell = [](const std::optional<double>& v) {
        return v ? fmt(*v) : std::string();
    };
    for (const ValidatePoint& p : pts) {
        out << fmt(p.sweep_value) << ',' << cell(p.phi_clt) << ',' << cell(p.phi_clt_exactq)
            << ',' << cell(p.phi_minkowski) << ',' << cell(p.phi_mc) << ',' << cell(p.mc_ci)
            << '\n';
    }
}

void write_validate_summary(const std::vector<ValidatePoint>& pts, std::ostream& out) {
    double gap_lin = 0.0, gap_mc = 0.0, worst_bound = 0.0;
    bool bound_ok = true, have_bound = false;
    for (const ValidatePoint& p : pts) {
        if (p.phi_clt && p.phi_clt_exactq)
            gap_lin = std::max(gap_lin, std::abs(*p.phi_clt - *p.phi_clt_exactq));
        if (p.phi_clt_exactq && p.phi_mc)
            gap_mc = std::max(gap_mc, std::abs(*p.phi_clt_exactq - *p.phi_mc));
        if (p.phi_minkowski && p.phi_mc) {
            have_bound = true;
            const double slack = *p.phi_minkowski - (*p.phi_mc - *p.mc_ci);
            worst_bound = std::min(worst_bound, slack);
            if (slack < 0.0) bound_ok = false;
        }
    }
    out << "max |clt - clt_exactq| = " << fmt(gap_lin) << '\n';
    out << "max |clt_exactq - montecarlo| = " << fmt(gap_mc) << '\n';
    if (have_bound)
        out << "minkowski upper bound holds vs MC-3SE: " << (bound_ok ? "yes" : "NO")
            << " (worst slack " << fmt(worst_bound) << ")\n";
}

void run_validate_to_csv(const ScenarioFile& sc, std::ostream& summary) {
    const std::vector<ValidatePoint> pts = run_validate(sc);
    std::ofstream out(sc.csv_path, std::ios::binary);
    if (!out) throw config_error("cannot open output file: " + sc.csv_path);
    write_validate_csv(pts, out);
    write_validate_summary(pts, summary);
}

MomentsReport run_moments(const ScenarioFile& sc) {
    if (sc.sweep == SweepVar::power || sc.sweep == SweepVar::budget)
        throw config_error("moments needs a fixed power; this scenario sweeps it");
    const double p_fso = (1.0 - sc.rf_split) * sc.power_value;
    MomentsReport rep;
    rep.p_fso = p_fso;
    rep.moments = clt::fso_log_moments(sc.channel, p_fso);
    rep.rho2 = rep.moments.sigma2 + rep.moments.mu * rep.moments.mu;
    return rep;
}

void write_moments(const MomentsReport& rep, std::ostream& out) {
    out << "p_fso = " << fmt(rep.p_fso) << '\n'
        << "mu = " << fmt(rep.moments.mu) << " nats\n"
        << "sigma2 = " << fmt(rep.moments.sigma2) << " nats^2\n"
        << "rho2 = " << fmt(rep.rho2) << " nats^2\n";
}

} // namespace rfso::cli
