#include "rfso/product_bound.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "rfso/channels.hpp"
#include "rfso/errors.hpp"
#include "rfso/quadrature.hpp"

namespace rfso::bound {

namespace {

double product_arg(double log_gap, double p_fso, int n) {
    // ((e^x - 1) / P_FSO)^n for x = log_gap
    if (!(log_gap > 0.0)) return 0.0;
    const double base = std::expm1(log_gap) / p_fso;
    return std::pow(base, static_cast<double>(n));
}

double rf_tail_cut(const RfChannelModel& rf) {
    if (rf.is_rayleigh()) return 58.0;
    // find a gain beyond which the Rician tail is numerically dead
    const RicianParams& p = rf.rician;
    double x = 4.0 * (p.nu * p.nu + 2.0 * p.omega * p.omega);
    while (specfun::marcum_q1(p.nu / p.omega, std::sqrt(x) / p.omega) > 1e-16 && x < 1e6)
        x *= 2.0;
    return x;
}

} // namespace

double y_cdf_upper_bound(const GammaGammaParams& params, double p_fso, int n, double x,
                         const BoundConfig& cfg) {
    if (!(p_fso > 0.0)) throw std::domain_error("y_cdf_upper_bound: p_fso must be positive");
    if (n < 1) throw std::domain_error("y_cdf_upper_bound: n must be >= 1");
    if (!(x > 0.0)) return 0.0;
    specfun::ProductGgCdf cdf(n, params, cfg.contour);
    return cdf(product_arg(x, p_fso, n));
}

double phi_upper_bound(const GammaGammaParams& params, const RfChannelModel& rf,
                       const clt::RoundParams& round, const BoundConfig& cfg) {
    round.validate();
    if (round.n_fso > cfg.max_n) {
        std::ostringstream msg;
        msg << "phi_upper_bound: n_fso=" << round.n_fso << " exceeds max_n=" << cfg.max_n
            << "; the product-CDF evaluation cost is prohibitive there, use the CLT engine";
        throw config_error(msg.str());
    }

    const double rate = round.rate;
    if (!(round.p_fso > 0.0)) {
        // no FSO term: the failure event is the plain RF outage
        const double r = std::expm1(rate) / round.p_rf;
        if (rf.is_rayleigh()) return 1.0 - std::exp(-r);
        return channels::rician_amplitude_cdf(rf.rician, std::sqrt(r));
    }

    specfun::ProductGgCdf cdf(round.n_fso, params, cfg.contour);
    if (!(round.p_rf > 0.0))
        return std::clamp(cdf(product_arg(rate, round.p_fso, round.n_fso)), 0.0, 1.0);

    const double r = std::expm1(rate) / round.p_rf;
    const double upper = std::min(r, rf_tail_cut(rf));
    const auto integrand = [&](double g) {
        const double gap = rate - std::log1p(round.p_rf * g);
        return channels::rf_gain_pdf(rf, g) * cdf(product_arg(gap, round.p_fso, round.n_fso));
    };

    std::vector<double> pts{0.0, upper};
    for (double frac : {0.05, 0.25, 0.5}) {
        const double p = frac * upper;
        if (p > 0.0 && p < upper) pts.push_back(p);
    }

    quad::Options opt;
    opt.abs_tol = cfg.outer_quadrature_tolerance;
    opt.rel_tol = cfg.outer_quadrature_tolerance;
    opt.max_intervals = 20000;
    const double phi = quad::integrate_segmented(integrand, pts, opt);
    return std::clamp(phi, 0.0, 1.0);
}

} // namespace rfso::bound
