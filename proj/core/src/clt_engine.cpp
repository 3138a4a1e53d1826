#include "rfso/clt_engine.hpp"

#include <algorithm>
#include <cmath>

#include "rfso/channels.hpp"
#include "rfso/errors.hpp"
#include "rfso/quadrature.hpp"
#include "rfso/specfun.hpp"

namespace rfso::clt {

namespace {

constexpr double kSigmaFloor = 1e-14;

double moments_tail_cut(const GammaGammaParams& p, double p_fso) {
    // push the cut out until the residual integrand mass is clearly below
    // the quadrature tolerance
    double x = std::max(16.0 * (p.a + p.b) * (p.a + p.b) / (p.a * p.b), 20.0);
    const auto weight = [&](double t) {
        const double l = std::log1p(p_fso * t);
        return channels::gamma_gamma_pdf(p, t) * t * (1.0 + l) * (1.0 + l);
    };
    while (weight(x) > 1e-12 && x < 1e9) x *= 2.0;
    return x;
}

void check_moments(const LogMoments& m, double p_fso) {
    if (std::abs(m.p_fso - p_fso) > 1e-12 * std::max(1.0, std::abs(p_fso)))
        throw std::domain_error("clt: LogMoments were computed for a different FSO power");
}

double step_limit_rayleigh(double mu, const RoundParams& round) {
    // sigma = 0 collapses the FSO term to the constant mu
    const double r = std::expm1(round.rate) / round.p_rf;
    const double threshold = std::expm1(round.rate - mu) / round.p_rf;
    return 1.0 - std::exp(-std::clamp(threshold, 0.0, r));
}

double step_limit_rician(double mu, const RicianParams& rician, const RoundParams& round) {
    const double sqrt_r = std::sqrt(std::expm1(round.rate) / round.p_rf);
    const double t = std::expm1(round.rate - mu) / round.p_rf;
    const double threshold = t > 0.0 ? std::sqrt(t) : 0.0;
    return channels::rician_amplitude_cdf(rician, std::clamp(threshold, 0.0, sqrt_r));
}

double rician_amplitude_pdf(const RicianParams& p, double u) {
    const double w2 = p.omega * p.omega;
    return u / w2 * std::exp(-(u * u + p.nu * p.nu) / (2.0 * w2)) *
           specfun::bessel_i0(u * p.nu / w2);
}

} // namespace

LogMoments fso_log_moments(const GammaGammaParams& params, double p_fso) {
    params.validate();
    if (!(p_fso >= 0.0)) throw std::domain_error("fso_log_moments: power must be non-negative");
    if (p_fso == 0.0) return {0.0, 0.0, 0.0};

    const double cut = moments_tail_cut(params, p_fso);
    quad::Options opt;
    opt.abs_tol = 1e-9;
    opt.rel_tol = 1e-10;
    opt.max_intervals = 20000;
    const std::vector<double> segments{0.0, std::min(1.0, cut), std::min(8.0, cut), cut};

    const double mu = quad::integrate_segmented(
        [&](double x) { return channels::gamma_gamma_pdf(params, x) * std::log1p(p_fso * x); },
        segments, opt);
    const double rho2 = quad::integrate_segmented(
        [&](double x) {
            const double l = std::log1p(p_fso * x);
            return channels::gamma_gamma_pdf(params, x) * l * l;
        },
        segments, opt);

    LogMoments m;
    m.mu = mu;
    m.sigma2 = std::max(0.0, rho2 - mu * mu);
    m.p_fso = p_fso;
    return m;
}

LinearizedQ linearize_q(const LogMoments& moments, const RoundParams& round) {
    round.validate();
    if (!(round.p_rf > 0.0)) throw std::domain_error("linearize_q: p_rf must be positive");
    if (!(moments.sigma2 > 0.0))
        throw std::domain_error("linearize_q: degenerate sigma; use the step-function limit");
    const double sigma = std::sqrt(moments.sigma2);
    const double root_n = std::sqrt(static_cast<double>(round.n_fso));
    LinearizedQ lin;
    lin.alpha = std::expm1(round.rate - moments.mu) / round.p_rf;
    lin.beta = root_n * round.p_rf * std::exp(moments.mu - round.rate) /
               (sigma * std::sqrt(2.0 * std::numbers::pi));
    lin.lo = lin.alpha - 0.5 / lin.beta;
    lin.hi = lin.alpha + 0.5 / lin.beta;
    return lin;
}

double phi_rayleigh_clt(const GammaGammaParams& params, const RoundParams& round) {
    round.validate();
    return phi_rayleigh_clt(fso_log_moments(params, round.p_fso), round);
}

double phi_rayleigh_clt(const LogMoments& moments, const RoundParams& round) {
    round.validate();
    check_moments(moments, round.p_fso);
    if (!(round.p_rf > 0.0))
        throw std::domain_error("phi_rayleigh_clt: p_rf must be positive");
    if (moments.sigma2 <= kSigmaFloor) return step_limit_rayleigh(moments.mu, round);

    const LinearizedQ lin = linearize_q(moments, round);
    const double r = std::expm1(round.rate) / round.p_rf;
    const double c1 = std::clamp(lin.lo, 0.0, r);
    const double c2 = std::clamp(lin.hi, 0.0, r);
    const auto anti = [&](double x) {
        return std::exp(-x) * (lin.beta * x + lin.beta - lin.beta * lin.alpha - 0.5);
    };
    const double phi = (1.0 - std::exp(-c1)) + (anti(c2) - anti(c1));
    return std::clamp(phi, 0.0, 1.0);
}

double phi_rayleigh_clt_exactq(const GammaGammaParams& params, const RoundParams& round) {
    round.validate();
    return phi_rayleigh_clt_exactq(fso_log_moments(params, round.p_fso), round);
}

double phi_rayleigh_clt_exactq(const LogMoments& moments, const RoundParams& round) {
    round.validate();
    check_moments(moments, round.p_fso);
    if (!(round.p_rf > 0.0))
        throw std::domain_error("phi_rayleigh_clt_exactq: p_rf must be positive");
    if (moments.sigma2 <= kSigmaFloor) return step_limit_rayleigh(moments.mu, round);

    const double sigma = std::sqrt(moments.sigma2);
    const double root_n = std::sqrt(static_cast<double>(round.n_fso));
    const double r = std::expm1(round.rate) / round.p_rf;
    const double upper = std::min(r, 58.0); // exp(-x) tail below 1e-25
    const LinearizedQ lin = linearize_q(moments, round);

    std::vector<double> pts{0.0, upper};
    for (double p : {lin.lo, lin.alpha, lin.hi})
        if (p > 0.0 && p < upper) pts.push_back(p);

    quad::Options opt;
    opt.abs_tol = 1e-9;
    opt.rel_tol = 1e-9;
    const double phi = quad::integrate_segmented(
        [&](double x) {
            const double z = root_n * (std::log1p(round.p_rf * x) + moments.mu - round.rate) / sigma;
            return std::exp(-x) * specfun::gaussian_q(z);
        },
        pts, opt);
    return std::clamp(phi, 0.0, 1.0);
}

double phi_rician_clt(const GammaGammaParams& params, const RicianParams& rician,
                      const RoundParams& round, RicianSlope slope) {
    round.validate();
    return phi_rician_clt(fso_log_moments(params, round.p_fso), rician, round, slope);
}

double phi_rician_clt(const LogMoments& moments, const RicianParams& rician,
                      const RoundParams& round, RicianSlope slope) {
    round.validate();
    rician.validate();
    check_moments(moments, round.p_fso);
    if (!(round.p_rf > 0.0))
        throw std::domain_error("phi_rician_clt: p_rf must be positive");
    if (moments.sigma2 <= kSigmaFloor) return step_limit_rician(moments.mu, rician, round);

    const double sigma = std::sqrt(moments.sigma2);
    const double n = static_cast<double>(round.n_fso);
    const double sqrt_r = std::sqrt(std::expm1(round.rate) / round.p_rf);
    const double alpha_sq = std::expm1(round.rate - moments.mu) / round.p_rf;
    const auto cdf = [&](double x) { return channels::rician_amplitude_cdf(rician, x); };

    if (!(alpha_sq > 0.0)) {
        // expansion point collapses onto the origin where the tangent is
        // flat; fall back to the constant term of that tangent
        const double q0 = specfun::gaussian_q(std::sqrt(n) * (moments.mu - round.rate) / sigma);
        return std::clamp(q0 * cdf(sqrt_r), 0.0, 1.0);
    }

    const double alpha = std::sqrt(alpha_sq);
    const double decay = std::exp(moments.mu - round.rate);
    const double beta = slope == RicianSlope::exact
                            ? std::sqrt(2.0 * n / std::numbers::pi) * round.p_rf * alpha * decay / sigma
                            : std::sqrt(2.0 * n * round.p_rf * decay / std::numbers::pi);

    const double c1 = std::clamp(alpha - 0.5 / beta, 0.0, sqrt_r);
    const double c2 = std::clamp(alpha + 0.5 / beta, 0.0, sqrt_r);
    const double f1 = cdf(c1);
    const double f2 = cdf(c2);
    const double fm = cdf(0.5 * (c1 + c2));
    const double phi = f1 + (0.5 + beta * alpha) * (f2 - f1) -
                       beta * (c2 * f2 - c1 * f1 - (c2 - c1) * fm);
    return std::clamp(phi, 0.0, 1.0);
}

double phi_rician_clt_exactq(const GammaGammaParams& params, const RicianParams& rician,
                             const RoundParams& round) {
    round.validate();
    return phi_rician_clt_exactq(fso_log_moments(params, round.p_fso), rician, round);
}

double phi_rician_clt_exactq(const LogMoments& moments, const RicianParams& rician,
                             const RoundParams& round) {
    round.validate();
    rician.validate();
    check_moments(moments, round.p_fso);
    if (!(round.p_rf > 0.0))
        throw std::domain_error("phi_rician_clt_exactq: p_rf must be positive");
    if (moments.sigma2 <= kSigmaFloor) return step_limit_rician(moments.mu, rician, round);

    const double sigma = std::sqrt(moments.sigma2);
    const double root_n = std::sqrt(static_cast<double>(round.n_fso));
    const double sqrt_r = std::sqrt(std::expm1(round.rate) / round.p_rf);
    // amplitude tail dies like exp(-u^2/(2 omega^2))
    const double amp_cut = rician.omega * 9.0 + rician.nu;
    const double upper = std::min(sqrt_r, amp_cut);

    std::vector<double> pts{0.0, upper};
    const double alpha_sq = std::expm1(round.rate - moments.mu) / round.p_rf;
    if (alpha_sq > 0.0) {
        const double alpha = std::sqrt(alpha_sq);
        for (double p : {0.5 * alpha, alpha, 0.5 * (alpha + upper)})
            if (p > 0.0 && p < upper) pts.push_back(p);
    }

    quad::Options opt;
    opt.abs_tol = 1e-9;
    opt.rel_tol = 1e-9;
    const double phi = quad::integrate_segmented(
        [&](double u) {
            const double z =
                root_n * (std::log1p(round.p_rf * u * u) + moments.mu - round.rate) / sigma;
            return rician_amplitude_pdf(rician, u) * specfun::gaussian_q(z);
        },
        pts, opt);
    return std::clamp(phi, 0.0, 1.0);
}

double phi_fso_only_clt(const GammaGammaParams& params, double rate, double p_fso, int n_fso) {
    return phi_fso_only_clt(fso_log_moments(params, p_fso), rate, n_fso);
}

double phi_fso_only_clt(const LogMoments& moments, double rate, int n_fso) {
    if (!(rate > 0.0)) throw std::domain_error("phi_fso_only_clt: rate must be positive");
    if (n_fso < 1) throw std::domain_error("phi_fso_only_clt: n_fso must be >= 1");
    if (moments.sigma2 <= kSigmaFloor) return moments.mu < rate ? 1.0 : 0.0;
    const double z = std::sqrt(static_cast<double>(n_fso)) * (moments.mu - rate) /
                     std::sqrt(moments.sigma2);
    return specfun::gaussian_q(z);
}

} // namespace rfso::clt
