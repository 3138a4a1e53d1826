#ifndef RFSO_CLT_ENGINE_HPP
#define RFSO_CLT_ENGINE_HPP

#include "rfso/types.hpp"

namespace rfso::clt {

/// Mean and variance (in nats, nats^2) of log(1 + p_fso * G) under the
/// Gamma-Gamma gain G, together with the power they were computed at.
struct LogMoments {
    double mu = 0.0;
    double sigma2 = 0.0;
    double p_fso = 0.0;
};

/// Piecewise-linear surrogate for the Gaussian tail factor inside the
/// failure integral: 1 below lo, linear on [lo, hi], 0 above.
struct LinearizedQ {
    double alpha;
    double beta;
    double lo;
    double hi;

    double value(double x) const {
        if (x < lo) return 1.0;
        if (x > hi) return 0.0;
        return 0.5 - beta * (x - alpha);
    }
};

/// Per-round link settings: code rate R (npcu), RF and FSO transmit powers,
/// and the number of FSO realizations per RF block.
struct RoundParams {
    double rate;
    double p_rf;
    double p_fso;
    int n_fso;

    void validate() const {
        if (!(rate > 0.0)) throw std::domain_error("RoundParams: rate must be positive");
        if (!(p_rf >= 0.0) || !(p_fso >= 0.0))
            throw std::domain_error("RoundParams: powers must be non-negative");
        if (!(p_rf + p_fso > 0.0))
            throw std::domain_error("RoundParams: total power must be positive");
        if (n_fso < 1) throw std::domain_error("RoundParams: n_fso must be >= 1");
    }
};

/// Numerical moments of the averaged FSO log term, by adaptive quadrature
/// against the Gamma-Gamma density (absolute tolerance 1e-8).
LogMoments fso_log_moments(const GammaGammaParams& params, double p_fso);

/// Tangent-line surrogate of the Gaussian tail factor at its midpoint.
/// Requires p_rf > 0 and sigma2 > 0; degenerate cases are the caller's
/// step-function limit.
LinearizedQ linearize_q(const LogMoments& moments, const RoundParams& round);

/// Per-round failure probability, Rayleigh RF link, linearized closed form.
double phi_rayleigh_clt(const GammaGammaParams& params, const RoundParams& round);
double phi_rayleigh_clt(const LogMoments& moments, const RoundParams& round);

/// Reference integral the closed form is checked against: the exact
/// Gaussian tail factor under the outer Rayleigh gain density.
double phi_rayleigh_clt_exactq(const GammaGammaParams& params, const RoundParams& round);
double phi_rayleigh_clt_exactq(const LogMoments& moments, const RoundParams& round);

/// Slope convention for the Rician closed form: the exact tangent slope of
/// the Gaussian tail factor at the expansion point, or the looser printed
/// constant kept for comparison.
enum class RicianSlope { exact, printed };

/// Per-round failure probability, Rician RF link, amplitude-domain
/// linearization with midpoint correction.
double phi_rician_clt(const GammaGammaParams& params, const RicianParams& rician,
                      const RoundParams& round, RicianSlope slope = RicianSlope::exact);
double phi_rician_clt(const LogMoments& moments, const RicianParams& rician,
                      const RoundParams& round, RicianSlope slope = RicianSlope::exact);

/// Exact-Q reference for the Rician closed form.
double phi_rician_clt_exactq(const GammaGammaParams& params, const RicianParams& rician,
                             const RoundParams& round);
double phi_rician_clt_exactq(const LogMoments& moments, const RicianParams& rician,
                             const RoundParams& round);

/// Failure probability with no RF power at all: the Gaussian approximation
/// of Pr(Y < R).
double phi_fso_only_clt(const GammaGammaParams& params, double rate, double p_fso, int n_fso);
double phi_fso_only_clt(const LogMoments& moments, double rate, int n_fso);

} // namespace rfso::clt

#endif
