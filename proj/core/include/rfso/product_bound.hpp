#ifndef RFSO_PRODUCT_BOUND_HPP
#define RFSO_PRODUCT_BOUND_HPP

#include "rfso/clt_engine.hpp"
#include "rfso/specfun.hpp"
#include "rfso/types.hpp"

namespace rfso::bound {

/// Settings of the small-N bound: Mellin contour for the product CDF, outer
/// quadrature tolerance, and the largest N the module agrees to evaluate
/// (cost grows steeply with N).
struct BoundConfig {
    specfun::MellinContour contour;
    double outer_quadrature_tolerance = 1e-6;
    int max_n = 5;

    static BoundConfig defaults(const GammaGammaParams& params) {
        return {specfun::MellinContour::defaults(params), 1e-6, 5};
    }
};

/// Upper bound on Pr(Y <= x) for the averaged FSO log term over n
/// realizations, via the product-of-gains inequality. Zero for x <= 0.
double y_cdf_upper_bound(const GammaGammaParams& params, double p_fso, int n, double x,
                         const BoundConfig& cfg);

/// Upper bound on the per-round failure probability: outer integral of the
/// product-CDF bound against the RF gain density. Equality at n_fso = 1.
double phi_upper_bound(const GammaGammaParams& params, const RfChannelModel& rf,
                       const clt::RoundParams& round, const BoundConfig& cfg);

} // namespace rfso::bound

#endif
