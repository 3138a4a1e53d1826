#ifndef RFSO_SPECFUN_HPP
#define RFSO_SPECFUN_HPP

#include <complex>
#include <memory>
#include <mutex>
#include <vector>

#include "rfso/types.hpp"

namespace rfso::specfun {

/// ln Gamma(x) for x > 0, relative error below 1e-12.
double ln_gamma(double x);

/// Principal branch of ln Gamma(z) for Re(z) > 0.
std::complex<double> ln_gamma(std::complex<double> z);

/// Modified Bessel function of the second kind, real order. Symmetric in
/// the order. Accurate to ~1e-8 relative for x in [1e-8, 700]; underflows
/// to zero for larger arguments.
double bessel_k(double order, double x);

/// Modified Bessel function of the first kind, order zero. Even in x.
double bessel_i0(double x);

/// Gaussian tail probability Q(x) = 1 - Phi(x).
double gaussian_q(double x);

/// First-order Marcum Q function Q1(a, b), a >= 0, b >= 0.
double marcum_q1(double a, double b);

/// Regularized upper incomplete gamma Q(s, x) = Gamma(s, x)/Gamma(s),
/// s > 0, x >= 0.
double gamma_q_upper(double s, double x);

/// Vertical integration line for the Mellin inversion of the
/// product-of-Gamma-Gamma CDF. The line Re(s) = real_part has to separate
/// the poles of Gamma(a+s-1) and Gamma(b+s-1) (all at Re(s) <= max(1-a,1-b))
/// from the pole at s = 1 contributed by the CDF kernel 1/(1-s).
struct MellinContour {
    double real_part;
    double half_height = 60.0;
    int node_count = 4096;

    /// Default line for the given shape parameters: one unit right of the
    /// rightmost gamma pole, pulled back to the midpoint of the admissible
    /// strip when that would land on or beyond the kernel pole at 1.
    static MellinContour defaults(const GammaGammaParams& p);

    void validate(const GammaGammaParams& p) const;
};

/// CDF of the product of n independent unit-mean Gamma-Gamma gains,
/// evaluated by truncated trapezoidal inversion of the n-th power of the
/// single-gain Mellin transform. Node tables are computed lazily per
/// refinement level and shared across evaluations, so repeated calls on one
/// instance are cheap. Thread safe.
class ProductGgCdf {
public:
    ProductGgCdf(int n, const GammaGammaParams& params, const MellinContour& contour);
    ~ProductGgCdf();

    ProductGgCdf(const ProductGgCdf&) = delete;
    ProductGgCdf& operator=(const ProductGgCdf&) = delete;

    /// CDF value at x, clamped to [0, 1]; refinement doubles the node count
    /// until two successive levels agree to 1e-6.
    double operator()(double x) const;

private:
    struct Level;
    double level_sum(int level, double log_x) const;
    const Level& ensure_level(int level) const;

    int n_;
    GammaGammaParams params_;
    MellinContour contour_;
    mutable std::mutex mutex_;
    mutable std::vector<std::unique_ptr<Level>> levels_;
};

/// One-shot convenience wrapper over ProductGgCdf.
double product_gg_cdf(int n, const GammaGammaParams& params, double x,
                      const MellinContour& contour);

} // namespace rfso::specfun

#endif
