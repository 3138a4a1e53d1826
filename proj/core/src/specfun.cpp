#include "rfso/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "rfso/errors.hpp"
#include "rfso/quadrature.hpp"

namespace rfso::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLnSqrt2Pi = 0.91893853320467274178;

// Lanczos approximation, g = 607/128 with 15 coefficients (Godfrey set).
constexpr double kLanczosG = 4.7421875;
constexpr double kLanczosC[15] = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

template <class T>
T lanczos_ln_gamma_core(T z) {
    T acc = T(kLanczosC[0]);
    for (int k = 1; k < 15; ++k) acc += T(kLanczosC[k]) / (z - T(1.0) + T(double(k)));
    const T t = z + T(kLanczosG - 0.5);
    return T(kLnSqrt2Pi) + (z - T(0.5)) * std::log(t) - t + std::log(acc);
}

double ln_cosh(double y) {
    y = std::abs(y);
    if (y > 36.0) return y - std::numbers::ln2;
    return y + std::log1p(std::exp(-2.0 * y)) - std::numbers::ln2;
}

} // namespace

double ln_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("ln_gamma: argument must be positive");
    double shift = 0.0;
    while (x < 1.5) {
        shift -= std::log(x);
        x += 1.0;
    }
    return lanczos_ln_gamma_core(x) + shift;
}

std::complex<double> ln_gamma(std::complex<double> z) {
    if (!(z.real() > 0.0))
        throw std::domain_error("ln_gamma(complex): real part must be positive");
    std::complex<double> shift = 0.0;
    while (z.real() < 1.5) {
        shift -= std::log(z);
        z += 1.0;
    }
    return lanczos_ln_gamma_core(z) + shift;
}

double gaussian_q(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double bessel_i0(double x) {
    x = std::abs(x);
    if (x <= 20.0) {
        const double q = 0.25 * x * x;
        double term = 1.0;
        double sum = 1.0;
        for (int k = 1; k < 200; ++k) {
            term *= q / (static_cast<double>(k) * static_cast<double>(k));
            sum += term;
            if (term < sum * 1e-17) break;
        }
        return sum;
    }
    // asymptotic expansion; terms first shrink to well below 1e-16 here
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 40; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = term * odd * odd / (8.0 * x * static_cast<double>(k));
        if (std::abs(next) >= std::abs(term)) break;
        term = next;
        sum += term;
        if (std::abs(term) < sum * 1e-17) break;
    }
    return std::exp(x) / std::sqrt(2.0 * kPi * x) * sum;
}

namespace {

// Asymptotic series for K_nu(x); returns false when it cannot reach the
// requested relative accuracy before the terms start diverging.
bool bessel_k_asymptotic(double nu, double x, double& out) {
    const double mu4 = 4.0 * nu * nu;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = term * (mu4 - odd * odd) / (8.0 * x * static_cast<double>(k));
        if (std::abs(next) >= std::abs(term)) return false;
        term = next;
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-12) {
            out = std::sqrt(kPi / (2.0 * x)) * std::exp(-x) * sum;
            return true;
        }
    }
    return false;
}

double bessel_k_integral(double nu, double x) {
    // integrand exp(-x cosh t) cosh(nu t); work with its logarithm so large
    // orders cannot overflow before rescaling
    const auto log_integrand = [nu, x](double t) { return ln_cosh(nu * t) - x * std::cosh(t); };
    const double t_peak = nu > 0.0 ? std::asinh(nu / x) : 0.0;
    const double peak = std::max(log_integrand(0.0), log_integrand(t_peak));
    double hi = std::max(t_peak, 1.0);
    while (log_integrand(hi) > peak - 60.0) hi *= 1.5;

    const auto scaled = [&](double t) { return std::exp(log_integrand(t) - peak); };
    quad::Options opt;
    opt.abs_tol = 1e-14;
    opt.rel_tol = 1e-11;
    const double integral =
        quad::integrate_segmented(scaled, {0.0, std::min(t_peak + 1.0, hi), hi}, opt);
    if (peak < -700.0) return std::exp(peak + std::log(integral));
    return std::exp(peak) * integral;
}

} // namespace

double bessel_k(double order, double x) {
    if (!(x > 0.0)) throw std::domain_error("bessel_k: argument must be positive");
    const double nu = std::abs(order);
    if (x >= 30.0) {
        double v;
        if (bessel_k_asymptotic(nu, x, v)) return v;
    }
    return bessel_k_integral(nu, x);
}

double gamma_q_upper(double s, double x) {
    if (!(s > 0.0)) throw std::domain_error("gamma_q_upper: shape must be positive");
    if (!(x >= 0.0)) throw std::domain_error("gamma_q_upper: argument must be non-negative");
    if (x == 0.0) return 1.0;
    const double log_pre = s * std::log(x) - x - ln_gamma(s);
    if (x < s + 1.0) {
        // lower series for P, then complement
        double term = 1.0 / s;
        double sum = term;
        for (int n = 0; n < 10000; ++n) {
            term *= x / (s + 1.0 + n);
            sum += term;
            if (term < sum * 1e-17) break;
        }
        return std::clamp(1.0 - std::exp(log_pre + std::log(sum)), 0.0, 1.0);
    }
    // Lentz continued fraction for the upper function
    const double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return std::clamp(std::exp(log_pre) * h, 0.0, 1.0);
}

double marcum_q1(double a, double b) {
    if (!(a >= 0.0) || !(b >= 0.0))
        throw std::domain_error("marcum_q1: arguments must be non-negative");
    if (b == 0.0) return 1.0;
    if (a == 0.0) return std::exp(-0.5 * b * b);

    const double lam = 0.5 * a * a; // Poisson intensity of the mixture
    const double y = 0.5 * b * b;

    const auto log_pois = [](double mean, double k) {
        return k * std::log(mean) - mean - ln_gamma(k + 1.0);
    };

    long long k_lo = 0;
    if (lam > 650.0) {
        const double spread = 9.0 * std::sqrt(lam) + 20.0;
        k_lo = std::max(0LL, static_cast<long long>(lam - spread));
    }
    const long long k_hi =
        static_cast<long long>(lam + 9.0 * std::sqrt(lam) + 30.0);

    // Pr(Pois(y) <= k) maintained by recurrence from an incomplete-gamma seed.
    double cdf_y = k_lo == 0 ? std::exp(-y)
                             : gamma_q_upper(static_cast<double>(k_lo) + 1.0, y);
    double sum = 0.0;
    double acc_w = 0.0;
    for (long long k = k_lo; k <= k_hi; ++k) {
        if (k > k_lo) {
            const double inc = std::exp(log_pois(y, static_cast<double>(k)));
            cdf_y = std::min(1.0, cdf_y + inc);
        }
        const double w = std::exp(log_pois(lam, static_cast<double>(k)));
        sum += w * cdf_y;
        acc_w += w;
        if (acc_w > 1.0 - 1e-15 && k > static_cast<long long>(lam)) break;
    }
    return std::clamp(sum, 0.0, 1.0);
}

MellinContour MellinContour::defaults(const GammaGammaParams& p) {
    p.validate();
    const double left = std::max(1.0 - p.a, 1.0 - p.b);
    MellinContour c;
    c.real_part = left + 1.0 < 1.0 - 1e-6 ? left + 1.0 : 0.5 * (left + 1.0);
    return c;
}

void MellinContour::validate(const GammaGammaParams& p) const {
    p.validate();
    const double left = std::max(1.0 - p.a, 1.0 - p.b);
    if (!(real_part > left + 1e-9))
        throw config_error("MellinContour: line must lie right of the gamma poles");
    if (!(real_part < 1.0 - 1e-9))
        throw config_error("MellinContour: line must lie left of the CDF kernel pole at s=1");
    if (node_count < 64) throw config_error("MellinContour: node_count must be >= 64");
    if (!(half_height > 0.0)) throw config_error("MellinContour: half_height must be positive");
}

struct ProductGgCdf::Level {
    double spacing = 0.0;
    std::vector<double> t;
    std::vector<std::complex<double>> v;
};

ProductGgCdf::ProductGgCdf(int n, const GammaGammaParams& params, const MellinContour& contour)
    : n_(n), params_(params), contour_(contour) {
    if (n < 1) throw std::domain_error("ProductGgCdf: n must be >= 1");
    contour_.validate(params_);
}

ProductGgCdf::~ProductGgCdf() = default;

const ProductGgCdf::Level& ProductGgCdf::ensure_level(int level) const {
    std::lock_guard<std::mutex> lock(mutex_);
    if (static_cast<int>(levels_.size()) > level && levels_[level]) return *levels_[level];
    levels_.resize(std::max<std::size_t>(levels_.size(), level + 1));

    const double c = contour_.real_part;
    const double T = contour_.half_height;
    const double log_ab = std::log(params_.a * params_.b);
    const double n = static_cast<double>(n_);
    const double log_norm = ln_gamma(params_.a) + ln_gamma(params_.b);

    const auto kernel = [&](double t) -> std::complex<double> {
        const std::complex<double> s(c, t);
        const std::complex<double> w =
            n * (ln_gamma(params_.a - 1.0 + s) + ln_gamma(params_.b - 1.0 + s) -
                 log_norm - (s - 1.0) * log_ab);
        return std::exp(w) / (1.0 - s);
    };

    for (int l = 0; l <= level; ++l) {
        if (levels_[l]) continue;
        auto lv = std::make_unique<Level>();
        const long long base = contour_.node_count;
        if (l == 0) {
            lv->spacing = T / static_cast<double>(base);
            lv->t.reserve(base + 1);
            lv->v.reserve(base + 1);
            for (long long k = 0; k <= base; ++k) {
                const double t = static_cast<double>(k) * lv->spacing;
                std::complex<double> val = kernel(t);
                if (k == 0 || k == base) val *= 0.5;
                lv->t.push_back(t);
                lv->v.push_back(val);
            }
        } else {
            const long long count = base << (l - 1);
            lv->spacing = T / static_cast<double>(base << l);
            lv->t.reserve(count);
            lv->v.reserve(count);
            for (long long m = 0; m < count; ++m) {
                const double t = (2.0 * static_cast<double>(m) + 1.0) * lv->spacing;
                lv->t.push_back(t);
                lv->v.push_back(kernel(t));
            }
        }
        // the kernel magnitude decays monotonically along the line; drop the
        // numerically dead tail so evaluation cost tracks the useful range
        const double scale = std::abs(levels_.empty() || !levels_[0]
                                          ? lv->v.front()
                                          : levels_[0]->v.front());
        const double cutoff = std::max(scale, 1.0) * 1e-24;
        std::size_t keep = lv->v.size();
        int below = 0;
        for (std::size_t i = 0; i < lv->v.size(); ++i) {
            if (std::abs(lv->v[i]) < cutoff) {
                if (++below >= 8) {
                    keep = i + 1;
                    break;
                }
            } else {
                below = 0;
            }
        }
        lv->t.resize(keep);
        lv->v.resize(keep);
        levels_[l] = std::move(lv);
    }
    return *levels_[level];
}

double ProductGgCdf::level_sum(int level, double log_x) const {
    const Level& lv = ensure_level(level);
    double acc = 0.0;
    for (std::size_t i = 0; i < lv.t.size(); ++i) {
        const double theta = lv.t[i] * log_x;
        acc += lv.v[i].real() * std::cos(theta) + lv.v[i].imag() * std::sin(theta);
    }
    return acc;
}

double ProductGgCdf::operator()(double x) const {
    if (!(x > 0.0)) return 0.0;
    // unit-mean product, so Markov gives 1 - F(x) <= 1/x
    if (x >= 1e8) return 1.0;
    if (x <= 1e-250) return 0.0;

    const double log_x = std::log(x);
    const double amp = std::pow(x, 1.0 - contour_.real_part) / kPi;

    const Level& l0 = ensure_level(0);
    double trapezoid = l0.spacing * level_sum(0, log_x);
    double prev = amp * trapezoid;
    constexpr int kMaxLevels = 8;
    for (int level = 1; level <= kMaxLevels; ++level) {
        const Level& lv = ensure_level(level);
        trapezoid = 0.5 * trapezoid + lv.spacing * level_sum(level, log_x);
        const double cur = amp * trapezoid;
        if (std::abs(cur - prev) <= 1e-6) return std::clamp(cur, 0.0, 1.0);
        prev = cur;
    }
    std::ostringstream msg;
    msg << "product_gg_cdf: Mellin inversion did not stabilize at x=" << x
        << " (n=" << n_ << ", last=" << prev << ")";
    throw numerical_error(msg.str());
}

double product_gg_cdf(int n, const GammaGammaParams& params, double x,
                      const MellinContour& contour) {
    return ProductGgCdf(n, params, contour)(x);
}

} // namespace rfso::specfun
