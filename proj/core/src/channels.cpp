#include "rfso/channels.hpp"

#include <cmath>
#include <stdexcept>

#include "rfso/specfun.hpp"

namespace rfso::channels {

double gamma_gamma_pdf(const GammaGammaParams& params, double x) {
    params.validate();
    if (!(x > 0.0)) throw std::domain_error("gamma_gamma_pdf: x must be positive");
    const double a = params.a;
    const double b = params.b;
    const double half_sum = 0.5 * (a + b);
    const double log_pre = std::numbers::ln2 + half_sum * std::log(a * b) -
                           specfun::ln_gamma(a) - specfun::ln_gamma(b) +
                           (half_sum - 1.0) * std::log(x);
    const double k = specfun::bessel_k(a - b, 2.0 * std::sqrt(a * b * x));
    if (k == 0.0) return 0.0;
    return std::exp(log_pre + std::log(k));
}

double sample_gamma_gamma(const GammaGammaParams& params, rng::RngStream& stream) {
    params.validate();
    const double u = stream.next_gamma(params.a) / params.a;
    const double v = stream.next_gamma(params.b) / params.b;
    return u * v;
}

double rf_gain_pdf(const RfChannelModel& model, double x) {
    if (!(x > 0.0)) throw std::domain_error("rf_gain_pdf: x must be positive");
    if (model.is_rayleigh()) return std::exp(-x);
    const RicianParams& p = model.rician;
    p.validate();
    const double w2 = p.omega * p.omega;
    // gain density f_G(x) = f_amp(sqrt(x)) / (2 sqrt(x)) with the standard
    // Rician amplitude density, sigma = omega
    return 0.5 / w2 * std::exp(-(x + p.nu * p.nu) / (2.0 * w2)) *
           specfun::bessel_i0(std::sqrt(x) * p.nu / w2);
}

double rician_amplitude_cdf(const RicianParams& params, double x) {
    params.validate();
    if (!(x >= 0.0)) throw std::domain_error("rician_amplitude_cdf: x must be non-negative");
    if (x == 0.0) return 0.0;
    return 1.0 - specfun::marcum_q1(params.nu / params.omega, x / params.omega);
}

double sample_rf_gain(const RfChannelModel& model, rng::RngStream& stream) {
    if (model.is_rayleigh()) return stream.next_exp();
    const RicianParams& p = model.rician;
    p.validate();
    const double re = p.nu + p.omega * stream.next_normal();
    const double im = p.omega * stream.next_normal();
    return re * re + im * im;
}

} // namespace rfso::channels
