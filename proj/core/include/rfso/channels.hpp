#ifndef RFSO_CHANNELS_HPP
#define RFSO_CHANNELS_HPP

#include "rfso/rng.hpp"
#include "rfso/types.hpp"

namespace rfso::channels {

/// Gamma-Gamma density of the FSO gain (unit mean), x > 0.
double gamma_gamma_pdf(const GammaGammaParams& params, double x);

/// One Gamma-Gamma draw as the product of two independent unit-mean Gamma
/// variates with shapes a and b.
double sample_gamma_gamma(const GammaGammaParams& params, rng::RngStream& stream);

/// RF gain density: exp(-x) under Rayleigh, the squared-amplitude transform
/// of the Rician amplitude density otherwise. x > 0.
double rf_gain_pdf(const RfChannelModel& model, double x);

/// CDF of the Rician amplitude, 1 - Q1(nu/omega, x/omega).
double rician_amplitude_cdf(const RicianParams& params, double x);

/// One RF gain draw: Exp(1) under Rayleigh; |nu + omega(Z1 + iZ2)|^2 under
/// Rician.
double sample_rf_gain(const RfChannelModel& model, rng::RngStream& stream);

} // namespace rfso::channels

#endif
