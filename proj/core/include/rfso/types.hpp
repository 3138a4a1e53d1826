#ifndef RFSO_TYPES_HPP
#define RFSO_TYPES_HPP

#include <stdexcept>

namespace rfso {

/// Shape parameters of the Gamma-Gamma turbulence distribution. Both shapes
/// are strictly positive; the gain is normalized to unit mean.
struct GammaGammaParams {
    double a;
    double b;

    void validate() const {
        if (!(a > 0.0) || !(b > 0.0))
            throw std::domain_error("GammaGammaParams: shapes must be positive");
    }
};

/// Line-of-sight amplitude nu and scatter parameter omega of the Rician
/// amplitude distribution (standard parametrization, sigma = omega).
struct RicianParams {
    double nu;
    double omega;

    void validate() const {
        if (!(nu >= 0.0)) throw std::domain_error("RicianParams: nu must be non-negative");
        if (!(omega > 0.0)) throw std::domain_error("RicianParams: omega must be positive");
    }
};

/// RF fading model: Rayleigh (unit-mean exponential gain) or Rician.
struct RfChannelModel {
    enum class Kind { rayleigh, rician };

    Kind kind = Kind::rayleigh;
    RicianParams rician{0.0, 1.0};

    static RfChannelModel make_rayleigh() { return {Kind::rayleigh, {0.0, 1.0}}; }
    static RfChannelModel make_rician(RicianParams p) {
        p.validate();
        return {Kind::rician, p};
    }

    bool is_rayleigh() const { return kind == Kind::rayleigh; }
    bool is_rician() const { return kind == Kind::rician; }
};

} // namespace rfso

#endif
