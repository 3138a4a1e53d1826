#ifndef RFSO_RNG_HPP
#define RFSO_RNG_HPP

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace rfso::rng {

namespace detail {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace detail

/// Derive a stream id from a tuple of identifiers (trial index, round index,
/// link tag, draw index). The chain is order sensitive, so distinct tuples
/// map to distinct streams with overwhelming probability.
inline std::uint64_t derive_stream(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = 0x8AC7230489E80001ull;
    for (std::uint64_t p : parts) h = detail::mix64((h + p) * detail::kGolden + 1);
    return h;
}

/// Counter-based random stream keyed by (root_seed, stream_id). The n-th
/// output is a pure function of the key and n, so identical keys reproduce
/// identical sequences regardless of how work is scheduled across threads.
class RngStream {
public:
    RngStream(std::uint64_t root_seed, std::uint64_t stream_id)
        : key_(detail::mix64(detail::mix64(root_seed + detail::kGolden) ^
                             (stream_id * detail::kGolden + 0x1D8E4E27C47D124Full))) {}

    std::uint64_t next_u64() {
        ++counter_;
        return detail::mix64(key_ + counter_ * detail::kGolden);
    }

    /// Uniform draw strictly inside (0, 1).
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53 + 0x1.0p-54;
    }

    /// Standard normal via the polar method; the spare draw is cached.
    double next_normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * next_unit() - 1.0;
            v = 2.0 * next_unit() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m;
    }

    /// Exponential with unit mean.
    double next_exp() { return -std::log(next_unit()); }

    /// Gamma(shape, scale 1) via Marsaglia-Tsang, boosted for shape < 1.
    double next_gamma(double shape) {
        if (shape < 1.0) {
            const double g = next_gamma(shape + 1.0);
            return g * std::pow(next_unit(), 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = next_normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = next_unit();
            const double x2 = x * x;
            if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
            if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace rfso::rng

#endif
