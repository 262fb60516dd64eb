#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace symtest {

// Deterministic random stream. All variate generators are implemented here
// (not via std:: distributions, whose output is implementation-defined) so
// that runs are bit-reproducible across platforms and across worker counts.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Derives an independent stream keyed by (master, a, b). Used to give
    // each (scenario, replication) cell its own counter-based stream.
    static Rng derive(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
        std::uint64_t s = mix(mix(mix(master) ^ a) ^ b);
        return Rng(s);
    }

    // Uniform on (0, 1), 53-bit resolution, never returns 0 or 1.
    double uniform() {
        std::uint64_t r = gen_();
        return (static_cast<double>(r >> 11) + 0.5) * 0x1.0p-53;
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // Marsaglia polar method.
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        have_spare_ = true;
        return u * m;
    }

    double exponential() { return -std::log(uniform()); }

    // Marsaglia-Tsang; shapes below one are boosted via U^{1/shape}.
    double gamma(double shape) {
        if (shape < 1.0) {
            double u = uniform();
            return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        double d = shape - 1.0 / 3.0;
        double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            double u = uniform();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    double chi_squared(double df) { return 2.0 * gamma(0.5 * df); }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace symtest
