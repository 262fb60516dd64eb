#pragma once

#include <cstddef>
#include <span>

namespace symtest {

// Order-statistic median; even n takes the midpoint of the central pair.
double median(std::span<const double> xs);

// Med(|X_i - theta|); throws DegenerateSample when all deviations vanish.
double mad_scale(std::span<const double> xs, double theta);

// Rounds lambda outward onto the lattice of step 1/(c sqrt(n)), preserving
// sign; lattice points map to themselves.
double discretize(double lambda, std::size_t n, double c = 100.0);

// n^{-1} sum (X_i - center)^k; absolute = true uses |X_i - center|^k.
double empirical_moment(std::span<const double> xs, int k, double center,
                        bool absolute = false);

// Gaussian-kernel density estimate at zero with Silverman bandwidth
// h = 1.06 min(sd, IQR/1.349) n^{-1/5}. Requires n >= 10.
double kde_at_zero(std::span<const double> zs);

struct NuisanceEstimates {
    double theta_hat;
    double sigma_hat;
    bool discretized;
    double c;
};

// Median location and MAD scale, optionally snapped to the root-n lattice.
NuisanceEstimates estimate_nuisance(std::span<const double> xs,
                                    bool discretized = true, double c = 100.0);

}  // namespace symtest
