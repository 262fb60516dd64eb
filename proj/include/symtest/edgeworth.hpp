#pragma once

#include <limits>
#include <string>
#include <vector>

#include "symtest/reference_density.hpp"
#include "symtest/rng.hpp"

namespace symtest {

// Truncation point of the skewed construction: the unique z > sqrt(kappa)
// with phi(z) (z^2 - kappa) = 1/|xi|. Throws XiTooLarge when no admissible
// root exists.
double solve_z_star(const ReferenceDensity& f1, double xi);

// A first-order skewed perturbation of a symmetric reference density,
// truncated at +-sigma*z_star with the clipped mass moved to the opposite
// tail. xi = 0 recovers the symmetric location-scale model exactly.
// Immutable after construction; evaluation methods are pure.
class EdgeworthModel {
  public:
    EdgeworthModel(double theta, double sigma, double xi, ReferenceDensity f1);

    double theta() const { return theta_; }
    double sigma() const { return sigma_; }
    double xi() const { return xi_; }
    const ReferenceDensity& f1() const { return f1_; }
    // |z*|; +infinity when xi = 0.
    double z_star() const { return z_star_; }

    double density(double x) const;
    double cdf(double x) const;

    double sample(Rng& rng) const;
    std::vector<double> sample(std::size_t n, Rng& rng) const;

    // {"family": ..., "theta": ..., "sigma": ..., "xi": ...}
    std::string to_json() const;
    static EdgeworthModel from_json(const std::string& text);

    std::string label() const;

  private:
    // Density in standardized coordinates z = (x - theta)/sigma.
    double std_density(double z) const;
    double std_cdf(double z) const;
    double middle_cdf(double z) const;  // semi-analytic, |z| <= z_star
    void build_table();

    double theta_;
    double sigma_;
    double xi_;
    ReferenceDensity f1_;
    double kappa_ = 0.0;
    double z_star_ = std::numeric_limits<double>::infinity();

    // Cached CDF table on [lo_, hi_] for repeated evaluation; values are
    // anchored by the semi-analytic middle CDF, interpolation is cubic
    // Hermite with the exact density as slope.
    double lo_ = 0.0, hi_ = 0.0;
    std::vector<double> knots_, cdf_knots_, pdf_knots_;
};

}  // namespace symtest
