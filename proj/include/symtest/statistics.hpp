#pragma once

#include <optional>
#include <span>
#include <string>

#include "symtest/estimators.hpp"
#include "symtest/reference_density.hpp"

namespace symtest {

struct TestOutcome {
    std::string test_id;
    double statistic;
    double p_one_sided;  // P(N(0,1) > statistic)
    double p_two_sided;  // 2 min(p_one, 1 - p_one)
    std::optional<double> theta_hat;
    std::optional<double> sigma_hat;
    std::optional<std::string> reference_family;
    // Auxiliary value for the moment test: the raw skewness coefficient b1.
    std::optional<double> b1;

    std::string to_json() const;
};

// Components of the local likelihood expansion at (theta, sigma): location,
// scale and skewness directions, each n^{-1/2} times a score sum.
struct CentralSequence {
    double delta_loc;
    double delta_scale;
    double delta_skew;
};

std::pair<double, double> p_values(double statistic);

CentralSequence central_sequence(std::span<const double> xs, double theta,
                                 double sigma, const ReferenceDensity& f1);

// sqrt(n) m3(theta) / sqrt(m6(theta)), the moment test with known center.
TestOutcome s1(std::span<const double> xs, double theta);

// Studentized skewness about the sample mean; also reports b1 = m3/s^3.
TestOutcome s2_b1(std::span<const double> xs);

// Optimal statistic at f1 with both parameters given:
// sum phi(Z_i)(Z_i^2 - kappa) / sqrt(n gamma(f1)).
TestOutcome t_f1(std::span<const double> xs, double theta, double sigma,
                 const ReferenceDensity& f1);

// Same numerator, variance replaced by its empirical counterpart built from
// the sample score moments (kappa stays at its f1 value).
TestOutcome t_hat_f1(std::span<const double> xs, double theta, double sigma,
                     const ReferenceDensity& f1);

// Empirical orthogonalizing constant: ratio of the integrated-by-parts scale
// and location information estimates. Needs a differentiable score.
double kappa_circ(std::span<const double> xs, double theta, double sigma,
                  const ReferenceDensity& f1);

// Fully studentized version with kappa_circ in place of kappa(f1); valid
// under any admissible symmetric density.
TestOutcome t_circ_f1(std::span<const double> xs, double theta, double sigma,
                      const ReferenceDensity& f1);

// Pseudo-Gaussian statistic: scale-free, moments about theta only.
TestOutcome t_dagger(std::span<const double> xs, double theta);

// Sign-score (Laplace) statistic; the centering constant uses a kernel
// estimate of the standardized residual density at zero.
TestOutcome t_laplace(std::span<const double> xs, double theta, double sigma);

// van der Waerden signed-rank statistic, distribution-free given theta.
TestOutcome vdw_signed_rank(std::span<const double> xs, double theta);

}  // namespace symtest
