#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "symtest/rng.hpp"

namespace symtest {

enum class Family { Gaussian, Laplace, Logistic, PowerExponential, StudentT };

// Fisher-type information quantities of a standardized reference density:
// information for location (I), scale (J) and skewness (K), the generalized
// kurtosis kappa = J/I and the skewness information gamma = K - J^2/I.
struct InformationSet {
    double i_loc;
    double j_scale;
    double k_skew;
    double kappa;
    double gamma;
};

// A symmetric density standardized so that the median of |Z| equals one
// (equivalently, the mass below z = 1 is 0.75). Immutable and cheap to copy.
class ReferenceDensity {
  public:
    static ReferenceDensity gaussian();
    static ReferenceDensity laplace();
    static ReferenceDensity logistic();
    static ReferenceDensity power_exponential(int eta);  // eta in 1..5
    static ReferenceDensity student_t(double nu);        // nu > 2

    // Grammar: gaussian | laplace | logistic | powerexp:<eta> | student:<nu>
    static ReferenceDensity parse(std::string_view text);
    std::string name() const;

    Family family() const { return family_; }
    // eta for PowerExponential, nu for StudentT, unused otherwise.
    double shape() const { return shape_; }

    // The family-specific standardization constant as conventionally written:
    // a (Gaussian), d (Laplace), b (logistic), g_eta, a_nu.
    double std_constant() const;
    // Multiplicative normalizing constant of the density formula.
    double norm_constant() const;
    // Internal scale s with f1(z) = s * p(s z), p the unit-shape density.
    double scale() const { return scale_; }

    double density(double z) const;
    double density_derivative(double z) const;  // f1'(z)
    double score(double z) const;               // -f1'(z)/f1(z)
    bool has_score_derivative() const { return family_ != Family::Laplace; }
    double score_derivative(double z) const;    // throws for Laplace
    double cdf(double z) const;

    InformationSet information() const;  // closed forms
    InformationSet information_by_quadrature(double tol = 1e-11) const;

    // k-th (absolute) moment; odd plain moments are exactly zero. Throws
    // MomentDoesNotExist when the tail condition fails (StudentT, k >= nu).
    double moment(int k, bool absolute = false) const;
    bool moment_exists(int k) const;

    double sample(Rng& rng) const;

    // integral of h(z) * f1(z) over the real line (h need not be even).
    double expect(const std::function<double(double)>& h, double tol = 1e-10) const;

    // Tail bookkeeping used for cross-information admissibility checks.
    bool polynomial_tails() const { return family_ == Family::StudentT; }
    // Density tail decays like z^-(tail_exponent()+1); only for StudentT.
    double tail_exponent() const { return shape_; }
    // Polynomial growth degree of the score (and its derivative) at infinity.
    double score_degree() const;
    double score_derivative_degree() const;

    bool operator==(const ReferenceDensity& o) const {
        return family_ == o.family_ && shape_ == o.shape_;
    }

  private:
    ReferenceDensity(Family f, double shape, double scale)
        : family_(f), shape_(shape), scale_(scale) {}

    double std_density(double u) const;       // p(u)
    double std_score(double u) const;         // -p'(u)/p(u)
    double std_score_derivative(double u) const;
    double std_cdf(double u) const;
    double std_sample(Rng& rng) const;

    Family family_;
    double shape_;
    double scale_;
};

// Solves the quantile condition (mass 0.75 below z = 1) by bracketed
// root-finding; independent of the closed-form constants used internally.
double standardization_constant(Family family, double shape = 0.0);

std::string family_name(Family f);

}  // namespace symtest
