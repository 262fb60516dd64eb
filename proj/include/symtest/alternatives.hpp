#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "symtest/rng.hpp"

namespace symtest {

// Azzalini-type skewed sampling distributions used as off-model benchmarks:
// skew-normal with density 2 phi(x) Phi(lambda x), and its t analogue
// obtained by dividing by an independent sqrt(chi2_nu / nu).
class SkewAlternative {
  public:
    static SkewAlternative skew_normal(double lambda);
    static SkewAlternative skew_t(double nu, double lambda);

    // Grammar: skewnormal:<lambda> | skewt:<nu>:<lambda>
    static SkewAlternative parse(std::string_view text);
    std::string name() const;

    bool is_skew_t() const { return is_t_; }
    double nu() const { return nu_; }
    double lambda() const { return lambda_; }

    // Exact mean of the distribution; requires nu > 1 for the skew-t.
    double mean() const;

    double sample(Rng& rng) const;
    std::vector<double> sample(std::size_t n, Rng& rng) const;

  private:
    SkewAlternative(bool is_t, double nu, double lambda)
        : is_t_(is_t), nu_(nu), lambda_(lambda) {}

    bool is_t_;
    double nu_;
    double lambda_;
};

}  // namespace symtest
