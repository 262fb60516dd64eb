#include "symtest/alternatives.hpp"

#include <cmath>
#include <sstream>

#include "symtest/errors.hpp"

namespace symtest {

SkewAlternative SkewAlternative::skew_normal(double lambda) {
    return SkewAlternative(false, 0.0, lambda);
}

SkewAlternative SkewAlternative::skew_t(double nu, double lambda) {
    if (!(nu > 0.0)) throw Error("skew_t: nu must be positive");
    return SkewAlternative(true, nu, lambda);
}

double SkewAlternative::mean() const {
    double delta = lambda_ / std::sqrt(1.0 + lambda_ * lambda_);
    if (!is_t_) return delta * std::sqrt(2.0 / M_PI);
    if (!(nu_ > 1.0)) throw Error("mean: skew-t mean requires nu > 1");
    // E X = delta sqrt(nu/pi) Gamma((nu-1)/2) / Gamma(nu/2).
    return delta * std::sqrt(nu_ / M_PI) *
           std::exp(std::lgamma(0.5 * (nu_ - 1.0)) - std::lgamma(0.5 * nu_));
}

double SkewAlternative::sample(Rng& rng) const {
    // Conditioning representation: delta |U0| + sqrt(1 - delta^2) U1.
    double delta = lambda_ / std::sqrt(1.0 + lambda_ * lambda_);
    double u0 = rng.normal();
    double u1 = rng.normal();
    double x = delta * std::abs(u0) + std::sqrt(1.0 - delta * delta) * u1;
    if (is_t_) x /= std::sqrt(rng.chi_squared(nu_) / nu_);
    return x;
}

std::vector<double> SkewAlternative::sample(std::size_t n, Rng& rng) const {
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(sample(rng));
    return out;
}

std::string SkewAlternative::name() const {
    std::ostringstream out;
    if (is_t_)
        out << "skewt:" << nu_ << ":" << lambda_;
    else
        out << "skewnormal:" << lambda_;
    return out.str();
}

SkewAlternative SkewAlternative::parse(std::string_view text) {
    std::string s(text);
    auto first = s.find(':');
    std::string head = s.substr(0, first);
    try {
        if (head == "skewnormal" && first != std::string::npos)
            return skew_normal(std::stod(s.substr(first + 1)));
        if (head == "skewt" && first != std::string::npos) {
            auto second = s.find(':', first + 1);
            if (second != std::string::npos)
                return skew_t(std::stod(s.substr(first + 1, second - first - 1)),
                              std::stod(s.substr(second + 1)));
        }
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
    }
    throw ParseError("unrecognized alternative descriptor: '" + s + "'");
}

}  // namespace symtest
