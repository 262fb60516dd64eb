#include "symtest/reference_density.hpp"

#include <cmath>
#include <sstream>

#include "symtest/errors.hpp"
#include "symtest/math/normal.hpp"
#include "symtest/math/quadrature.hpp"
#include "symtest/math/roots.hpp"

namespace symtest {

namespace {

// Normalizing constant of the unit-shape density p.
double std_norm_constant(Family family, double shape) {
    switch (family) {
        case Family::Gaussian:
            return 1.0 / std::sqrt(2.0 * M_PI);
        case Family::Laplace:
            return 0.5;
        case Family::Logistic:
            return 1.0;  // folded into the formula
        case Family::PowerExponential:
            return 1.0 / (2.0 * std::tgamma(1.0 + 0.5 / shape));
        case Family::StudentT:
            // Via lgamma: tgamma overflows already around nu = 340.
            return std::exp(std::lgamma(0.5 * (shape + 1.0)) -
                            std::lgamma(0.5 * shape) -
                            0.5 * std::log(shape * M_PI));
    }
    return 0.0;
}

double std_density_impl(Family family, double shape, double u) {
    switch (family) {
        case Family::Gaussian:
            return math::norm_pdf(u);
        case Family::Laplace:
            return 0.5 * std::exp(-std::abs(u));
        case Family::Logistic: {
            double c = std::cosh(0.5 * u);
            return 0.25 / (c * c);
        }
        case Family::PowerExponential:
            return std_norm_constant(family, shape) *
                   std::exp(-std::pow(std::abs(u), 2.0 * shape));
        case Family::StudentT:
            // log1p/exp keeps full relative accuracy for large nu, where
            // pow(1 + tiny, huge) is too noisy for the adaptive quadrature.
            return std_norm_constant(family, shape) *
                   std::exp(-0.5 * (shape + 1.0) * std::log1p(u * u / shape));
    }
    return 0.0;
}

}  // namespace

ReferenceDensity ReferenceDensity::gaussian() {
    return ReferenceDensity(Family::Gaussian, 0.0, math::norm_quantile(0.75));
}

ReferenceDensity ReferenceDensity::laplace() {
    return ReferenceDensity(Family::Laplace, 0.0, std::log(2.0));
}

ReferenceDensity ReferenceDensity::logistic() {
    return ReferenceDensity(Family::Logistic, 0.0, std::log(3.0));
}

ReferenceDensity ReferenceDensity::power_exponential(int eta) {
    if (eta < 1 || eta > 5)
        throw Error("power_exponential: eta must be an integer in 1..5");
    double s = standardization_constant(Family::PowerExponential, eta);
    return ReferenceDensity(Family::PowerExponential, eta, s);
}

ReferenceDensity ReferenceDensity::student_t(double nu) {
    if (!(nu > 2.0))
        throw Error("student_t: requires nu > 2 (skewness information undefined otherwise)");
    double a_nu = standardization_constant(Family::StudentT, nu);
    return ReferenceDensity(Family::StudentT, nu, std::sqrt(a_nu));
}

double standardization_constant(Family family, double shape) {
    // The scale s with f1(z) = s p(s z) is the 0.75-quantile of p; solve
    // F_p(s) = 0.75 by bisection on the (monotone) unit-shape CDF.
    auto cdf = [&](double u) {
        switch (family) {
            case Family::Gaussian:
                return math::norm_cdf(u);
            case Family::Laplace:
                return u < 0.0 ? 0.5 * std::exp(u) : 1.0 - 0.5 * std::exp(-u);
            case Family::Logistic:
                return 1.0 / (1.0 + std::exp(-u));
            default:
                return 0.5 + math::integrate(
                                 [&](double t) { return std_density_impl(family, shape, t); },
                                 0.0, u, 1e-14);
        }
    };
    double s = math::bisect([&](double u) { return cdf(u) - 0.75; }, 1e-12, 40.0, 1e-14);
    switch (family) {
        case Family::Gaussian:
        case Family::Logistic:
        case Family::StudentT:
            return s * s;  // a, b, a_nu
        case Family::Laplace:
            return 1.0 / s;  // d
        case Family::PowerExponential:
            return s;  // g_eta
    }
    return s;
}

double ReferenceDensity::std_constant() const {
    switch (family_) {
        case Family::Gaussian:
        case Family::Logistic:
        case Family::StudentT:
            return scale_ * scale_;
        case Family::Laplace:
            return 1.0 / scale_;
        case Family::PowerExponential:
            return scale_;
    }
    return scale_;
}

double ReferenceDensity::norm_constant() const {
    switch (family_) {
        case Family::Logistic:
            return scale_;  // sqrt(b)
        default:
            return scale_ * std_norm_constant(family_, shape_);
    }
}

double ReferenceDensity::std_density(double u) const {
    return std_density_impl(family_, shape_, u);
}

double ReferenceDensity::density(double z) const {
    return scale_ * std_density(scale_ * z);
}

double ReferenceDensity::std_score(double u) const {
    switch (family_) {
        case Family::Gaussian:
            return u;
        case Family::Laplace:
            return u > 0.0 ? 1.0 : (u < 0.0 ? -1.0 : 0.0);
        case Family::Logistic:
            return std::tanh(0.5 * u);
        case Family::PowerExponential: {
            double k = 2.0 * shape_;
            double m = k * std::pow(std::abs(u), k - 1.0);
            return u >= 0.0 ? m : -m;
        }
        case Family::StudentT:
            return (shape_ + 1.0) * u / (shape_ + u * u);
    }
    return 0.0;
}

double ReferenceDensity::score(double z) const { return scale_ * std_score(scale_ * z); }

double ReferenceDensity::density_derivative(double z) const {
    return -score(z) * density(z);
}

double ReferenceDensity::std_score_derivative(double u) const {
    switch (family_) {
        case Family::Gaussian:
            return 1.0;
        case Family::Logistic: {
            double c = std::cosh(0.5 * u);
            return 0.5 / (c * c);
        }
        case Family::PowerExponential: {
            double k = 2.0 * shape_;
            return k * (k - 1.0) * std::pow(std::abs(u), k - 2.0);
        }
        case Family::StudentT: {
            double q = shape_ + u * u;
            return (shape_ + 1.0) * (shape_ - u * u) / (q * q);
        }
        case Family::Laplace:
            break;
    }
    throw UnsupportedScoreDerivative("Laplace score sign(z)/d is not differentiable");
}

double ReferenceDensity::score_derivative(double z) const {
    return scale_ * scale_ * std_score_derivative(scale_ * z);
}

double ReferenceDensity::std_cdf(double u) const {
    switch (family_) {
        case Family::Gaussian:
            return math::norm_cdf(u);
        case Family::Laplace:
            return u < 0.0 ? 0.5 * std::exp(u) : 1.0 - 0.5 * std::exp(-u);
        case Family::Logistic:
            return 1.0 / (1.0 + std::exp(-u));
        default: {
            double x = std::abs(u);
            auto p = [this](double t) { return std_density(t); };
            double half;
            if (x <= 8.0)
                half = math::integrate(p, 0.0, x, 1e-13);
            else
                half = 0.5 - math::integrate_right_tail(p, x, 1e-13);
            return u >= 0.0 ? 0.5 + half : 0.5 - half;
        }
    }
}

double ReferenceDensity::cdf(double z) const { return std_cdf(scale_ * z); }

InformationSet ReferenceDensity::information() const {
    double i = 0.0, j = 0.0, k = 0.0;
    switch (family_) {
        case Family::Gaussian: {
            double a = std_constant();
            i = a;
            j = 3.0;
            k = 15.0 / a;
            break;
        }
        case Family::Laplace: {
            double d = std_constant();
            i = 1.0 / (d * d);
            j = 2.0;
            k = 24.0 * d * d;
            break;
        }
        case Family::Logistic: {
            double b = std_constant();
            i = b / 3.0;
            j = (12.0 + M_PI * M_PI) / 9.0;
            k = M_PI * M_PI * (120.0 + 7.0 * M_PI * M_PI) / (45.0 * b);
            break;
        }
        case Family::PowerExponential: {
            double g = std_constant(), eta = shape_;
            double g1 = std::tgamma(1.0 / (2.0 * eta));
            i = 4.0 * eta * eta * g * g * std::tgamma(2.0 - 0.5 / eta) / g1;
            j = 1.0 + 2.0 * eta;
            k = 4.0 * eta * eta / (g * g) * std::tgamma(2.0 + 1.5 / eta) / g1;
            break;
        }
        case Family::StudentT: {
            double a = std_constant(), nu = shape_;
            i = a * (nu + 1.0) / (nu + 3.0);
            j = 3.0 * (nu + 1.0) / (nu + 3.0);
            k = 15.0 * nu * (nu + 1.0) / (a * (nu - 2.0) * (nu + 3.0));
            break;
        }
    }
    return {i, j, k, j / i, k - j * j / i};
}

double ReferenceDensity::expect(const std::function<double(double)>& h, double tol) const {
    auto integrand = [&](double z) { return h(z) * density(z); };
    return math::integrate_line(integrand, tol, 40.0 / scale_);
}

InformationSet ReferenceDensity::information_by_quadrature(double tol) const {
    auto w = [this](double z, int p) {
        double s = score(z);
        return std::pow(z, p) * s * s;
    };
    double i = expect([&](double z) { return w(z, 0); }, tol);
    double j = expect([&](double z) { return w(z, 2); }, tol);
    double k = expect([&](double z) { return w(z, 4); }, tol);
    return {i, j, k, j / i, k - j * j / i};
}

bool ReferenceDensity::moment_exists(int k) const {
    return family_ != Family::StudentT || static_cast<double>(k) < shape_;
}

double ReferenceDensity::moment(int k, bool absolute) const {
    if (k < 0) throw Error("moment order must be nonnegative");
    if (!moment_exists(k)) {
        std::ostringstream msg;
        msg << "moment of order " << k << " does not exist for " << name();
        throw MomentDoesNotExist(msg.str());
    }
    if (k == 0) return 1.0;
    if (!absolute && k % 2 == 1) return 0.0;  // symmetry
    auto integrand = [this, k](double z) { return std::pow(z, k) * density(z); };
    return 2.0 * math::integrate_halfline(integrand, 1e-11, 40.0 / scale_);
}

double ReferenceDensity::std_sample(Rng& rng) const {
    switch (family_) {
        case Family::Gaussian:
            return rng.normal();
        case Family::Laplace: {
            double e = rng.exponential();
            return rng.uniform() < 0.5 ? -e : e;
        }
        case Family::Logistic: {
            double u = rng.uniform();
            return std::log(u / (1.0 - u));
        }
        case Family::PowerExponential: {
            // Rejection from Exp(1) for the magnitude; target ~ exp(-u^{2 eta}).
            double k = 2.0 * shape_;
            double u0 = std::pow(1.0 / k, 1.0 / (k - 1.0));
            double log_m = u0 - std::pow(u0, k);
            for (;;) {
                double x = rng.exponential();
                double log_acc = x - std::pow(x, k) - log_m;
                if (std::log(rng.uniform()) < log_acc)
                    return rng.uniform() < 0.5 ? -x : x;
            }
        }
        case Family::StudentT:
            return rng.normal() / std::sqrt(rng.chi_squared(shape_) / shape_);
    }
    return 0.0;
}

double ReferenceDensity::sample(Rng& rng) const { return std_sample(rng) / scale_; }

double ReferenceDensity::score_degree() const {
    switch (family_) {
        case Family::Gaussian:
            return 1.0;
        case Family::Laplace:
        case Family::Logistic:
            return 0.0;
        case Family::PowerExponential:
            return 2.0 * shape_ - 1.0;
        case Family::StudentT:
            return -1.0;
    }
    return 0.0;
}

double ReferenceDensity::score_derivative_degree() const {
    switch (family_) {
        case Family::Gaussian:
            return 0.0;
        case Family::Logistic:
            return -1e9;  // exponentially decaying
        case Family::PowerExponential:
            return 2.0 * shape_ - 2.0;
        case Family::StudentT:
            return -2.0;
        case Family::Laplace:
            break;
    }
    throw UnsupportedScoreDerivative("Laplace score has no derivative");
}

std::string family_name(Family f) {
    switch (f) {
        case Family::Gaussian:
            return "gaussian";
        case Family::Laplace:
            return "laplace";
        case Family::Logistic:
            return "logistic";
        case Family::PowerExponential:
            return "powerexp";
        case Family::StudentT:
            return "student";
    }
    return "?";
}

std::string ReferenceDensity::name() const {
    std::ostringstream out;
    out << family_name(family_);
    if (family_ == Family::PowerExponential)
        out << ":" << static_cast<int>(shape_);
    else if (family_ == Family::StudentT)
        out << ":" << shape_;
    return out.str();
}

ReferenceDensity ReferenceDensity::parse(std::string_view text) {
    std::string s(text);
    auto colon = s.find(':');
    std::string head = s.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : s.substr(colon + 1);
    try {
        if (head == "gaussian" && arg.empty()) return gaussian();
        if (head == "laplace" && arg.empty()) return laplace();
        if (head == "logistic" && arg.empty()) return logistic();
        if (head == "powerexp" && !arg.empty()) return power_exponential(std::stoi(arg));
        if (head == "student" && !arg.empty()) return student_t(std::stod(arg));
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        // fall through to ParseError
    }
    throw ParseError("unrecognized density descriptor: '" + s + "'");
}

}  // namespace symtest
