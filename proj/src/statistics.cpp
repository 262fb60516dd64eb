#include "symtest/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <json.hpp>

#include "symtest/errors.hpp"
#include "symtest/math/normal.hpp"

namespace symtest {

namespace {

TestOutcome make_outcome(std::string id, double statistic) {
    auto [p1, p2] = p_values(statistic);
    TestOutcome out;
    out.test_id = std::move(id);
    out.statistic = statistic;
    out.p_one_sided = p1;
    out.p_two_sided = p2;
    return out;
}

std::vector<double> standardize(std::span<const double> xs, double theta,
                                double sigma) {
    if (!(sigma > 0.0)) throw Error("sigma must be positive");
    std::vector<double> z;
    z.reserve(xs.size());
    for (double x : xs) z.push_back((x - theta) / sigma);
    return z;
}

struct ScoreMoments {
    double i_n, j_n, k_n;  // means of phi^2, z^2 phi^2, z^4 phi^2
};

ScoreMoments score_moments(std::span<const double> z, const ReferenceDensity& f1) {
    double i = 0.0, j = 0.0, k = 0.0;
    for (double v : z) {
        double p = f1.score(v), p2 = p * p, v2 = v * v;
        i += p2;
        j += v2 * p2;
        k += v2 * v2 * p2;
    }
    double n = static_cast<double>(z.size());
    return {i / n, j / n, k / n};
}

double skew_score_sum(std::span<const double> z, const ReferenceDensity& f1,
                      double kappa) {
    double s = 0.0;
    for (double v : z) s += f1.score(v) * (v * v - kappa);
    return s;
}

}  // namespace

std::pair<double, double> p_values(double statistic) {
    double p1 = math::norm_sf(statistic);
    double p2 = 2.0 * std::min(p1, 1.0 - p1);
    return {p1, p2};
}

CentralSequence central_sequence(std::span<const double> xs, double theta,
                                 double sigma, const ReferenceDensity& f1) {
    auto z = standardize(xs, theta, sigma);
    double kappa = f1.information().kappa;
    double root_n = std::sqrt(static_cast<double>(z.size()));
    double loc = 0.0, scale = 0.0, skew = 0.0;
    for (double v : z) {
        double p = f1.score(v);
        loc += p;
        scale += v * p - 1.0;
        skew += p * (v * v - kappa);
    }
    return {loc / (root_n * sigma), scale / (root_n * sigma), skew / root_n};
}

TestOutcome s1(std::span<const double> xs, double theta) {
    double m3 = empirical_moment(xs, 3, theta);
    double m6 = empirical_moment(xs, 6, theta);
    if (!(m6 > 0.0)) throw DegenerateSample("sixth moment vanishes");
    double n = static_cast<double>(xs.size());
    auto out = make_outcome("s1", std::sqrt(n) * m3 / std::sqrt(m6));
    out.theta_hat = theta;
    return out;
}

TestOutcome s2_b1(std::span<const double> xs) {
    double mean = std::accumulate(xs.begin(), xs.end(), 0.0) /
                  static_cast<double>(xs.size());
    double m2 = empirical_moment(xs, 2, mean);
    double m3 = empirical_moment(xs, 3, mean);
    double m4 = empirical_moment(xs, 4, mean);
    double m6 = empirical_moment(xs, 6, mean);
    double den = m6 - 6.0 * m2 * m4 + 9.0 * m2 * m2 * m2;
    if (!(den > 0.0) || !(m2 > 0.0))
        throw DegenerateSample("studentizing denominator vanishes");
    double n = static_cast<double>(xs.size());
    auto out = make_outcome("s2_b1", std::sqrt(n) * m3 / std::sqrt(den));
    out.theta_hat = mean;
    out.b1 = m3 / std::pow(m2, 1.5);
    return out;
}

TestOutcome t_f1(std::span<const double> xs, double theta, double sigma,
                 const ReferenceDensity& f1) {
    auto z = standardize(xs, theta, sigma);
    auto info = f1.information();
    double n = static_cast<double>(z.size());
    double stat = skew_score_sum(z, f1, info.kappa) / std::sqrt(n * info.gamma);
    auto out = make_outcome("t_" + f1.name(), stat);
    out.theta_hat = theta;
    out.sigma_hat = sigma;
    out.reference_family = f1.name();
    return out;
}

TestOutcome t_hat_f1(std::span<const double> xs, double theta, double sigma,
                     const ReferenceDensity& f1) {
    auto z = standardize(xs, theta, sigma);
    double kappa = f1.information().kappa;
    auto m = score_moments(z, f1);
    double gamma_n = m.k_n - 2.0 * kappa * m.j_n + kappa * kappa * m.i_n;
    if (!(gamma_n > 0.0))
        throw NonPositiveVariance("empirical skewness information non-positive");
    double n = static_cast<double>(z.size());
    auto out = make_outcome("that_" + f1.name(),
                            skew_score_sum(z, f1, kappa) / std::sqrt(n * gamma_n));
    out.theta_hat = theta;
    out.sigma_hat = sigma;
    out.reference_family = f1.name();
    return out;
}

double kappa_circ(std::span<const double> xs, double theta, double sigma,
                  const ReferenceDensity& f1) {
    if (!f1.has_score_derivative())
        throw UnsupportedScoreDerivative(
            "kappa_circ needs a differentiable score; use t_laplace instead");
    auto z = standardize(xs, theta, sigma);
    double i_c = 0.0, j_c = 0.0;
    for (double v : z) {
        double dp = f1.score_derivative(v);
        i_c += dp;
        j_c += 2.0 * v * f1.score(v) + v * v * dp;
    }
    if (i_c == 0.0) throw ZeroDenominator("location information estimate is zero");
    return j_c / i_c;
}

TestOutcome t_circ_f1(std::span<const double> xs, double theta, double sigma,
                      const ReferenceDensity& f1) {
    double kc = kappa_circ(xs, theta, sigma, f1);
    auto z = standardize(xs, theta, sigma);
    auto m = score_moments(z, f1);
    double gamma_c = m.k_n - 2.0 * kc * m.j_n + kc * kc * m.i_n;
    if (!(gamma_c > 0.0))
        throw NonPositiveVariance("studentized skewness information non-positive");
    double n = static_cast<double>(z.size());
    auto out = make_outcome("tcirc_" + f1.name(),
                            skew_score_sum(z, f1, kc) / std::sqrt(n * gamma_c));
    out.theta_hat = theta;
    out.sigma_hat = sigma;
    out.reference_family = f1.name();
    return out;
}

TestOutcome t_dagger(std::span<const double> xs, double theta) {
    double m2 = empirical_moment(xs, 2, theta);
    double m4 = empirical_moment(xs, 4, theta);
    double m6 = empirical_moment(xs, 6, theta);
    double gamma_d = m6 - 6.0 * m2 * m4 + 9.0 * m2 * m2 * m2;
    if (!(gamma_d > 0.0))
        throw NonPositiveVariance("pseudo-Gaussian variance non-positive");
    double num = 0.0;
    for (double x : xs) {
        double d = x - theta;
        num += d * (d * d - 3.0 * m2);
    }
    double n = static_cast<double>(xs.size());
    auto out = make_outcome("tdagger", num / std::sqrt(n * gamma_d));
    out.theta_hat = theta;
    return out;
}

TestOutcome t_laplace(std::span<const double> xs, double theta, double sigma) {
    auto z = standardize(xs, theta, sigma);
    double g0 = kde_at_zero(z);
    double abs1 = empirical_moment(z, 1, 0.0, /*absolute=*/true);
    double kc = abs1 / g0;
    double m2 = empirical_moment(z, 2, 0.0);
    double m4 = empirical_moment(z, 4, 0.0);
    double gamma_l = m4 - 2.0 * kc * m2 + kc * kc;
    if (!(gamma_l > 0.0))
        throw NonPositiveVariance("sign-test variance non-positive");
    double num = 0.0;
    for (double v : z) {
        double s = v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
        num += s * (v * v - kc);
    }
    double n = static_cast<double>(z.size());
    auto out = make_outcome("tlaplace", num / std::sqrt(n * gamma_l));
    out.theta_hat = theta;
    out.sigma_hat = sigma;
    out.reference_family = "laplace";
    return out;
}

TestOutcome vdw_signed_rank(std::span<const double> xs, double theta) {
    std::size_t n = xs.size();
    std::vector<double> absdev(n);
    for (std::size_t i = 0; i < n; ++i) absdev[i] = std::abs(xs[i] - theta);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return absdev[a] < absdev[b]; });
    // Average ranks over ties.
    std::vector<double> rank(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && absdev[order[j + 1]] == absdev[order[i]]) ++j;
        double avg = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) rank[order[k]] = avg;
        i = j + 1;
    }
    double num = 0.0, den = 0.0;
    double np1 = static_cast<double>(n) + 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        double w = math::norm_quantile((np1 + rank[k]) / (2.0 * np1));
        double term = w * (w * w - 3.0);
        den += term * term;
        double d = xs[k] - theta;
        double s = d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
        num += s * term;
    }
    if (!(den > 0.0)) throw NonPositiveVariance("rank-score normalizer vanishes");
    auto out = make_outcome("vdw", num / std::sqrt(den));
    out.theta_hat = theta;
    return out;
}

std::string TestOutcome::to_json() const {
    nlohmann::json j{{"test_id", test_id},
                     {"statistic", statistic},
                     {"p_one_sided", p_one_sided},
                     {"p_two_sided", p_two_sided}};
    if (theta_hat) j["theta_hat"] = *theta_hat;
    if (sigma_hat) j["sigma_hat"] = *sigma_hat;
    if (reference_family) j["reference_family"] = *reference_family;
    if (b1) j["b1"] = *b1;
    return j.dump();
}

}  // namespace symtest
