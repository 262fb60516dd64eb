#include "symtest/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "symtest/errors.hpp"
#include "symtest/math/normal.hpp"

namespace symtest {

namespace {

double sorted_median(std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Linear-interpolation quantile of a sorted vector (the common "type 7").
double sorted_quantile(const std::vector<double>& v, double p) {
    double pos = p * (v.size() - 1);
    std::size_t k = static_cast<std::size_t>(pos);
    if (k + 1 >= v.size()) return v.back();
    double w = pos - k;
    return (1.0 - w) * v[k] + w * v[k + 1];
}

}  // namespace

double median(std::span<const double> xs) {
    if (xs.empty()) throw Error("median: empty sample");
    std::vector<double> v(xs.begin(), xs.end());
    return sorted_median(v);
}

double mad_scale(std::span<const double> xs, double theta) {
    if (xs.empty()) throw Error("mad_scale: empty sample");
    std::vector<double> v;
    v.reserve(xs.size());
    for (double x : xs) v.push_back(std::abs(x - theta));
    double m = sorted_median(v);
    if (m <= 0.0) throw DegenerateSample("all absolute deviations are zero");
    return m;
}

double discretize(double lambda, std::size_t n, double c) {
    if (!(c > 0.0)) throw Error("discretize: c must be positive");
    if (lambda == 0.0) return 0.0;
    double step = c * std::sqrt(static_cast<double>(n));
    double v = step * std::abs(lambda);
    double units = std::ceil(v);
    // Roundoff can push a value already on the lattice just past its integer;
    // pulling it back keeps the map idempotent.
    if (units - v >= 1.0 - 1e-9 * std::max(1.0, v)) units -= 1.0;
    return std::copysign(units / step, lambda);
}

double empirical_moment(std::span<const double> xs, int k, double center,
                        bool absolute) {
    double acc = 0.0;
    for (double x : xs) {
        double d = x - center;
        if (absolute) d = std::abs(d);
        double p = 1.0;
        for (int i = 0; i < k; ++i) p *= d;
        acc += p;
    }
    return acc / static_cast<double>(xs.size());
}

double kde_at_zero(std::span<const double> zs) {
    std::size_t n = zs.size();
    if (n < 10) throw Error("kde_at_zero: need at least 10 observations");
    double mean = 0.0;
    for (double z : zs) mean += z;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double z : zs) ss += (z - mean) * (z - mean);
    double sd = std::sqrt(ss / static_cast<double>(n - 1));
    std::vector<double> v(zs.begin(), zs.end());
    std::sort(v.begin(), v.end());
    double iqr = sorted_quantile(v, 0.75) - sorted_quantile(v, 0.25);
    double spread = std::min(sd, iqr / 1.349);
    if (spread <= 0.0) spread = std::max(sd, 1e-12);
    double h = 1.06 * spread * std::pow(static_cast<double>(n), -0.2);
    double acc = 0.0;
    for (double z : zs) acc += math::norm_pdf(z / h);
    return acc / (static_cast<double>(n) * h);
}

NuisanceEstimates estimate_nuisance(std::span<const double> xs, bool discretized,
                                    double c) {
    double theta = median(xs);
    double sigma = mad_scale(xs, theta);
    if (discretized) {
        theta = discretize(theta, xs.size(), c);
        sigma = discretize(sigma, xs.size(), c);
    }
    return {theta, sigma, discretized, c};
}

}  // namespace symtest
