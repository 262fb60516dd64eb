#include "symtest/edgeworth.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "symtest/errors.hpp"
#include "symtest/math/quadrature.hpp"
#include "symtest/math/roots.hpp"

namespace symtest {

namespace {

constexpr int kTableKnots = 2048;
constexpr int kValidityGrid = 10000;

// Point beyond which the reference density carries less than ~1e-11 of mass.
double tail_cutoff(const ReferenceDensity& f1) {
    auto g = [&](double z) { return f1.cdf(z) - (1.0 - 1e-11); };
    auto r = math::find_root_expanding(g, 1.0, 2.0, 1e12, 1e-6);
    return r ? *r : 1e12;
}

}  // namespace

double solve_z_star(const ReferenceDensity& f1, double xi) {
    if (xi == 0.0) throw Error("solve_z_star: xi must be nonzero");
    double kappa = f1.information().kappa;
    double target = 1.0 / std::abs(xi);
    // phi(z)(z^2 - kappa) grows from 0 at sqrt(kappa); find where it
    // reaches 1/|xi|.
    auto h = [&](double z) { return f1.score(z) * (z * z - kappa) - target; };
    double lo = std::sqrt(kappa) * (1.0 + 1e-12);
    auto root = math::find_root_expanding(h, lo, lo + 1.0, 1e12);
    if (!root)
        throw XiTooLarge("no admissible truncation point for xi = " + std::to_string(xi));
    return *root;
}

EdgeworthModel::EdgeworthModel(double theta, double sigma, double xi,
                               ReferenceDensity f1)
    : theta_(theta), sigma_(sigma), xi_(xi), f1_(std::move(f1)) {
    if (!(sigma > 0.0)) throw Error("EdgeworthModel: sigma must be positive");
    kappa_ = f1_.information().kappa;
    if (xi_ == 0.0) return;
    z_star_ = solve_z_star(f1_, xi_);
    double g = std::min(z_star_, tail_cutoff(f1_));
    for (int i = 0; i < kValidityGrid; ++i) {
        double z = -g + 2.0 * g * i / (kValidityGrid - 1.0);
        double q = 1.0 + xi_ * f1_.score(z) * (z * z - kappa_);
        if (q < -1e-9)
            throw XiTooLarge("density goes negative at xi = " + std::to_string(xi_));
    }
    build_table();
}

double EdgeworthModel::std_density(double z) const {
    double f = f1_.density(z);
    if (xi_ == 0.0) return f;
    if (xi_ > 0.0) {
        if (z < -z_star_) return 0.0;
        if (z > z_star_) return 2.0 * f;
    } else {
        if (z > z_star_) return 0.0;
        if (z < -z_star_) return 2.0 * f;
    }
    double q = 1.0 + xi_ * f1_.score(z) * (z * z - kappa_);
    return std::max(0.0, f * q);
}

double EdgeworthModel::density(double x) const {
    return std_density((x - theta_) / sigma_) / sigma_;
}

double EdgeworthModel::middle_cdf(double z) const {
    double kappa = kappa_;
    auto tail_k = [this](double t) {
        // K(t) = int_t^inf u f1(u) du, t >= 0; head kept finite so the
        // reciprocal tail substitution never sees a near-zero endpoint.
        auto uf = [this](double u) { return u * f1_.density(u); };
        double cut = std::max(t, 1.0);
        double head = t < cut ? math::integrate(uf, t, cut, 1e-12) : 0.0;
        return head + math::integrate_right_tail(uf, cut, 1e-12);
    };
    double zs = z_star_;
    double base = xi_ > 0.0 ? 0.0 : 2.0 * f1_.cdf(-zs);
    double boundary = f1_.density(zs) * (zs * zs - kappa);
    double here = f1_.density(z) * (z * z - kappa);
    // int ddot{f1}(t)(t^2-kappa) dt by parts; K handles the z t f1 piece.
    double perturb = here - boundary - 2.0 * (tail_k(zs) - tail_k(std::abs(z)));
    double v = base + (f1_.cdf(z) - f1_.cdf(-zs)) - xi_ * perturb;
    return std::clamp(v, 0.0, 1.0);
}

void EdgeworthModel::build_table() {
    double zc = tail_cutoff(f1_);
    lo_ = std::max(-z_star_, -zc);
    hi_ = std::min(z_star_, zc);
    int half = kTableKnots / 2;
    knots_.clear();
    for (int i = 0; i < half; ++i)
        knots_.push_back(lo_ + (0.0 - lo_) * i / half);
    for (int i = 0; i <= half; ++i)
        knots_.push_back(hi_ * i / half);
    cdf_knots_.resize(knots_.size());
    pdf_knots_.resize(knots_.size());
    for (std::size_t i = 0; i < knots_.size(); ++i) {
        cdf_knots_[i] = middle_cdf(knots_[i]);
        pdf_knots_[i] = std_density(knots_[i]);
    }
}

double EdgeworthModel::std_cdf(double z) const {
    if (xi_ == 0.0) return f1_.cdf(z);
    if (xi_ > 0.0) {
        if (z <= -z_star_) return 0.0;
        if (z >= z_star_) return 1.0 - 2.0 * (1.0 - f1_.cdf(z));
    } else {
        if (z >= z_star_) return 1.0;
        if (z <= -z_star_) return 2.0 * f1_.cdf(z);
    }
    if (z < lo_ || z > hi_) return middle_cdf(z);
    // Cubic Hermite between table knots; the density is the exact slope.
    auto it = std::upper_bound(knots_.begin(), knots_.end(), z);
    std::size_t k = std::min(knots_.size() - 2,
                             static_cast<std::size_t>(
                                 std::max<std::ptrdiff_t>(0, it - knots_.begin() - 1)));
    double z0 = knots_[k], z1 = knots_[k + 1], h = z1 - z0;
    if (h <= 0.0) return cdf_knots_[k];
    double t = (z - z0) / h;
    double t2 = t * t, t3 = t2 * t;
    double v = cdf_knots_[k] * (2.0 * t3 - 3.0 * t2 + 1.0) +
               h * pdf_knots_[k] * (t3 - 2.0 * t2 + t) +
               cdf_knots_[k + 1] * (-2.0 * t3 + 3.0 * t2) +
               h * pdf_knots_[k + 1] * (t3 - t2);
    return std::clamp(v, 0.0, 1.0);
}

double EdgeworthModel::cdf(double x) const {
    return std_cdf((x - theta_) / sigma_);
}

double EdgeworthModel::sample(Rng& rng) const {
    // Rejection with proposal f1 and envelope 2 f1 (the perturbation factor
    // lies in [0, 2] everywhere by the truncation construction).
    for (;;) {
        double z = f1_.sample(rng);
        double f = f1_.density(z);
        if (f <= 0.0) continue;
        if (2.0 * f * rng.uniform() < std_density(z)) return theta_ + sigma_ * z;
    }
}

std::vector<double> EdgeworthModel::sample(std::size_t n, Rng& rng) const {
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(sample(rng));
    return out;
}

std::string EdgeworthModel::to_json() const {
    nlohmann::json j{{"family", f1_.name()},
                     {"theta", theta_},
                     {"sigma", sigma_},
                     {"xi", xi_}};
    return j.dump();
}

EdgeworthModel EdgeworthModel::from_json(const std::string& text) {
    try {
        auto j = nlohmann::json::parse(text);
        return EdgeworthModel(j.at("theta").get<double>(),
                              j.at("sigma").get<double>(),
                              j.at("xi").get<double>(),
                              ReferenceDensity::parse(j.at("family").get<std::string>()));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad model JSON: ") + e.what());
    }
}

std::string EdgeworthModel::label() const {
    std::ostringstream out;
    out << "edgeworth:" << f1_.name() << ":" << xi_;
    return out.str();
}

}  // namespace symtest
