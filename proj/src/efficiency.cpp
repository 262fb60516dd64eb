#include "symtest/efficiency.hpp"

#include <cmath>
#include <sstream>

#include "symtest/errors.hpp"

namespace symtest {

namespace {

// Polynomial degree in z of each integrand against g's tail z^{-(nu+1)};
// convergence needs degree < nu. Exponential-tail g admits everything.
void check_admissible(const ReferenceDensity& f1, const ReferenceDensity& g1) {
    if (!g1.polynomial_tails()) return;
    double nu = g1.tail_exponent();
    double df = f1.score_degree();
    double dg = g1.score_degree();
    struct Item {
        const char* name;
        double degree;
    } items[] = {
        {"I_g(f1,g1)", df + dg},     {"J_g(f1,g1)", df + dg + 2.0},
        {"K_g(f1,g1)", df + dg + 4.0}, {"I_g(f1)", 2.0 * df},
        {"J_g(f1)", 2.0 * df + 2.0},   {"K_g(f1)", 2.0 * df + 4.0},
    };
    for (const auto& it : items) {
        if (it.degree >= nu) {
            std::ostringstream msg;
            msg << it.name << " diverges for g1 = " << g1.name()
                << ": integrand grows like z^" << it.degree
                << " against a tail of order " << nu
                << " (needs a finite moment of order " << it.degree << ")";
            throw DivergentIntegral(msg.str());
        }
    }
}

}  // namespace

CrossInformation cross_information(const ReferenceDensity& f1,
                                   const ReferenceDensity& g1, double g_scale) {
    check_admissible(f1, g1);
    const double c = g_scale;
    if (!(c > 0.0)) throw Error("cross_information: g_scale must be positive");
    // Expectations under g_c(z) = c g1(c z) via the substitution u = c z.
    auto ex = [&](auto h) { return g1.expect([&](double u) { return h(u / c); }, 1e-11); };
    auto phi_f = [&](double z) { return f1.score(z); };
    auto phi_g = [&](double z) { return c * g1.score(c * z); };
    CrossInformation r{};
    r.i_fg = ex([&](double z) { return phi_f(z) * phi_g(z); });
    r.j_fg = ex([&](double z) { return z * z * phi_f(z) * phi_g(z); });
    r.k_fg = ex([&](double z) { return z * z * z * z * phi_f(z) * phi_g(z); });
    r.i_gf = ex([&](double z) { return phi_f(z) * phi_f(z); });
    r.j_gf = ex([&](double z) { return z * z * phi_f(z) * phi_f(z); });
    r.k_gf = ex([&](double z) { return z * z * z * z * phi_f(z) * phi_f(z); });
    if (r.i_fg == 0.0) throw ZeroDenominator("I_g(f1,g1) vanishes");
    r.kappa_fg = r.j_fg / r.i_fg;
    return r;
}

double shift_t_f1(const ReferenceDensity& f1, double tau) {
    return tau * std::sqrt(f1.information().gamma);
}

double shift_t_hat(const ReferenceDensity& f1, const ReferenceDensity& g1,
                   double tau, double g_scale) {
    auto x = cross_information(f1, g1, g_scale);
    double kf = f1.information().kappa;
    double kg = g1.information().kappa / (g_scale * g_scale);
    double num = x.k_fg - x.j_fg * (kf + kg) + x.i_fg * kf * kg;
    double den = x.k_gf - 2.0 * x.j_gf * kf + x.i_gf * kf * kf;
    if (!(den > 0.0)) throw NonPositiveVariance("hat-statistic variance non-positive");
    return tau * num / std::sqrt(den);
}

double shift_t_circ(const ReferenceDensity& f1, const ReferenceDensity& g1,
                    double tau, double g_scale) {
    auto x = cross_information(f1, g1, g_scale);
    double kc = x.kappa_fg;
    double num = x.k_fg - x.j_fg * kc;
    double den = x.k_gf - 2.0 * x.j_gf * kc + x.i_gf * kc * kc;
    if (!(den > 0.0)) throw NonPositiveVariance("circ-statistic variance non-positive");
    return tau * num / std::sqrt(den);
}

double shift_s1(const ReferenceDensity& g1, double tau) {
    double mu2 = g1.moment(2);
    double mu4 = g1.moment(4);
    double mu6 = g1.moment(6);
    double kg = g1.information().kappa;
    return tau * (5.0 * mu4 - 3.0 * kg * mu2) / std::sqrt(mu6);
}

double shift_laplace(const ReferenceDensity& g1, double tau) {
    double a1 = g1.moment(1, /*absolute=*/true);
    double a3 = g1.moment(3, /*absolute=*/true);
    double mu2 = g1.moment(2);
    double mu4 = g1.moment(4);
    double g0 = g1.density(0.0);
    double r = a1 / g0;  // the sign-test centering constant in the limit
    double num = 4.0 * a3 - 2.0 * a1 * r;
    double den = mu4 - 2.0 * mu2 * r + r * r;
    if (!(den > 0.0)) throw NonPositiveVariance("sign-test variance non-positive");
    return tau * num / std::sqrt(den);
}

double are(double shift_a, double shift_b) {
    if (shift_b == 0.0) throw ZeroShift("reference shift is zero");
    double r = shift_a / shift_b;
    return r * r;
}

}  // namespace symtest
