#pragma once

#include <cfloat>
#include <cmath>
#include <concepts>
#include <cstddef>

namespace symtest::math {

namespace detail {

// Gauss-Kronrod 7-15 nodes/weights on [-1, 1].
inline constexpr double gk_nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
inline constexpr double gk_wk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double gk_wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <typename F>
double gk15(F&& f, double a, double b, double* abserr) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * gk_nodes[i]);
        fv[14 - i] = f(c + h * gk_nodes[i]);
    }
    fv[7] = f(c);
    double resk = gk_wk[7] * fv[7];
    double resg = gk_wg[3] * fv[7];
    for (int i = 0; i < 7; ++i) {
        resk += gk_wk[i] * (fv[i] + fv[14 - i]);
        if (i % 2 == 1) resg += gk_wg[i / 2] * (fv[i] + fv[14 - i]);
    }
    if (abserr) *abserr = std::abs(h * (resk - resg));
    return h * resk;
}

template <typename F>
double adaptive(F&& f, double a, double b, double tol, int depth) {
    double err = 0.0;
    double v = gk15(f, a, b, &err);
    // The roundoff floor keeps the requested tolerance from chasing the
    // error estimate below what double precision can resolve.
    // Written so that a NaN error estimate stops the subdivision too.
    if (!(err > tol) || err <= 64.0 * DBL_EPSILON * std::abs(v) || depth >= 24)
        return v;
    double m = 0.5 * (a + b);
    return adaptive(f, a, m, 0.5 * tol, depth + 1) +
           adaptive(f, m, b, 0.5 * tol, depth + 1);
}

}  // namespace detail

// Adaptive Gauss-Kronrod integration over a finite interval.
template <typename F>
double integrate(F&& f, double a, double b, double abs_tol = 1e-10) {
    if (a == b) return 0.0;
    return detail::adaptive(f, a, b, abs_tol, 0);
}

// Integral over [a, +inf), a > 0, via the substitution z = 1/u. Handles both
// exponentially and polynomially decaying integrands.
template <typename F>
double integrate_right_tail(F&& f, double a, double abs_tol = 1e-10) {
    auto g = [&f](double u) {
        if (u <= 0.0) return 0.0;
        double z = 1.0 / u;
        double v = f(z) * z * z;
        return std::isfinite(v) ? v : 0.0;
    };
    return detail::adaptive(g, 0.0, 1.0 / a, abs_tol, 0);
}

// Integral over [0, +inf): finite part up to `cut` plus transformed tail.
template <typename F>
double integrate_halfline(F&& f, double abs_tol = 1e-10, double cut = 32.0) {
    return integrate(f, 0.0, cut, 0.5 * abs_tol) +
           integrate_right_tail(f, cut, 0.5 * abs_tol);
}

// Integral over the whole real line with a breakpoint at zero.
template <typename F>
double integrate_line(F&& f, double abs_tol = 1e-10, double cut = 32.0) {
    auto fneg = [&f](double z) { return f(-z); };
    return integrate_halfline(f, 0.5 * abs_tol, cut) +
           integrate_halfline(fneg, 0.5 * abs_tol, cut);
}

}  // namespace symtest::math
