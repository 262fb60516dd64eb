#pragma once

#include <cmath>
#include <optional>

namespace symtest::math {

// Bisection on a bracketing interval [lo, hi] with f(lo), f(hi) of opposite
// sign. Returns the midpoint after convergence to `rel_tol` or 200 iterations.
template <typename F>
double bisect(F&& f, double lo, double hi, double rel_tol = 1e-14) {
    double flo = f(lo);
    if (flo == 0.0) return lo;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (hi - lo <= rel_tol * (std::abs(lo) + std::abs(hi))) break;
    }
    return 0.5 * (lo + hi);
}

// Expands [lo, hi] to the right until f changes sign; returns nullopt if no
// sign change is found before `max_hi`.
template <typename F>
std::optional<double> find_root_expanding(F&& f, double lo, double hi,
                                          double max_hi, double rel_tol = 1e-14) {
    double flo = f(lo);
    double fhi = f(hi);
    while ((fhi < 0.0) == (flo < 0.0)) {
        double w = hi - lo;
        hi += 2.0 * w;
        if (hi > max_hi) return std::nullopt;
        fhi = f(hi);
    }
    return bisect(f, lo, hi, rel_tol);
}

}  // namespace symtest::math
