#pragma once

#include "symtest/reference_density.hpp"

namespace symtest {

// Cross moments of the f1 score under a density g1 (optionally rescaled as
// g_c(z) = c g1(c z)): i/j/k_fg pair the f1 and g1 scores, i/j/k_gf square
// the f1 score. All integrals must converge for the pair to be admissible.
struct CrossInformation {
    double i_fg, j_fg, k_fg;
    double i_gf, j_gf, k_gf;
    double kappa_fg;  // j_fg / i_fg
};

// Throws DivergentIntegral naming the first moment condition that fails.
CrossInformation cross_information(const ReferenceDensity& f1,
                                   const ReferenceDensity& g1,
                                   double g_scale = 1.0);

// Asymptotic mean of each statistic under local alternatives with rate tau,
// data generated under g1. All are linear in tau.
double shift_t_f1(const ReferenceDensity& f1, double tau);
double shift_t_hat(const ReferenceDensity& f1, const ReferenceDensity& g1,
                   double tau, double g_scale = 1.0);
double shift_t_circ(const ReferenceDensity& f1, const ReferenceDensity& g1,
                    double tau, double g_scale = 1.0);
double shift_s1(const ReferenceDensity& g1, double tau);
double shift_laplace(const ReferenceDensity& g1, double tau);

// Pitman efficiency of test a relative to test b: squared shift ratio.
double are(double shift_a, double shift_b);

}  // namespace symtest
