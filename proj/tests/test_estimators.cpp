#include <cmath>
#include <vector>

#include <doctest.h>

#include "symtest/errors.hpp"
#include "symtest/estimators.hpp"
#include "symtest/reference_density.hpp"
#include "symtest/rng.hpp"

using namespace symtest;

TEST_CASE("median conventions") {
    std::vector<double> odd{-2, -1, 0, 1, 2};
    CHECK(median(odd) == 0.0);
    std::vector<double> even{1, 2, 3, 4};
    CHECK(median(even) == 2.5);
    std::vector<double> unsorted{4, 1, 3, 2};
    CHECK(median(unsorted) == 2.5);
}

TEST_CASE("mad scale") {
    std::vector<double> xs{-2, -1, 0, 1, 2};
    CHECK(mad_scale(xs, 0.0) == 1.0);
    std::vector<double> flat{3.0, 3.0, 3.0};
    CHECK_THROWS_AS(mad_scale(flat, 3.0), DegenerateSample);
}

TEST_CASE("median and MAD are consistent under the standardized model") {
    auto g = ReferenceDensity::gaussian();
    Rng rng(5);
    std::vector<double> xs;
    for (int i = 0; i < 100000; ++i) xs.push_back(g.sample(rng));
    CHECK(std::abs(median(xs)) < 0.02);
    CHECK(std::abs(mad_scale(xs, 0.0) - 1.0) < 0.02);
}

TEST_CASE("location-scale equivariance of median and MAD") {
    Rng rng(9);
    std::vector<double> xs, ys;
    for (int i = 0; i < 501; ++i) xs.push_back(rng.normal());
    for (double x : xs) ys.push_back(2.5 * x - 7.0);
    CHECK(median(ys) == doctest::Approx(2.5 * median(xs) - 7.0).epsilon(1e-12));
    CHECK(mad_scale(ys, 2.5 * 0.1 - 7.0) ==
          doctest::Approx(2.5 * mad_scale(xs, 0.1)).epsilon(1e-12));
}

TEST_CASE("discretization lattice") {
    CHECK(discretize(0.0, 100) == 0.0);
    CHECK(discretize(0.123, 100, 1.0) == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(discretize(0.123, 100, 10.0) == doctest::Approx(0.13).epsilon(1e-14));
    CHECK(discretize(-0.123, 100, 10.0) == doctest::Approx(-0.13).epsilon(1e-14));
    // Never moves by more than one lattice step, idempotent on the lattice.
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        double lam = 4.0 * rng.uniform() - 2.0;
        std::size_t n = 50 + static_cast<std::size_t>(rng.uniform() * 1000);
        double c = 0.5 + 10.0 * rng.uniform();
        double d = discretize(lam, n, c);
        CHECK(std::abs(d - lam) <=
              1.0 / (c * std::sqrt(static_cast<double>(n))) + 1e-12);
        CHECK(discretize(d, n, c) == doctest::Approx(d).epsilon(1e-12));
        CHECK(d * lam >= 0.0);
    }
}

TEST_CASE("empirical moments") {
    std::vector<double> pm{-1, 1};
    CHECK(empirical_moment(pm, 2, 0.0) == 1.0);
    std::vector<double> sym{-2, -1, 0, 1, 2};
    CHECK(empirical_moment(sym, 3, 0.0) == 0.0);
    std::vector<double> abc{1, 2, 3};
    CHECK(empirical_moment(abc, 3, 2.0) == 0.0);
    CHECK(empirical_moment(abc, 3, 0.0) == doctest::Approx(12.0));
    // Translation covariance.
    std::vector<double> shifted{11, 12, 13};
    CHECK(empirical_moment(shifted, 3, 10.0) ==
          doctest::Approx(empirical_moment(abc, 3, 0.0)).epsilon(1e-14));
    // Absolute moments.
    std::vector<double> signs{-2, 3};
    CHECK(empirical_moment(signs, 1, 0.0, true) == 2.5);
}

TEST_CASE("kde at zero recovers the density height") {
    auto g = ReferenceDensity::gaussian();
    Rng rng(17);
    std::vector<double> zs;
    for (int i = 0; i < 100000; ++i) zs.push_back(g.sample(rng));
    double target = g.density(0.0);
    CHECK(std::abs(kde_at_zero(zs) - target) / target < 0.05);

    auto l = ReferenceDensity::laplace();
    zs.clear();
    for (int i = 0; i < 100000; ++i) zs.push_back(l.sample(rng));
    double ltarget = l.density(0.0);
    CHECK(std::abs(kde_at_zero(zs) - ltarget) / ltarget < 0.10);

    std::vector<double> small(9, 0.0);
    CHECK_THROWS_AS(kde_at_zero(small), Error);
}

TEST_CASE("nuisance bundle") {
    Rng rng(21);
    std::vector<double> xs;
    for (int i = 0; i < 200; ++i) xs.push_back(rng.normal());
    auto est = estimate_nuisance(xs);
    CHECK(est.discretized);
    CHECK(est.c == 100.0);
    double step = 1.0 / (est.c * std::sqrt(200.0));
    CHECK(std::abs(est.theta_hat - median(xs)) <= step + 1e-12);
    CHECK(est.sigma_hat > 0.0);
    auto raw = estimate_nuisance(xs, false);
    CHECK(raw.theta_hat == median(xs));
}
