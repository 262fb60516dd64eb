// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Heavy Monte Carlo criteria run on all hardware threads with
// per-replication derived seeds, so results do not depend on thread count.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "symtest/edgeworth.hpp"
#include "symtest/efficiency.hpp"
#include "symtest/errors.hpp"
#include "symtest/estimators.hpp"
#include "symtest/math/quadrature.hpp"
#include "symtest/monte_carlo.hpp"
#include "symtest/reference_density.hpp"
#include "symtest/statistics.hpp"

using namespace symtest;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& what) {
    if (!ok) ++failures;
    std::printf("%s criterion %2d: %s\n", ok ? "PASS" : "FAIL", criterion,
                what.c_str());
    std::fflush(stdout);
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (;;) {
            std::size_t r = next.fetch_add(1);
            if (r >= count) break;
            fn(r);
        }
    };
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
}

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) /
           static_cast<double>(v.size());
}

double var_of(const std::vector<double>& v) {
    double m = mean_of(v), s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size() - 1);
}

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, format, a, b, c);
    return buf;
}

// --- 1: standardization constants and Gaussian information ------------------

void criterion_1() {
    auto g = ReferenceDensity::gaussian();
    auto l = ReferenceDensity::laplace();
    double a = g.std_constant();
    double d = l.std_constant();
    bool ok = std::abs(a - 0.4549) < 5e-5 && std::abs(d - 1.0 / std::log(2.0)) < 1e-12;
    auto info = g.information();
    auto quad = g.information_by_quadrature();
    double closed[5] = {a, 3.0, 15.0 / a, 3.0 / a, 6.0 / a};
    double have[5] = {info.i_loc, info.j_scale, info.k_skew, info.kappa, info.gamma};
    double qhave[5] = {quad.i_loc, quad.j_scale, quad.k_skew, quad.kappa, quad.gamma};
    for (int i = 0; i < 5; ++i) {
        ok = ok && std::abs(have[i] - closed[i]) / closed[i] < 1e-8;
        ok = ok && std::abs(qhave[i] - closed[i]) / closed[i] < 1e-8;
    }
    report(1, ok, "standardization constants and Gaussian information " +
                      fmt("(a=%.6f, d=%.12f)", a, d));
}

// --- 2: skewed-density normalization ----------------------------------------

void criterion_2() {
    bool ok = true;
    double worst = 0.0;
    for (const auto& f1 : {ReferenceDensity::gaussian(), ReferenceDensity::laplace(),
                           ReferenceDensity::logistic()}) {
        for (double xi : {-0.15, -0.10, -0.05, 0.05, 0.10, 0.15}) {
            EdgeworthModel m(0.0, 1.0, xi, f1);
            double mass = math::integrate_line(
                [&](double x) { return m.density(x); }, 1e-9, 80.0);
            worst = std::max(worst, std::abs(mass - 1.0));
        }
    }
    ok = worst < 1e-6;
    report(2, ok, "skewed densities integrate to one " +
                      fmt("(worst |mass-1| = %.2e)", worst));
}

// --- 3: truncation point scaling --------------------------------------------

void criterion_3() {
    auto g = ReferenceDensity::gaussian();
    double lo = 1e300, hi = 0.0;
    for (double xi : {1e-2, 1e-3, 1e-4}) {
        double v = solve_z_star(g, xi) * std::cbrt(xi);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    bool ok = hi / lo < 1.10;
    report(3, ok, "truncation point scales like |xi|^(-1/3) " +
                      fmt("(spread %.3f)", hi / lo));
}

// --- 4: null law of every statistic -----------------------------------------

void criterion_4() {
    const std::size_t N = 10000, n = 500;
    auto gauss = ReferenceDensity::gaussian();
    const int k_stats = 8;
    const char* names[k_stats] = {"s1",    "s2",     "t_f1",  "t_hat",
                                  "t_circ", "t_dagger", "t_laplace", "vdw"};
    std::vector<std::vector<double>> vals(k_stats, std::vector<double>(N));
    parallel_for(N, [&](std::size_t r) {
        Rng rng = Rng::derive(401, 0, r);
        std::vector<double> xs(n);
        for (auto& x : xs) x = gauss.sample(rng);
        vals[0][r] = s1(xs, 0.0).statistic;
        vals[1][r] = s2_b1(xs).statistic;
        vals[2][r] = t_f1(xs, 0.0, 1.0, gauss).statistic;
        vals[3][r] = t_hat_f1(xs, 0.0, 1.0, gauss).statistic;
        vals[4][r] = t_circ_f1(xs, 0.0, 1.0, gauss).statistic;
        vals[5][r] = t_dagger(xs, 0.0).statistic;
        vals[6][r] = t_laplace(xs, 0.0, 1.0).statistic;
        vals[7][r] = vdw_signed_rank(xs, 0.0).statistic;
    });
    bool ok = true;
    std::string detail;
    for (int k = 0; k < k_stats; ++k) {
        double m = mean_of(vals[k]), v = var_of(vals[k]);
        bool this_ok = m > -0.05 && m < 0.05 && v > 0.9 && v < 1.1;
        if (!this_ok)
            detail += std::string(" ") + names[k] + fmt(": mean %.3f var %.3f;", m, v);
        ok = ok && this_ok;
    }
    report(4, ok, "null mean and variance of every statistic" +
                      (ok ? std::string(" (all within bands)") : detail));
}

// --- 5: pseudo-Gaussian statistic about the mean equals studentized skewness -

void criterion_5() {
    const std::size_t n = 2000;
    auto gauss = ReferenceDensity::gaussian();
    double total = 0.0;
    for (std::size_t r = 0; r < 100; ++r) {
        Rng rng = Rng::derive(501, 0, r);
        std::vector<double> xs(n);
        for (auto& x : xs) x = gauss.sample(rng);
        double xbar = mean_of(xs);
        total += std::abs(t_dagger(xs, xbar).statistic - s2_b1(xs).statistic);
    }
    double avg = total / 100.0;
    bool ok = avg < 0.05;
    report(5, ok, "t_dagger about the mean matches studentized skewness " +
                      fmt("(mean |diff| = %.4f)", avg));
}

// --- 6: local-shift agreement -----------------------------------------------

void criterion_6() {
    const std::size_t N = 10000, n = 1000;
    double tau = 1.0, xi = tau / std::sqrt(static_cast<double>(n));
    auto gauss = ReferenceDensity::gaussian();
    auto lap = ReferenceDensity::laplace();
    EdgeworthModel mg(0.0, 1.0, xi, gauss);
    EdgeworthModel ml(0.0, 1.0, xi, lap);

    std::vector<std::vector<double>> vals(3, std::vector<double>(N));
    parallel_for(N, [&](std::size_t r) {
        Rng rg = Rng::derive(601, 0, r);
        auto xs = mg.sample(n, rg);
        vals[0][r] = t_dagger(xs, 0.0).statistic;
        vals[1][r] = t_f1(xs, 0.0, 1.0, gauss).statistic;
        Rng rl = Rng::derive(601, 1, r);
        auto ys = ml.sample(n, rl);
        vals[2][r] = t_laplace(ys, 0.0, 1.0).statistic;
    });

    double targets[3] = {shift_t_circ(gauss, gauss, tau), shift_t_f1(gauss, tau),
                         shift_laplace(lap, tau)};
    const char* names[3] = {"t_dagger", "t_f1", "t_laplace"};

    // Diagnostic: the exact finite-n expectation of the specified-parameter
    // statistic, E[sum psi(Z_i)] / sqrt(n gamma), by quadrature over the
    // actual skewed density. The tail truncation and mass doubling shrink
    // the mean below the asymptotic shift, and the effect decays only like
    // the truncation point (~ xi^{-1/3} for the Gaussian family), so at
    // n = 1000 the asymptotic value is not yet attained. Agreement of the
    // Monte Carlo mean with this exact value validates the implementation.
    auto info_g = gauss.information();
    auto model_mean = [&](const EdgeworthModel& m, auto&& psi) {
        return math::integrate_line(
            [&](double z) { return psi(z) * m.density(z); }, 1e-10, 60.0);
    };
    double exact_f1 =
        std::sqrt(static_cast<double>(n)) *
        model_mean(mg, [&](double z) {
            return gauss.score(z) * (z * z - info_g.kappa);
        }) /
        std::sqrt(info_g.gamma);
    std::printf("  [criterion 6 diagnostic] t_f1 exact finite-n mean %.4f "
                "(asymptotic %.4f)\n", exact_f1, targets[1]);

    bool ok = true;
    std::string detail;
    for (int k = 0; k < 3; ++k) {
        double m = mean_of(vals[k]);
        double se = std::sqrt(var_of(vals[k]) / static_cast<double>(N));
        double gap = std::abs(m - targets[k]);
        bool this_ok = gap <= 3.0 * se;
        detail += std::string(" ") + names[k] +
                  fmt(": mean %.3f target %.3f (3se %.3f);", m, targets[k], 3.0 * se);
        ok = ok && this_ok;
    }
    report(6, ok, "Monte Carlo means match analytic local shifts" + detail);
}

// --- 7: classical ARE values ------------------------------------------------

void criterion_7() {
    auto g = ReferenceDensity::gaussian();
    auto l = ReferenceDensity::laplace();
    double dagger_g = shift_t_circ(g, g, 1.0);
    double v1 = are(dagger_g, shift_s1(g, 1.0));
    double v2 = are(dagger_g, shift_laplace(g, 1.0));
    double v3 = are(shift_t_circ(g, l, 1.0), shift_laplace(l, 1.0));
    bool ok = std::abs(v1 - 2.5) < 1e-6 && std::abs(v2 - 1.76) < 0.01 &&
              std::abs(v3 - 0.70) < 0.01;
    report(7, ok, "classical efficiency ratios " +
                      fmt("(%.6f, %.4f, %.4f)", v1, v2, v3));
}

// --- 8: skewed-family power grid --------------------------------------------

void criterion_8() {
    auto spec = table1_spec(2000, 100);
    auto rep = run(spec);
    // Reference frequencies, rows in test order, columns in scenario order
    // (Gaussian xi = 0, .1, .2 then Laplace xi = 0, .1, .2).
    const double table[7][6] = {
        {0.0372, 0.1136, 0.0996, 0.0306, 0.6938, 0.8722},  // s1(theta)
        {0.0434, 0.7276, 0.9958, 0.0252, 0.4596, 0.6774},  // tdagger(theta)
        {0.0416, 0.6986, 0.9746, 0.0444, 0.7458, 0.8930},  // b1
        {0.0520, 0.5424, 0.9474, 0.0406, 0.9090, 0.9998},  // tlaplace(theta)
        {0.0280, 0.4440, 0.8360, 0.0284, 0.8838, 0.9960},  // tlaplace(median)
        {0.0492, 0.7336, 0.9954, 0.0378, 0.8516, 0.9894},  // tlogistic(theta)
        {0.0362, 0.6626, 0.9716, 0.0384, 0.8516, 0.9880},  // tlogistic(mean)
    };
    bool ok = true;
    double worst_excess = -1.0;
    std::string worst;
    for (std::size_t ti = 0; ti < 7; ++ti)
        for (std::size_t si = 0; si < 6; ++si) {
            double p = table[ti][si];
            double tol = std::max(0.03, 4.0 * std::sqrt(p * (1.0 - p) / 2000.0));
            double got = rep.cell(si, ti).frequency();
            double excess = std::abs(got - p) - tol;
            if (excess > worst_excess) {
                worst_excess = excess;
                worst = rep.test_labels[ti] + " @ " + rep.scenario_labels[si] +
                        fmt(": %.4f vs %.4f (tol %.4f)", got, p, tol);
            }
            ok = ok && excess <= 0.0;
        }
    report(8, ok, "power grid matches reference frequencies; extreme cell " + worst);
}

// --- 9: skew-normal / skew-t qualitative behaviour --------------------------

void criterion_9() {
    SimulationSpec spec = table2_spec(2000, 100);
    spec.master_seed = 9001;
    std::vector<Scenario> keep;
    for (auto& sc : spec.scenarios)
        if (sc.label == "skewnormal:3" || sc.label == "skewt:2:0" ||
            sc.label == "skewt:4:0")
            keep.push_back(sc);
    spec.scenarios = keep;
    std::vector<TestConfig> tests;
    for (auto& t : spec.tests)
        if (t.label == "b1" || t.label == "tlogistic(theta)") tests.push_back(t);
    spec.tests = tests;
    auto rep = run(spec);
    auto freq = [&](const std::string& sc, const std::string& t) {
        std::size_t si = std::find(rep.scenario_labels.begin(),
                                   rep.scenario_labels.end(), sc) -
                         rep.scenario_labels.begin();
        std::size_t ti = std::find(rep.test_labels.begin(), rep.test_labels.end(),
                                   t) -
                         rep.test_labels.begin();
        return rep.cell(si, ti).frequency();
    };
    double b1_t2 = freq("skewt:2:0", "b1");
    double b1_t4 = freq("skewt:4:0", "b1");
    double tlog_sn3 = freq("skewnormal:3", "tlogistic(theta)");
    double b1_sn3 = freq("skewnormal:3", "b1");
    bool ok = b1_t2 < 0.03 && b1_t4 < 0.03 &&
              std::abs(tlog_sn3 - 0.7010) < 0.05 && tlog_sn3 > b1_sn3;
    report(9, ok, "heavy-tail collapse and skew-normal ordering " +
                      fmt("(b1 t2/t4: %.4f/%.4f, tlog sn3: %.4f)", b1_t2, b1_t4,
                          tlog_sn3) +
                      fmt(" vs b1 sn3: %.4f", b1_sn3));
}

// --- 10: asymptotic linearity of the skewness score sum ----------------------

void criterion_10() {
    const std::size_t N = 2000, n = 5000;
    auto gauss = ReferenceDensity::gaussian();
    double eps = 1.0 / std::sqrt(static_cast<double>(n));
    auto x = cross_information(gauss, gauss);
    double kappa_f = gauss.information().kappa;
    double target_theta = -(x.j_gf - kappa_f * x.i_gf);  // 0 by orthogonality
    std::vector<double> dtheta(N), dsigma(N);
    parallel_for(N, [&](std::size_t r) {
        Rng rng = Rng::derive(1001, 0, r);
        std::vector<double> xs(n);
        for (auto& v : xs) v = gauss.sample(rng);
        double base = central_sequence(xs, 0.0, 1.0, gauss).delta_skew;
        dtheta[r] = central_sequence(xs, eps, 1.0, gauss).delta_skew - base;
        dsigma[r] = central_sequence(xs, 0.0, 1.0 + eps, gauss).delta_skew - base;
    });
    double mt = mean_of(dtheta), st = 3.0 * std::sqrt(var_of(dtheta) / N);
    double ms = mean_of(dsigma), ss = 3.0 * std::sqrt(var_of(dsigma) / N);
    bool ok = std::abs(mt - target_theta) <= st && std::abs(ms) <= ss;
    report(10, ok, "score-sum linearity under nuisance perturbation " +
                       fmt("(theta: %.4f target %.4f,", mt, target_theta) +
                       fmt(" 3se %.4f;", st) + fmt(" sigma: %.4f, 3se %.4f)", ms, ss));
}

// --- 11: determinism across worker counts -----------------------------------

void criterion_11() {
    auto make = [&](int workers) {
        auto spec = table1_spec(200, 100);
        spec.master_seed = 42;
        spec.workers = workers;
        std::ostringstream out;
        write_csv(run(spec), out);
        return out.str();
    };
    std::string a = make(1), b = make(8);
    bool ok = !a.empty() && a == b;
    report(11, ok, "simulation CSV is byte-identical for 1 and 8 workers");
}

// --- 12: signed-rank statistic versus exhaustive sign enumeration ------------

void criterion_12() {
    const std::size_t n = 10;
    std::vector<double> mags(n);
    for (std::size_t i = 0; i < n; ++i) mags[i] = static_cast<double>(i + 1);
    std::vector<double> exact;
    exact.reserve(1u << n);
    std::vector<double> xs(n);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        for (std::size_t i = 0; i < n; ++i)
            xs[i] = (mask >> i & 1u) ? mags[i] : -mags[i];
        exact.push_back(vdw_signed_rank(xs, 0.0).statistic);
    }
    std::sort(exact.begin(), exact.end());

    const std::size_t draws = 100000;
    std::vector<double> sim(draws);
    parallel_for(draws, [&](std::size_t r) {
        Rng rng = Rng::derive(1201, 0, r);
        std::vector<double> ys(n);
        for (std::size_t i = 0; i < n; ++i)
            ys[i] = rng.uniform() < 0.5 ? mags[i] : -mags[i];
        sim[r] = vdw_signed_rank(ys, 0.0).statistic;
    });
    std::sort(sim.begin(), sim.end());

    // Both laws share the same atom set, so the KS distance is attained at
    // an atom of the exact law.
    double ks = 0.0;
    for (std::size_t i = 0; i < exact.size(); ++i) {
        double v = exact[i];
        double fe = static_cast<double>(
                        std::upper_bound(exact.begin(), exact.end(), v) -
                        exact.begin()) /
                    static_cast<double>(exact.size());
        double fs = static_cast<double>(
                        std::upper_bound(sim.begin(), sim.end(), v) -
                        sim.begin()) /
                    static_cast<double>(draws);
        ks = std::max(ks, std::abs(fe - fs));
    }
    bool ok = ks < 0.02;
    report(12, ok, "signed-rank null law matches exhaustive enumeration " +
                       fmt("(KS = %.4f)", ks));
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    if (failures > 0) std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
