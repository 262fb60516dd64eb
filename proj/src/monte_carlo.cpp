#include "symtest/monte_carlo.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "symtest/errors.hpp"
#include "symtest/estimators.hpp"
#include "symtest/statistics.hpp"

namespace symtest {

double Cell::frequency() const {
    return completed == 0 ? 0.0
                          : static_cast<double>(rejections) /
                                static_cast<double>(completed);
}

double Cell::mc_stderr() const {
    if (completed == 0) return 0.0;
    double p = frequency();
    return std::sqrt(p * (1.0 - p) / static_cast<double>(completed));
}

namespace {

TestOutcome evaluate(const TestConfig& cfg, std::span<const double> xs,
                     double theta0) {
    std::size_t n = xs.size();
    double theta = theta0;
    bool estimated = false;
    if (cfg.theta_mode == ThetaMode::Median) {
        theta = median(xs);
        estimated = true;
    } else if (cfg.theta_mode == ThetaMode::Mean) {
        theta = std::accumulate(xs.begin(), xs.end(), 0.0) /
                static_cast<double>(n);
        estimated = true;
    }
    switch (cfg.kind) {
        case TestKind::S1:
            return s1(xs, theta);
        case TestKind::S2B1:
            return s2_b1(xs);
        case TestKind::TDagger:
            // Accepts any root-n estimate without discretization.
            return t_dagger(xs, theta);
        case TestKind::VdW:
            return vdw_signed_rank(xs, theta);
        default:
            break;
    }
    // The score statistics carry discretized nuisance estimates.
    if (estimated) theta = discretize(theta, n);
    double sigma = discretize(mad_scale(xs, theta), n);
    switch (cfg.kind) {
        case TestKind::TLaplace:
            return t_laplace(xs, theta, sigma);
        case TestKind::TF1:
            return t_f1(xs, theta, sigma, *cfg.f1);
        case TestKind::THat:
            return t_hat_f1(xs, theta, sigma, *cfg.f1);
        case TestKind::TCirc:
            return t_circ_f1(xs, theta, sigma, *cfg.f1);
        default:
            throw Error("unhandled test kind");
    }
}

std::vector<double> generate(const Scenario& sc, std::size_t n, Rng& rng) {
    return std::visit([&](const auto& g) { return g.sample(n, rng); },
                      sc.generator);
}

}  // namespace

SimulationReport run(const SimulationSpec& spec) {
    if (spec.replications < 1 || spec.scenarios.empty() || spec.tests.empty())
        throw Error("simulation spec is empty");
    auto t0 = std::chrono::steady_clock::now();
    std::size_t ns = spec.scenarios.size(), nt = spec.tests.size();
    std::vector<std::vector<Cell>> cells(ns, std::vector<Cell>(nt));
    std::mutex merge_mutex;

    unsigned workers = spec.workers > 0
                           ? static_cast<unsigned>(spec.workers)
                           : std::max(1u, std::thread::hardware_concurrency());
    constexpr std::size_t kChunk = 32;
    std::size_t chunks_per_scenario = (spec.replications + kChunk - 1) / kChunk;
    std::atomic<std::size_t> next{0};
    std::size_t total_chunks = ns * chunks_per_scenario;

    auto work = [&] {
        std::vector<std::vector<Cell>> local(ns, std::vector<Cell>(nt));
        for (;;) {
            std::size_t chunk = next.fetch_add(1);
            if (chunk >= total_chunks) break;
            std::size_t si = chunk / chunks_per_scenario;
            std::size_t r0 = (chunk % chunks_per_scenario) * kChunk;
            std::size_t r1 = std::min(spec.replications, r0 + kChunk);
            const Scenario& sc = spec.scenarios[si];
            for (std::size_t r = r0; r < r1; ++r) {
                Rng rng = Rng::derive(spec.master_seed, si, r);
                auto xs = generate(sc, spec.n, rng);
                for (std::size_t ti = 0; ti < nt; ++ti) {
                    Cell& cell = local[si][ti];
                    try {
                        auto outcome = evaluate(spec.tests[ti], xs, sc.theta);
                        double p = spec.tests[ti].two_sided ? outcome.p_two_sided
                                                            : outcome.p_one_sided;
                        cell.completed += 1;
                        if (p < spec.alpha) cell.rejections += 1;
                    } catch (const Error&) {
                        cell.skipped += 1;
                    }
                }
            }
        }
        std::lock_guard<std::mutex> lock(merge_mutex);
        for (std::size_t si = 0; si < ns; ++si)
            for (std::size_t ti = 0; ti < nt; ++ti) {
                cells[si][ti].rejections += local[si][ti].rejections;
                cells[si][ti].completed += local[si][ti].completed;
                cells[si][ti].skipped += local[si][ti].skipped;
            }
    };

    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();

    SimulationReport report;
    for (const auto& sc : spec.scenarios) report.scenario_labels.push_back(sc.label);
    for (const auto& t : spec.tests) report.test_labels.push_back(t.label);
    report.n = spec.n;
    report.replications = spec.replications;
    report.alpha = spec.alpha;
    report.master_seed = spec.master_seed;
    report.cells = std::move(cells);
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

SimulationSpec table1_spec(std::size_t replications, std::size_t n) {
    SimulationSpec spec;
    spec.n = n;
    spec.replications = replications;
    for (auto family : {ReferenceDensity::gaussian(), ReferenceDensity::laplace()})
        for (double xi : {0.0, 0.1, 0.2}) {
            EdgeworthModel model(0.0, 1.0, xi, family);
            spec.scenarios.push_back({model.label(), model, 0.0});
        }
    // Two-sided tests: the reference frequencies for this grid are only
    // reproducible with |T| > z_{alpha/2} rejection rules (one-sided rules
    // give uniformly higher power than the reference values).
    auto logistic = ReferenceDensity::logistic();
    spec.tests = {
        {"s1(theta)", TestKind::S1, ThetaMode::Specified, std::nullopt, true},
        {"tdagger(theta)", TestKind::TDagger, ThetaMode::Specified, std::nullopt, true},
        {"b1", TestKind::S2B1, ThetaMode::Mean, std::nullopt, true},
        {"tlaplace(theta)", TestKind::TLaplace, ThetaMode::Specified, std::nullopt, true},
        {"tlaplace(median)", TestKind::TLaplace, ThetaMode::Median, std::nullopt, true},
        {"tlogistic(theta)", TestKind::TCirc, ThetaMode::Specified, logistic, true},
        {"tlogistic(mean)", TestKind::TCirc, ThetaMode::Mean, logistic, true},
    };
    return spec;
}

SimulationSpec table2_spec(std::size_t replications, std::size_t n) {
    SimulationSpec spec;
    spec.n = n;
    spec.replications = replications;
    // The "specified" location for an asymmetric generator is its true mean:
    // treating 0 (the slant parameter's origin) as the known location turns
    // every theta-specified test into a location test and wildly inflates
    // its power relative to the reference frequencies.
    for (double lambda : {0.0, 1.0, 2.0, 3.0}) {
        auto alt = SkewAlternative::skew_normal(lambda);
        spec.scenarios.push_back({alt.name(), alt, alt.mean()});
    }
    for (double nu : {2.0, 4.0, 8.0})
        for (double lambda : {0.0, 2.0, 4.0, 6.0}) {
            auto alt = SkewAlternative::skew_t(nu, lambda);
            spec.scenarios.push_back({alt.name(), alt, alt.mean()});
        }
    auto logistic = ReferenceDensity::logistic();
    spec.tests = {
        {"s1(theta)", TestKind::S1, ThetaMode::Specified, std::nullopt, true},
        {"tdagger(theta)", TestKind::TDagger, ThetaMode::Specified, std::nullopt, true},
        {"b1", TestKind::S2B1, ThetaMode::Mean, std::nullopt, true},
        {"tlaplace(theta)", TestKind::TLaplace, ThetaMode::Specified, std::nullopt, true},
        {"tlaplace(median)", TestKind::TLaplace, ThetaMode::Median, std::nullopt, true},
        {"tlogistic(theta)", TestKind::TCirc, ThetaMode::Specified, logistic, true},
        {"tlogistic(mean)", TestKind::TCirc, ThetaMode::Mean, logistic, true},
    };
    return spec;
}

void write_csv(const SimulationReport& report, std::ostream& out) {
    out << "scenario,test,n,N,rejections,frequency,stderr\n";
    out.precision(17);
    for (std::size_t si = 0; si < report.scenario_labels.size(); ++si)
        for (std::size_t ti = 0; ti < report.test_labels.size(); ++ti) {
            const Cell& c = report.cells[si][ti];
            out << report.scenario_labels[si] << ',' << report.test_labels[ti]
                << ',' << report.n << ',' << c.completed << ',' << c.rejections
                << ',' << c.frequency() << ',' << c.mc_stderr() << '\n';
        }
}

std::string report_json(const SimulationReport& report) {
    nlohmann::json cells = nlohmann::json::array();
    for (std::size_t si = 0; si < report.scenario_labels.size(); ++si)
        for (std::size_t ti = 0; ti < report.test_labels.size(); ++ti) {
            const Cell& c = report.cells[si][ti];
            cells.push_back({{"scenario", report.scenario_labels[si]},
                             {"test", report.test_labels[ti]},
                             {"rejections", c.rejections},
                             {"N", c.completed},
                             {"skipped", c.skipped},
                             {"frequency", c.frequency()},
                             {"stderr", c.mc_stderr()}});
        }
    nlohmann::json j{{"n", report.n},
                     {"replications", report.replications},
                     {"alpha", report.alpha},
                     {"master_seed", report.master_seed},
                     {"wall_seconds", report.wall_seconds},
                     {"cells", cells}};
    return j.dump(2);
}

}  // namespace symtest
