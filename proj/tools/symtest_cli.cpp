#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "symtest/alternatives.hpp"
#include "symtest/edgeworth.hpp"
#include "symtest/efficiency.hpp"
#include "symtest/errors.hpp"
#include "symtest/estimators.hpp"
#include "symtest/monte_carlo.hpp"
#include "symtest/reference_density.hpp"
#include "symtest/statistics.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitCompute = 3;
constexpr std::uint64_t kDefaultSeed = 20080514;

std::vector<double> read_sample(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw symtest::ParseError("cannot open input file: " + path);
    std::vector<double> xs;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        // Trim whitespace; skip blank lines.
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        auto e = line.find_last_not_of(" \t\r");
        std::string tok = line.substr(b, e - b + 1);
        try {
            std::size_t used = 0;
            double v = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            xs.push_back(v);
        } catch (const std::exception&) {
            throw symtest::ParseError("line " + std::to_string(lineno) +
                                      ": not a number: '" + tok + "'");
        }
    }
    if (xs.size() < 10)
        throw symtest::ParseError("need at least 10 observations, got " +
                                  std::to_string(xs.size()));
    return xs;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, sep))
        if (!tok.empty()) out.push_back(tok);
    return out;
}

int run_test(const std::string& input, std::optional<double> theta_opt,
             const std::string& tests, bool one_sided) {
    auto xs = read_sample(input);
    bool specified = theta_opt.has_value();
    double theta_raw = specified ? *theta_opt : symtest::median(xs);
    double theta_disc =
        specified ? theta_raw : symtest::discretize(theta_raw, xs.size());
    double sigma = symtest::discretize(symtest::mad_scale(xs, theta_disc),
                                       xs.size());

    nlohmann::json results = nlohmann::json::array();
    for (const auto& tok : split(tests, ',')) {
        symtest::TestOutcome outcome;
        if (tok == "s1") {
            outcome = symtest::s1(xs, theta_raw);
        } else if (tok == "b1" || tok == "s2") {
            outcome = symtest::s2_b1(xs);
        } else if (tok == "tdagger") {
            outcome = symtest::t_dagger(xs, theta_raw);
        } else if (tok == "tlaplace") {
            outcome = symtest::t_laplace(xs, theta_disc, sigma);
        } else if (tok == "vdw") {
            outcome = symtest::vdw_signed_rank(xs, theta_raw);
        } else if (tok == "tlogistic") {
            outcome = symtest::t_circ_f1(xs, theta_disc, sigma,
                                         symtest::ReferenceDensity::logistic());
        } else if (tok.rfind("tf1:", 0) == 0) {
            outcome = symtest::t_f1(xs, theta_disc, sigma,
                                    symtest::ReferenceDensity::parse(tok.substr(4)));
        } else if (tok.rfind("that:", 0) == 0) {
            outcome = symtest::t_hat_f1(
                xs, theta_disc, sigma,
                symtest::ReferenceDensity::parse(tok.substr(5)));
        } else if (tok.rfind("tcirc:", 0) == 0) {
            outcome = symtest::t_circ_f1(
                xs, theta_disc, sigma,
                symtest::ReferenceDensity::parse(tok.substr(6)));
        } else {
            throw symtest::ParseError("unknown test token: '" + tok + "'");
        }
        auto j = nlohmann::json::parse(outcome.to_json());
        j["sided"] = one_sided ? "one" : "two";
        j["theta_specified"] = specified;
        results.push_back(j);
    }
    std::cout << results.dump(2) << "\n";
    return kExitOk;
}

int run_sample(const std::string& model, std::size_t n, std::uint64_t seed,
               double theta, double sigma, const std::string& out_path) {
    symtest::Rng rng(seed);
    std::vector<double> xs;
    if (model.rfind("edgeworth:", 0) == 0) {
        auto parts = split(model.substr(10), ':');
        if (parts.size() < 2)
            throw symtest::ParseError(
                "expected edgeworth:<family>[:<shape>]:<xi>: '" + model + "'");
        std::string xi_tok = parts.back();
        parts.pop_back();
        std::string family;
        for (const auto& p : parts) family += (family.empty() ? "" : ":") + p;
        double xi;
        try {
            xi = std::stod(xi_tok);
        } catch (const std::exception&) {
            throw symtest::ParseError("bad xi token: '" + xi_tok + "'");
        }
        symtest::EdgeworthModel m(theta, sigma, xi,
                                  symtest::ReferenceDensity::parse(family));
        xs = m.sample(n, rng);
    } else if (model.rfind("skew", 0) == 0) {
        xs = symtest::SkewAlternative::parse(model).sample(n, rng);
    } else {
        auto f1 = symtest::ReferenceDensity::parse(model);
        symtest::EdgeworthModel m(theta, sigma, 0.0, f1);
        xs = m.sample(n, rng);
    }
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw symtest::ParseError("cannot write: " + out_path);
        out = &file;
    }
    for (double x : xs) *out << fmt(x) << "\n";
    return kExitOk;
}

int run_simulate(int table, std::size_t reps, std::size_t n,
                 std::uint64_t seed, int workers, const std::string& out_path) {
    symtest::SimulationSpec spec =
        table == 1 ? symtest::table1_spec(reps, n) : symtest::table2_spec(reps, n);
    spec.master_seed = seed;
    spec.workers = workers;
    auto report = symtest::run(spec);
    if (out_path.empty()) {
        symtest::write_csv(report, std::cout);
        return kExitOk;
    }
    std::string base = out_path;
    if (base.size() > 4 && base.substr(base.size() - 4) == ".csv")
        base = base.substr(0, base.size() - 4);
    std::ofstream csv(base + ".csv");
    if (!csv) throw symtest::ParseError("cannot write: " + base + ".csv");
    symtest::write_csv(report, csv);
    std::ofstream js(base + ".json");
    if (!js) throw symtest::ParseError("cannot write: " + base + ".json");
    js << symtest::report_json(report) << "\n";
    return kExitOk;
}

double shift_for_token(const std::string& tok, const symtest::ReferenceDensity& g1,
                       double tau) {
    using symtest::ReferenceDensity;
    if (tok == "s1") return symtest::shift_s1(g1, tau);
    if (tok == "laplace" || tok == "tlaplace") return symtest::shift_laplace(g1, tau);
    if (tok == "tdagger") return symtest::shift_t_circ(ReferenceDensity::gaussian(), g1, tau);
    if (tok.rfind("tcirc:", 0) == 0)
        return symtest::shift_t_circ(ReferenceDensity::parse(tok.substr(6)), g1, tau);
    if (tok.rfind("that:", 0) == 0)
        return symtest::shift_t_hat(ReferenceDensity::parse(tok.substr(5)), g1, tau);
    if (tok.rfind("tf1:", 0) == 0)
        return symtest::shift_t_f1(ReferenceDensity::parse(tok.substr(4)), tau);
    throw symtest::ParseError("unknown versus token: '" + tok + "'");
}

int run_shift(const std::string& f1_name, const std::string& g1_name, double tau,
              const std::string& versus) {
    auto f1 = symtest::ReferenceDensity::parse(f1_name);
    auto g1 = symtest::ReferenceDensity::parse(g1_name);
    // The f1-optimal studentized test: the sign version when f1 is Laplace.
    double shift = f1.family() == symtest::Family::Laplace
                       ? symtest::shift_laplace(g1, tau)
                       : symtest::shift_t_circ(f1, g1, tau);
    nlohmann::json are_vs = nlohmann::json::object();
    for (const auto& tok : split(versus, ',')) {
        double other = shift_for_token(tok, g1, tau);
        are_vs[tok] = {{"shift", other}, {"are", symtest::are(shift, other)}};
    }
    nlohmann::json j{{"f1", f1.name()},
                     {"g1", g1.name()},
                     {"tau", tau},
                     {"shift", shift},
                     {"are_vs", are_vs}};
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tests of univariate symmetry, skewed-family sampling, and "
                 "efficiency calculators"};
    app.require_subcommand(1);

    auto* c_test = app.add_subcommand("test", "Run symmetry tests on a data file");
    std::string input, tests = "s1,b1,tdagger,tlaplace,tlogistic,vdw";
    double theta_value = 0.0;
    bool one_sided = false;
    c_test->add_option("input", input, "CSV file, one value per line")->required();
    auto* theta_opt = c_test->add_option("--theta", theta_value,
                                         "Specified center (default: estimate)");
    c_test->add_option("--tests", tests, "Comma-separated test tokens");
    c_test->add_flag("--one-sided", one_sided, "One-sided p-value decision");

    auto* c_sample = app.add_subcommand("sample", "Generate draws from a model");
    std::string model, sample_out;
    std::size_t n = 100;
    std::uint64_t seed = kDefaultSeed;
    double theta = 0.0, sigma = 1.0;
    c_sample->add_option("--model", model,
                         "edgeworth:<family>:<xi> | skewnormal:<l> | "
                         "skewt:<nu>:<l> | <family>")
        ->required();
    c_sample->add_option("-n,--n", n, "Sample size");
    c_sample->add_option("--seed", seed, "RNG seed");
    c_sample->add_option("--theta", theta, "Location");
    c_sample->add_option("--sigma", sigma, "Scale");
    c_sample->add_option("--out", sample_out, "Output file (default stdout)");

    auto* c_sim = app.add_subcommand("simulate", "Run a rejection-frequency grid");
    int table = 1, workers = 0;
    std::size_t reps = 2000, sim_n = 100;
    std::uint64_t sim_seed = kDefaultSeed;
    std::string sim_out;
    c_sim->add_option("--table", table, "Grid: 1 or 2")->check(CLI::Range(1, 2));
    c_sim->add_option("--N", reps, "Replications");
    c_sim->add_option("--n", sim_n, "Sample size");
    c_sim->add_option("--seed", sim_seed, "Master seed");
    c_sim->add_option("--workers", workers, "Worker threads (0 = auto)");
    c_sim->add_option("--out", sim_out, "Output base path (.csv/.json)");

    auto* c_shift = app.add_subcommand("shift", "Asymptotic shifts and AREs");
    std::string f1_name, g1_name = "gaussian", versus;
    double tau = 1.0;
    c_shift->add_option("--f1", f1_name, "Reference density of the test")->required();
    c_shift->add_option("--g1", g1_name, "Actual underlying density");
    c_shift->add_option("--tau", tau, "Local alternative rate");
    c_shift->add_option("--versus", versus, "Comma-separated competitor tokens");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_test->parsed())
            return run_test(input,
                            theta_opt->count() ? std::optional<double>(theta_value)
                                               : std::nullopt,
                            tests, one_sided);
        if (c_sample->parsed())
            return run_sample(model, n, seed, theta, sigma, sample_out);
        if (c_sim->parsed())
            return run_simulate(table, reps, sim_n, sim_seed, workers, sim_out);
        if (c_shift->parsed()) return run_shift(f1_name, g1_name, tau, versus);
    } catch (const symtest::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const symtest::Error& e) {
        std::cerr << "computation error: " << e.what() << "\n";
        return kExitCompute;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCompute;
    }
    return kExitOk;
}
