// Command-line front end: verification sweeps and sequence studies with
// machine-readable JSON/CSV reports. Exit status is 0 iff every check in the
// run passed (informational commands always exit 0 on success).

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hmt/hmt.hpp"

namespace {

constexpr const char* kToolVersion = "1.0.0";

struct CommonOpts {
    int n = 2;
    std::string output;
    std::string format = "json";
    std::string precision = "double";
};

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     t0)
        .count();
}

std::string default_output_dir() {
    if (const char* dir = std::getenv("HMT_OUTPUT_DIR")) return dir;
    return ".";
}

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--n", c.n, "dimension (>= 2)")->check(CLI::Range(2, 64));
    cmd->add_option("-o,--output", c.output, "output file (default: stdout)");
    cmd->add_option("--format", c.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--precision", c.precision, "double or extended")
        ->check(CLI::IsMember({"double", "extended"}));
}

// Report layout shared by all commands: config echo, per-item results,
// summary, timings. Key order is stable (nlohmann keeps objects sorted).
int emit(const CommonOpts& c, hmt::json config, hmt::json results, hmt::json summary,
         double wall_ms, bool all_pass) {
    config["precision"] = c.precision;
    config["format"] = c.format;
    hmt::json report{{"config", config},
                     {"results", results},
                     {"summary", summary},
                     {"timing_ms", wall_ms},
                     {"version", kToolVersion}};
    std::string body;
    if (c.format == "csv")
        body = hmt::to_csv(results);
    else
        body = report.dump(2) + "\n";
    if (c.output.empty()) {
        std::cout << body;
    } else {
        std::filesystem::path out = c.output;
        if (out.is_relative()) out = std::filesystem::path(default_output_dir()) / out;
        hmt::atomic_write(out, body);
    }
    return all_pass ? 0 : 1;
}

int run_verify_lemma(const CommonOpts& c, double t_min, double t_max, int points) {
    auto t0 = std::chrono::steady_clock::now();
    auto ctx = hmt::make_context(c.n);
    hmt::GridSpec grid{t_min, t_max, points, true};
    auto rep = hmt::sweep_lemma(ctx, grid);

    bool pass = (c.n == 2) ? rep.equality_deviation <= 1e-10 : rep.min_F >= 0;
    hmt::json results = hmt::json::array();
    results.push_back({{"check", "lemma_F_sweep"},
                       {"min_F", rep.min_F},
                       {"argmin_F", rep.argmin_F},
                       {"min_F_relative", rep.min_F_relative},
                       {"pass", pass}});
    if (c.n >= 3) {
        results.push_back({{"check", "lemma_G_positive"},
                           {"min_G", rep.min_G},
                           {"pass", rep.min_G > 0}});
        results.push_back({{"check", "lemma_H_positive"},
                           {"min_H", rep.min_H},
                           {"pass", rep.min_H > 0}});
        pass = pass && rep.min_G > 0 && rep.min_H > 0;
    }
    hmt::json summary{{"pass_count", pass ? results.size() : 0},
                      {"min_F", rep.min_F},
                      {"equality_deviation", rep.equality_deviation},
                      {"all_pass", pass}};
    hmt::json config{{"command", "verify-lemma"}, {"n", c.n},       {"t_min", t_min},
                     {"t_max", t_max},           {"points", points}};
    return emit(c, config, results, summary, elapsed_ms(t0), pass);
}

int run_verify_comparison(const CommonOpts& c, int count, std::uint64_t seed,
                          bool weak_only) {
    auto t0 = std::chrono::steady_clock::now();
    auto ctx = hmt::make_context(c.n);
    std::mt19937_64 meta(seed);
    std::uniform_int_distribution<int> knot_dist(2, 50);
    std::uniform_real_distribution<double> log_support(std::log(1e-3), std::log(1e3));
    hmt::json results = hmt::json::array();
    bool all_pass = true;
    double min_slack = std::numeric_limits<double>::infinity();
    for (int i = 0; i < count; ++i) {
        std::uint64_t s = meta();
        auto v = hmt::random_profile(s, knot_dist(meta),
                                     std::exp(log_support(meta)), 2.0);
        for (bool strong : {false, true}) {
            if (strong && weak_only) continue;
            auto r = hmt::check_comparison(ctx, v, strong);
            all_pass = all_pass && r.pass;
            min_slack = std::min(min_slack, r.slack);
            auto j = hmt::to_json(r);
            j["profile_seed"] = s;
            results.push_back(j);
        }
    }
    hmt::json summary{{"all_pass", all_pass},
                      {"min_slack", min_slack},
                      {"profiles", count}};
    hmt::json config{{"command", "verify-comparison"},
                     {"n", c.n},
                     {"count", count},
                     {"seed", seed}};
    return emit(c, config, results, summary, elapsed_ms(t0), all_pass);
}

int run_psi_k(const CommonOpts& c, std::vector<long long> ks, double lambda) {
    auto t0 = std::chrono::steady_clock::now();
    auto ctx = hmt::make_context(c.n);
    hmt::json results = hmt::json::array();
    for (long long k : ks) {
        auto r = hmt::psi_k_closed_forms(ctx, k, lambda);
        hmt::json row{{"k", k},
                      {"lambda", lambda},
                      {"n", c.n},
                      {"ln_norm_closed", r.ln_norm_closed},
                      {"energy_closed", r.energy_closed},
                      {"a_k_n", r.a_k_n},
                      {"product", r.product},
                      {"limit_target", r.limit_target}};
        if (k <= 1000) {
            row["ln_norm_quadrature"] = hmt::psi_k_ln_norm_quadrature(ctx, (int)k);
            row["energy_quadrature"] = hmt::psi_k_energy_quadrature(ctx, (int)k);
        }
        results.push_back(row);
    }
    double last_gap = results.empty()
                          ? 0.0
                          : std::fabs(results.back()["product"].get<double>() -
                                      results.back()["limit_target"].get<double>());
    hmt::json summary{{"count", ks.size()}, {"last_product_gap", last_gap}};
    hmt::json config{{"command", "psi-k"}, {"n", c.n}, {"lambda", lambda}};
    return emit(c, config, results, summary, elapsed_ms(t0), true);
}

int run_moser(const CommonOpts& c, std::vector<int> ks, double alpha_factor, double p) {
    auto t0 = std::chrono::steady_clock::now();
    auto ctx = hmt::make_context(c.n);
    if (p < 0) p = double(ctx.n) / (ctx.n - 1);
    hmt::json results = hmt::json::array();
    for (int k : ks) {
        auto rec = hmt::blowup_ratio(ctx, k, alpha_factor * ctx.alpha, p);
        auto m = hmt::moser_C_k(ctx, k);
        results.push_back({{"k", k},
                           {"n", c.n},
                           {"alpha", rec.alpha},
                           {"p", p},
                           {"C_k", rec.C_k},
                           {"ln_norm", rec.ln_norm},
                           {"constraint", m.energy - ctx.hardy * m.ln_norm},
                           {"ratio", rec.diverged ? -1.0 : rec.ratio},
                           {"diverged", rec.diverged}});
    }
    hmt::json summary{{"count", ks.size()}};
    hmt::json config{{"command", "moser"},
                     {"n", c.n},
                     {"alpha_factor", alpha_factor},
                     {"p", p}};
    return emit(c, config, results, summary, elapsed_ms(t0), true);
}

int run_lower_bound(const CommonOpts& c, double lambda) {
    auto t0 = std::chrono::steady_clock::now();
    auto ctx = hmt::make_context(c.n);
    double lb = hmt::lower_bound(ctx, lambda);
    hmt::json results = hmt::json::array();
    results.push_back(
        {{"n", c.n}, {"lambda", lambda}, {"lower_bound", lb}, {"hardy", ctx.hardy}});
    hmt::json summary{{"lower_bound", lb}};
    hmt::json config{{"command", "lower-bound"}, {"n", c.n}, {"lambda", lambda}};
    return emit(c, config, results, summary, elapsed_ms(t0), true);
}

int run_profile_report(const CommonOpts& c, const std::string& input) {
    auto t0 = std::chrono::steady_clock::now();
    std::ifstream in(input);
    if (!in) throw std::runtime_error("cannot open profile file: " + input);
    hmt::json j = hmt::json::parse(in);
    int n = c.n;
    auto v = hmt::profile_from_json(j, &n);
    auto ctx = hmt::make_context(n);
    auto er = hmt::energy_report(ctx, v);
    auto weak = hmt::check_comparison(ctx, v, false);
    auto strong = hmt::check_comparison(ctx, v, true);
    bool all_pass = weak.pass && strong.pass;
    hmt::json results = hmt::json::array();
    results.push_back({{"check", "energies"},
                       {"hyperbolic_energy", er.hyperbolic_energy},
                       {"euclidean_energy", er.euclidean_energy},
                       {"ln_norm", er.ln_norm},
                       {"extra_term", er.extra_term},
                       {"quad_error_estimate", er.quad_error_estimate},
                       {"pass", true}});
    results.push_back(hmt::to_json(weak));
    results.push_back(hmt::to_json(strong));
    hmt::json summary{{"all_pass", all_pass}};
    hmt::json config{{"command", "profile-report"}, {"input", input}, {"n", n}};
    return emit(c, config, results, summary, elapsed_ms(t0), all_pass);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hyperbolic Moser-Trudinger rearrangement toolkit"};
    app.require_subcommand(1);

    CommonOpts c;

    auto* lemma = app.add_subcommand("verify-lemma", "sweep the kernel inequality");
    double t_min = 1e-6, t_max = 20.0;
    int points = 10000;
    add_common(lemma, c);
    lemma->add_option("--t-min", t_min)->check(CLI::PositiveNumber);
    lemma->add_option("--t-max", t_max)->check(CLI::PositiveNumber);
    lemma->add_option("--points", points)->check(CLI::Range(2, 10000000));

    auto* comp =
        app.add_subcommand("verify-comparison", "energy comparison on random profiles");
    int count = 100;
    std::uint64_t seed = 1;
    bool weak_only = false;
    add_common(comp, c);
    comp->add_option("--count", count)->check(CLI::PositiveNumber);
    comp->add_option("--seed", seed);
    comp->add_flag("--weak-only", weak_only);

    auto* psi = app.add_subcommand("psi-k", "lower-bound family closed forms");
    std::vector<long long> k_list{2, 5, 20, 100};
    double lambda = 0.0;
    add_common(psi, c);
    psi->add_option("--k-list", k_list)->delimiter(',');
    psi->add_option("--lambda", lambda)->check(CLI::NonNegativeNumber);

    auto* moser = app.add_subcommand("moser", "Moser sequence sweep");
    std::vector<int> moser_ks{5, 10, 20, 40};
    double alpha_factor = 1.0, p = -1.0;
    add_common(moser, c);
    moser->add_option("--k-list", moser_ks)->delimiter(',');
    moser->add_option("--alpha-factor", alpha_factor)->check(CLI::PositiveNumber);
    moser->add_option("--p", p);

    auto* lb = app.add_subcommand("lower-bound", "closed-form functional lower bound");
    double lb_lambda = 0.0;
    add_common(lb, c);
    lb->add_option("--lambda", lb_lambda)->check(CLI::NonNegativeNumber);

    auto* prof = app.add_subcommand("profile-report", "functionals of a stored profile");
    std::string input;
    add_common(prof, c);
    prof->add_option("-i,--input", input, "profile JSON file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (lemma->parsed()) return run_verify_lemma(c, t_min, t_max, points);
        if (comp->parsed()) return run_verify_comparison(c, count, seed, weak_only);
        if (psi->parsed()) return run_psi_k(c, k_list, lambda);
        if (moser->parsed()) return run_moser(c, moser_ks, alpha_factor, p);
        if (lb->parsed()) return run_lower_bound(c, lb_lambda);
        if (prof->parsed()) return run_profile_report(c, input);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
