// lasnet: reconstruct directed networks from error-prone informant reports.
//
// Exit codes: 0 success, 1 usage error, 2 data/input error, 3 convergence
// gate failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lasnet/analysis.hpp"
#include "lasnet/errors.hpp"
#include "lasnet/bnam.hpp"
#include "lasnet/css_io.hpp"
#include "lasnet/estimators.hpp"
#include "lasnet/posterior_io.hpp"
#include "lasnet/simulate.hpp"
#include "lasnet/theory.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitGate = 3;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw lasnet::IoError("cannot open " + path + " for writing");
    out << content;
    if (!out) throw lasnet::IoError("write failed for " + path);
}

std::string grid_csv(const lasnet::RateGrid& grid) {
    const bool with_mask = !grid.perverse.empty();
    std::string out = with_mask ? "fp,fn,value,perverse\n" : "fp,fn,value\n";
    for (std::size_t fi = 0; fi < grid.fp_values.size(); ++fi) {
        for (std::size_t ni = 0; ni < grid.fn_values.size(); ++ni) {
            out += fmt(grid.fp_values[fi]);
            out += ',';
            out += fmt(grid.fn_values[ni]);
            out += ',';
            out += fmt(grid.at(fi, ni));
            if (with_mask) {
                out += ',';
                out += grid.perverse_at(fi, ni) ? '1' : '0';
            }
            out += '\n';
        }
    }
    return out;
}

std::string crossover_csv(const lasnet::CrossoverTable& table) {
    std::string out = "density,rule,mean_hamming,se,expected_hamming,replicates\n";
    for (const auto& row : table.rows) {
        out += fmt(row.density);
        out += row.rule == lasnet::LasRule::Union ? ",union," : ",intersection,";
        out += fmt(row.mean_hamming);
        out += ',';
        out += fmt(row.se);
        out += ',';
        out += fmt(row.expected_hamming);
        out += ',';
        out += std::to_string(row.replicates);
        out += '\n';
    }
    return out;
}

void print_rhat_table(const lasnet::ConvergenceReport& report) {
    std::printf("%-18s %10s\n", "scalar", "split-Rhat");
    for (const auto& [name, r] : report.rhats) {
        if (r.degenerate)
            std::printf("%-18s %10s%s\n", name.c_str(), "degenerate",
                        r.chains_agree ? " (constant everywhere)" : " (chains disagree)");
        else
            std::printf("%-18s %10.4f\n", name.c_str(), r.value);
    }
    std::printf("max Rhat %.4f (threshold %.2f): %s\n", report.max_rhat, report.threshold,
                report.pass ? "pass" : "FAIL");
}

json hamming_block(const lasnet::PosteriorSamples& samples, const lasnet::DirectedGraph& central,
                   const lasnet::DirectedGraph& estimate) {
    const auto dist = lasnet::hamming_error_distribution(samples, estimate);
    return json{{"vs_central", lasnet::hamming(estimate, central)},
                {"vs_draws",
                 {{"mean", dist.mean},
                  {"mean_rounded", static_cast<long long>(std::llround(dist.mean))},
                  {"q025", dist.q025},
                  {"q975", dist.q975}}}};
}

json histogram_json(const lasnet::Histogram& h) {
    return json{{"lo", h.lo}, {"hi", h.hi}, {"counts", h.counts}};
}

int cmd_las(const std::string& in, const std::string& out, const std::string& rule) {
    const lasnet::ReportArray y = lasnet::load_css(in);
    lasnet::DirectedGraph g;
    if (rule == "union")
        g = lasnet::las_union(y);
    else if (rule == "intersection")
        g = lasnet::las_intersection(y);
    else
        g = lasnet::self_report(y);
    lasnet::save_graph_json(g, out);
    std::printf("wrote %s: n=%d edges=%lld density=%s\n", out.c_str(), g.size(), g.edge_count(),
                fmt(lasnet::density(g)).c_str());
    return kExitOk;
}

int cmd_estimate(const std::string& in, const std::string& out_dir, lasnet::ChainConfig config,
                 bool no_gate, bool quiet) {
    const lasnet::ReportArray y = lasnet::load_css(in);
    if (!quiet)
        std::fprintf(stderr, "estimating: n=%d informants=%d chains=%d sweeps=%d+%d\n", y.size(),
                     y.informant_count(), config.chains, config.burn_in,
                     config.samples * config.thin);
    const lasnet::PosteriorSamples samples = lasnet::sample_posterior(y, {}, config);
    lasnet::save_posterior(samples, out_dir);
    const lasnet::ConvergenceReport conv = lasnet::convergence_report(samples);
    print_rhat_table(conv);
    std::printf("posterior written to %s (%lld draws)\n", out_dir.c_str(),
                samples.total_draws());
    if (!conv.pass && !no_gate) return kExitGate;
    return kExitOk;
}

int cmd_compare(const std::string& in, const std::string& posterior_dir, const std::string& out) {
    const lasnet::ReportArray y = lasnet::load_css(in);
    const lasnet::PosteriorSamples samples = lasnet::load_posterior(posterior_dir);
    if (samples.data_fingerprint != y.fingerprint())
        throw lasnet::ValidationError(
            "posterior was estimated from different data (fingerprint mismatch)");
    const lasnet::DirectedGraph central = lasnet::central_graph(samples);
    const lasnet::DensitySummary dens = lasnet::density_table(samples);
    const lasnet::RateSummary rates = lasnet::rate_summary(samples);

    json report;
    report["hamming"] = {
        {"union", hamming_block(samples, central, lasnet::las_union(y))},
        {"intersection", hamming_block(samples, central, lasnet::las_intersection(y))},
        {"self_report", hamming_block(samples, central, lasnet::self_report(y))}};
    report["density"] = {{"posterior_mean", dens.mean_density},
                         {"opportunity_ratio", dens.opportunity_ratio}};
    json informants = json::array();
    for (const auto& r : rates.informants)
        informants.push_back(json{{"id", r.informant_id},
                                  {"self_fp", r.self_fp},
                                  {"self_fn", r.self_fn},
                                  {"proxy_fp", r.proxy_fp},
                                  {"proxy_fn", r.proxy_fn},
                                  {"fp_diff", r.fp_diff},
                                  {"fn_diff", r.fn_diff}});
    report["rates"] = {{"informants", std::move(informants)},
                       {"fp_diff_hist", histogram_json(rates.fp_diff_hist)},
                       {"fn_diff_hist", histogram_json(rates.fn_diff_hist)}};
    write_text_file(out, report.dump(1) + "\n");

    std::printf("%-14s %10s %12s\n", "estimator", "vs-central", "mean-vs-draws");
    for (const char* name : {"union", "intersection", "self_report"})
        std::printf("%-14s %10lld %12.1f\n", name,
                    report["hamming"][name]["vs_central"].get<long long>(),
                    report["hamming"][name]["vs_draws"]["mean"].get<double>());
    std::printf("posterior mean density %s, opportunity ratio %s\n", fmt(dens.mean_density).c_str(),
                fmt(dens.opportunity_ratio).c_str());
    return kExitOk;
}

int cmd_theory(double grid_step, int figure, const std::string& rule_name,
               const std::string& edge_state, const std::string& out, bool crossover, double fp,
               double fn) {
    if (crossover) {
        std::printf("%s\n", fmt(lasnet::critical_density({fp, fn})).c_str());
        return kExitOk;
    }
    const std::vector<double> full = lasnet::grid_values(0.0, 1.0, grid_step);
    if (figure == 1) {
        const lasnet::LasRule rule =
            rule_name == "union" ? lasnet::LasRule::Union : lasnet::LasRule::Intersection;
        // default shows the rule's vulnerable side: union errs on absent
        // edges, intersection on present ones
        bool present;
        if (edge_state == "present")
            present = true;
        else if (edge_state == "absent")
            present = false;
        else
            present = rule == lasnet::LasRule::Intersection;
        write_text_file(out, grid_csv(lasnet::correctness_grid(rule, present, full, full)));
    } else {
        // fn endpoints are excluded: d* needs fn strictly inside (0, 1)
        std::vector<double> interior;
        for (const double v : full)
            if (v != 0.0 && v != 1.0) interior.push_back(v);
        write_text_file(out, grid_csv(lasnet::critical_density_grid(full, interior)));
    }
    std::printf("wrote %s\n", out.c_str());
    return kExitOk;
}

int cmd_simulate(const std::string& config_path, const std::string& out) {
    std::ifstream in(config_path);
    if (!in) throw lasnet::IoError("cannot open " + config_path);
    json cfg;
    try {
        in >> cfg;
    } catch (const json::parse_error& e) {
        throw lasnet::ParseError(config_path + ": " + e.what());
    }
    int n = 0, replicates = 0;
    std::vector<double> densities;
    lasnet::ErrorRatePair rates;
    std::uint64_t seed = 0;
    lasnet::TruthMode mode = lasnet::TruthMode::FixedEdgeCount;
    try {
        n = cfg.at("n").get<int>();
        densities = cfg.at("densities").get<std::vector<double>>();
        rates.fp = cfg.at("fp").get<double>();
        rates.fn = cfg.at("fn").get<double>();
        replicates = cfg.at("replicates").get<int>();
        seed = cfg.value("seed", 0ULL);
        const std::string mode_name = cfg.value("mode", std::string("fixed"));
        if (mode_name == "independent")
            mode = lasnet::TruthMode::IndependentEdges;
        else if (mode_name != "fixed")
            throw lasnet::ParseError(config_path + ": mode must be `fixed` or `independent`");
    } catch (const json::exception& e) {
        throw lasnet::ParseError(config_path + ": " + e.what());
    }
    const lasnet::CrossoverTable table =
        lasnet::crossover_experiment(n, densities, rates, replicates, seed, mode);
    write_text_file(out, crossover_csv(table));
    std::printf("wrote %s (%zu rows)\n", out.c_str(), table.rows.size());
    return kExitOk;
}

int cmd_diagnose(const std::string& posterior_dir, double threshold) {
    const lasnet::PosteriorSamples samples = lasnet::load_posterior(posterior_dir);
    const lasnet::ConvergenceReport conv = lasnet::convergence_report(samples, threshold);
    print_rhat_table(conv);
    return conv.pass ? kExitOk : kExitGate;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"network inference from informant self- and proxy-reports"};
    app.require_subcommand(1);

    // las
    auto* las = app.add_subcommand("las", "aggregate endpoint reports into a graph estimate");
    std::string las_rule = "union", las_in, las_out;
    las->add_option("--rule", las_rule, "union|intersection|self")
        ->check(CLI::IsMember({"union", "intersection", "self"}))
        ->required();
    las->add_option("--in", las_in, "CSS report file (json or stacked text)")->required();
    las->add_option("--out", las_out, "output graph json")->required();

    // estimate
    auto* estimate = app.add_subcommand("estimate", "sample the accuracy-model posterior");
    std::string est_in, est_out;
    lasnet::ChainConfig config;
    bool no_gate = false, quiet = false;
    estimate->add_option("--in", est_in, "CSS report file")->required();
    estimate->add_option("--out", est_out, "posterior output directory")->required();
    estimate->add_option("--chains", config.chains, "chain count")->check(CLI::PositiveNumber);
    estimate->add_option("--burnin", config.burn_in, "burn-in sweeps per chain")
        ->check(CLI::NonNegativeNumber);
    estimate->add_option("--samples", config.samples, "recorded draws per chain")
        ->check(CLI::PositiveNumber);
    estimate->add_option("--thin", config.thin, "record every thin-th sweep")
        ->check(CLI::PositiveNumber);
    estimate->add_option("--seed", config.seed, "RNG seed");
    estimate->add_flag("--no-gate", no_gate, "do not fail on the R-hat convergence gate");
    estimate->add_flag("--quiet", quiet, "suppress progress output");

    // compare
    auto* compare = app.add_subcommand("compare",
                                       "score estimators against the posterior criterion");
    std::string cmp_in, cmp_posterior, cmp_out;
    compare->add_option("--in", cmp_in, "CSS report file")->required();
    compare->add_option("--posterior", cmp_posterior, "posterior directory from `estimate`")
        ->required();
    compare->add_option("--out", cmp_out, "output report json")->required();

    // theory
    auto* theory = app.add_subcommand("theory", "closed-form error analysis");
    double grid_step = 0.01, th_fp = 0.0, th_fn = 0.0;
    int figure = 2;
    std::string th_rule = "intersection", th_edge_state = "auto", th_out;
    bool crossover = false;
    theory->add_option("--grid-step", grid_step, "grid resolution (default 0.01)");
    theory->add_option("--figure", figure, "1: correctness grid, 2: critical density grid")
        ->check(CLI::IsMember({1, 2}));
    theory->add_option("--rule", th_rule, "rule for --figure 1")
        ->check(CLI::IsMember({"union", "intersection"}));
    theory->add_option("--edge-state", th_edge_state, "true edge state for --figure 1")
        ->check(CLI::IsMember({"present", "absent", "auto"}));
    theory->add_option("--out", th_out, "output csv");
    theory->add_flag("--crossover", crossover, "print the critical density for --fp/--fn");
    theory->add_option("--fp", th_fp, "false positive rate for --crossover");
    theory->add_option("--fn", th_fn, "false negative rate for --crossover");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo rule comparison experiments");
    std::string sim_config, sim_out;
    simulate->add_option("--config", sim_config, "experiment config json")->required();
    simulate->add_option("--out", sim_out, "output csv")->required();

    // diagnose
    auto* diagnose = app.add_subcommand("diagnose", "convergence diagnostics for a saved posterior");
    std::string diag_posterior;
    double diag_threshold = 1.1;
    diagnose->add_option("--posterior", diag_posterior, "posterior directory")->required();
    diagnose->add_option("--threshold", diag_threshold, "R-hat gate threshold");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (las->parsed()) return cmd_las(las_in, las_out, las_rule);
        if (estimate->parsed()) return cmd_estimate(est_in, est_out, config, no_gate, quiet);
        if (compare->parsed()) return cmd_compare(cmp_in, cmp_posterior, cmp_out);
        if (theory->parsed()) {
            if (!crossover && th_out.empty()) {
                std::fprintf(stderr, "error: theory needs --out FILE (or --crossover)\n");
                return kExitUsage;
            }
            return cmd_theory(grid_step, figure, th_rule, th_edge_state, th_out, crossover, th_fp,
                              th_fn);
        }
        if (simulate->parsed()) return cmd_simulate(sim_config, sim_out);
        if (diagnose->parsed()) return cmd_diagnose(diag_posterior, diag_threshold);
    } catch (const lasnet::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitData;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitData;
    }
    return kExitUsage;
}
