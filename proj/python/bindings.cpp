#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <utility>
#include <vector>

#include "lasnet/analysis.hpp"
#include "lasnet/bnam.hpp"
#include "lasnet/css_io.hpp"
#include "lasnet/errors.hpp"
#include "lasnet/estimators.hpp"
#include "lasnet/posterior_io.hpp"
#include "lasnet/rng.hpp"
#include "lasnet/simulate.hpp"
#include "lasnet/theory.hpp"

namespace py = pybind11;
using namespace lasnet;

namespace {

py::array_t<bool> graph_matrix(const DirectedGraph& g) {
    const int n = g.size();
    py::array_t<bool> out({n, n});
    auto m = out.mutable_unchecked<2>();
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) m(j, k) = j != k && g.edge(j, k);
    return out;
}

DirectedGraph graph_from_matrix(py::array_t<bool, py::array::c_style | py::array::forcecast> m) {
    if (m.ndim() != 2 || m.shape(0) != m.shape(1))
        throw ValidationError("adjacency matrix must be square");
    const int n = static_cast<int>(m.shape(0));
    DirectedGraph g(n);
    auto a = m.unchecked<2>();
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            if (j != k && a(j, k)) g.set_edge(j, k, true);
    return g;
}

// report codes on the numpy side: 0 absent, 1 present, -1 missing
ReportArray reports_from_array(
    std::vector<int> ids,
    py::array_t<std::int8_t, py::array::c_style | py::array::forcecast> arr) {
    if (arr.ndim() != 3 || arr.shape(1) != arr.shape(2))
        throw ValidationError("report array must have shape (k, n, n)");
    const int k = static_cast<int>(arr.shape(0));
    const int n = static_cast<int>(arr.shape(1));
    if (static_cast<int>(ids.size()) != k)
        throw ValidationError("need one informant id per report slice");
    ReportArray y(n, std::move(ids));
    auto a = arr.unchecked<3>();
    for (int s = 0; s < k; ++s)
        for (int j = 0; j < n; ++j)
            for (int c = 0; c < n; ++c) {
                if (j == c) continue;
                const std::int8_t v = a(s, j, c);
                if (v == -1) continue;  // already missing
                if (v != 0 && v != 1)
                    throw ValidationError("report cells must be -1 (missing), 0, or 1");
                y.set(s, j, c, v == 1 ? Report::Present : Report::Absent);
            }
    return y;
}

py::array_t<std::int8_t> reports_to_array(const ReportArray& y) {
    const int k = y.informant_count();
    const int n = y.size();
    py::array_t<std::int8_t> out({k, n, n});
    auto a = out.mutable_unchecked<3>();
    for (int s = 0; s < k; ++s)
        for (int j = 0; j < n; ++j)
            for (int c = 0; c < n; ++c) {
                const Report v = y.at(s, j, c);
                a(s, j, c) = v == Report::Missing ? -1 : (v == Report::Present ? 1 : 0);
            }
    return out;
}

py::array_t<double> marginals_matrix(const PosteriorSamples& samples) {
    const auto flat = edge_marginals(samples);
    const int n = samples.n;
    py::array_t<double> out({n, n});
    auto m = out.mutable_unchecked<2>();
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) m(j, k) = flat[static_cast<std::size_t>(j) * n + k];
    return out;
}

std::array<double, 3> as_gamma(const std::vector<double>& v) {
    if (v.size() != 3) throw ValidationError("gamma must have exactly 3 components");
    return {v[0], v[1], v[2]};
}

py::dict grid_to_dict(const RateGrid& g) {
    py::dict d;
    d["fp"] = py::array_t<double>(static_cast<py::ssize_t>(g.fp_values.size()), g.fp_values.data());
    d["fn"] = py::array_t<double>(static_cast<py::ssize_t>(g.fn_values.size()), g.fn_values.data());
    const py::ssize_t rows = static_cast<py::ssize_t>(g.fp_values.size());
    const py::ssize_t cols = static_cast<py::ssize_t>(g.fn_values.size());
    py::array_t<double> values({rows, cols});
    auto vm = values.mutable_unchecked<2>();
    for (py::ssize_t i = 0; i < rows; ++i)
        for (py::ssize_t j = 0; j < cols; ++j) vm(i, j) = g.at(static_cast<std::size_t>(i),
                                                               static_cast<std::size_t>(j));
    d["values"] = values;
    if (!g.perverse.empty()) {
        py::array_t<bool> mask({rows, cols});
        auto mm = mask.mutable_unchecked<2>();
        for (py::ssize_t i = 0; i < rows; ++i)
            for (py::ssize_t j = 0; j < cols; ++j)
                mm(i, j) = g.perverse_at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        d["perverse"] = mask;
    }
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "network inference from error-prone informant reports";

    py::register_exception<Error>(m, "LasnetError");

    py::enum_<LasRule>(m, "LasRule")
        .value("UNION", LasRule::Union)
        .value("INTERSECTION", LasRule::Intersection);

    py::enum_<TruthMode>(m, "TruthMode")
        .value("INDEPENDENT_EDGES", TruthMode::IndependentEdges)
        .value("FIXED_EDGE_COUNT", TruthMode::FixedEdgeCount);

    py::class_<Rng>(m, "Rng")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def_static("stream", &Rng::stream, py::arg("seed"), py::arg("stream_id"))
        .def("uniform", &Rng::uniform)
        .def("normal", &Rng::normal)
        .def("gamma", &Rng::gamma, py::arg("shape"))
        .def("beta", &Rng::beta, py::arg("alpha"), py::arg("beta"));

    py::class_<DirectedGraph>(m, "DirectedGraph")
        .def(py::init<int>(), py::arg("n"))
        .def(py::init([](int n, const std::vector<std::pair<int, int>>& edges) {
                 return DirectedGraph(n, edges);
             }),
             py::arg("n"), py::arg("edges"))
        .def_static("from_matrix", &graph_from_matrix, py::arg("matrix"))
        .def_property_readonly("n", &DirectedGraph::size)
        .def("edge", &DirectedGraph::edge, py::arg("from_"), py::arg("to"))
        .def("set_edge", &DirectedGraph::set_edge, py::arg("from_"), py::arg("to"),
             py::arg("present"))
        .def("edge_count", &DirectedGraph::edge_count)
        .def("edges", &DirectedGraph::edges)
        .def("matrix", &graph_matrix)
        .def("__eq__", [](const DirectedGraph& a, const DirectedGraph& b) { return a == b; })
        .def("__repr__", [](const DirectedGraph& g) {
            return "DirectedGraph(n=" + std::to_string(g.size()) +
                   ", edges=" + std::to_string(g.edge_count()) + ")";
        });

    py::class_<DyadCensus>(m, "DyadCensus")
        .def_readonly("mutual", &DyadCensus::mutual)
        .def_readonly("asymmetric", &DyadCensus::asymmetric)
        .def_readonly("nulls", &DyadCensus::nulls)
        .def("__repr__", [](const DyadCensus& c) {
            return "DyadCensus(mutual=" + std::to_string(c.mutual) +
                   ", asymmetric=" + std::to_string(c.asymmetric) +
                   ", nulls=" + std::to_string(c.nulls) + ")";
        });

    py::class_<ReportArray>(m, "ReportArray")
        .def(py::init<int, std::vector<int>>(), py::arg("n"), py::arg("informant_ids"))
        .def_static("from_array", &reports_from_array, py::arg("informant_ids"),
                    py::arg("reports"), "reports: int8 (k, n, n) with -1 missing, 0 absent, 1 present")
        .def_property_readonly("n", &ReportArray::size)
        .def_property_readonly("k", &ReportArray::informant_count)
        .def_property_readonly("informant_ids", &ReportArray::informant_ids)
        .def("at", [](const ReportArray& y, int s, int j, int k) -> int {
                const Report v = y.at(s, j, k);
                return v == Report::Missing ? -1 : (v == Report::Present ? 1 : 0);
            }, py::arg("slice"), py::arg("sender"), py::arg("receiver"))
        .def("set", [](ReportArray& y, int s, int j, int k, int v) {
                if (v != -1 && v != 0 && v != 1)
                    throw ValidationError("report value must be -1, 0, or 1");
                y.set(s, j, k, v == -1 ? Report::Missing
                                       : (v == 1 ? Report::Present : Report::Absent));
            }, py::arg("slice"), py::arg("sender"), py::arg("receiver"), py::arg("value"))
        .def("to_array", &reports_to_array)
        .def("fingerprint", &ReportArray::fingerprint);

    // core metrics
    m.def("density", &density, py::arg("g"));
    m.def("dyad_census", &dyad_census, py::arg("g"));
    m.def("hamming", &hamming, py::arg("a"), py::arg("b"));
    m.def("opportunity_ratio", &opportunity_ratio, py::arg("g"));

    // estimators
    m.def("las_union", &las_union, py::arg("y"));
    m.def("las_intersection", &las_intersection, py::arg("y"));
    m.def("self_report", &self_report, py::arg("y"));

    // closed-form error theory
    py::class_<ErrorRatePair>(m, "ErrorRatePair")
        .def(py::init([](double fp, double fn) { return ErrorRatePair{fp, fn}; }), py::arg("fp"),
             py::arg("fn"))
        .def_readwrite("fp", &ErrorRatePair::fp)
        .def_readwrite("fn", &ErrorRatePair::fn)
        .def("__repr__", [](const ErrorRatePair& r) {
            return "ErrorRatePair(fp=" + std::to_string(r.fp) + ", fn=" + std::to_string(r.fn) + ")";
        });

    py::class_<InformantRates>(m, "InformantRates")
        .def(py::init([](const ErrorRatePair& self, const ErrorRatePair& proxy) {
                 return InformantRates{self, proxy};
             }),
             py::arg("self"), py::arg("proxy"))
        .def_readwrite("self_rates", &InformantRates::self)
        .def_readwrite("proxy_rates", &InformantRates::proxy);

    m.def("edge_error_prob", &edge_error_prob, py::arg("rule"), py::arg("rates_i"),
          py::arg("rates_j"), py::arg("edge_present"));
    m.def("expected_hamming",
          py::overload_cast<LasRule, long long, long long, const ErrorRatePair&>(&expected_hamming),
          py::arg("rule"), py::arg("edges"), py::arg("nulls"), py::arg("rates"));
    m.def("expected_hamming_heterogeneous",
          [](LasRule rule, const DirectedGraph& truth, const std::vector<ErrorRatePair>& rates) {
              return expected_hamming(rule, truth, rates);
          },
          py::arg("rule"), py::arg("truth"), py::arg("vertex_rates"));
    m.def("critical_density", &critical_density, py::arg("rates"));
    m.def("critical_density", [](double fp, double fn) { return critical_density({fp, fn}); },
          py::arg("fp"), py::arg("fn"));
    m.def("correctness_grid",
          [](LasRule rule, bool edge_present, const std::vector<double>& fp,
             const std::vector<double>& fn) {
              return grid_to_dict(correctness_grid(rule, edge_present, fp, fn));
          },
          py::arg("rule"), py::arg("edge_present"), py::arg("fp_grid"), py::arg("fn_grid"));
    m.def("critical_density_grid",
          [](const std::vector<double>& fp, const std::vector<double>& fn) {
              return grid_to_dict(critical_density_grid(fp, fn));
          },
          py::arg("fp_grid"), py::arg("fn_grid"));
    m.def("grid_values", &grid_values, py::arg("lo"), py::arg("hi"), py::arg("step"));

    // accuracy model
    py::class_<BetaParams>(m, "BetaParams")
        .def(py::init([](double a, double b) { return BetaParams{a, b}; }), py::arg("alpha"),
             py::arg("beta"))
        .def_readwrite("alpha", &BetaParams::alpha)
        .def_readwrite("beta", &BetaParams::beta);

    py::class_<BnamPriors>(m, "BnamPriors")
        .def(py::init<>())
        .def_readwrite("gamma_alpha", &BnamPriors::gamma_alpha)
        .def_readwrite("self_fp", &BnamPriors::self_fp)
        .def_readwrite("self_fn", &BnamPriors::self_fn)
        .def_readwrite("proxy_fp", &BnamPriors::proxy_fp)
        .def_readwrite("proxy_fn", &BnamPriors::proxy_fn);

    py::class_<ChainConfig>(m, "ChainConfig")
        .def(py::init([](int burn_in, int samples, int thin, int chains, std::uint64_t seed) {
                 ChainConfig c{burn_in, samples, thin, chains, seed};
                 c.validate();
                 return c;
             }),
             py::arg("burn_in") = 500, py::arg("samples") = 1000, py::arg("thin") = 1,
             py::arg("chains") = 4, py::arg("seed") = 0)
        .def_readwrite("burn_in", &ChainConfig::burn_in)
        .def_readwrite("samples", &ChainConfig::samples)
        .def_readwrite("thin", &ChainConfig::thin)
        .def_readwrite("chains", &ChainConfig::chains)
        .def_readwrite("seed", &ChainConfig::seed);

    py::class_<BnamState>(m, "BnamState")
        .def_readonly("theta", &BnamState::theta)
        .def_readonly("gamma", &BnamState::gamma)
        .def_readonly("rates", &BnamState::rates);

    py::class_<PosteriorSamples>(m, "PosteriorSamples")
        .def_property_readonly("n", [](const PosteriorSamples& s) { return s.n; })
        .def_property_readonly("informant_ids",
                               [](const PosteriorSamples& s) { return s.informant_ids; })
        .def_property_readonly("config", [](const PosteriorSamples& s) { return s.config; })
        .def_property_readonly("chains", [](const PosteriorSamples& s) { return s.chains; })
        .def("total_draws", &PosteriorSamples::total_draws)
        .def("edge_marginals", &marginals_matrix)
        .def("central_graph", [](const PosteriorSamples& s) { return central_graph(s); });

    m.def("log_likelihood", &log_likelihood, py::arg("y"), py::arg("state"));
    m.def(
        "sample_posterior",
        [](const ReportArray& y, const BnamPriors& priors, const ChainConfig& config) {
            return sample_posterior(y, priors, config);
        },
        py::arg("y"), py::arg("priors") = BnamPriors{}, py::arg("config") = ChainConfig{},
        py::call_guard<py::gil_scoped_release>());

    // posterior analysis
    py::class_<RhatResult>(m, "RhatResult")
        .def_readonly("value", &RhatResult::value)
        .def_readonly("degenerate", &RhatResult::degenerate)
        .def_readonly("chains_agree", &RhatResult::chains_agree);

    py::class_<ScalarTrace>(m, "ScalarTrace")
        .def(py::init([](std::string name, std::vector<std::vector<double>> chains) {
                 return ScalarTrace{std::move(name), std::move(chains)};
             }),
             py::arg("name"), py::arg("chains"))
        .def_readonly("name", &ScalarTrace::name)
        .def_readonly("chains", &ScalarTrace::chains);

    m.def("split_rhat", &split_rhat, py::arg("trace"));

    py::class_<DistributionSummary>(m, "DistributionSummary")
        .def_readonly("values", &DistributionSummary::values)
        .def_readonly("mean", &DistributionSummary::mean)
        .def_readonly("q025", &DistributionSummary::q025)
        .def_readonly("q975", &DistributionSummary::q975);

    m.def("hamming_error_distribution", &hamming_error_distribution, py::arg("samples"),
          py::arg("estimate"));

    py::class_<InformantRateSummary>(m, "InformantRateSummary")
        .def_readonly("informant_id", &InformantRateSummary::informant_id)
        .def_readonly("self_fp", &InformantRateSummary::self_fp)
        .def_readonly("self_fn", &InformantRateSummary::self_fn)
        .def_readonly("proxy_fp", &InformantRateSummary::proxy_fp)
        .def_readonly("proxy_fn", &InformantRateSummary::proxy_fn)
        .def_readonly("fp_diff", &InformantRateSummary::fp_diff)
        .def_readonly("fn_diff", &InformantRateSummary::fn_diff);

    py::class_<Histogram>(m, "Histogram")
        .def_readonly("lo", &Histogram::lo)
        .def_readonly("hi", &Histogram::hi)
        .def_readonly("counts", &Histogram::counts);

    py::class_<RateSummary>(m, "RateSummary")
        .def_readonly("informants", &RateSummary::informants)
        .def_readonly("fp_diff_hist", &RateSummary::fp_diff_hist)
        .def_readonly("fn_diff_hist", &RateSummary::fn_diff_hist);

    m.def("rate_summary", &rate_summary, py::arg("samples"));

    py::class_<DensitySummary>(m, "DensitySummary")
        .def_readonly("mean_density", &DensitySummary::mean_density)
        .def_readonly("opportunity_ratio", &DensitySummary::opportunity_ratio);

    m.def("density_table", &density_table, py::arg("samples"));

    py::class_<ConvergenceReport>(m, "ConvergenceReport")
        .def_property_readonly("rhats",
                               [](const ConvergenceReport& r) {
                                   py::dict d;
                                   for (const auto& [name, rr] : r.rhats)
                                       d[py::str(name)] = rr;
                                   return d;
                               })
        .def_readonly("max_rhat", &ConvergenceReport::max_rhat)
        .def_readonly("threshold", &ConvergenceReport::threshold)
        .def_readonly("pass_", &ConvergenceReport::pass);

    m.def("convergence_report", &convergence_report, py::arg("samples"),
          py::arg("threshold") = 1.1);

    // simulation
    m.def(
        "sample_uman_graph",
        [](int n, const std::vector<double>& gamma, Rng& rng) {
            return sample_uman_graph(n, as_gamma(gamma), rng);
        },
        py::arg("n"), py::arg("gamma"), py::arg("rng"));
    m.def("sample_fixed_edge_graph", &sample_fixed_edge_graph, py::arg("n"), py::arg("edges"),
          py::arg("rng"));
    m.def(
        "sample_reports",
        [](const DirectedGraph& truth, const std::vector<InformantRates>& rates,
           const std::vector<int>& missing_ids, Rng& rng) {
            return sample_reports(truth, rates, missing_ids, rng);
        },
        py::arg("truth"), py::arg("rates"), py::arg("missing_ids"), py::arg("rng"));
    m.def(
        "crossover_experiment",
        [](int n, const std::vector<double>& densities, const ErrorRatePair& rates, int replicates,
           std::uint64_t seed, TruthMode mode) {
            const CrossoverTable table =
                crossover_experiment(n, densities, rates, replicates, seed, mode);
            py::list rows;
            for (const auto& r : table.rows) {
                py::dict d;
                d["density"] = r.density;
                d["rule"] = r.rule == LasRule::Union ? "union" : "intersection";
                d["mean_hamming"] = r.mean_hamming;
                d["se"] = r.se;
                d["expected_hamming"] = r.expected_hamming;
                d["replicates"] = r.replicates;
                rows.append(std::move(d));
            }
            return rows;
        },
        py::arg("n"), py::arg("densities"), py::arg("rates"), py::arg("replicates"),
        py::arg("seed"), py::arg("mode") = TruthMode::FixedEdgeCount);

    // file formats
    m.def("load_css", [](const std::string& path) { return load_css(path); }, py::arg("path"));
    m.def(
        "save_css",
        [](const ReportArray& y, const std::string& relation, const std::string& path) {
            save_css(y, relation, path);
        },
        py::arg("y"), py::arg("relation"), py::arg("path"));
    m.def("load_graph_json", &load_graph_json, py::arg("path"));
    m.def("save_graph_json", &save_graph_json, py::arg("g"), py::arg("path"));
    m.def("save_posterior", &save_posterior, py::arg("samples"), py::arg("dir"));
    m.def("load_posterior", &load_posterior, py::arg("dir"));
}
