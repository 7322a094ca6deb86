#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lasnet/bnam.hpp"
#include "lasnet/graph.hpp"

namespace lasnet {

// One monitored scalar, recorded per chain in draw order.
struct ScalarTrace {
    std::string name;
    std::vector<std::vector<double>> chains;
};

struct RhatResult {
    double value = 0.0;
    bool degenerate = false;    // zero within-chain variance
    bool chains_agree = false;  // degenerate case: all split chains share one constant
};

// Split-chain potential scale reduction: each chain is halved (middle draw
// dropped when odd), then
//   R-hat = sqrt(((len-1)/len * W + B/len) / W)
// with W the mean within-chain variance and B = len * variance of the
// split-chain means. Zero W is reported as degenerate (+inf), not a crash.
RhatResult split_rhat(const ScalarTrace& trace);

// Empirical quantile with linear interpolation; input must be sorted.
double quantile_sorted(std::span<const double> sorted, double p);

struct DistributionSummary {
    std::vector<double> values;  // one per pooled draw, chain-major order
    double mean = 0.0;
    double q025 = 0.0;
    double q975 = 0.0;
};

// hamming(draw.theta, estimate) across all pooled draws.
DistributionSummary hamming_error_distribution(const PosteriorSamples& samples,
                                               const DirectedGraph& estimate);

struct InformantRateSummary {
    int informant_id = 0;
    double self_fp = 0.0, self_fn = 0.0, proxy_fp = 0.0, proxy_fn = 0.0;
    double fp_diff = 0.0;  // self minus proxy
    double fn_diff = 0.0;
};

struct Histogram {
    double lo = 0.0, hi = 0.0;
    std::vector<long long> counts;
};

Histogram make_histogram(std::span<const double> values, int bins);

struct RateSummary {
    std::vector<InformantRateSummary> informants;
    Histogram fp_diff_hist;
    Histogram fn_diff_hist;
};

// Posterior-mean rates per informant over pooled draws, with self-minus-proxy
// differences and plot-ready binning of the differences.
RateSummary rate_summary(const PosteriorSamples& samples);

struct DensitySummary {
    double mean_density = 0.0;
    double opportunity_ratio = 0.0;  // (1 - mean) / mean
};

DensitySummary density_table(const PosteriorSamples& samples);

// The scalars monitored for convergence: graph density, the four mean error
// rates (when informants exist), and the per-draw log likelihood.
std::vector<ScalarTrace> monitored_traces(const PosteriorSamples& samples);

struct ConvergenceReport {
    std::vector<std::pair<std::string, RhatResult>> rhats;
    double max_rhat = 0.0;
    double threshold = 1.1;
    bool pass = false;
};

// Gate: max split R-hat over the monitored scalars must stay below the
// threshold. A degenerate trace whose split chains agree on one constant
// carries no convergence evidence and is excluded from the max; degenerate
// traces with disagreeing chains fail the gate outright.
ConvergenceReport convergence_report(const PosteriorSamples& samples, double threshold = 1.1);

}  // namespace lasnet
