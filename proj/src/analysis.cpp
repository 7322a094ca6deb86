#include "lasnet/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lasnet/errors.hpp"

namespace lasnet {

namespace {

double mean_of(std::span<const double> v) {
    double s = 0.0;
    for (const double x : v) s += x;
    return s / static_cast<double>(v.size());
}

// Unbiased sample variance. A constant sequence returns exactly zero: the
// naive sum of squared deviations picks up rounding noise from the mean,
// which would mask genuinely frozen traces.
double variance_of(std::span<const double> v, double mean) {
    bool constant = true;
    for (const double x : v)
        if (x != v.front()) {
            constant = false;
            break;
        }
    if (constant) return 0.0;
    double s = 0.0;
    for (const double x : v) s += (x - mean) * (x - mean);
    return s / static_cast<double>(v.size() - 1);
}

}  // namespace

RhatResult split_rhat(const ScalarTrace& trace) {
    if (trace.chains.size() < 1)
        throw ValidationError("split_rhat: trace has no chains");
    const std::size_t len = trace.chains.front().size();
    for (const auto& c : trace.chains)
        if (c.size() != len) throw ValidationError("split_rhat: chains differ in length");
    if (len < 4) throw ValidationError("split_rhat: chains must hold at least 4 draws");

    const std::size_t half = len / 2;
    std::vector<std::span<const double>> split;
    for (const auto& c : trace.chains) {
        split.emplace_back(c.data(), half);
        split.emplace_back(c.data() + (len - half), half);
    }
    const std::size_t m = split.size();
    const double n = static_cast<double>(half);

    std::vector<double> means(m);
    std::vector<double> vars(m);
    for (std::size_t i = 0; i < m; ++i) {
        means[i] = mean_of(split[i]);
        vars[i] = variance_of(split[i], means[i]);
    }
    const double within = mean_of(vars);
    const double grand = mean_of(means);
    double between = 0.0;  // B = n/(m-1) * sum (mean_j - grand)^2
    for (const double mu : means) between += (mu - grand) * (mu - grand);
    between *= n / static_cast<double>(m - 1);

    RhatResult r;
    if (within == 0.0) {
        r.degenerate = true;
        r.chains_agree = between == 0.0;
        r.value = std::numeric_limits<double>::infinity();
        return r;
    }
    const double pooled = (n - 1.0) / n * within + between / n;
    r.value = std::sqrt(pooled / within);
    return r;
}

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw ValidationError("quantile of empty sample");
    if (p <= 0.0) return sorted.front();
    if (p >= 1.0) return sorted.back();
    const double h = static_cast<double>(sorted.size() - 1) * p;
    const std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

DistributionSummary hamming_error_distribution(const PosteriorSamples& samples,
                                               const DirectedGraph& estimate) {
    if (samples.total_draws() == 0)
        throw ValidationError("hamming_error_distribution: no posterior draws");
    if (estimate.size() != samples.n)
        throw DimensionError("hamming_error_distribution: estimate has wrong vertex count");
    DistributionSummary out;
    out.values.reserve(static_cast<std::size_t>(samples.total_draws()));
    for (const auto& chain : samples.chains)
        for (const auto& draw : chain)
            out.values.push_back(static_cast<double>(hamming(draw.theta, estimate)));
    out.mean = mean_of(out.values);
    std::vector<double> sorted = out.values;
    std::sort(sorted.begin(), sorted.end());
    out.q025 = quantile_sorted(sorted, 0.025);
    out.q975 = quantile_sorted(sorted, 0.975);
    return out;
}

Histogram make_histogram(std::span<const double> values, int bins) {
    Histogram h;
    if (values.empty() || bins < 1) return h;
    h.lo = *std::min_element(values.begin(), values.end());
    h.hi = *std::max_element(values.begin(), values.end());
    h.counts.assign(static_cast<std::size_t>(bins), 0);
    const double width = h.hi - h.lo;
    for (const double v : values) {
        std::size_t b = width == 0.0
                            ? 0
                            : static_cast<std::size_t>((v - h.lo) / width * static_cast<double>(bins));
        if (b >= h.counts.size()) b = h.counts.size() - 1;
        ++h.counts[b];
    }
    return h;
}

RateSummary rate_summary(const PosteriorSamples& samples) {
    const long long total = samples.total_draws();
    if (total == 0) throw ValidationError("rate_summary: no posterior draws");
    const std::size_t k = samples.informant_ids.size();
    RateSummary out;
    out.informants.resize(k);
    for (std::size_t i = 0; i < k; ++i) out.informants[i].informant_id = samples.informant_ids[i];
    for (const auto& chain : samples.chains) {
        for (const auto& draw : chain) {
            for (std::size_t i = 0; i < k; ++i) {
                out.informants[i].self_fp += draw.rates[i].self.fp;
                out.informants[i].self_fn += draw.rates[i].self.fn;
                out.informants[i].proxy_fp += draw.rates[i].proxy.fp;
                out.informants[i].proxy_fn += draw.rates[i].proxy.fn;
            }
        }
    }
    std::vector<double> fp_diffs(k), fn_diffs(k);
    for (std::size_t i = 0; i < k; ++i) {
        auto& s = out.informants[i];
        s.self_fp /= static_cast<double>(total);
        s.self_fn /= static_cast<double>(total);
        s.proxy_fp /= static_cast<double>(total);
        s.proxy_fn /= static_cast<double>(total);
        s.fp_diff = s.self_fp - s.proxy_fp;
        s.fn_diff = s.self_fn - s.proxy_fn;
        fp_diffs[i] = s.fp_diff;
        fn_diffs[i] = s.fn_diff;
    }
    out.fp_diff_hist = make_histogram(fp_diffs, 30);
    out.fn_diff_hist = make_histogram(fn_diffs, 30);
    return out;
}

DensitySummary density_table(const PosteriorSamples& samples) {
    const long long total = samples.total_draws();
    if (total == 0) throw ValidationError("density_table: no posterior draws");
    double sum = 0.0;
    for (const auto& chain : samples.chains)
        for (const auto& draw : chain) sum += density(draw.theta);
    DensitySummary out;
    out.mean_density = sum / static_cast<double>(total);
    if (out.mean_density == 0.0)
        throw UndefinedRatioError("density_table: posterior mean density is zero");
    out.opportunity_ratio = (1.0 - out.mean_density) / out.mean_density;
    return out;
}

std::vector<ScalarTrace> monitored_traces(const PosteriorSamples& samples) {
    if (samples.total_draws() == 0)
        throw ValidationError("monitored_traces: no posterior draws");
    const std::size_t k = samples.informant_ids.size();
    std::vector<ScalarTrace> traces;
    auto add = [&](const std::string& name) {
        traces.push_back({name, std::vector<std::vector<double>>(samples.chains.size())});
        for (std::size_t c = 0; c < samples.chains.size(); ++c)
            traces.back().chains[c].reserve(samples.chains[c].size());
        return traces.size() - 1;
    };
    const std::size_t t_density = add("density");
    std::size_t t_sfp = 0, t_sfn = 0, t_pfp = 0, t_pfn = 0;
    if (k > 0) {
        t_sfp = add("self_fp_mean");
        t_sfn = add("self_fn_mean");
        t_pfp = add("proxy_fp_mean");
        t_pfn = add("proxy_fn_mean");
    }
    const std::size_t t_ll = add("log_likelihood");

    for (std::size_t c = 0; c < samples.chains.size(); ++c) {
        for (std::size_t d = 0; d < samples.chains[c].size(); ++d) {
            const BnamState& draw = samples.chains[c][d];
            traces[t_density].chains[c].push_back(density(draw.theta));
            if (k > 0) {
                double sfp = 0, sfn = 0, pfp = 0, pfn = 0;
                for (const auto& r : draw.rates) {
                    sfp += r.self.fp;
                    sfn += r.self.fn;
                    pfp += r.proxy.fp;
                    pfn += r.proxy.fn;
                }
                const double kd = static_cast<double>(k);
                traces[t_sfp].chains[c].push_back(sfp / kd);
                traces[t_sfn].chains[c].push_back(sfn / kd);
                traces[t_pfp].chains[c].push_back(pfp / kd);
                traces[t_pfn].chains[c].push_back(pfn / kd);
            }
            traces[t_ll].chains[c].push_back(samples.log_liks[c][d]);
        }
    }
    return traces;
}

ConvergenceReport convergence_report(const PosteriorSamples& samples, double threshold) {
    ConvergenceReport report;
    report.threshold = threshold;
    report.max_rhat = 0.0;
    for (const auto& trace : monitored_traces(samples)) {
        const RhatResult r = split_rhat(trace);
        report.rhats.emplace_back(trace.name, r);
        if (r.degenerate && r.chains_agree) continue;  // constant everywhere: no evidence either way
        report.max_rhat = std::max(report.max_rhat, r.value);
    }
    report.pass = report.max_rhat < threshold;
    return report;
}

}  // namespace lasnet
