#include "lasnet/theory.hpp"

#include <cmath>
#include <string>

#include "lasnet/errors.hpp"

namespace lasnet {

namespace {

void check_rates(const ErrorRatePair& r, const char* who) {
    if (!r.valid())
        throw ValidationError(std::string(who) + ": rates must lie in [0, 1], got fp=" +
                              std::to_string(r.fp) + " fn=" + std::to_string(r.fn));
}

}  // namespace

double edge_error_prob(LasRule rule, const ErrorRatePair& rates_i, const ErrorRatePair& rates_j,
                       bool edge_present) {
    check_rates(rates_i, "edge_error_prob");
    check_rates(rates_j, "edge_error_prob");
    if (rule == LasRule::Intersection) {
        if (edge_present) return 1.0 - (1.0 - rates_i.fn) * (1.0 - rates_j.fn);
        return rates_i.fp * rates_j.fp;
    }
    if (edge_present) return rates_i.fn * rates_j.fn;
    return 1.0 - (1.0 - rates_i.fp) * (1.0 - rates_j.fp);
}

double expected_hamming(LasRule rule, long long edges, long long nulls,
                        const ErrorRatePair& rates) {
    check_rates(rates, "expected_hamming");
    if (edges < 0 || nulls < 0)
        throw ValidationError("expected_hamming: edge and null counts must be nonnegative");
    const double m = static_cast<double>(edges);
    const double n = static_cast<double>(nulls);
    const double fp = rates.fp, fn = rates.fn;
    if (rule == LasRule::Intersection) return m * (2.0 * fn - fn * fn) + n * fp * fp;
    return m * fn * fn + n * (2.0 * fp - fp * fp);
}

double expected_hamming(LasRule rule, const DirectedGraph& truth,
                        std::span<const ErrorRatePair> vertex_rates) {
    const int n = truth.size();
    if (static_cast<int>(vertex_rates.size()) != n)
        throw DimensionError("expected_hamming: need one rate pair per vertex (" +
                             std::to_string(vertex_rates.size()) + " for n=" + std::to_string(n) +
                             ")");
    double total = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j)
                total += edge_error_prob(rule, vertex_rates[i], vertex_rates[j], truth.edge(i, j));
    return total;
}

double critical_density(const ErrorRatePair& rates) {
    check_rates(rates, "critical_density");
    if (rates.fn == 0.0 || rates.fn == 1.0)
        throw DegenerateRateError("critical_density: fn must lie strictly inside (0, 1)");
    const double r = rates.fp * (1.0 - rates.fp) / (rates.fn * (1.0 - rates.fn));
    return r / (1.0 + r);
}

RulePreference compare_rules(long long edges, long long nulls, const ErrorRatePair& rates) {
    check_rates(rates, "compare_rules");
    // Sign of E[H_intersection] - E[H_union] reduces to M*fn(1-fn) - N*fp(1-fp);
    // the (x - x*x) form keeps hand-checkable ties bitwise exact
    const double lhs = static_cast<double>(edges) * (rates.fn - rates.fn * rates.fn);
    const double rhs = static_cast<double>(nulls) * (rates.fp - rates.fp * rates.fp);
    if (lhs < rhs) return RulePreference::IntersectionBetter;
    if (lhs > rhs) return RulePreference::UnionBetter;
    return RulePreference::Tie;
}

RateGrid correctness_grid(LasRule rule, bool edge_present, std::span<const double> fp_grid,
                          std::span<const double> fn_grid) {
    RateGrid g;
    g.fp_values.assign(fp_grid.begin(), fp_grid.end());
    g.fn_values.assign(fn_grid.begin(), fn_grid.end());
    g.values.reserve(g.fp_values.size() * g.fn_values.size());
    for (const double fp : g.fp_values)
        for (const double fn : g.fn_values) {
            const ErrorRatePair r{fp, fn};
            g.values.push_back(1.0 - edge_error_prob(rule, r, r, edge_present));
        }
    return g;
}

RateGrid critical_density_grid(std::span<const double> fp_grid, std::span<const double> fn_grid) {
    RateGrid g;
    g.fp_values.assign(fp_grid.begin(), fp_grid.end());
    g.fn_values.assign(fn_grid.begin(), fn_grid.end());
    const std::size_t cells = g.fp_values.size() * g.fn_values.size();
    g.values.reserve(cells);
    g.perverse.reserve(cells);
    for (const double fp : g.fp_values)
        for (const double fn : g.fn_values) {
            g.values.push_back(critical_density({fp, fn}));
            g.perverse.push_back(fp + fn > 1.0 ? 1 : 0);
        }
    return g;
}

std::vector<double> grid_values(double lo, double hi, double step) {
    if (step <= 0.0) throw ValidationError("grid step must be positive");
    if (hi < lo) throw ValidationError("grid bounds out of order");
    std::vector<double> v;
    const long long count = static_cast<long long>(std::floor((hi - lo) / step + 0.5));
    v.reserve(static_cast<std::size_t>(count) + 1);
    for (long long i = 0; i <= count; ++i) v.push_back(lo + static_cast<double>(i) * step);
    // keep the top endpoint exact when step divides the range
    if (!v.empty() && std::abs(v.back() - hi) < step * 1e-9) v.back() = hi;
    return v;
}

}  // namespace lasnet
