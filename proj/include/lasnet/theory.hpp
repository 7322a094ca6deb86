#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lasnet/graph.hpp"

namespace lasnet {

enum class LasRule { Union, Intersection };

// False positive / false negative probabilities of one informant.
struct ErrorRatePair {
    double fp = 0.0;
    double fn = 0.0;

    bool valid() const { return fp >= 0.0 && fp <= 1.0 && fn >= 0.0 && fn <= 1.0; }
    bool operator==(const ErrorRatePair&) const = default;
};

// Self vs proxy split of one informant's rates.
struct InformantRates {
    ErrorRatePair self;
    ErrorRatePair proxy;

    bool valid() const { return self.valid() && proxy.valid(); }
    bool operator==(const InformantRates&) const = default;
};

// Probability that the rule misclassifies one edge variable whose true state
// is edge_present, given the two endpoint informants' rates.
// Intersection errs with fp_i*fp_j on nulls and 1-(1-fn_i)(1-fn_j) on edges;
// union is the mirror image.
double edge_error_prob(LasRule rule, const ErrorRatePair& rates_i, const ErrorRatePair& rates_j,
                       bool edge_present);

// Expected Hamming error when all informants share the same rates:
//   intersection: M(2fn - fn^2) + N fp^2
//   union:        M fn^2 + N(2fp - fp^2)
double expected_hamming(LasRule rule, long long edges, long long nulls,
                        const ErrorRatePair& rates);

// Heterogeneous form: exact sum over ordered pairs of edge_error_prob with
// per-vertex rates (vertex v reports on its own ties with vertex_rates[v]).
double expected_hamming(LasRule rule, const DirectedGraph& truth,
                        std::span<const ErrorRatePair> vertex_rates);

// Density below which the intersection rule has strictly lower expected
// Hamming error than the union rule:
//   d* = r / (1 + r),  r = fp(1-fp) / (fn(1-fn)).
// Requires fn in (0, 1); fp at 0 or 1 yields d* = 0.
double critical_density(const ErrorRatePair& rates);

enum class RulePreference { IntersectionBetter, Tie, UnionBetter };

// Three-way comparison of expected Hamming error at exact edge/null counts.
RulePreference compare_rules(long long edges, long long nulls, const ErrorRatePair& rates);

// Rectangular grid over (fp, fn); values stored row-major in fp
// (index = fp_index * fn_count + fn_index).
struct RateGrid {
    std::vector<double> fp_values;
    std::vector<double> fn_values;
    std::vector<double> values;
    std::vector<std::uint8_t> perverse;  // nonempty only for critical-density grids

    double at(std::size_t fp_index, std::size_t fn_index) const {
        return values[fp_index * fn_values.size() + fn_index];
    }
    bool perverse_at(std::size_t fp_index, std::size_t fn_index) const {
        return perverse[fp_index * fn_values.size() + fn_index] != 0;
    }
};

// P(correct inference) per grid cell, both informants sharing the cell's
// rates: 1 - edge_error_prob.
RateGrid correctness_grid(LasRule rule, bool edge_present, std::span<const double> fp_grid,
                          std::span<const double> fn_grid);

// d* per grid cell, with cells where fp + fn > 1 flagged perverse (reports
// anticorrelated with truth; the dominance interpretation reverses).
RateGrid critical_density_grid(std::span<const double> fp_grid, std::span<const double> fn_grid);

// Evenly spaced values over [lo, hi] with the given step (endpoints included).
std::vector<double> grid_values(double lo, double hi, double step);

}  // namespace lasnet
