#include "lasnet/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lasnet/errors.hpp"

namespace lasnet {

DirectedGraph sample_uman_graph(int n, const std::array<double, 3>& gamma, Rng& rng) {
    if (n < 2) throw InvalidGraphError("sample_uman_graph: need at least 2 vertices");
    const double sum = gamma[0] + gamma[1] + gamma[2];
    if (!(std::abs(sum - 1.0) < 1e-9) || gamma[0] < 0.0 || gamma[1] < 0.0 || gamma[2] < 0.0)
        throw ValidationError("sample_uman_graph: gamma must be a point on the 3-simplex");
    DirectedGraph g(n);
    const double probs[4] = {gamma[0], gamma[1] / 2.0, gamma[1] / 2.0, gamma[2]};
    for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
            const std::size_t state = rng.categorical(std::span<const double>(probs, 4));
            g.set_edge(j, k, state == 0 || state == 1);
            g.set_edge(k, j, state == 0 || state == 2);
        }
    }
    return g;
}

DirectedGraph sample_fixed_edge_graph(int n, long long edges, Rng& rng) {
    if (n < 2) throw InvalidGraphError("sample_fixed_edge_graph: need at least 2 vertices");
    const long long cells = static_cast<long long>(n) * (n - 1);
    if (edges < 0 || edges > cells)
        throw ValidationError("sample_fixed_edge_graph: edge count " + std::to_string(edges) +
                              " outside [0, " + std::to_string(cells) + "]");
    // partial Fisher-Yates over the off-diagonal cell indices
    std::vector<long long> positions(static_cast<std::size_t>(cells));
    std::iota(positions.begin(), positions.end(), 0LL);
    DirectedGraph g(n);
    for (long long i = 0; i < edges; ++i) {
        const std::size_t j =
            static_cast<std::size_t>(i) +
            static_cast<std::size_t>(rng.uniform_below(static_cast<std::uint64_t>(cells - i)));
        std::swap(positions[static_cast<std::size_t>(i)], positions[j]);
        const long long cell = positions[static_cast<std::size_t>(i)];
        const int row = static_cast<int>(cell / (n - 1));
        int col = static_cast<int>(cell % (n - 1));
        if (col >= row) ++col;  // skip the diagonal
        g.set_edge(row, col, true);
    }
    return g;
}

ReportArray sample_reports(const DirectedGraph& truth, std::span<const InformantRates> rates,
                           std::span<const int> missing_ids, Rng& rng) {
    const int n = truth.size();
    if (static_cast<int>(rates.size()) != n)
        throw DimensionError("sample_reports: need one rate quadruple per vertex");
    for (const auto& r : rates)
        if (!r.valid()) throw ValidationError("sample_reports: rates must lie in [0, 1]");
    std::vector<bool> absent(static_cast<std::size_t>(n), false);
    for (const int id : missing_ids) {
        if (id < 0 || id >= n) throw ValidationError("sample_reports: missing id out of range");
        absent[static_cast<std::size_t>(id)] = true;
    }

    std::vector<int> ids(static_cast<std::size_t>(n));
    std::iota(ids.begin(), ids.end(), 0);
    ReportArray y(n, ids);
    for (int i = 0; i < n; ++i) {
        if (absent[static_cast<std::size_t>(i)]) continue;  // all-missing slice
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                if (j == k) continue;
                const bool self_scope = i == j || i == k;
                const ErrorRatePair& r = self_scope ? rates[i].self : rates[i].proxy;
                bool observed;
                if (truth.edge(j, k))
                    observed = !rng.bernoulli(r.fn);
                else
                    observed = rng.bernoulli(r.fp);
                y.set(i, j, k, observed ? Report::Present : Report::Absent);
            }
        }
    }
    return y;
}

LasErrorSample simulate_las_errors(const DirectedGraph& truth, const ErrorRatePair& rates,
                                   Rng& rng) {
    if (!rates.valid()) throw ValidationError("simulate_las_errors: rates must lie in [0, 1]");
    const int n = truth.size();
    LasErrorSample out;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const bool t = truth.edge(i, j);
            // the sender's and receiver's self-reports on edge i->j
            const bool sender_says = t ? !rng.bernoulli(rates.fn) : rng.bernoulli(rates.fp);
            const bool receiver_says = t ? !rng.bernoulli(rates.fn) : rng.bernoulli(rates.fp);
            if ((sender_says || receiver_says) != t) ++out.union_error;
            if ((sender_says && receiver_says) != t) ++out.intersection_error;
        }
    }
    return out;
}

CrossoverTable crossover_experiment(int n, std::span<const double> densities,
                                    const ErrorRatePair& rates, int replicates,
                                    std::uint64_t seed, TruthMode mode) {
    if (n < 2) throw InvalidGraphError("crossover_experiment: need at least 2 vertices");
    if (replicates < 1) throw ValidationError("crossover_experiment: need at least one replicate");
    for (const double d : densities)
        if (!(d > 0.0 && d < 1.0))
            throw ValidationError("crossover_experiment: densities must lie strictly inside (0, 1)");
    if (!rates.valid()) throw ValidationError("crossover_experiment: rates must lie in [0, 1]");

    const long long cells = static_cast<long long>(n) * (n - 1);
    CrossoverTable table;
    for (std::size_t di = 0; di < densities.size(); ++di) {
        const double d = densities[di];
        const long long fixed_edges = std::llround(d * static_cast<double>(cells));
        double sum_u = 0.0, sumsq_u = 0.0, sum_i = 0.0, sumsq_i = 0.0;
        for (int rep = 0; rep < replicates; ++rep) {
            Rng rng = Rng::stream(seed, (static_cast<std::uint64_t>(di) << 32) |
                                            static_cast<std::uint64_t>(rep));
            DirectedGraph truth =
                mode == TruthMode::FixedEdgeCount
                    ? sample_fixed_edge_graph(n, fixed_edges, rng)
                    : sample_uman_graph(
                          n, {d * d, 2.0 * d * (1.0 - d), (1.0 - d) * (1.0 - d)}, rng);
            const LasErrorSample errs = simulate_las_errors(truth, rates, rng);
            sum_u += static_cast<double>(errs.union_error);
            sumsq_u += static_cast<double>(errs.union_error) * static_cast<double>(errs.union_error);
            sum_i += static_cast<double>(errs.intersection_error);
            sumsq_i += static_cast<double>(errs.intersection_error) *
                       static_cast<double>(errs.intersection_error);
        }
        const double r = static_cast<double>(replicates);
        auto push = [&](LasRule rule, double sum, double sumsq) {
            CrossoverCell cell;
            cell.density = d;
            cell.rule = rule;
            cell.mean_hamming = sum / r;
            const double var = replicates > 1
                                   ? std::max(0.0, (sumsq - sum * sum / r) / (r - 1.0))
                                   : 0.0;
            cell.se = std::sqrt(var / r);
            const long long m = mode == TruthMode::FixedEdgeCount
                                    ? fixed_edges
                                    : static_cast<long long>(0);
            // expectation is linear in the edge count, so the independent-edge
            // mode can use the expected count d*cells directly
            if (mode == TruthMode::FixedEdgeCount) {
                cell.expected_hamming = expected_hamming(rule, m, cells - m, rates);
            } else {
                const double md = d * static_cast<double>(cells);
                const double fp = rates.fp, fn = rates.fn;
                cell.expected_hamming =
                    rule == LasRule::Intersection
                        ? md * (2.0 * fn - fn * fn) + (static_cast<double>(cells) - md) * fp * fp
                        : md * fn * fn + (static_cast<double>(cells) - md) * (2.0 * fp - fp * fp);
            }
            cell.replicates = replicates;
            table.rows.push_back(cell);
        };
        push(LasRule::Union, sum_u, sumsq_u);
        push(LasRule::Intersection, sum_i, sumsq_i);
    }
    return table;
}

}  // namespace lasnet
