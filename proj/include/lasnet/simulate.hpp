#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "lasnet/graph.hpp"
#include "lasnet/report.hpp"
#include "lasnet/rng.hpp"
#include "lasnet/theory.hpp"

namespace lasnet {

// Random digraph from the dyad-type family: each unordered pair becomes
// mutual with probability gamma[0], each asymmetric orientation with
// probability gamma[1]/2, null with probability gamma[2].
DirectedGraph sample_uman_graph(int n, const std::array<double, 3>& gamma, Rng& rng);

// Exactly `edges` present cells, placed uniformly at random among the
// n(n-1) off-diagonal positions.
DirectedGraph sample_fixed_edge_graph(int n, long long edges, Rng& rng);

// Error-prone reports from every vertex on every ordered pair: true edges
// are dropped with the informant's fn rate and true non-edges fabricated
// with the fp rate, self or proxy per scope. Vertices in missing_ids get
// all-missing slices. rates must hold one quadruple per vertex.
ReportArray sample_reports(const DirectedGraph& truth, std::span<const InformantRates> rates,
                           std::span<const int> missing_ids, Rng& rng);

// Hamming error of both LAS rules for one simulated set of self-reports.
// Only the 2 endpoint reports per ordered pair are drawn; those are the
// only cells either rule consults.
struct LasErrorSample {
    long long union_error = 0;
    long long intersection_error = 0;
};
LasErrorSample simulate_las_errors(const DirectedGraph& truth, const ErrorRatePair& rates,
                                   Rng& rng);

enum class TruthMode {
    IndependentEdges,  // gamma = (d^2, 2d(1-d), (1-d)^2): iid edges at density d
    FixedEdgeCount     // exactly round(d * n(n-1)) edges
};

struct CrossoverCell {
    double density = 0.0;
    LasRule rule = LasRule::Union;
    double mean_hamming = 0.0;
    double se = 0.0;
    double expected_hamming = 0.0;
    int replicates = 0;
};

struct CrossoverTable {
    std::vector<CrossoverCell> rows;  // two rows (union, intersection) per density
};

// Monte Carlo comparison of the two rules across a density grid, with the
// closed-form expectation alongside. Replicate streams derive from
// (seed, cell, replicate), so results do not depend on scheduling.
CrossoverTable crossover_experiment(int n, std::span<const double> densities,
                                    const ErrorRatePair& rates, int replicates,
                                    std::uint64_t seed,
                                    TruthMode mode = TruthMode::FixedEdgeCount);

}  // namespace lasnet
