#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace lasnet {

// Counts of unordered vertex pairs by state: both directed edges present
// (mutual), exactly one (asymmetric), neither (null). Totals n(n-1)/2.
struct DyadCensus {
    long long mutual = 0;
    long long asymmetric = 0;
    long long nulls = 0;

    long long total() const { return mutual + asymmetric + nulls; }
    bool operator==(const DyadCensus&) const = default;
};

// Dense boolean adjacency matrix over a fixed vertex set. No self-loops:
// the diagonal is structurally zero and attempts to set it throw.
//
// Value semantics throughout; copies are cheap at the target sizes (n <~ 100).
class DirectedGraph {
public:
    DirectedGraph() = default;  // n == 0 placeholder, unusable until assigned
    explicit DirectedGraph(int n);
    DirectedGraph(int n, std::span<const std::pair<int, int>> edges);

    int size() const { return n_; }

    bool edge(int from, int to) const;
    void set_edge(int from, int to, bool present);

    // Number of true off-diagonal cells, M(theta).
    long long edge_count() const;

    // Off-diagonal cell count n(n-1).
    long long pair_count() const { return static_cast<long long>(n_) * (n_ - 1); }

    // Edges in (from, to) lexicographic order.
    std::vector<std::pair<int, int>> edges() const;

    bool operator==(const DirectedGraph&) const = default;

private:
    void check_vertex(int v) const;

    int n_ = 0;
    std::vector<std::uint8_t> adj_;  // row-major n*n
};

// Fraction of present off-diagonal cells. Requires n >= 2.
double density(const DirectedGraph& g);

// Unordered-pair census. Requires n >= 2.
DyadCensus dyad_census(const DirectedGraph& g);

// Number of off-diagonal cells on which the two graphs disagree.
// Requires equal vertex counts.
long long hamming(const DirectedGraph& a, const DirectedGraph& b);

// N(theta)/M(theta): how many false-positive opportunities exist per
// false-negative opportunity. Requires at least one edge.
double opportunity_ratio(const DirectedGraph& g);

}  // namespace lasnet
