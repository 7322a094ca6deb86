#include "lasnet/graph.hpp"

#include <string>

#include "lasnet/errors.hpp"

namespace lasnet {

DirectedGraph::DirectedGraph(int n) : n_(n) {
    if (n < 1) throw InvalidGraphError("graph needs at least one vertex, got " + std::to_string(n));
    adj_.assign(static_cast<std::size_t>(n) * n, 0);
}

DirectedGraph::DirectedGraph(int n, std::span<const std::pair<int, int>> edges) : DirectedGraph(n) {
    for (const auto& [from, to] : edges) set_edge(from, to, true);
}

void DirectedGraph::check_vertex(int v) const {
    if (v < 0 || v >= n_)
        throw InvalidGraphError("vertex " + std::to_string(v) + " out of range [0, " +
                                std::to_string(n_) + ")");
}

bool DirectedGraph::edge(int from, int to) const {
    check_vertex(from);
    check_vertex(to);
    return adj_[static_cast<std::size_t>(from) * n_ + to] != 0;
}

void DirectedGraph::set_edge(int from, int to, bool present) {
    check_vertex(from);
    check_vertex(to);
    if (from == to && present)
        throw InvalidGraphError("self-loop " + std::to_string(from) + "->" + std::to_string(to) +
                                " rejected");
    adj_[static_cast<std::size_t>(from) * n_ + to] = present ? 1 : 0;
}

long long DirectedGraph::edge_count() const {
    long long m = 0;
    for (const auto v : adj_) m += v;
    return m;
}

std::vector<std::pair<int, int>> DirectedGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int j = 0; j < n_; ++j)
        for (int k = 0; k < n_; ++k)
            if (adj_[static_cast<std::size_t>(j) * n_ + k]) out.emplace_back(j, k);
    return out;
}

double density(const DirectedGraph& g) {
    if (g.size() < 2) throw InvalidGraphError("density undefined for graphs with fewer than 2 vertices");
    return static_cast<double>(g.edge_count()) / static_cast<double>(g.pair_count());
}

DyadCensus dyad_census(const DirectedGraph& g) {
    if (g.size() < 2) throw InvalidGraphError("dyad census undefined for graphs with fewer than 2 vertices");
    DyadCensus c;
    const int n = g.size();
    for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
            const int state = (g.edge(j, k) ? 1 : 0) + (g.edge(k, j) ? 1 : 0);
            if (state == 2)
                ++c.mutual;
            else if (state == 1)
                ++c.asymmetric;
            else
                ++c.nulls;
        }
    }
    return c;
}

long long hamming(const DirectedGraph& a, const DirectedGraph& b) {
    if (a.size() != b.size())
        throw DimensionError("hamming: size mismatch (" + std::to_string(a.size()) + " vs " +
                             std::to_string(b.size()) + ")");
    long long d = 0;
    const int n = a.size();
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            if (j != k && a.edge(j, k) != b.edge(j, k)) ++d;
    return d;
}

double opportunity_ratio(const DirectedGraph& g) {
    const long long m = g.edge_count();
    if (m == 0) throw UndefinedRatioError("opportunity ratio undefined for an edgeless graph");
    const long long nulls = g.pair_count() - m;
    return static_cast<double>(nulls) / static_cast<double>(m);
}

}  // namespace lasnet
