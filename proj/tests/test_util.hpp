#pragma once

#include <vector>

#include "lasnet/graph.hpp"
#include "lasnet/report.hpp"
#include "lasnet/rng.hpp"

namespace testutil {

inline lasnet::DirectedGraph random_graph(int n, double density, lasnet::Rng& rng) {
    lasnet::DirectedGraph g(n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            if (j != k && rng.bernoulli(density)) g.set_edge(j, k, true);
    return g;
}

// Report array with every vertex an informant and iid Bernoulli cells
// (no missing values).
inline lasnet::ReportArray random_reports(int n, double p_present, lasnet::Rng& rng) {
    std::vector<int> ids;
    for (int i = 0; i < n; ++i) ids.push_back(i);
    lasnet::ReportArray y(n, ids);
    for (int s = 0; s < n; ++s)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (j != k)
                    y.set(s, j, k,
                          rng.bernoulli(p_present) ? lasnet::Report::Present
                                                   : lasnet::Report::Absent);
    return y;
}

inline lasnet::DirectedGraph complete_graph(int n) {
    lasnet::DirectedGraph g(n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            if (j != k) g.set_edge(j, k, true);
    return g;
}

}  // namespace testutil
