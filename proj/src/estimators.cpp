#include "lasnet/estimators.hpp"

namespace lasnet {

namespace {

enum class Combine { Union, Intersection };

// Resolve one edge variable from its two endpoint reports.
bool combine_endpoint_reports(Report sender_view, Report receiver_view, Combine rule) {
    const bool sender_missing = sender_view == Report::Missing;
    const bool receiver_missing = receiver_view == Report::Missing;
    if (sender_missing && receiver_missing) return false;
    if (sender_missing) return receiver_view == Report::Present;
    if (receiver_missing) return sender_view == Report::Present;
    if (rule == Combine::Union)
        return sender_view == Report::Present || receiver_view == Report::Present;
    return sender_view == Report::Present && receiver_view == Report::Present;
}

DirectedGraph las(const ReportArray& y, Combine rule) {
    const int n = y.size();
    DirectedGraph g(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const Report sent = y.by_vertex(i, i, j);      // i's report of i->j
            const Report received = y.by_vertex(j, i, j);  // j's report of i->j
            g.set_edge(i, j, combine_endpoint_reports(sent, received, rule));
        }
    }
    return g;
}

}  // namespace

DirectedGraph las_union(const ReportArray& y) {
    return las(y, Combine::Union);
}

DirectedGraph las_intersection(const ReportArray& y) {
    return las(y, Combine::Intersection);
}

DirectedGraph self_report(const ReportArray& y) {
    const int n = y.size();
    DirectedGraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) g.set_edge(i, j, y.by_vertex(i, i, j) == Report::Present);
    return g;
}

}  // namespace lasnet
