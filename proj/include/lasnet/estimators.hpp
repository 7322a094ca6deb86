#pragma once

#include "lasnet/graph.hpp"
#include "lasnet/report.hpp"

namespace lasnet {

// Edge (i, j) estimated present when either endpoint affirms it: i reports
// sending to j, or j reports receiving from i. Only the two endpoint
// (self-referential) reports are consulted. When exactly one endpoint report
// is missing the available one decides alone; when both are missing the edge
// is estimated absent.
DirectedGraph las_union(const ReportArray& y);

// Edge present only when both endpoint reports affirm it. Same missing-report
// fallback as las_union.
DirectedGraph las_intersection(const ReportArray& y);

// Edge (i, j) present iff i reports sending to j. Missing counts as absent.
DirectedGraph self_report(const ReportArray& y);

}  // namespace lasnet
