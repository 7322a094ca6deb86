#pragma once

#include <string>
#include <vector>

#include "lasnet/graph.hpp"
#include "lasnet/report.hpp"

namespace lasnet {

// On-disk container for one informant-report study. Informants may be a
// subset of the roster; converting to a ReportArray expands the other
// vertices into all-missing slices.
struct CssInformant {
    int id = 0;
    std::vector<Report> reports;  // n*n row-major by sender
};

struct CssDocument {
    int n = 0;
    std::string relation;
    bool directed = true;
    std::string study;  // optional free-form label
    std::vector<CssInformant> informants;

    void validate() const;

    // Every roster vertex becomes an informant slice; vertices without a
    // block in the document are all-missing (absent by design).
    ReportArray to_report_array() const;

    static CssDocument from_report_array(const ReportArray& y, const std::string& relation);
};

enum class CssFormat { Auto, Json, StackedText };

CssDocument read_css(const std::string& path, CssFormat format = CssFormat::Auto);
void write_css(const CssDocument& doc, const std::string& path,
               CssFormat format = CssFormat::Auto);

// Convenience: read + expand in one step.
ReportArray load_css(const std::string& path, CssFormat format = CssFormat::Auto);
void save_css(const ReportArray& y, const std::string& relation, const std::string& path,
              CssFormat format = CssFormat::Auto);

// Estimated-graph files: {"n": ..., "edges": [[from, to], ...]}.
DirectedGraph load_graph_json(const std::string& path);
void save_graph_json(const DirectedGraph& g, const std::string& path);

}  // namespace lasnet
