#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace lasnet {

// One informant's view of one ordered pair. Missing covers both cells never
// asked about (the diagonal) and absent-by-design informants.
enum class Report : std::uint8_t { Absent = 0, Present = 1, Missing = 2 };

// Informant-by-sender-by-receiver ternary array. Each informant is a vertex
// of the graph being measured; informants() may be a strict subset of the
// vertex set. Diagonal cells are Missing by construction.
class ReportArray {
public:
    // All cells start Missing.
    ReportArray(int n, std::vector<int> informant_ids);

    int size() const { return n_; }              // vertex count
    int informant_count() const { return k_; }   // slice count

    const std::vector<int>& informant_ids() const { return ids_; }

    // Slice index for a vertex, or -1 if the vertex is not an informant.
    int slice_of(int vertex) const;

    Report at(int slice, int sender, int receiver) const;
    void set(int slice, int sender, int receiver, Report value);

    // Report by informant *vertex* id; Missing when the vertex has no slice.
    Report by_vertex(int vertex, int sender, int receiver) const;

    // Contiguous n*n view of one informant's slice (row-major by sender).
    std::span<const Report> slice(int s) const;

    // Content hash (FNV-1a over shape, ids, and cells).
    std::uint64_t fingerprint() const;

    bool operator==(const ReportArray&) const = default;

private:
    std::size_t index(int slice, int sender, int receiver) const;

    int n_ = 0;
    int k_ = 0;
    std::vector<int> ids_;
    std::vector<int> slice_of_;   // size n, -1 where not an informant
    std::vector<Report> data_;    // k*n*n
};

}  // namespace lasnet
