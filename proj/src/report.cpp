#include "lasnet/report.hpp"

#include <string>

#include "lasnet/errors.hpp"

namespace lasnet {

ReportArray::ReportArray(int n, std::vector<int> informant_ids)
    : n_(n), k_(static_cast<int>(informant_ids.size())), ids_(std::move(informant_ids)) {
    if (n < 1) throw ValidationError("report array needs at least one vertex, got " + std::to_string(n));
    slice_of_.assign(n_, -1);
    for (int s = 0; s < k_; ++s) {
        const int id = ids_[s];
        if (id < 0 || id >= n_)
            throw ValidationError("informant id " + std::to_string(id) + " out of range [0, " +
                                  std::to_string(n_) + ")");
        if (slice_of_[id] != -1)
            throw ValidationError("duplicate informant id " + std::to_string(id));
        slice_of_[id] = s;
    }
    data_.assign(static_cast<std::size_t>(k_) * n_ * n_, Report::Missing);
}

std::size_t ReportArray::index(int slice, int sender, int receiver) const {
    if (slice < 0 || slice >= k_)
        throw ValidationError("informant slice " + std::to_string(slice) + " out of range");
    if (sender < 0 || sender >= n_ || receiver < 0 || receiver >= n_)
        throw ValidationError("report cell (" + std::to_string(sender) + ", " +
                              std::to_string(receiver) + ") out of range");
    return (static_cast<std::size_t>(slice) * n_ + sender) * n_ + receiver;
}

int ReportArray::slice_of(int vertex) const {
    if (vertex < 0 || vertex >= n_)
        throw ValidationError("vertex " + std::to_string(vertex) + " out of range");
    return slice_of_[vertex];
}

Report ReportArray::at(int slice, int sender, int receiver) const {
    return data_[index(slice, sender, receiver)];
}

void ReportArray::set(int slice, int sender, int receiver, Report value) {
    const std::size_t i = index(slice, sender, receiver);
    if (sender == receiver && value != Report::Missing)
        throw ValidationError("diagonal report cells are missing by construction");
    data_[i] = value;
}

Report ReportArray::by_vertex(int vertex, int sender, int receiver) const {
    const int s = slice_of(vertex);
    if (s < 0) return Report::Missing;
    return at(s, sender, receiver);
}

std::span<const Report> ReportArray::slice(int s) const {
    if (s < 0 || s >= k_)
        throw ValidationError("informant slice " + std::to_string(s) + " out of range");
    return {data_.data() + static_cast<std::size_t>(s) * n_ * n_,
            static_cast<std::size_t>(n_) * n_};
}

std::uint64_t ReportArray::fingerprint() const {
    std::uint64_t h = 0xCBF29CE484222325ull;  // FNV-1a 64
    auto eat = [&h](std::uint64_t v) {
        for (int b = 0; b < 8; ++b) {
            h ^= (v >> (8 * b)) & 0xFF;
            h *= 0x100000001B3ull;
        }
    };
    eat(static_cast<std::uint64_t>(n_));
    eat(static_cast<std::uint64_t>(k_));
    for (const int id : ids_) eat(static_cast<std::uint64_t>(id));
    for (const Report r : data_) {
        h ^= static_cast<std::uint8_t>(r);
        h *= 0x100000001B3ull;
    }
    return h;
}

}  // namespace lasnet
