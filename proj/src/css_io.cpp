#include "lasnet/css_io.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "lasnet/errors.hpp"

namespace lasnet {

namespace {

using nlohmann::json;

CssFormat detect_format(const std::string& path) {
    if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) return CssFormat::Json;
    if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".txt") == 0)
        return CssFormat::StackedText;
    // fall back to sniffing the first non-space byte
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    char c;
    while (in.get(c)) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
        return c == '{' ? CssFormat::Json : CssFormat::StackedText;
    }
    throw ParseError(path + ": empty file");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << content;
    if (!out) throw IoError("write failed for " + path);
}

CssDocument parse_css_json(const std::string& path, const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
    CssDocument doc;
    try {
        doc.n = j.at("n").get<int>();
        doc.relation = j.value("relation", std::string{});
        doc.directed = j.value("directed", true);
        doc.study = j.value("study", std::string{});
        for (const auto& inf : j.at("informants")) {
            CssInformant ci;
            ci.id = inf.at("id").get<int>();
            const auto& rows = inf.at("reports");
            if (static_cast<int>(rows.size()) != doc.n)
                throw ParseError(path + ": informant " + std::to_string(ci.id) + " has " +
                                 std::to_string(rows.size()) + " report rows, expected " +
                                 std::to_string(doc.n));
            for (int r = 0; r < doc.n; ++r) {
                const auto& row = rows[static_cast<std::size_t>(r)];
                if (static_cast<int>(row.size()) != doc.n)
                    throw ParseError(path + ": informant " + std::to_string(ci.id) + " row " +
                                     std::to_string(r) + " has " + std::to_string(row.size()) +
                                     " cells, expected " + std::to_string(doc.n));
                for (const auto& cell : row) {
                    if (cell.is_null())
                        ci.reports.push_back(Report::Missing);
                    else if (cell.is_number_integer() && (cell == 0 || cell == 1))
                        ci.reports.push_back(cell == 1 ? Report::Present : Report::Absent);
                    else
                        throw ParseError(path + ": report cells must be 0, 1, or null");
                }
            }
            doc.informants.push_back(std::move(ci));
        }
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return doc;
}

std::string to_css_json(const CssDocument& doc) {
    json j;
    j["n"] = doc.n;
    j["relation"] = doc.relation;
    j["directed"] = doc.directed;
    if (!doc.study.empty()) j["study"] = doc.study;
    json informants = json::array();
    for (const auto& inf : doc.informants) {
        json rows = json::array();
        for (int r = 0; r < doc.n; ++r) {
            json row = json::array();
            for (int c = 0; c < doc.n; ++c) {
                const Report v = inf.reports[static_cast<std::size_t>(r) * doc.n + c];
                if (v == Report::Missing)
                    row.push_back(nullptr);
                else
                    row.push_back(v == Report::Present ? 1 : 0);
            }
            rows.push_back(std::move(row));
        }
        informants.push_back(json{{"id", inf.id}, {"reports", std::move(rows)}});
    }
    j["informants"] = std::move(informants);
    return j.dump(1) + "\n";
}

// stacked text: header "n k relation", then k blocks of an informant-id line
// followed by n rows of n tokens from {0, 1, NA}
CssDocument parse_css_text(const std::string& path, const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            const auto pos = line.find_first_not_of(" \t\r");
            if (pos == std::string::npos) continue;  // skip blanks
            if (line[pos] == '#') continue;          // comments
            return true;
        }
        return false;
    };
    auto fail = [&](const std::string& msg) -> ParseError {
        return ParseError(path + ":" + std::to_string(line_no) + ": " + msg);
    };

    if (!next_line()) throw ParseError(path + ": empty file");
    std::istringstream header(line);
    int n = 0, k = 0;
    if (!(header >> n >> k)) throw fail("header must be `n k relation`");
    std::string relation;
    std::getline(header, relation);
    const auto start = relation.find_first_not_of(" \t");
    relation = start == std::string::npos ? std::string{} : relation.substr(start);
    while (!relation.empty() && (relation.back() == '\r' || relation.back() == ' '))
        relation.pop_back();

    CssDocument doc;
    doc.n = n;
    doc.relation = relation;
    for (int b = 0; b < k; ++b) {
        if (!next_line()) throw fail("expected informant id line");
        CssInformant ci;
        try {
            ci.id = std::stoi(line);
        } catch (...) {
            throw fail("informant id line is not an integer: `" + line + "`");
        }
        ci.reports.reserve(static_cast<std::size_t>(n) * n);
        for (int r = 0; r < n; ++r) {
            if (!next_line())
                throw fail("informant " + std::to_string(ci.id) + ": expected report row " +
                           std::to_string(r));
            std::istringstream row(line);
            for (int c = 0; c < n; ++c) {
                std::string tok;
                if (!(row >> tok))
                    throw fail("informant " + std::to_string(ci.id) + " row " + std::to_string(r) +
                               ": expected " + std::to_string(n) + " tokens");
                if (tok == "0")
                    ci.reports.push_back(Report::Absent);
                else if (tok == "1")
                    ci.reports.push_back(Report::Present);
                else if (tok == "NA" || tok == "na")
                    ci.reports.push_back(Report::Missing);
                else
                    throw fail("unknown report token `" + tok + "` (want 0, 1, or NA)");
            }
            std::string extra;
            if (row >> extra) throw fail("trailing token `" + extra + "` in report row");
        }
        doc.informants.push_back(std::move(ci));
    }
    if (next_line()) throw fail("unexpected content after the last informant block");
    return doc;
}

std::string to_css_text(const CssDocument& doc) {
    std::ostringstream out;
    out << doc.n << ' ' << doc.informants.size() << ' ' << doc.relation << '\n';
    for (const auto& inf : doc.informants) {
        out << inf.id << '\n';
        for (int r = 0; r < doc.n; ++r) {
            for (int c = 0; c < doc.n; ++c) {
                if (c > 0) out << ' ';
                const Report v = inf.reports[static_cast<std::size_t>(r) * doc.n + c];
                out << (v == Report::Missing ? "NA" : v == Report::Present ? "1" : "0");
            }
            out << '\n';
        }
    }
    return out.str();
}

}  // namespace

void CssDocument::validate() const {
    if (n < 1) throw ValidationError("css document: n must be at least 1");
    std::set<int> seen;
    for (const auto& inf : informants) {
        if (inf.id < 0 || inf.id >= n)
            throw ValidationError("css document: informant id " + std::to_string(inf.id) +
                                  " outside roster [0, " + std::to_string(n) + ")");
        if (!seen.insert(inf.id).second)
            throw ValidationError("css document: duplicate informant id " + std::to_string(inf.id));
        if (static_cast<int>(inf.reports.size()) != n * n)
            throw ValidationError("css document: informant " + std::to_string(inf.id) +
                                  " matrix is not " + std::to_string(n) + "x" + std::to_string(n));
        for (int d = 0; d < n; ++d) {
            const Report diag = inf.reports[static_cast<std::size_t>(d) * n + d];
            if (diag == Report::Present)
                throw ValidationError("css document: informant " + std::to_string(inf.id) +
                                      " reports a self-tie at vertex " + std::to_string(d));
        }
    }
}

ReportArray CssDocument::to_report_array() const {
    validate();
    std::vector<int> ids(static_cast<std::size_t>(n));
    std::iota(ids.begin(), ids.end(), 0);
    ReportArray y(n, ids);
    for (const auto& inf : informants) {
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (j == k) continue;  // diagonal stays missing
                y.set(inf.id, j, k, inf.reports[static_cast<std::size_t>(j) * n + k]);
            }
    }
    return y;
}

CssDocument CssDocument::from_report_array(const ReportArray& y, const std::string& relation) {
    CssDocument doc;
    doc.n = y.size();
    doc.relation = relation;
    for (int s = 0; s < y.informant_count(); ++s) {
        CssInformant ci;
        ci.id = y.informant_ids()[s];
        const auto cells = y.slice(s);
        ci.reports.assign(cells.begin(), cells.end());
        doc.informants.push_back(std::move(ci));
    }
    return doc;
}

CssDocument read_css(const std::string& path, CssFormat format) {
    if (format == CssFormat::Auto) format = detect_format(path);
    const std::string text = read_file(path);
    CssDocument doc = format == CssFormat::Json ? parse_css_json(path, text)
                                                : parse_css_text(path, text);
    doc.validate();
    return doc;
}

void write_css(const CssDocument& doc, const std::string& path, CssFormat format) {
    doc.validate();
    if (format == CssFormat::Auto) {
        format = (path.size() >= 4 && path.compare(path.size() - 4, 4, ".txt") == 0)
                     ? CssFormat::StackedText
                     : CssFormat::Json;
    }
    write_file(path, format == CssFormat::Json ? to_css_json(doc) : to_css_text(doc));
}

ReportArray load_css(const std::string& path, CssFormat format) {
    return read_css(path, format).to_report_array();
}

void save_css(const ReportArray& y, const std::string& relation, const std::string& path,
              CssFormat format) {
    write_css(CssDocument::from_report_array(y, relation), path, format);
}

DirectedGraph load_graph_json(const std::string& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
    try {
        const int n = j.at("n").get<int>();
        DirectedGraph g(n);
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2)
                throw ParseError(path + ": edges must be [from, to] pairs");
            g.set_edge(e[0].get<int>(), e[1].get<int>(), true);
        }
        return g;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void save_graph_json(const DirectedGraph& g, const std::string& path) {
    json j;
    j["n"] = g.size();
    json edges = json::array();
    for (const auto& [from, to] : g.edges()) edges.push_back(json::array({from, to}));
    j["edges"] = std::move(edges);
    write_file(path, j.dump(1) + "\n");
}

}  // namespace lasnet
