#include "lasnet/posterior_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gzio.hpp"
#include "lasnet/errors.hpp"

namespace lasnet {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr int kFormatVersion = 1;
constexpr const char* kRateFamilies[4] = {"self_fp", "self_fn", "proxy_fp", "proxy_fn"};

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fingerprint_hex(std::uint64_t fp) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, fp);
    return buf;
}

json priors_to_json(const BnamPriors& p) {
    auto beta = [](const BetaParams& b) { return json{{"alpha", b.alpha}, {"beta", b.beta}}; };
    return json{{"gamma_alpha", p.gamma_alpha},
                {"self_fp", beta(p.self_fp)},
                {"self_fn", beta(p.self_fn)},
                {"proxy_fp", beta(p.proxy_fp)},
                {"proxy_fn", beta(p.proxy_fn)}};
}

BnamPriors priors_from_json(const json& j) {
    BnamPriors p;
    auto beta = [](const json& b) {
        return BetaParams{b.at("alpha").get<double>(), b.at("beta").get<double>()};
    };
    const auto& ga = j.at("gamma_alpha");
    p.gamma_alpha = {ga[0].get<double>(), ga[1].get<double>(), ga[2].get<double>()};
    p.self_fp = beta(j.at("self_fp"));
    p.self_fn = beta(j.at("self_fn"));
    p.proxy_fp = beta(j.at("proxy_fp"));
    p.proxy_fn = beta(j.at("proxy_fn"));
    return p;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (const char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

void for_each_csv_row(const std::string& path, std::size_t expected_fields,
                      const std::function<void(const std::vector<std::string>&)>& fn) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path + ": missing header");
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != expected_fields)
            throw ParseError(path + ":" + std::to_string(line_no) + ": expected " +
                             std::to_string(expected_fields) + " fields, got " +
                             std::to_string(fields.size()));
        fn(fields);
    }
}

double parse_double(const std::string& s, const std::string& where) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (...) {
        throw ParseError(where + ": bad number `" + s + "`");
    }
}

int parse_int(const std::string& s, const std::string& where) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (...) {
        throw ParseError(where + ": bad integer `" + s + "`");
    }
}

}  // namespace

void save_posterior(const PosteriorSamples& samples, const std::string& dir) {
    if (samples.total_draws() == 0) throw ValidationError("save_posterior: no draws");
    fs::create_directories(fs::path(dir) / "theta");

    const ConvergenceReport conv = convergence_report(samples);

    {
        json rhat = json::object();
        for (const auto& [name, r] : conv.rhats)
            rhat[name] = json{{"value", r.value},
                              {"degenerate", r.degenerate},
                              {"chains_agree", r.chains_agree}};
        json meta{{"format_version", kFormatVersion},
                  {"n", samples.n},
                  {"informant_ids", samples.informant_ids},
                  {"config",
                   {{"burn_in", samples.config.burn_in},
                    {"samples", samples.config.samples},
                    {"thin", samples.config.thin},
                    {"chains", samples.config.chains},
                    {"seed", samples.config.seed}}},
                  {"priors", priors_to_json(samples.priors)},
                  {"data_fingerprint", fingerprint_hex(samples.data_fingerprint)},
                  {"rhat", {{"per_trace", rhat},
                            {"max", conv.max_rhat},
                            {"threshold", conv.threshold},
                            {"pass", conv.pass}}}};
        std::ofstream out(fs::path(dir) / "meta.json");
        if (!out) throw IoError("cannot write meta.json under " + dir);
        out << meta.dump(1) << "\n";
    }

    std::ofstream gamma_csv(fs::path(dir) / "gamma.csv");
    std::ofstream rates_csv(fs::path(dir) / "rates.csv");
    std::ofstream scalars_csv(fs::path(dir) / "scalars.csv");
    if (!gamma_csv || !rates_csv || !scalars_csv)
        throw IoError("cannot write posterior CSVs under " + dir);
    gamma_csv << "chain,iter,mutual,asymmetric,null\n";
    rates_csv << "chain,iter,informant,family,value\n";
    scalars_csv << "chain,iter,density,log_likelihood\n";

    gzio::GzipWriter theta_stream((fs::path(dir) / "theta" / "draws.gz").string());

    for (std::size_t c = 0; c < samples.chains.size(); ++c) {
        for (std::size_t d = 0; d < samples.chains[c].size(); ++d) {
            const BnamState& draw = samples.chains[c][d];
            const int iter = samples.iteration_of(static_cast<int>(d));
            gamma_csv << c << ',' << iter << ',' << fmt_double(draw.gamma[0]) << ','
                      << fmt_double(draw.gamma[1]) << ',' << fmt_double(draw.gamma[2]) << '\n';
            for (std::size_t i = 0; i < draw.rates.size(); ++i) {
                const int informant = samples.informant_ids[i];
                const double values[4] = {draw.rates[i].self.fp, draw.rates[i].self.fn,
                                          draw.rates[i].proxy.fp, draw.rates[i].proxy.fn};
                for (int f = 0; f < 4; ++f)
                    rates_csv << c << ',' << iter << ',' << informant << ',' << kRateFamilies[f]
                              << ',' << fmt_double(values[f]) << '\n';
            }
            scalars_csv << c << ',' << iter << ',' << fmt_double(density(draw.theta)) << ','
                        << fmt_double(samples.log_liks[c][d]) << '\n';

            std::ostringstream block;
            const auto edges = draw.theta.edges();
            block << "draw " << c << ' ' << iter << ' ' << edges.size() << '\n';
            for (const auto& [from, to] : edges) block << from << ' ' << to << '\n';
            theta_stream.write(block.str());
        }
    }
    theta_stream.finish();
    if (!gamma_csv || !rates_csv || !scalars_csv)
        throw IoError("write failed for posterior CSVs under " + dir);
}

PosteriorSamples load_posterior(const std::string& dir) {
    PosteriorSamples samples;
    {
        std::ifstream in(fs::path(dir) / "meta.json");
        if (!in) throw IoError("cannot open meta.json under " + dir);
        json meta;
        try {
            in >> meta;
        } catch (const json::parse_error& e) {
            throw ParseError(dir + "/meta.json: " + e.what());
        }
        try {
            if (meta.at("format_version").get<int>() != kFormatVersion)
                throw ParseError(dir + "/meta.json: unsupported format version");
            samples.n = meta.at("n").get<int>();
            samples.informant_ids = meta.at("informant_ids").get<std::vector<int>>();
            const auto& cfg = meta.at("config");
            samples.config.burn_in = cfg.at("burn_in").get<int>();
            samples.config.samples = cfg.at("samples").get<int>();
            samples.config.thin = cfg.at("thin").get<int>();
            samples.config.chains = cfg.at("chains").get<int>();
            samples.config.seed = cfg.at("seed").get<std::uint64_t>();
            samples.priors = priors_from_json(meta.at("priors"));
            samples.data_fingerprint =
                std::stoull(meta.at("data_fingerprint").get<std::string>(), nullptr, 16);
        } catch (const json::exception& e) {
            throw ParseError(dir + "/meta.json: " + e.what());
        }
    }
    const int chains = samples.config.chains;
    const int per_chain = samples.config.samples;
    samples.chains.assign(static_cast<std::size_t>(chains), {});
    samples.log_liks.assign(static_cast<std::size_t>(chains), {});
    for (auto& c : samples.chains) c.reserve(static_cast<std::size_t>(per_chain));

    // theta stream carries the draw skeleton
    {
        const std::string text =
            gzio::read_gzip_file((fs::path(dir) / "theta" / "draws.gz").string());
        std::istringstream in(text);
        std::string word;
        while (in >> word) {
            if (word != "draw") throw ParseError(dir + "/theta: expected `draw`, got `" + word + "`");
            int chain = 0, iter = 0;
            std::size_t edge_count = 0;
            if (!(in >> chain >> iter >> edge_count))
                throw ParseError(dir + "/theta: malformed draw header");
            if (chain < 0 || chain >= chains)
                throw ParseError(dir + "/theta: chain index " + std::to_string(chain) +
                                 " out of range");
            BnamState state;
            state.theta = DirectedGraph(samples.n);
            for (std::size_t e = 0; e < edge_count; ++e) {
                int from = 0, to = 0;
                if (!(in >> from >> to)) throw ParseError(dir + "/theta: truncated edge list");
                state.theta.set_edge(from, to, true);
            }
            state.rates.resize(samples.informant_ids.size());
            samples.chains[static_cast<std::size_t>(chain)].push_back(std::move(state));
        }
    }
    for (int c = 0; c < chains; ++c)
        if (static_cast<int>(samples.chains[static_cast<std::size_t>(c)].size()) != per_chain)
            throw ParseError(dir + "/theta: chain " + std::to_string(c) + " has " +
                             std::to_string(samples.chains[static_cast<std::size_t>(c)].size()) +
                             " draws, expected " + std::to_string(per_chain));

    // draw index by (chain, iter)
    auto draw_index = [&](int chain, int iter, const std::string& where) -> int {
        const int offset = iter - samples.config.burn_in + 1;
        if (chain < 0 || chain >= chains || offset <= 0 || offset % samples.config.thin != 0)
            throw ParseError(where + ": unexpected chain/iter pair " + std::to_string(chain) + "," +
                             std::to_string(iter));
        const int d = offset / samples.config.thin - 1;
        if (d < 0 || d >= per_chain)
            throw ParseError(where + ": iteration " + std::to_string(iter) + " out of range");
        return d;
    };

    const std::string gamma_path = (fs::path(dir) / "gamma.csv").string();
    for_each_csv_row(gamma_path, 5, [&](const std::vector<std::string>& f) {
        const int chain = parse_int(f[0], gamma_path);
        const int d = draw_index(chain, parse_int(f[1], gamma_path), gamma_path);
        auto& state = samples.chains[static_cast<std::size_t>(chain)][static_cast<std::size_t>(d)];
        state.gamma = {parse_double(f[2], gamma_path), parse_double(f[3], gamma_path),
                       parse_double(f[4], gamma_path)};
    });

    std::vector<int> slice_of(static_cast<std::size_t>(samples.n), -1);
    for (std::size_t s = 0; s < samples.informant_ids.size(); ++s)
        slice_of[static_cast<std::size_t>(samples.informant_ids[s])] = static_cast<int>(s);

    const std::string rates_path = (fs::path(dir) / "rates.csv").string();
    for_each_csv_row(rates_path, 5, [&](const std::vector<std::string>& f) {
        const int chain = parse_int(f[0], rates_path);
        const int d = draw_index(chain, parse_int(f[1], rates_path), rates_path);
        const int informant = parse_int(f[2], rates_path);
        if (informant < 0 || informant >= samples.n || slice_of[static_cast<std::size_t>(informant)] < 0)
            throw ParseError(rates_path + ": unknown informant " + std::to_string(informant));
        const int s = slice_of[static_cast<std::size_t>(informant)];
        auto& rates =
            samples.chains[static_cast<std::size_t>(chain)][static_cast<std::size_t>(d)].rates;
        const double v = parse_double(f[4], rates_path);
        if (f[3] == "self_fp")
            rates[static_cast<std::size_t>(s)].self.fp = v;
        else if (f[3] == "self_fn")
            rates[static_cast<std::size_t>(s)].self.fn = v;
        else if (f[3] == "proxy_fp")
            rates[static_cast<std::size_t>(s)].proxy.fp = v;
        else if (f[3] == "proxy_fn")
            rates[static_cast<std::size_t>(s)].proxy.fn = v;
        else
            throw ParseError(rates_path + ": unknown family `" + f[3] + "`");
    });

    const std::string scalars_path = (fs::path(dir) / "scalars.csv").string();
    for (auto& ll : samples.log_liks)
        ll.assign(static_cast<std::size_t>(per_chain), 0.0);
    for_each_csv_row(scalars_path, 4, [&](const std::vector<std::string>& f) {
        const int chain = parse_int(f[0], scalars_path);
        const int d = draw_index(chain, parse_int(f[1], scalars_path), scalars_path);
        samples.log_liks[static_cast<std::size_t>(chain)][static_cast<std::size_t>(d)] =
            parse_double(f[3], scalars_path);
    });

    return samples;
}

}  // namespace lasnet
