#include "lasnet/bnam.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>
#include <utility>

#include "lasnet/errors.hpp"
#include "lasnet/estimators.hpp"

namespace lasnet {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Per-informant log factors, precomputed once per sweep so the dyad loop is
// all table lookups.
struct LogRates {
    double self_log_fp, self_log_1m_fp, self_log_fn, self_log_1m_fn;
    double proxy_log_fp, proxy_log_1m_fp, proxy_log_fn, proxy_log_1m_fn;
};

std::vector<LogRates> log_rate_tables(const std::vector<InformantRates>& rates) {
    std::vector<LogRates> t;
    t.reserve(rates.size());
    for (const auto& r : rates) {
        t.push_back(LogRates{
            std::log(r.self.fp), std::log1p(-r.self.fp), std::log(r.self.fn),
            std::log1p(-r.self.fn), std::log(r.proxy.fp), std::log1p(-r.proxy.fp),
            std::log(r.proxy.fn), std::log1p(-r.proxy.fn)});
    }
    return t;
}

// Log factor of one non-missing report cell given the candidate edge state.
inline double cell_log_factor(const LogRates& lr, bool self_scope, bool edge_present,
                              Report observed) {
    if (edge_present) {
        if (observed == Report::Present) return self_scope ? lr.self_log_1m_fn : lr.proxy_log_1m_fn;
        return self_scope ? lr.self_log_fn : lr.proxy_log_fn;
    }
    if (observed == Report::Present) return self_scope ? lr.self_log_fp : lr.proxy_log_fp;
    return self_scope ? lr.self_log_1m_fp : lr.proxy_log_1m_fp;
}

void check_state(const ReportArray& y, const BnamState& state, const char* who) {
    if (state.theta.size() != y.size())
        throw DimensionError(std::string(who) + ": theta has " +
                             std::to_string(state.theta.size()) + " vertices, reports have " +
                             std::to_string(y.size()));
    if (static_cast<int>(state.rates.size()) != y.informant_count())
        throw DimensionError(std::string(who) + ": " + std::to_string(state.rates.size()) +
                             " rate quadruples for " + std::to_string(y.informant_count()) +
                             " informants");
}

}  // namespace

void BnamPriors::validate() const {
    for (const double a : gamma_alpha)
        if (!(a > 0.0)) throw ValidationError("gamma hyperparameters must be positive");
    for (const auto& b : {self_fp, self_fn, proxy_fp, proxy_fn})
        if (!b.valid()) throw ValidationError("beta hyperparameters must be positive");
}

void ChainConfig::validate() const {
    if (burn_in < 0) throw ValidationError("burn_in must be nonnegative");
    if (samples < 1) throw ValidationError("samples must be at least 1");
    if (thin < 1) throw ValidationError("thin must be at least 1");
    if (chains < 1) throw ValidationError("chains must be at least 1");
}

double log_likelihood(const ReportArray& y, const BnamState& state) {
    check_state(y, state, "log_likelihood");
    const int n = y.size();
    const auto tables = log_rate_tables(state.rates);
    double total = 0.0;
    for (int s = 0; s < y.informant_count(); ++s) {
        const int vertex = y.informant_ids()[s];
        const auto cells = y.slice(s);
        const LogRates& lr = tables[s];
        for (int j = 0; j < n; ++j) {
            const bool j_is_self = vertex == j;
            for (int k = 0; k < n; ++k) {
                const Report obs = cells[static_cast<std::size_t>(j) * n + k];
                if (obs == Report::Missing) continue;
                total += cell_log_factor(lr, j_is_self || vertex == k, state.theta.edge(j, k), obs);
            }
        }
    }
    return total;
}

std::array<double, 3> update_gamma(const BnamState& state, const BnamPriors& priors, Rng& rng) {
    priors.validate();
    const DyadCensus census = dyad_census(state.theta);
    return rng.dirichlet({priors.gamma_alpha[0] + static_cast<double>(census.mutual),
                          priors.gamma_alpha[1] + static_cast<double>(census.asymmetric),
                          priors.gamma_alpha[2] + static_cast<double>(census.nulls)});
}

std::vector<InformantRates> update_rates(const BnamState& state, const ReportArray& y,
                                         const BnamPriors& priors, Rng& rng) {
    check_state(y, state, "update_rates");
    priors.validate();
    const int n = y.size();
    std::vector<InformantRates> out;
    out.reserve(y.informant_count());
    for (int s = 0; s < y.informant_count(); ++s) {
        const int vertex = y.informant_ids()[s];
        const auto cells = y.slice(s);
        // confusion counts: [self, proxy] x {fp, tn, fn, tp}
        long long fp_c[2] = {0, 0}, tn_c[2] = {0, 0}, fn_c[2] = {0, 0}, tp_c[2] = {0, 0};
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                const Report obs = cells[static_cast<std::size_t>(j) * n + k];
                if (obs == Report::Missing) continue;
                const int scope = (vertex == j || vertex == k) ? 0 : 1;
                const bool reported = obs == Report::Present;
                if (state.theta.edge(j, k)) {
                    (reported ? tp_c : fn_c)[scope]++;
                } else {
                    (reported ? fp_c : tn_c)[scope]++;
                }
            }
        }
        InformantRates r;
        r.self.fp = rng.beta(priors.self_fp.alpha + static_cast<double>(fp_c[0]),
                             priors.self_fp.beta + static_cast<double>(tn_c[0]));
        r.self.fn = rng.beta(priors.self_fn.alpha + static_cast<double>(fn_c[0]),
                             priors.self_fn.beta + static_cast<double>(tp_c[0]));
        r.proxy.fp = rng.beta(priors.proxy_fp.alpha + static_cast<double>(fp_c[1]),
                              priors.proxy_fp.beta + static_cast<double>(tn_c[1]));
        r.proxy.fn = rng.beta(priors.proxy_fn.alpha + static_cast<double>(fn_c[1]),
                              priors.proxy_fn.beta + static_cast<double>(tp_c[1]));
        out.push_back(r);
    }
    return out;
}

DirectedGraph update_theta(const BnamState& state, const ReportArray& y, Rng& rng) {
    check_state(y, state, "update_theta");
    const int n = y.size();
    DirectedGraph theta = state.theta;
    const auto tables = log_rate_tables(state.rates);

    const double log_mutual = std::log(state.gamma[0]);
    const double log_asym = std::log(state.gamma[1]) - std::log(2.0);
    const double log_null = std::log(state.gamma[2]);

    std::vector<std::pair<int, int>> dyads;
    dyads.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) dyads.emplace_back(j, k);
    rng.shuffle(dyads);

    for (const auto& [j, k] : dyads) {
        // Reports on (j,k) constrain theta_jk alone and reports on (k,j)
        // constrain theta_kj alone, so the four joint states share the four
        // accumulated half-weights below.
        double fwd_present = 0.0, fwd_absent = 0.0;  // cell (j,k)
        double rev_present = 0.0, rev_absent = 0.0;  // cell (k,j)
        for (int s = 0; s < y.informant_count(); ++s) {
            const int vertex = y.informant_ids()[s];
            const bool self_scope = vertex == j || vertex == k;
            const auto cells = y.slice(s);
            const Report fwd = cells[static_cast<std::size_t>(j) * n + k];
            if (fwd != Report::Missing) {
                fwd_present += cell_log_factor(tables[s], self_scope, true, fwd);
                fwd_absent += cell_log_factor(tables[s], self_scope, false, fwd);
            }
            const Report rev = cells[static_cast<std::size_t>(k) * n + j];
            if (rev != Report::Missing) {
                rev_present += cell_log_factor(tables[s], self_scope, true, rev);
                rev_absent += cell_log_factor(tables[s], self_scope, false, rev);
            }
        }
        // state order: mutual, j->k only, k->j only, null
        const double logw[4] = {log_mutual + fwd_present + rev_present,
                                log_asym + fwd_present + rev_absent,
                                log_asym + fwd_absent + rev_present,
                                log_null + fwd_absent + rev_absent};
        const double peak = std::max(std::max(logw[0], logw[1]), std::max(logw[2], logw[3]));
        if (peak == kNegInf)
            throw ImpossibleConfigurationError(
                "dyad {" + std::to_string(j) + ", " + std::to_string(k) +
                "}: every state has zero mass (a degenerate rate contradicts the data)");
        double probs[4];
        double norm = 0.0;
        for (int i = 0; i < 4; ++i) {
            probs[i] = std::exp(logw[i] - peak);
            norm += probs[i];
        }
        for (auto& p : probs) p /= norm;
        const std::size_t drawn = rng.categorical(std::span<const double>(probs, 4));
        theta.set_edge(j, k, drawn == 0 || drawn == 1);
        theta.set_edge(k, j, drawn == 0 || drawn == 2);
    }
    return theta;
}

BnamState initial_state(const ReportArray& y, const BnamPriors& priors, int chain_index, Rng& rng) {
    priors.validate();
    BnamState state;
    state.theta = las_union(y);
    // Chains beyond the first start overdispersed: flip each edge variable
    // with probability 0.1 * chain number.
    const int chain_number = chain_index + 1;
    if (chain_number >= 2) {
        const double flip_prob = std::min(1.0, 0.1 * chain_number);
        const int n = y.size();
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (j != k && rng.bernoulli(flip_prob))
                    state.theta.set_edge(j, k, !state.theta.edge(j, k));
    }
    const double alpha_sum = priors.gamma_alpha[0] + priors.gamma_alpha[1] + priors.gamma_alpha[2];
    state.gamma = {priors.gamma_alpha[0] / alpha_sum, priors.gamma_alpha[1] / alpha_sum,
                   priors.gamma_alpha[2] / alpha_sum};
    state.rates.assign(static_cast<std::size_t>(y.informant_count()),
                       InformantRates{{priors.self_fp.mean(), priors.self_fn.mean()},
                                      {priors.proxy_fp.mean(), priors.proxy_fn.mean()}});
    return state;
}

ChainResult run_chain(const ReportArray& y, const BnamPriors& priors, const ChainConfig& config,
                      int chain_index, const ProgressFn& progress) {
    config.validate();
    Rng rng = Rng::stream(config.seed, static_cast<std::uint64_t>(chain_index));
    BnamState state = initial_state(y, priors, chain_index, rng);

    const int total = config.burn_in + config.samples * config.thin;
    ChainResult result;
    result.draws.reserve(static_cast<std::size_t>(config.samples));
    result.log_liks.reserve(static_cast<std::size_t>(config.samples));
    for (int iter = 0; iter < total; ++iter) {
        state.theta = update_theta(state, y, rng);
        state.rates = update_rates(state, y, priors, rng);
        state.gamma = update_gamma(state, priors, rng);
        const int post = iter - config.burn_in;
        if (post >= 0 && (post + 1) % config.thin == 0) {
            result.draws.push_back(state);
            result.log_liks.push_back(log_likelihood(y, state));
        }
        if (progress) progress(chain_index, iter + 1, total);
    }
    return result;
}

PosteriorSamples sample_posterior(const ReportArray& y, const BnamPriors& priors,
                                  const ChainConfig& config, const ProgressFn& progress) {
    config.validate();
    priors.validate();
    PosteriorSamples samples;
    samples.n = y.size();
    samples.informant_ids = y.informant_ids();
    samples.config = config;
    samples.priors = priors;
    samples.data_fingerprint = y.fingerprint();
    samples.chains.resize(static_cast<std::size_t>(config.chains));
    samples.log_liks.resize(static_cast<std::size_t>(config.chains));

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const int workers = static_cast<int>(std::min<unsigned>(hw, static_cast<unsigned>(config.chains)));
    if (workers <= 1) {
        for (int c = 0; c < config.chains; ++c) {
            ChainResult r = run_chain(y, priors, config, c, progress);
            samples.chains[static_cast<std::size_t>(c)] = std::move(r.draws);
            samples.log_liks[static_cast<std::size_t>(c)] = std::move(r.log_liks);
        }
        return samples;
    }

    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> failures(static_cast<std::size_t>(config.chains));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (int c = w; c < config.chains; c += workers) {
                try {
                    ChainResult r = run_chain(y, priors, config, c, progress);
                    samples.chains[static_cast<std::size_t>(c)] = std::move(r.draws);
                    samples.log_liks[static_cast<std::size_t>(c)] = std::move(r.log_liks);
                } catch (...) {
                    failures[static_cast<std::size_t>(c)] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& f : failures)
        if (f) std::rethrow_exception(f);
    return samples;
}

std::vector<double> edge_marginals(const PosteriorSamples& samples) {
    const long long total = samples.total_draws();
    if (total == 0) throw ValidationError("edge_marginals: no posterior draws");
    const int n = samples.n;
    std::vector<long long> counts(static_cast<std::size_t>(n) * n, 0);
    for (const auto& chain : samples.chains)
        for (const auto& draw : chain)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    if (j != k && draw.theta.edge(j, k))
                        ++counts[static_cast<std::size_t>(j) * n + k];
    std::vector<double> marginals(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i)
        marginals[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
    return marginals;
}

DirectedGraph central_graph(const PosteriorSamples& samples) {
    const long long total = samples.total_draws();
    if (total == 0) throw ValidationError("central_graph: no posterior draws");
    const int n = samples.n;
    std::vector<long long> counts(static_cast<std::size_t>(n) * n, 0);
    for (const auto& chain : samples.chains)
        for (const auto& draw : chain)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    if (j != k && draw.theta.edge(j, k))
                        ++counts[static_cast<std::size_t>(j) * n + k];
    DirectedGraph g(n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            // strict majority; a tie at exactly half resolves to absent
            if (j != k && 2 * counts[static_cast<std::size_t>(j) * n + k] > total)
                g.set_edge(j, k, true);
    return g;
}

}  // namespace lasnet
