#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "lasnet/graph.hpp"
#include "lasnet/report.hpp"
#include "lasnet/rng.hpp"
#include "lasnet/theory.hpp"

namespace lasnet {

struct BetaParams {
    double alpha = 1.0;
    double beta = 11.0;

    double mean() const { return alpha / (alpha + beta); }
    bool valid() const { return alpha > 0.0 && beta > 0.0; }
    bool operator==(const BetaParams&) const = default;
};

// Hyperparameters: Dirichlet over dyad-type rates (Jeffreys by default) and
// independent Beta priors for the four error-rate families.
struct BnamPriors {
    std::array<double, 3> gamma_alpha{0.5, 0.5, 0.5};
    BetaParams self_fp{1.0, 11.0};
    BetaParams self_fn{1.0, 11.0};
    BetaParams proxy_fp{1.0, 11.0};
    BetaParams proxy_fn{1.0, 11.0};

    void validate() const;
    bool operator==(const BnamPriors&) const = default;
};

// One sampler state: the graph, dyad-type rates on the simplex, and one
// rate quadruple per informant slice.
struct BnamState {
    DirectedGraph theta;
    std::array<double, 3> gamma{};               // mutual / asymmetric / null mass
    std::vector<InformantRates> rates;           // parallel to ReportArray slices
};

struct ChainConfig {
    int burn_in = 500;
    int samples = 1000;
    int thin = 1;
    int chains = 4;
    std::uint64_t seed = 0;

    void validate() const;
    bool operator==(const ChainConfig&) const = default;
};

// Ordered post-burn-in, post-thinning draws, one list per chain, plus the
// provenance needed to make exports self-describing.
struct PosteriorSamples {
    int n = 0;
    std::vector<int> informant_ids;
    ChainConfig config;
    BnamPriors priors;
    std::uint64_t data_fingerprint = 0;

    std::vector<std::vector<BnamState>> chains;
    std::vector<std::vector<double>> log_liks;  // parallel to chains

    long long total_draws() const {
        long long t = 0;
        for (const auto& c : chains) t += static_cast<long long>(c.size());
        return t;
    }
    // Absolute sweep index of draw d within its chain (0-based sweeps).
    int iteration_of(int draw_index) const {
        return config.burn_in + (draw_index + 1) * config.thin - 1;
    }
};

// Log of Pr(Y | theta, rates): sum over non-missing cells of the Bernoulli
// factor, with self rates when the informant is an endpoint of the pair and
// proxy rates otherwise. A rate pinned at 0 or 1 meeting a contradicting
// report yields -inf, never a crash.
double log_likelihood(const ReportArray& y, const BnamState& state);

// Conjugate full conditional: Dirichlet(gamma_alpha + dyad census of theta).
std::array<double, 3> update_gamma(const BnamState& state, const BnamPriors& priors, Rng& rng);

// Conjugate Beta full conditionals per informant and family, counting
// confusion cells of the informant's non-missing reports against theta.
std::vector<InformantRates> update_rates(const BnamState& state, const ReportArray& y,
                                         const BnamPriors& priors, Rng& rng);

// One sweep over unordered dyads in a freshly shuffled order, each drawn from
// its exact 4-point full conditional:
//   weight(state) = prior_mass(state | gamma) * product of report factors,
// with prior mass gamma_1 (mutual), gamma_2 / 2 (each asymmetric
// orientation), gamma_3 (null). Weights are combined in log space.
DirectedGraph update_theta(const BnamState& state, const ReportArray& y, Rng& rng);

// Overdispersed start: theta from las_union (chain c >= 2 flips each edge
// variable with probability 0.1*c, 1-based numbering), gamma and rates at
// their prior means.
BnamState initial_state(const ReportArray& y, const BnamPriors& priors, int chain_index, Rng& rng);

using ProgressFn = std::function<void(int chain_index, int iteration, int total_iterations)>;

struct ChainResult {
    std::vector<BnamState> draws;
    std::vector<double> log_liks;
};

// Full Gibbs chain: per sweep theta -> rates -> gamma; burn-in discarded,
// then every thin-th state recorded until `samples` draws exist.
// Deterministic given (y, priors, config, chain_index).
ChainResult run_chain(const ReportArray& y, const BnamPriors& priors, const ChainConfig& config,
                      int chain_index, const ProgressFn& progress = {});

// All chains (concurrently when hardware allows); result assembly is a
// deterministic merge by chain index.
PosteriorSamples sample_posterior(const ReportArray& y, const BnamPriors& priors,
                                  const ChainConfig& config, const ProgressFn& progress = {});

// Pooled posterior edge frequencies, row-major n*n (diagonal zero).
std::vector<double> edge_marginals(const PosteriorSamples& samples);

// Edge present iff its pooled marginal exceeds 0.5; exact ties resolve
// to absent.
DirectedGraph central_graph(const PosteriorSamples& samples);

}  // namespace lasnet
