#pragma once

#include <string>

#include "lasnet/analysis.hpp"
#include "lasnet/bnam.hpp"

namespace lasnet {

// Posterior export directory layout:
//   meta.json    config, priors, data fingerprint, R-hat table
//   gamma.csv    chain,iter,mutual,asymmetric,null
//   rates.csv    chain,iter,informant,family,value   (long format)
//   scalars.csv  chain,iter,density,log_likelihood
//   theta/       edge lists, one block per draw, in a single gzip stream
// All numeric output is full precision and byte-reproducible.
void save_posterior(const PosteriorSamples& samples, const std::string& dir);

PosteriorSamples load_posterior(const std::string& dir);

}  // namespace lasnet
