#pragma once

#include <string>

#include "scl/experiments.hpp"

// Text emitters for experiment results. Numeric cells use shortest round-trip
// formatting, so a rerun that reproduces the same numbers reproduces the same bytes.
// Wall time never appears here; it lives in the run manifest.
namespace scl {

// Column order is part of the format:
// experiment,d,F,s,noise,statistic,value,stderr,bound,bound_name,satisfied,trials,seed
// Rows without a bound leave bound, bound_name and satisfied empty. No cell ever
// contains a comma, so there is no quoting.
std::string to_csv(const ExperimentResult& result);

// Same rows as objects, plus metadata (seed, version, log convention, notes).
std::string to_json(const ExperimentResult& result);

// Round-trip-exact decimal text for one value (shared by CSV and the CLI).
std::string format_scalar(Scalar v);

const char* to_string(FSpec::Rule rule);
std::string to_string(const FSpec& f);
std::string config_to_json_text(const ExperimentConfig& config);

}  // namespace scl
