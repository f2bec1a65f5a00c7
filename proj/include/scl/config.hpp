#pragma once

#include <string>

#include "scl/experiments.hpp"

// Declarative run configs: an INI-style file with [run] and [grid] sections,
// comma-separated lists, and # comments. All randomness comes from the single
// seed key; there is no ambient entropy anywhere.
//
//   [run]
//   experiment = recovery-phase     # coherence-tail | interference-tail |
//                                   # recovery-phase | energy-floor |
//                                   # quadratic-separation
//   trials = 200
//   seed = 42
//   parallel = false
//   tile_cols = 256
//   noise_kind = none               # none | gaussian | score
//   readout = transpose             # transpose | least-squares
//   fixed_code = false
//   check_certificate = false
//   calibrated_c = 0.05
//
//   [grid]
//   d = 32, 64
//   F = d^2                         # or "8d", or explicit "256, 512"
//   s = 1, 2, 3
//   noise = 0.0, 0.05
//   delta = 0.01
namespace scl {

// Throws ContractError with the offending line/field named.
ExperimentConfig parse_config_text(const std::string& text);

// Reads the file and parses it; missing file throws FileFormatError.
ExperimentConfig load_config(const std::string& path);

}  // namespace scl
