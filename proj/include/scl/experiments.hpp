#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scl/readouts.hpp"
#include "scl/sparse.hpp"
#include "scl/types.hpp"

// Monte Carlo sweeps over (d, F, s, noise) grids: coherence tails, interference sums,
// threshold-recovery phase maps, readout energy floors, and the paired quadratic-load
// comparison. Per-trial seeds are hashed from (master seed, gridpoint, trial), so trial
// parallelism cannot change any reported number. Natural log throughout.
namespace scl {

enum class ExperimentKind {
  CoherenceTail,
  InterferenceTail,
  RecoveryPhase,
  EnergyFloor,
  QuadraticSeparation,
};

const char* to_string(ExperimentKind k);

// F can be given outright or derived from d ("8d", "d^2").
struct FSpec {
  enum class Rule { Explicit, MultipleOfD, SquareOfD };
  Rule rule = Rule::Explicit;
  Index value = 0;  // the explicit F, or the multiplier for MultipleOfD

  Index resolve(Index d) const;
  static FSpec explicit_value(Index F) { return {Rule::Explicit, F}; }
  static FSpec multiple_of_d(Index k) { return {Rule::MultipleOfD, k}; }
  static FSpec square_of_d() { return {Rule::SquareOfD, 0}; }
};

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::CoherenceTail;
  std::vector<Index> d_values;
  std::vector<FSpec> F_values;
  std::vector<Index> s_values;        // sparsity, or the interference count m
  std::vector<Scalar> noise_values;   // sigma or nu, per noise_kind
  NoiseSpec::Kind noise_kind = NoiseSpec::Kind::None;
  std::vector<Scalar> delta_values;   // failure-rate levels for reference-load rows
  Index trials = 100;
  std::uint64_t seed = 0;
  TilePlan plan;                      // tiling for coherence stats; parallel_tiles
                                      // also enables trial-level parallelism
  bool fixed_code = false;            // RecoveryPhase: one code per gridpoint
  bool check_certificate = false;     // RecoveryPhase: per-trial certificate audit
  ReadoutKind readout = ReadoutKind::Transpose;  // EnergyFloor readout choice
  Scalar calibrated_c = 0.05;         // QuadraticSeparation: s = max(1, round(c*d/ln d))
};

// One CSV row. Rows without a bound leave bound_name empty and has_bound false.
struct ResultRow {
  std::string experiment;
  Index d = 0;
  Index F = 0;
  Index s = 0;
  Scalar noise = 0.0;
  std::string statistic;
  Scalar value = 0.0;
  Scalar std_error = 0.0;
  bool has_bound = false;
  Scalar bound = 0.0;
  std::string bound_name;
  bool satisfied = true;
  Index trials = 0;
  std::uint64_t seed = 0;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  std::uint64_t seed = 0;
  std::string version;
  Scalar wall_time_seconds = 0.0;  // in-memory metadata; serializers omit it so
                                   // reruns stay byte-identical
  std::vector<std::string> notes;
};

// Throws ContractError naming the offending field.
void validate_config(const ExperimentConfig& config);

ExperimentResult coherence_tail(const ExperimentConfig& config);
ExperimentResult interference_tail(const ExperimentConfig& config);
ExperimentResult recovery_phase(const ExperimentConfig& config);
ExperimentResult energy_floor(const ExperimentConfig& config);
ExperimentResult quadratic_separation(const ExperimentConfig& config);

ExperimentResult run_experiment(const ExperimentConfig& config);

// Bounds whose violation indicates a software defect (they are proved inequalities
// checked with deterministic or heavily cushioned statistics), as opposed to targets
// and report-only comparisons.
bool defect_on_violation(const std::string& bound_name);

}  // namespace scl
