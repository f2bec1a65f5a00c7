#pragma once

#include <cstdint>
#include <vector>

#include "scl/codes.hpp"
#include "scl/readouts.hpp"
#include "scl/rng.hpp"
#include "scl/types.hpp"

// Boolean sparse states over a code: x = Psi b (+ noise), scores z = Psi^T x, and the
// elementwise threshold decoder 1{z_i >= level}. The certificate below is the exact
// sufficient condition s*mu + nu < 1/2 for the decoder to return b with margin.
namespace scl {

enum class StateModel { FixedSupport, BernoulliExpected };

struct SparseState {
  Index F = 0;
  std::vector<Index> support;  // strictly increasing, in [0, F)
  StateModel model = StateModel::FixedSupport;
  Scalar expected_s = 0.0;  // s for FixedSupport, p*F for BernoulliExpected
};

struct NoiseSpec {
  enum class Kind { None, GaussianAmbient, ScoreBounded };
  Kind kind = Kind::None;
  Scalar sigma = 0.0;  // ambient std dev per coordinate
  Scalar nu = 0.0;     // sup bound on per-score perturbation

  static NoiseSpec none() { return {}; }
  static NoiseSpec gaussian_ambient(Scalar sigma);
  static NoiseSpec score_bounded(Scalar nu);
};

struct Encoded {
  Vector x;              // d; Psi b plus any ambient noise
  Vector ambient_noise;  // d, empty unless GaussianAmbient
  Vector score_noise;    // F, empty unless ScoreBounded; added to z at decode time
};

struct DecodeResult {
  std::vector<std::uint8_t> decoded;  // F entries in {0,1}
  Scalar margin = 0.0;                // min_i |z_i - level|
  bool has_ground_truth = false;
  bool exact = false;       // decoded == truth (only when ground truth given)
  Scalar nu_hat = 0.0;      // realized ||score perturbation||_inf
};

struct RecoveryCertificate {
  bool satisfied = false;
  Scalar tau = 0.0;  // 1/2 - (s*mu + nu); the decoder's score margin when satisfied
};

struct EnergyStats {
  Scalar mean_over_F = 0.0;    // mean_b ||(G Psi - I) b||^2 / F
  Scalar stderr_over_F = 0.0;  // sample SD / sqrt(n) / F
  std::vector<Scalar> per_state;
};

void validate(const SparseState& state);
SparseState fixed_support_state(Index F, Index s, Rng& rng);
SparseState bernoulli_state(Index F, Scalar expected_s, Rng& rng);

// Clean superposition Psi b (support columns summed in ascending order).
Vector superpose(const Code& code, const SparseState& state);

Encoded encode(const Code& code, const SparseState& state, const NoiseSpec& noise,
               std::uint64_t seed);

DecodeResult threshold_decode(const Code& code, const Encoded& enc, Scalar level = 0.5);
DecodeResult threshold_decode(const Code& code, const Encoded& enc,
                              const SparseState& truth, Scalar level = 0.5);

RecoveryCertificate recovery_certificate(const CodeCertificate& cert, Index s, Scalar nu);

// Residual energy of the linear readout on each state, streamed as G*(Psi b) - b in
// O(dF) per state. Requires a unit-diagonal readout.
EnergyStats linear_energy(const Readout& readout, const Code& code,
                          const std::vector<SparseState>& states);

}  // namespace scl
