#include "scl/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "scl/errors.hpp"

namespace scl {

NoiseSpec NoiseSpec::gaussian_ambient(Scalar sigma) {
  if (!(sigma >= 0.0)) throw ContractError("NoiseSpec: sigma must be >= 0");
  NoiseSpec n;
  n.kind = Kind::GaussianAmbient;
  n.sigma = sigma;
  return n;
}

NoiseSpec NoiseSpec::score_bounded(Scalar nu) {
  if (!(nu >= 0.0)) throw ContractError("NoiseSpec: nu must be >= 0");
  NoiseSpec n;
  n.kind = Kind::ScoreBounded;
  n.nu = nu;
  return n;
}

void validate(const SparseState& state) {
  if (state.F < 1) throw ContractError("SparseState: F must be positive");
  Index prev = -1;
  for (Index i : state.support) {
    if (i <= prev)
      throw ContractError("SparseState: support must be strictly increasing");
    if (i < 0 || i >= state.F)
      throw ContractError("SparseState: support index " + std::to_string(i) +
                          " out of range");
    prev = i;
  }
}

SparseState fixed_support_state(Index F, Index s, Rng& rng) {
  if (F < 1) throw ContractError("fixed_support_state: F must be positive");
  if (s < 0 || s > F) throw ContractError("fixed_support_state: need 0 <= s <= F");
  SparseState st;
  st.F = F;
  st.support = rng.sample_without_replacement(F, s);
  st.model = StateModel::FixedSupport;
  st.expected_s = static_cast<Scalar>(s);
  return st;
}

SparseState bernoulli_state(Index F, Scalar expected_s, Rng& rng) {
  if (F < 1) throw ContractError("bernoulli_state: F must be positive");
  if (!(expected_s >= 0.0) || expected_s > static_cast<Scalar>(F))
    throw ContractError("bernoulli_state: need 0 <= expected_s <= F");
  const Scalar p = expected_s / static_cast<Scalar>(F);
  SparseState st;
  st.F = F;
  st.model = StateModel::BernoulliExpected;
  st.expected_s = expected_s;
  for (Index i = 0; i < F; ++i)
    if (rng.uniform() < p) st.support.push_back(i);
  return st;
}

Vector superpose(const Code& code, const SparseState& state) {
  validate(state);
  if (state.F != code.F)
    throw ContractError("superpose: state F does not match code F");
  Vector x = Vector::Zero(code.d);
  for (Index j : state.support) x += code.columns.col(j);
  return x;
}

Encoded encode(const Code& code, const SparseState& state, const NoiseSpec& noise,
               std::uint64_t seed) {
  validate(code);
  Encoded enc;
  enc.x = superpose(code, state);
  switch (noise.kind) {
    case NoiseSpec::Kind::None:
      break;
    case NoiseSpec::Kind::GaussianAmbient: {
      Rng rng(seed);
      enc.ambient_noise.resize(code.d);
      for (Index i = 0; i < code.d; ++i) enc.ambient_noise(i) = noise.sigma * rng.normal();
      enc.x += enc.ambient_noise;
      break;
    }
    case NoiseSpec::Kind::ScoreBounded: {
      Rng rng(seed);
      enc.score_noise.resize(code.F);
      for (Index i = 0; i < code.F; ++i)
        enc.score_noise(i) = rng.uniform(-noise.nu, noise.nu);
      break;
    }
  }
  return enc;
}

namespace {

DecodeResult decode_impl(const Code& code, const Encoded& enc,
                         const SparseState* truth, Scalar level) {
  if (!std::isfinite(level)) throw ContractError("threshold_decode: level must be finite");
  if (enc.x.size() != code.d)
    throw ContractError("threshold_decode: encoded vector length != d");
  Vector z = code.columns.transpose() * enc.x;
  Scalar nu_hat = 0.0;
  if (enc.score_noise.size() > 0) {
    if (enc.score_noise.size() != code.F)
      throw ContractError("threshold_decode: score noise length != F");
    z += enc.score_noise;
    nu_hat = enc.score_noise.cwiseAbs().maxCoeff();
  } else if (enc.ambient_noise.size() > 0) {
    if (enc.ambient_noise.size() != code.d)
      throw ContractError("threshold_decode: ambient noise length != d");
    nu_hat = (code.columns.transpose() * enc.ambient_noise).cwiseAbs().maxCoeff();
  }

  DecodeResult res;
  res.nu_hat = nu_hat;
  res.decoded.resize(static_cast<std::size_t>(code.F));
  res.margin = std::numeric_limits<Scalar>::infinity();
  for (Index i = 0; i < code.F; ++i) {
    res.decoded[static_cast<std::size_t>(i)] = z(i) >= level ? 1 : 0;  // ties activate
    res.margin = std::min(res.margin, std::abs(z(i) - level));
  }
  if (truth != nullptr) {
    validate(*truth);
    if (truth->F != code.F)
      throw ContractError("threshold_decode: truth F does not match code F");
    res.has_ground_truth = true;
    std::vector<std::uint8_t> want(static_cast<std::size_t>(code.F), 0);
    for (Index j : truth->support) want[static_cast<std::size_t>(j)] = 1;
    res.exact = want == res.decoded;
  }
  return res;
}

}  // namespace

DecodeResult threshold_decode(const Code& code, const Encoded& enc, Scalar level) {
  return decode_impl(code, enc, nullptr, level);
}

DecodeResult threshold_decode(const Code& code, const Encoded& enc,
                              const SparseState& truth, Scalar level) {
  return decode_impl(code, enc, &truth, level);
}

RecoveryCertificate recovery_certificate(const CodeCertificate& cert, Index s,
                                         Scalar nu) {
  if (s < 0) throw ContractError("recovery_certificate: s must be >= 0");
  if (!(nu >= 0.0)) throw ContractError("recovery_certificate: nu must be >= 0");
  const Scalar load = static_cast<Scalar>(s) * cert.coherence + nu;
  return {load < 0.5, 0.5 - load};
}

EnergyStats linear_energy(const Readout& readout, const Code& code,
                          const std::vector<SparseState>& states) {
  validate(code);
  if (!readout.unit_diagonal)
    throw ContractError("linear_energy: readout must be unit-diagonal");
  if (readout.G.rows() != code.F || readout.G.cols() != code.d)
    throw ContractError("linear_energy: readout must be F x d for this code");
  if (states.empty()) throw ContractError("linear_energy: need at least one state");

  EnergyStats stats;
  stats.per_state.reserve(states.size());
  for (const SparseState& st : states) {
    Vector w = readout.G * superpose(code, st);  // G (Psi b)
    for (Index j : st.support) w(j) -= 1.0;
    stats.per_state.push_back(w.squaredNorm());
  }
  const Scalar n = static_cast<Scalar>(stats.per_state.size());
  Scalar mean = 0.0;
  for (Scalar v : stats.per_state) mean += v;
  mean /= n;
  Scalar var = 0.0;
  if (stats.per_state.size() > 1) {
    for (Scalar v : stats.per_state) var += (v - mean) * (v - mean);
    var /= (n - 1.0);
  }
  const Scalar f = static_cast<Scalar>(code.F);
  stats.mean_over_F = mean / f;
  stats.stderr_over_F = std::sqrt(var / n) / f;
  return stats;
}

}  // namespace scl
