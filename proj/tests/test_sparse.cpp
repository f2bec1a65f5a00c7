#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "scl/errors.hpp"
#include "scl/sparse.hpp"

using namespace scl;

namespace {

Code hand_tight_frame_2x4() {
  Code c;
  c.d = 2;
  c.F = 4;
  c.kind = CodeKind::External;
  c.columns.resize(2, 4);
  const Scalar pi = std::acos(-1.0);
  for (int j = 0; j < 4; ++j) {
    c.columns(0, j) = std::cos(j * pi / 4.0);
    c.columns(1, j) = std::sin(j * pi / 4.0);
  }
  return c;
}

SparseState state_of(Index F, std::vector<Index> support) {
  SparseState st;
  st.F = F;
  st.support = std::move(support);
  st.expected_s = static_cast<Scalar>(st.support.size());
  return st;
}

}  // namespace

TEST_CASE("encode: empty support gives the zero vector") {
  Code c = random_unit_code(4, 9, 1);
  Encoded e = encode(c, state_of(9, {}), NoiseSpec::none(), 0);
  CHECK(e.x.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("encode: singleton support returns that column exactly") {
  Code c = random_unit_code(4, 9, 1);
  Encoded e = encode(c, state_of(9, {6}), NoiseSpec::none(), 0);
  CHECK((e.x - c.columns.col(6)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("encode: ambient noise norm concentrates like sigma*sqrt(d)") {
  const Index d = 16;
  const Scalar sigma = 0.1;
  Code c = random_unit_code(d, 32, 2);
  SparseState st = state_of(32, {3, 20});
  Vector clean = superpose(c, st);
  Scalar mean_norm = 0.0;
  const int n = 1000;
  for (int t = 0; t < n; ++t) {
    Encoded e = encode(c, st, NoiseSpec::gaussian_ambient(sigma), 100 + t);
    mean_norm += (e.x - clean).norm();
  }
  mean_norm /= n;
  // E chi_d ~ sqrt(d - 1/2); 0.1*sigma window is ~4.5 standard errors at n=1000
  CHECK(std::abs(mean_norm - sigma * std::sqrt(d - 0.5)) <= 0.1 * sigma);
}

TEST_CASE("encode: score-bounded noise stays within nu and shifts scores") {
  Code c = random_unit_code(3, 12, 4);
  SparseState st = state_of(12, {0, 5});
  const Scalar nu = 0.07;
  Encoded e = encode(c, st, NoiseSpec::score_bounded(nu), 9);
  REQUIRE(e.score_noise.size() == 12);
  CHECK(e.score_noise.cwiseAbs().maxCoeff() <= nu);
  // decode sees z = Psi^T x + noise
  Vector z_oracle = c.columns.transpose() * e.x + e.score_noise;
  DecodeResult r = threshold_decode(c, e);
  Scalar margin_oracle = 1e300;
  for (Index i = 0; i < 12; ++i)
    margin_oracle = std::min(margin_oracle, std::abs(z_oracle(i) - 0.5));
  CHECK(r.margin == doctest::Approx(margin_oracle).epsilon(1e-15));
  CHECK(r.nu_hat == e.score_noise.cwiseAbs().maxCoeff());
}

TEST_CASE("threshold_decode: orthonormal code recovers exactly with margin 1/2") {
  Code c = identity_code(6);
  SparseState st = state_of(6, {1, 3});
  DecodeResult r = threshold_decode(c, encode(c, st, NoiseSpec::none(), 0), st);
  CHECK(r.exact);
  CHECK(r.margin == 0.5);
  CHECK(r.decoded == std::vector<std::uint8_t>{0, 1, 0, 1, 0, 0});
}

TEST_CASE("threshold_decode: a score exactly at the level activates") {
  Code c = identity_code(2);
  Encoded e;
  e.x.resize(2);
  e.x << 0.5, 0.25;
  DecodeResult r = threshold_decode(c, e);
  CHECK(r.decoded == std::vector<std::uint8_t>{1, 0});
  CHECK(r.margin == 0.0);
}

TEST_CASE("recovery_certificate: boundary case is refused with tau 0") {
  CodeCertificate cert;
  cert.coherence = 0.1;
  RecoveryCertificate rc = recovery_certificate(cert, 5, 0.0);
  CHECK(!rc.satisfied);
  CHECK(rc.tau == 0.0);
  RecoveryCertificate ok = recovery_certificate(cert, 4, 0.05);
  CHECK(ok.satisfied);
  CHECK(ok.tau == doctest::Approx(0.05).epsilon(1e-12));
}

TEST_CASE("duplicate columns: certificate refuses s >= 1, and rightly so") {
  Code c = random_unit_code(4, 6, 11);
  c.columns.col(2) = c.columns.col(0);  // coherence exactly 1
  CodeCertificate cert = certify(c);
  CHECK(cert.coherence == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(!recovery_certificate(cert, 1, 0.0).satisfied);
  // decoding a singleton on the duplicated column lights both copies
  SparseState st = state_of(6, {0});
  DecodeResult r = threshold_decode(c, encode(c, st, NoiseSpec::none(), 0), st);
  CHECK(!r.exact);
  CHECK(r.decoded[0] == 1);
  CHECK(r.decoded[2] == 1);
}

TEST_CASE("certificate guarantee: satisfied trials decode exactly with margin >= tau") {
  // separation must also hold per coordinate: active >= 1/2+tau, inactive <= 1/2-tau
  int satisfied_trials = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Code c = tight_frame_code(24, 30 + 2 * (seed % 5), 2000 + seed);
    CodeCertificate cert = certify(c);
    Rng rng(500 + seed);
    for (int t = 0; t < 20; ++t) {
      const Scalar nu = rng.uniform(0.0, 0.15);
      const Index s_max = cert.coherence > 0.0
                              ? static_cast<Index>((0.5 - nu - 1e-9) / cert.coherence)
                              : c.F / 2;
      if (s_max < 1) continue;
      const Index s = 1 + rng.uniform_index(std::min(s_max, c.F));
      RecoveryCertificate rc = recovery_certificate(cert, s, nu);
      REQUIRE(rc.satisfied);
      SparseState st = fixed_support_state(c.F, s, rng);
      Encoded e = encode(c, st, NoiseSpec::score_bounded(nu), rng.next_u64());
      DecodeResult r = threshold_decode(c, e, st);
      ++satisfied_trials;
      CHECK(r.exact);
      CHECK(r.margin >= rc.tau - 1e-12);
      Vector z = c.columns.transpose() * e.x + e.score_noise;
      for (Index i = 0; i < c.F; ++i) {
        const bool active = std::find(st.support.begin(), st.support.end(), i) !=
                            st.support.end();
        if (active)
          CHECK(z(i) >= 0.5 + rc.tau - 1e-12);
        else
          CHECK(z(i) <= 0.5 - rc.tau + 1e-12);
      }
    }
  }
  CHECK(satisfied_trials >= 300);  // the family must keep the test non-vacuous
}

TEST_CASE("largest certified s decodes exactly on thousands of random supports") {
  Code c = tight_frame_code(64, 96, 31337);
  CodeCertificate cert = certify(c);
  const Index s_max = static_cast<Index>((0.5 - 1e-9) / cert.coherence);
  REQUIRE(s_max >= 1);  // low-coherence frame keeps this non-vacuous
  Rng rng(8);
  for (int t = 0; t < 10000; ++t) {
    SparseState st = fixed_support_state(c.F, s_max, rng);
    DecodeResult r = threshold_decode(c, encode(c, st, NoiseSpec::none(), 0), st);
    REQUIRE(r.exact);
  }
}

TEST_CASE("bernoulli_state: realized size is recorded and concentrates") {
  Rng rng(12);
  Scalar mean_size = 0.0;
  for (int t = 0; t < 2000; ++t) {
    SparseState st = bernoulli_state(100, 10.0, rng);
    validate(st);
    CHECK(st.model == StateModel::BernoulliExpected);
    mean_size += static_cast<Scalar>(st.support.size());
  }
  mean_size /= 2000.0;
  CHECK(std::abs(mean_size - 10.0) <= 0.5);
}

TEST_CASE("linear_energy: zero state has zero energy") {
  Code c = random_unit_code(4, 9, 3);
  EnergyStats st = linear_energy(transpose_readout(c), c, {state_of(9, {})});
  CHECK(st.mean_over_F == 0.0);
  CHECK(st.per_state[0] == 0.0);
}

TEST_CASE("linear_energy: exhaustive (d=2, F=4) matches dense oracle and closed form") {
  Code c = hand_tight_frame_2x4();
  Readout r = transpose_readout(c);
  Matrix a = r.G * c.columns - Matrix::Identity(4, 4);  // oracle-side A

  std::vector<SparseState> all;
  std::vector<Vector> bs;
  for (int mask = 0; mask < 16; ++mask) {
    std::vector<Index> sup;
    Vector b = Vector::Zero(4);
    for (int j = 0; j < 4; ++j)
      if (mask & (1 << j)) {
        sup.push_back(j);
        b(j) = 1.0;
      }
    all.push_back(state_of(4, sup));
    bs.push_back(b);
  }
  EnergyStats st = linear_energy(r, c, all);
  for (int mask = 0; mask < 16; ++mask)
    CHECK(std::abs(st.per_state[mask] - (a * bs[mask]).squaredNorm()) <= 1e-12);

  for (Scalar p : {0.5, 0.3}) {
    Scalar expectation = 0.0;
    for (int mask = 0; mask < 16; ++mask) {
      const int k = __builtin_popcount(static_cast<unsigned>(mask));
      expectation += std::pow(p, k) * std::pow(1.0 - p, 4 - k) * st.per_state[mask];
    }
    const Scalar closed_form = p * (1.0 - p) * a.squaredNorm() +
                               p * p * (a * Vector::Ones(4)).squaredNorm();
    CHECK(std::abs(expectation - closed_form) <= 1e-12);
  }
}

TEST_CASE("linear_energy: Monte Carlo mean clears the Bernoulli floor at (16,256,4)") {
  Code c = random_unit_code(16, 256, 77);
  Readout r = transpose_readout(c);
  Rng rng(3);
  std::vector<SparseState> states;
  for (int t = 0; t < 500; ++t) states.push_back(bernoulli_state(256, 4.0, rng));
  EnergyStats st = linear_energy(r, c, states);
  const Scalar bound = 4.0 * (256.0 - 16.0) / (2.0 * 16.0 * 256.0);
  CHECK(st.mean_over_F + 3.0 * st.stderr_over_F >= bound);
}

TEST_CASE("sparse contract errors") {
  Code c = random_unit_code(3, 8, 1);
  SparseState bad = state_of(8, {2, 2});
  CHECK_THROWS_AS(superpose(c, bad), ContractError);
  SparseState oor = state_of(8, {9});
  CHECK_THROWS_AS(superpose(c, oor), ContractError);
  SparseState wrong_f = state_of(9, {1});
  CHECK_THROWS_AS(superpose(c, wrong_f), ContractError);
  Rng rng(1);
  CHECK_THROWS_AS(fixed_support_state(8, 9, rng), ContractError);
  CHECK_THROWS_AS(fixed_support_state(8, -1, rng), ContractError);
  CHECK_THROWS_AS(bernoulli_state(8, 9.0, rng), ContractError);
  CHECK_THROWS_AS(NoiseSpec::gaussian_ambient(-1.0), ContractError);
  CHECK_THROWS_AS(NoiseSpec::score_bounded(-0.5), ContractError);
  CodeCertificate cert;
  CHECK_THROWS_AS(recovery_certificate(cert, -1, 0.0), ContractError);
  Readout raw = least_squares_readout(c);
  CHECK_THROWS_AS(linear_energy(raw, c, {state_of(8, {1})}), ContractError);
}
