#include "scl/codes.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <cmath>

#include "scl/errors.hpp"
#include "scl/kernels.hpp"
#include "scl/rng.hpp"

namespace scl {

void validate(const Code& code) {
  if (code.d < 1 || code.F < 1) throw ContractError("Code: d and F must be positive");
  if (code.columns.rows() != code.d || code.columns.cols() != code.F)
    throw ContractError("Code: columns matrix does not match (d, F)");
  if (!code.columns.allFinite()) throw ContractError("Code: non-finite entries");
  for (Index j = 0; j < code.F; ++j) {
    if (std::abs(code.columns.col(j).norm() - 1.0) > 1e-10)
      throw ContractError("Code: column " + std::to_string(j) +
                          " is not unit-norm within 1e-10");
  }
}

Code identity_code(Index d) {
  if (d < 1) throw ContractError("identity_code: d must be positive");
  return {d, d, Matrix::Identity(d, d), CodeKind::Identity};
}

Code random_unit_code(Index d, Index F, std::uint64_t seed) {
  if (d < 1) throw ContractError("random_unit_code: d must be positive");
  if (F < 1) throw ContractError("random_unit_code: F must be positive");
  Rng rng(seed);
  Matrix cols(d, F);
  for (Index j = 0; j < F; ++j) {
    Scalar norm = 0.0;
    do {
      for (Index i = 0; i < d; ++i) cols(i, j) = rng.normal();
      norm = cols.col(j).norm();
    } while (norm == 0.0);  // measure-zero guard
    cols.col(j) /= norm;
  }
  return {d, F, std::move(cols), CodeKind::RandomUnit};
}

namespace {

// Orthonormal basis from the QR of a Gaussian matrix, sign-fixed so the result is a
// deterministic function of the Gaussian draw.
Matrix random_orthonormal(Index d, Rng& rng) {
  Matrix g(d, d);
  rng.fill_normal(g);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  const Matrix r = qr.matrixQR();
  for (Index j = 0; j < d; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

}  // namespace

Code basis_union_code(Index d, Index k, std::uint64_t seed) {
  if (d < 1) throw ContractError("basis_union_code: d must be positive");
  if (k < 1) throw ContractError("basis_union_code: k must be positive");
  Rng rng(seed);
  Matrix cols(d, k * d);
  for (Index b = 0; b < k; ++b) cols.middleCols(b * d, d) = random_orthonormal(d, rng);
  return {d, k * d, std::move(cols), CodeKind::BasisUnion};
}

Scalar welch_pair_floor(Index d, Index F) {
  if (d < 1 || F < 1) throw ContractError("welch_pair_floor: d and F must be positive");
  if (F <= d) return 0.0;
  return std::sqrt(static_cast<Scalar>(F - d) /
                   (static_cast<Scalar>(d) * static_cast<Scalar>(F - 1)));
}

Scalar frame_bound_gap(const Code& code) {
  Matrix s = Matrix::Zero(code.d, code.d);
  s.selfadjointView<Eigen::Lower>().rankUpdate(code.columns);
  Eigen::SelfAdjointEigenSolver<Matrix> es(s);
  const Scalar scale = static_cast<Scalar>(code.d) / static_cast<Scalar>(code.F);
  return (scale * es.eigenvalues().array() - 1.0).abs().maxCoeff();
}

Code tight_frame_code(Index d, Index F, std::uint64_t seed, Scalar tol, int max_iters) {
  if (d < 1) throw ContractError("tight_frame_code: d must be positive");
  if (F < d) throw ContractError("tight_frame_code: F >= d required for a tight frame");
  if (!(tol > 0.0)) throw ContractError("tight_frame_code: tol must be positive");
  if (max_iters < 1) throw ContractError("tight_frame_code: max_iters must be >= 1");

  Code code = random_unit_code(d, F, seed);
  code.kind = CodeKind::TightFrame;
  const Scalar target = std::sqrt(static_cast<Scalar>(F) / static_cast<Scalar>(d));
  Scalar gap = frame_bound_gap(code);
  if (gap <= tol) return code;

  for (int iter = 0; iter < max_iters; ++iter) {
    // nearest tight frame: sqrt(F/d) * (Psi Psi^T)^{-1/2} Psi
    Matrix s = Matrix::Zero(d, d);
    s.selfadjointView<Eigen::Lower>().rankUpdate(code.columns);
    Eigen::SelfAdjointEigenSolver<Matrix> es(s);
    const Scalar floor_eig = 1e-14 * es.eigenvalues().maxCoeff();
    Vector inv_sqrt(d);
    for (Index i = 0; i < d; ++i)
      inv_sqrt(i) = 1.0 / std::sqrt(std::max(es.eigenvalues()(i), floor_eig));
    code.columns = target * (es.eigenvectors() * inv_sqrt.asDiagonal() *
                             es.eigenvectors().transpose()) *
                   code.columns;
    for (Index j = 0; j < F; ++j) code.columns.col(j).normalize();  // unit norms last
    gap = frame_bound_gap(code);
    if (gap <= tol) return code;
  }
  throw ConvergenceError("tight_frame_code: no unit-norm tight frame within " +
                             std::to_string(max_iters) + " iterations",
                         gap);
}

CodeCertificate certify(const Code& code, const TilePlan& plan) {
  validate(code);
  CodeCertificate cert;
  cert.d = code.d;
  cert.F = code.F;
  cert.welch_pair_floor = welch_pair_floor(code.d, code.F);
  cert.frame_bound_gap = frame_bound_gap(code);
  cert.is_tight_frame = cert.frame_bound_gap <= 1e-9;
  if (code.F >= 2) {
    const kernels::OffdiagStats st = kernels::offdiag_stats(code.columns, plan);
    cert.coherence = st.max_abs_offdiag;
    cert.sum_sq_offdiag = st.sum_sq_offdiag;
  }
  return cert;
}

}  // namespace scl
