#pragma once

#include "scl/codes.hpp"
#include "scl/types.hpp"

// Linear readouts G (F x d) against a code Psi (d x F). All floor statements are about
// the product M = G*Psi after the diagonal is scaled to ones; the off-diagonal of M is
// the readout's crosstalk. M itself is never materialized.
namespace scl {

enum class ReadoutKind { Transpose, LeastSquares, External };

struct Readout {
  Matrix G;  // F x d
  ReadoutKind kind = ReadoutKind::External;
  bool unit_diagonal = false;  // (G*Psi)_ii == 1 within 1e-9 when true
};

struct CrosstalkReport {
  Index d = 0;
  Index F = 0;
  Scalar sum_sq_offdiag = 0.0;
  Scalar mean_sq_offdiag = 0.0;  // sum / (F(F-1)); recomputed nowhere else
  Scalar max_abs_offdiag = 0.0;
  Scalar floor_sum = 0.0;   // F(F-d)/d
  Scalar floor_mean = 0.0;  // (F-d)/(d(F-1))
  Scalar floor_max = 0.0;   // sqrt(max(floor_mean, 0))
  Scalar slack_sum = 0.0;   // sum_sq_offdiag - floor_sum
};

Readout transpose_readout(const Code& code);

// Least-squares rows G = Psi^T (Psi Psi^T)^{-1}; diagonal of G*Psi is generally not 1,
// callers rescale before floor checks.
Readout least_squares_readout(const Code& code);

// Divides each row of G by (G*Psi)_ii. Throws DegenerateDiagonalError naming the first
// row whose diagonal magnitude is below eps_diag.
Readout rescale_to_unit_diagonal(const Readout& readout, const Code& code,
                                 Scalar eps_diag = 1e-8);

// Requires readout.unit_diagonal and F >= 2.
CrosstalkReport crosstalk(const Readout& readout, const Code& code,
                          const TilePlan& plan = {});

struct DeltaFloorResult {
  Scalar lhs = 0.0;  // delta / (1 - delta)
  Scalar rhs = 0.0;  // sqrt((F-d)/(d(F-1)))
  bool consistent = false;
};

// Checks the reconstruction-error consequence of the pair floor: any readout achieving
// per-column sup error delta < 1/2 must satisfy delta/(1-delta) >= rhs. Requires
// 0 <= delta < 1/2 (DomainError otherwise) and F > d.
DeltaFloorResult delta_floor_check(Scalar delta, Index d, Index F);

// max_i ||G phi_i - e_i||_inf, streamed; equals the largest entry of |G*Psi - I|.
Scalar empirical_delta(const Readout& readout, const Code& code,
                       const TilePlan& plan = {});

}  // namespace scl
