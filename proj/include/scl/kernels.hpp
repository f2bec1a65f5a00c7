#pragma once

#include "scl/types.hpp"

// Blocked dense primitives. The F x F Gram/product matrices these summarize are never
// materialized: passes stream tile_cols-wide blocks and reduce in ascending tile order,
// with compensated summation for the sum of squares, so results are deterministic for a
// fixed plan and bit-identical whether or not tiles run in parallel.
namespace scl::kernels {

struct OffdiagStats {
  Scalar max_abs_offdiag = 0.0;
  Scalar sum_sq_offdiag = 0.0;
  // Largest |M_ii - 1| seen in the same pass; lets callers get the full deviation
  // from identity without a second sweep.
  Scalar max_abs_diag_dev = 0.0;
};

// Exact sub-block (a*b)[rows, cols] without forming a*b.
Matrix gemm_tile(const ConstMatrixRef& a, const ConstMatrixRef& b, IndexRange rows,
                 IndexRange cols);

// Off-diagonal stats of the Gram matrix code^T * code (code is d x F, F >= 2).
OffdiagStats offdiag_stats(const ConstMatrixRef& code, const TilePlan& plan = {});

// Off-diagonal stats of left * right (left F x d, right d x F, F >= 2); used for
// readout-code products G * Psi.
OffdiagStats product_offdiag_stats(const ConstMatrixRef& left, const ConstMatrixRef& right,
                                   const TilePlan& plan = {});

// Row-wise least-squares readout: G = psi^T (psi psi^T)^{-1}, so G*psi is the orthogonal
// projection Gram. Throws SingularMatrixError when the frame operator has a pivot below
// 1e-12 relative to the largest.
Matrix least_squares_rows(const ConstMatrixRef& psi);

// Compensated (Kahan) accumulator; merge order is fixed by the callers.
struct KahanSum {
  Scalar sum = 0.0;
  Scalar c = 0.0;
  void add(Scalar x) {
    const Scalar y = x - c;
    const Scalar t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

}  // namespace scl::kernels
