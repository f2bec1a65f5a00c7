#include "scl/kernels.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <vector>

#include "scl/errors.hpp"
#include "scl/parallel.hpp"

namespace scl::kernels {
namespace {

struct TilePartial {
  Scalar max_off = 0.0;
  Scalar max_diag = 0.0;
  KahanSum sum;
};

// Stats over block-column [j0, j0+w) of M = left*right, sweeping row blocks in
// ascending order and block entries column-major. Entry order is what pins the
// floating-point result, so it must not depend on the caller's threading.
template <class L, class R>
TilePartial column_tile_stats(const L& left, const R& right, Index j0, Index w,
                              Index tile_rows) {
  TilePartial p;
  const Index f = left.rows();
  Matrix blk;
  for (Index i0 = 0; i0 < f; i0 += tile_rows) {
    const Index h = std::min(tile_rows, f - i0);
    blk.noalias() = left.middleRows(i0, h) * right.middleCols(j0, w);
    for (Index c = 0; c < w; ++c) {
      const Index gj = j0 + c;
      for (Index r = 0; r < h; ++r) {
        const Scalar v = blk(r, c);
        if (i0 + r == gj) {
          p.max_diag = std::max(p.max_diag, std::abs(v - 1.0));
        } else {
          p.max_off = std::max(p.max_off, std::abs(v));
          p.sum.add(v * v);
        }
      }
    }
  }
  return p;
}

template <class L, class R>
OffdiagStats stats_impl(const L& left, const R& right, const TilePlan& plan) {
  if (plan.tile_cols < 1) throw ContractError("TilePlan: tile_cols must be >= 1");
  const Index f = left.rows();
  const Index tiles = (f + plan.tile_cols - 1) / plan.tile_cols;
  std::vector<TilePartial> parts(static_cast<std::size_t>(tiles));
  parallel_for(tiles, plan.parallel_tiles, [&](Index t) {
    const Index j0 = t * plan.tile_cols;
    const Index w = std::min(plan.tile_cols, f - j0);
    parts[static_cast<std::size_t>(t)] =
        column_tile_stats(left, right, j0, w, plan.tile_cols);
  });
  // merge in ascending tile order regardless of how partials were produced
  OffdiagStats out;
  KahanSum total;
  for (const TilePartial& p : parts) {
    out.max_abs_offdiag = std::max(out.max_abs_offdiag, p.max_off);
    out.max_abs_diag_dev = std::max(out.max_abs_diag_dev, p.max_diag);
    total.add(p.sum.sum);
    total.add(p.sum.c);
  }
  out.sum_sq_offdiag = total.sum;
  return out;
}

}  // namespace

Matrix gemm_tile(const ConstMatrixRef& a, const ConstMatrixRef& b, IndexRange rows,
                 IndexRange cols) {
  if (a.cols() != b.rows())
    throw ContractError("gemm_tile: inner dimensions of a and b do not match");
  if (rows.begin < 0 || rows.end > a.rows() || rows.begin >= rows.end)
    throw ContractError("gemm_tile: row range is empty or out of bounds");
  if (cols.begin < 0 || cols.end > b.cols() || cols.begin >= cols.end)
    throw ContractError("gemm_tile: column range is empty or out of bounds");
  return a.middleRows(rows.begin, rows.size()) * b.middleCols(cols.begin, cols.size());
}

OffdiagStats offdiag_stats(const ConstMatrixRef& code, const TilePlan& plan) {
  if (code.cols() < 2) throw ContractError("offdiag_stats: need at least two columns");
  if (!code.allFinite()) throw ContractError("offdiag_stats: code has non-finite entries");
  // left operand is the transposed view; Eigen lowers each block product to a gemm
  return stats_impl(code.transpose(), code, plan);
}

OffdiagStats product_offdiag_stats(const ConstMatrixRef& left, const ConstMatrixRef& right,
                                   const TilePlan& plan) {
  if (left.cols() != right.rows())
    throw ContractError("product_offdiag_stats: inner dimensions do not match");
  if (left.rows() != right.cols())
    throw ContractError("product_offdiag_stats: product must be square");
  if (left.rows() < 2) throw ContractError("product_offdiag_stats: need F >= 2");
  if (!left.allFinite() || !right.allFinite())
    throw ContractError("product_offdiag_stats: non-finite entries");
  return stats_impl(left, right, plan);
}

Matrix least_squares_rows(const ConstMatrixRef& psi) {
  if (psi.rows() < 1 || psi.cols() < 1)
    throw ContractError("least_squares_rows: psi must be non-empty");
  if (!psi.allFinite()) throw ContractError("least_squares_rows: non-finite entries");
  const Index d = psi.rows();
  Matrix s = Matrix::Zero(d, d);
  s.selfadjointView<Eigen::Lower>().rankUpdate(psi);
  s = s.selfadjointView<Eigen::Lower>();
  Eigen::LDLT<Matrix> ldlt(s);
  const Vector pivots = ldlt.vectorD().cwiseAbs();
  if (ldlt.info() != Eigen::Success ||
      pivots.minCoeff() < 1e-12 * pivots.maxCoeff())
    throw SingularMatrixError(
        "least_squares_rows: frame operator is numerically singular");
  return ldlt.solve(Matrix(psi)).transpose();
}

}  // namespace scl::kernels
