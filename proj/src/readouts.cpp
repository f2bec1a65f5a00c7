#include "scl/readouts.hpp"

#include <cmath>
#include <string>

#include "scl/errors.hpp"
#include "scl/kernels.hpp"

namespace scl {
namespace {

void check_pair(const Readout& readout, const Code& code, const char* where) {
  validate(code);
  if (readout.G.rows() != code.F || readout.G.cols() != code.d)
    throw ContractError(std::string(where) + ": readout must be F x d for this code");
  if (!readout.G.allFinite())
    throw ContractError(std::string(where) + ": readout has non-finite entries");
}

}  // namespace

Readout transpose_readout(const Code& code) {
  validate(code);
  return Readout{code.columns.transpose(), ReadoutKind::Transpose, true};
}

Readout least_squares_readout(const Code& code) {
  validate(code);
  return Readout{kernels::least_squares_rows(code.columns), ReadoutKind::LeastSquares,
                 false};
}

Readout rescale_to_unit_diagonal(const Readout& readout, const Code& code,
                                 Scalar eps_diag) {
  check_pair(readout, code, "rescale_to_unit_diagonal");
  Readout out{readout.G, readout.kind, true};
  for (Index i = 0; i < code.F; ++i) {
    const Scalar diag = readout.G.row(i).dot(code.columns.col(i));
    if (std::abs(diag) < eps_diag)
      throw DegenerateDiagonalError(
          "rescale_to_unit_diagonal: |(G*Psi)_{ii}| < eps_diag at row index " +
              std::to_string(i),
          i);
    out.G.row(i) /= diag;
  }
  return out;
}

CrosstalkReport crosstalk(const Readout& readout, const Code& code,
                          const TilePlan& plan) {
  check_pair(readout, code, "crosstalk");
  if (!readout.unit_diagonal)
    throw ContractError("crosstalk: readout must be rescaled to unit diagonal first");
  if (code.F < 2) throw ContractError("crosstalk: F >= 2 required");

  const kernels::OffdiagStats st =
      kernels::product_offdiag_stats(readout.G, code.columns, plan);
  const Scalar d = static_cast<Scalar>(code.d);
  const Scalar f = static_cast<Scalar>(code.F);
  CrosstalkReport rep;
  rep.d = code.d;
  rep.F = code.F;
  rep.sum_sq_offdiag = st.sum_sq_offdiag;
  rep.mean_sq_offdiag = st.sum_sq_offdiag / (f * (f - 1.0));
  rep.max_abs_offdiag = st.max_abs_offdiag;
  rep.floor_sum = f * (f - d) / d;
  rep.floor_mean = (f - d) / (d * (f - 1.0));
  rep.floor_max = std::sqrt(std::max(rep.floor_mean, 0.0));
  rep.slack_sum = rep.sum_sq_offdiag - rep.floor_sum;
  return rep;
}

DeltaFloorResult delta_floor_check(Scalar delta, Index d, Index F) {
  if (!(delta >= 0.0) || delta >= 0.5)
    throw DomainError("delta_floor_check: delta must lie in [0, 1/2)");
  if (d < 1 || F <= d)
    throw ContractError("delta_floor_check: need F > d >= 1");
  DeltaFloorResult r;
  r.lhs = delta / (1.0 - delta);
  r.rhs = welch_pair_floor(d, F);
  r.consistent = r.lhs >= r.rhs - 1e-12;
  return r;
}

Scalar empirical_delta(const Readout& readout, const Code& code, const TilePlan& plan) {
  check_pair(readout, code, "empirical_delta");
  if (code.F < 2) throw ContractError("empirical_delta: F >= 2 required");
  const kernels::OffdiagStats st =
      kernels::product_offdiag_stats(readout.G, code.columns, plan);
  return std::max(st.max_abs_offdiag, st.max_abs_diag_dev);
}

}  // namespace scl
