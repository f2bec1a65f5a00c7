#pragma once

#include <cstdint>

#include "scl/types.hpp"

// Dictionaries ("codes"): d x F matrices with unit-norm columns. F may exceed d; the
// certificate reports how far the column pair geometry is from the best achievable.
namespace scl {

enum class CodeKind { RandomUnit, TightFrame, BasisUnion, Identity, External };

struct Code {
  Index d = 0;
  Index F = 0;
  Matrix columns;  // d x F, unit-norm columns within 1e-10
  CodeKind kind = CodeKind::External;
};

struct CodeCertificate {
  Index d = 0;
  Index F = 0;
  Scalar coherence = 0.0;        // max_{i != j} |<phi_i, phi_j>|
  Scalar sum_sq_offdiag = 0.0;   // sum_{i != j} <phi_i, phi_j>^2
  Scalar welch_pair_floor = 0.0; // sqrt((F-d)/(d(F-1))) when F > d, else 0
  bool is_tight_frame = false;   // frame_bound_gap <= 1e-9
  Scalar frame_bound_gap = 0.0;  // max_i |(d/F) eig_i(Psi Psi^T) - 1|
};

// Throws ContractError if dimensions are inconsistent, entries are non-finite, or a
// column norm is off unity by more than 1e-10.
void validate(const Code& code);

Code identity_code(Index d);
Code random_unit_code(Index d, Index F, std::uint64_t seed);

// Union of k independently drawn orthonormal bases; F = k*d. Tight by construction.
Code basis_union_code(Index d, Index k, std::uint64_t seed);

// Unit-norm tight frame by alternating projections from a random start: project onto
// tight frames (polar factor scaled by sqrt(F/d)), renormalize columns, repeat until
// the frame-bound gap is at most tol. Throws ConvergenceError (carrying the last gap)
// if max_iters rounds do not get there. Requires F >= d.
Code tight_frame_code(Index d, Index F, std::uint64_t seed, Scalar tol = 1e-10,
                      int max_iters = 10000);

Scalar welch_pair_floor(Index d, Index F);
Scalar frame_bound_gap(const Code& code);
CodeCertificate certify(const Code& code, const TilePlan& plan = {});

}  // namespace scl
