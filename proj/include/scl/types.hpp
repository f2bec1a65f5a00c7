#pragma once

#include <Eigen/Dense>

#include <cstdint>

// Core dense types for the lab. Everything downstream is 64-bit float; codes are stored
// as d x F matrices whose columns are the dictionary elements, readouts as F x d.
namespace scl {

using Scalar = double;
using Index = Eigen::Index;
using Matrix = Eigen::MatrixX<Scalar>;
using Vector = Eigen::VectorX<Scalar>;

template <class T>
using Ref = Eigen::Ref<T>;
using ConstMatrixRef = Eigen::Ref<const Matrix>;
using ConstVectorRef = Eigen::Ref<const Vector>;

// Half-open index range [begin, end).
struct IndexRange {
  Index begin = 0;
  Index end = 0;
  Index size() const { return end - begin; }
};

// Column-tiling plan for streamed Gram/product passes. Blocks are at most
// tile_cols x tile_cols; the reduction order is fixed by tile index, so results do not
// depend on parallel_tiles.
struct TilePlan {
  Index tile_cols = 256;
  bool parallel_tiles = false;
};

}  // namespace scl
