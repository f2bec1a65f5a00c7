#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "scl/errors.hpp"
#include "scl/types.hpp"

namespace scl {

// splitmix64 step; used to hash (master seed, stream, index) into per-trial seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                 std::uint64_t index) {
  return splitmix64(splitmix64(master ^ splitmix64(stream)) + index);
}

// mt19937_64 with explicit uniform/normal transforms. The engine's output sequence is
// pinned by the standard and the transforms below are spelled out here, so identical
// seeds give identical streams on any platform; golden files depend on this.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  Scalar uniform() {
    return static_cast<Scalar>(engine_() >> 11) * 0x1.0p-53;
  }

  Scalar uniform(Scalar lo, Scalar hi) { return lo + (hi - lo) * uniform(); }

  // Unbiased integer in [0, n) by rejection.
  Index uniform_index(Index n) {
    if (n <= 0) throw ContractError("uniform_index: n must be positive");
    const std::uint64_t un = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return static_cast<Index>(v % un);
  }

  // Standard normal via Marsaglia's polar method (one spare cached).
  Scalar normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    Scalar u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const Scalar m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

  void fill_normal(Ref<Matrix> out) {
    for (Index j = 0; j < out.cols(); ++j)
      for (Index i = 0; i < out.rows(); ++i) out(i, j) = normal();
  }

  // Sorted uniform random s-subset of {0, ..., n-1} (Floyd's algorithm).
  std::vector<Index> sample_without_replacement(Index n, Index s);

 private:
  std::mt19937_64 engine_;
  Scalar spare_ = 0.0;
  bool has_spare_ = false;
};

inline std::vector<Index> Rng::sample_without_replacement(Index n, Index s) {
  if (s < 0 || s > n) throw ContractError("sample_without_replacement: need 0 <= s <= n");
  std::vector<Index> out;
  out.reserve(static_cast<std::size_t>(s));
  for (Index j = n - s; j < n; ++j) {
    const Index t = uniform_index(j + 1);
    bool seen = false;
    for (Index x : out) {
      if (x == t) {
        seen = true;
        break;
      }
    }
    out.push_back(seen ? j : t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace scl
