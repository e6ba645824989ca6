#pragma once

#include <cstdint>
#include <random>

#include "cmap/types.hpp"

namespace cmap {

/// Seeded uniform sampler on a polydisk. Draws are reproducible across
/// platforms: the engine is mt19937_64 and doubles are built from its top 53
/// bits rather than through a standard distribution.
class PolydiskSampler {
 public:
  explicit PolydiskSampler(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform();
  /// Uniform in the disk |z - center| < radius.
  cplx disk(cplx center, double radius);
  /// Each component uniform in its own disk.
  CVec polydisk(const CVec& center, double radius);
  CVec polydisk(int n, cplx center, double radius);
  /// Uniform in the cube [-half_width, half_width)^n.
  RVec box(int n, double half_width);

 private:
  std::mt19937_64 engine_;
};

}  // namespace cmap
