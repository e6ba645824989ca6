#include "cmap/sampling.hpp"

#include <cmath>
#include <numbers>

namespace cmap {

double PolydiskSampler::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

cplx PolydiskSampler::disk(cplx center, double radius) {
  const double r = radius * std::sqrt(uniform());
  const double phi = 2.0 * std::numbers::pi * uniform();
  return center + std::polar(r, phi);
}

CVec PolydiskSampler::polydisk(const CVec& center, double radius) {
  CVec z(center.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = disk(center(i), radius);
  return z;
}

CVec PolydiskSampler::polydisk(int n, cplx center, double radius) {
  return polydisk(CVec::Constant(n, center), radius);
}

RVec PolydiskSampler::box(int n, double half_width) {
  RVec v(n);
  for (int i = 0; i < n; ++i) v(i) = half_width * (2.0 * uniform() - 1.0);
  return v;
}

}  // namespace cmap
