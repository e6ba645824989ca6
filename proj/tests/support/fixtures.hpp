#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cmap/cmap.hpp"

namespace cmap::testing {

inline std::filesystem::path fixture_path(const std::string& name) {
  return std::filesystem::path(CMAP_FIXTURE_DIR) / name;
}

inline Prepotential fixture(const std::string& name) { return load_prepotential(fixture_path(name)); }

inline CVec cvec(std::initializer_list<cplx> xs) {
  CVec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (cplx x : xs) v(i++) = x;
  return v;
}

/// Seeded fiber points with z in the polydisk around `center` and w in the
/// polydisk of the same radius around 0, skipping general-position failures.
inline std::vector<FiberPoint> fiber_points(const Prepotential& f, cplx center, double radius, int count,
                                            std::uint64_t seed) {
  PolydiskSampler rng(seed);
  std::vector<FiberPoint> out;
  while (static_cast<int>(out.size()) < count) {
    FiberPoint p{rng.polydisk(f.dimension(), center, radius), rng.polydisk(f.dimension(), 0.0, radius)};
    if (general_position_check(jet(f, p.z, 2)).pass) out.push_back(std::move(p));
  }
  return out;
}

inline std::vector<CVec> base_points(int n, cplx center, double radius, int count, std::uint64_t seed) {
  PolydiskSampler rng(seed);
  std::vector<CVec> out;
  for (int k = 0; k < count; ++k) out.push_back(rng.polydisk(n, center, radius));
  return out;
}

/// Random polynomial with up to `terms` distinct monomials of total degree
/// in [1, max_degree]; fewer when the degree bound admits fewer monomials.
inline Prepotential random_polynomial(int n, int max_degree, int terms, std::uint64_t seed) {
  PolydiskSampler rng(seed);
  std::vector<PolynomialTerm> out;
  std::vector<std::vector<int>> seen;
  for (int draw = 0; draw < 100 * terms && static_cast<int>(out.size()) < terms; ++draw) {
    std::vector<int> e(n, 0);
    int budget = 1 + static_cast<int>(rng.uniform() * max_degree);
    for (int k = 0; k < budget; ++k) ++e[static_cast<int>(rng.uniform() * n)];
    if (std::find(seen.begin(), seen.end(), e) != seen.end()) continue;
    seen.push_back(e);
    out.push_back({rng.disk(0.0, 1.0), e});
  }
  return Prepotential::polynomial(n, out);
}

/// Fixtures used across suites, with sampling regions where g is nondegenerate.
struct FixtureCase {
  std::string file;
  cplx center;
  double radius;
};

inline std::vector<FixtureCase> geometry_fixtures() {
  return {
      {"quadratic3.json", {0.0, 0.0}, 1.0},
      {"split_quadratic.json", {0.0, 0.0}, 1.0},
      {"cubic1.json", {0.0, 1.0}, 0.5},
      {"stu_chart.json", {0.0, 1.0}, 0.5},
  };
}

}  // namespace cmap::testing
