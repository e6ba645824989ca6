#include "cmap/verify.hpp"

#include <cstdlib>

#include "cmap/linalg.hpp"
#include "cmap/numdiff.hpp"

namespace cmap {

double hessian_oracle_residual(const Prepotential& f, const FiberPoint& at, double step) {
  const int n = f.dimension();
  CVec zeta(2 * n);
  zeta << at.z, at.w;
  auto potential = [&f, n](const CVec& x) { return hk_potential(f, FiberPoint{x.head(n), x.tail(n)}); };
  const CMat fd = numdiff::wirtinger_hessian(potential, zeta, step);
  const CMat g = hk_metric(f, at).assembled();
  return linalg::max_abs(CMat(fd - g)) / std::max(1.0, linalg::max_abs(g));
}

double hermitian_residual(const CMat& g) { return linalg::max_abs(CMat(g - g.adjoint())); }

double inverse_residual(const HermitianBlockMetric& gb, const BaseMetric& base) {
  const CMat g = gb.assembled();
  const CMat prod = g * hk_metric_inverse(gb, base);
  return linalg::max_abs(CMat(prod - CMat::Identity(g.rows(), g.cols())));
}

QuaternionReport quaternion_residuals(const HypercomplexTriple& t) {
  const auto dim = t.J1.rows();
  const RMat id = RMat::Identity(dim, dim);
  const RMat& s = t.metric;
  const double scale = std::max(1.0, linalg::max_abs(s));
  QuaternionReport r;
  for (const RMat* j : {&t.J1, &t.J2, &t.J3}) {
    r.squares = std::max(r.squares, linalg::max_abs(RMat(*j * *j + id)));
    r.compatibility = std::max(r.compatibility, linalg::max_abs(RMat(j->transpose() * s * *j - s)) / scale);
  }
  r.products = std::max(linalg::max_abs(RMat(t.J1 * t.J2 - t.J3)), linalg::max_abs(RMat(t.J2 * t.J1 + t.J3)));
  return r;
}

double lattice_idempotence_residual(const Prepotential& f, const CVec& z, const Lattice& lattice, const CVec& w) {
  const LatticeReduction first = lattice_reduce(f, z, lattice, w);
  const LatticeReduction second = lattice_reduce(f, z, lattice, first.representative);
  double acc = 0.0;
  for (auto c : second.coefficients) acc += static_cast<double>(std::llabs(c));
  return acc;
}

}  // namespace cmap
