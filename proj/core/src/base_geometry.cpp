#include "cmap/base_geometry.hpp"

#include "cmap/linalg.hpp"

namespace cmap {

CVec AmbientPoint::as_vector() const {
  CVec v(q.size() + p.size());
  v << q, p;
  return v;
}

AmbientPoint embed_point(const Prepotential& f, const CVec& z) {
  const PrepotentialJet j = jet(f, z, 1);
  return {z, j.grad};
}

cplx omega_form(const CVec& u, const CVec& v) {
  if (u.size() != v.size() || u.size() % 2 != 0) throw InputError("omega needs two vectors of equal even length");
  const auto n = u.size() / 2;
  return u.head(n).cwiseProduct(v.tail(n)).sum() - u.tail(n).cwiseProduct(v.head(n)).sum();
}

cplx gamma_form(const CVec& u, const CVec& v) { return kI * omega_form(u, v.conjugate()); }

CMat gamma_matrix(int n) {
  CMat h = CMat::Zero(2 * n, 2 * n);
  h.topRightCorner(n, n) = kI * CMat::Identity(n, n);
  h.bottomLeftCorner(n, n) = -kI * CMat::Identity(n, n);
  return h;
}

CMat tangent_frame(const PrepotentialJet& j) {
  const int n = j.dimension();
  if (j.order < 2) throw OrderError("tangent frame needs a jet of order >= 2");
  CMat t(2 * n, n);
  t.topRows(n) = CMat::Identity(n, n);
  t.bottomRows(n) = j.hess;  // column i is (e_i, F_{i.}); F_ij symmetric
  return t;
}

BaseMetric base_metric(const PrepotentialJet& j, double degeneracy_ratio) {
  if (j.order < 2) throw OrderError("base metric needs a jet of order >= 2");
  BaseMetric m;
  m.z = j.z;
  m.g = 2.0 * j.hess.imag();
  m.eigenvalues = linalg::symmetric_eigenvalues(m.g);
  if (linalg::eigen_ratio(m.eigenvalues) < degeneracy_ratio)
    throw NondegenerateCheckFailed("base metric is degenerate (T_mM meets its conjugate)");
  m.signature = linalg::signature_of(m.eigenvalues);
  m.g_inv = m.g.inverse();
  return m;
}

double base_potential(const Prepotential& f, const CVec& z) {
  const PrepotentialJet j = jet(f, z, 1);
  // i (a - conj a) = -2 Im a with a = sum z^i conj F_i
  const cplx a = z.cwiseProduct(j.grad.conjugate()).sum();
  return -2.0 * a.imag();
}

GeneralPositionReport general_position_check(const PrepotentialJet& j, double ratio_tol) {
  if (j.order < 2) throw OrderError("general position check needs a jet of order >= 2");
  const RVec sv = linalg::singular_values(RMat(j.hess.imag()));
  GeneralPositionReport r;
  r.max_singular_value = sv.size() ? sv(0) : 0.0;
  r.min_singular_value = sv.size() ? sv(sv.size() - 1) : 0.0;
  r.pass = r.max_singular_value > 0.0 && r.min_singular_value >= ratio_tol * r.max_singular_value;
  return r;
}

}  // namespace cmap
