#include "cmap/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace cmap::linalg {

RVec symmetric_eigenvalues(const RMat& m) {
  Eigen::SelfAdjointEigenSolver<RMat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

RVec hermitian_eigenvalues(const CMat& m) {
  Eigen::SelfAdjointEigenSolver<CMat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

Signature signature_of(const RVec& eigenvalues, double zero_tol) {
  const double scale = eigenvalues.size() ? eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  Signature s;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const double e = eigenvalues(i);
    if (std::abs(e) <= zero_tol * scale) continue;
    (e > 0 ? s.positive : s.negative) += 1;
  }
  return s;
}

double eigen_ratio(const RVec& eigenvalues) {
  if (eigenvalues.size() == 0) return 0.0;
  const RVec a = eigenvalues.cwiseAbs();
  const double hi = a.maxCoeff();
  return hi > 0.0 ? a.minCoeff() / hi : 0.0;
}

RVec singular_values(const RMat& m) {
  Eigen::JacobiSVD<RMat> svd(m);
  return svd.singularValues();
}

RVec singular_values(const CMat& m) {
  Eigen::JacobiSVD<CMat> svd(m);
  return svd.singularValues();
}

namespace {
double ratio_of(const RVec& sv) {
  if (sv.size() == 0 || sv(0) <= 0.0) return 0.0;
  return sv(sv.size() - 1) / sv(0);
}
}  // namespace

double reciprocal_condition(const RMat& m) { return ratio_of(singular_values(m)); }
double reciprocal_condition(const CMat& m) { return ratio_of(singular_values(m)); }

int numerical_rank(const RMat& m, double tol) {
  const RVec sv = singular_values(m);
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  return static_cast<int>((sv.array() > tol * sv(0)).count());
}

double max_abs(const CMat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }
double max_abs(const RMat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

RVec realify(const CVec& v) {
  const auto n = v.size();
  RVec out(2 * n);
  out.head(n) = v.real();
  out.tail(n) = v.imag();
  return out;
}

CVec complexify(const RVec& v) {
  const auto n = v.size() / 2;
  CVec out(n);
  for (Eigen::Index i = 0; i < n; ++i) out(i) = cplx(v(i), v(n + i));
  return out;
}

RMat realify(const CMat& m) {
  const auto r = m.rows();
  const auto c = m.cols();
  RMat out(2 * r, 2 * c);
  out.topLeftCorner(r, c) = m.real();
  out.topRightCorner(r, c) = -m.imag();
  out.bottomLeftCorner(r, c) = m.imag();
  out.bottomRightCorner(r, c) = m.real();
  return out;
}

}  // namespace cmap::linalg
