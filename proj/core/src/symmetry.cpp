#include "cmap/symmetry.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cmap/linalg.hpp"

namespace cmap {

SymplecticVectorReal SymplecticVectorReal::from_stacked(const RVec& v) {
  if (v.size() % 2 != 0) throw InputError("symplectic vector must have even length");
  const auto n = v.size() / 2;
  return {v.head(n), v.tail(n)};
}

RVec SymplecticVectorReal::stacked() const {
  RVec v(up.size() + down.size());
  v << up, down;
  return v;
}

Lattice Lattice::standard(int n) {
  if (n <= 0) throw InputError("lattice dimension must be positive");
  return Lattice(RMat::Identity(2 * n, 2 * n));
}

Lattice Lattice::from_basis(RMat basis) {
  if (basis.rows() != basis.cols() || basis.rows() % 2 != 0 || basis.rows() == 0)
    throw InputError("lattice basis must be a nonempty 2n x 2n matrix");
  RMat normalized = basis;
  for (Eigen::Index c = 0; c < normalized.cols(); ++c) {
    const double nrm = normalized.col(c).norm();
    if (nrm == 0.0) throw InputError("lattice basis has a zero generator");
    normalized.col(c) /= nrm;
  }
  if (std::abs(normalized.determinant()) < 1e-12) throw InputError("lattice basis is rank deficient");
  return Lattice(std::move(basis));
}

Lattice parse_lattice(std::string_view text, int n) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed lattice document: ") + e.what());
  }
  if (doc.is_string() && doc.get<std::string>() == "standard") return Lattice::standard(n);
  if (!doc.is_object() || !doc.contains("basis") || !doc.at("basis").is_array())
    throw InputError("lattice document needs a `basis` array");
  const auto& cols = doc.at("basis");
  const int dim = 2 * n;
  if (static_cast<int>(cols.size()) != dim) throw InputError("lattice needs exactly 2n generators");
  RMat basis(dim, dim);
  for (int c = 0; c < dim; ++c) {
    const auto& col = cols[c];
    if (!col.is_array() || static_cast<int>(col.size()) != dim)
      throw InputError("each lattice generator needs 2n real components");
    for (int r = 0; r < dim; ++r) {
      if (!col[r].is_number()) throw InputError("lattice components must be real numbers");
      basis(r, c) = col[r].get<double>();
    }
  }
  return Lattice::from_basis(std::move(basis));
}

Lattice load_lattice(const std::filesystem::path& path, int n) {
  if (path == "standard") return Lattice::standard(n);
  std::ifstream in(path);
  if (!in) throw InputError("cannot read lattice document " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_lattice(ss.str(), n);
}

CVec psi_map(const PrepotentialJet& j, const SymplecticVectorReal& v) {
  if (j.order < 2) throw OrderError("psi map needs a jet of order >= 2");
  if (v.dimension() != j.dimension()) throw InputError("symplectic vector dimension mismatch");
  return -(v.down.cast<cplx>() - j.hess * v.up.cast<cplx>());
}

RMat fiber_shift_matrix(const PrepotentialJet& j) {
  if (j.order < 2) throw OrderError("fiber shift needs a jet of order >= 2");
  const int n = j.dimension();
  // i psi(v) = i F v^up - i v_down
  RMat m = RMat::Zero(2 * n, 2 * n);
  m.topLeftCorner(n, n) = -j.hess.imag();
  m.bottomLeftCorner(n, n) = j.hess.real();
  m.bottomRightCorner(n, n) = -RMat::Identity(n, n);
  return m;
}

FiberPoint translate(const Prepotential& f, const SymplecticVectorReal& v, const FiberPoint& at) {
  const PrepotentialJet j = jet(f, at.z, 2);
  return {at.z, at.w + kI * psi_map(j, v)};
}

CMat translation_jacobian(const PrepotentialJet& j, const SymplecticVectorReal& v) {
  if (j.order < 3) throw OrderError("translation Jacobian needs a jet of order >= 3");
  const int n = j.dimension();
  CMat jac = CMat::Identity(2 * n, 2 * n);
  // d w~_i / d z^k = i sum_j F_ijk v^j
  const CMat c = contract_last(j.third, CVec(v.up.cast<cplx>()));
  jac.bottomLeftCorner(n, n) = kI * c;
  return jac;
}

InvarianceReport invariance_check(const Prepotential& f, const SymplecticVectorReal& v,
                                  std::span<const FiberPoint> samples) {
  const int n = f.dimension();
  CMat omega = CMat::Zero(2 * n, 2 * n);
  omega.topRightCorner(n, n) = CMat::Identity(n, n);
  omega.bottomLeftCorner(n, n) = -CMat::Identity(n, n);

  InvarianceReport r;
  for (const FiberPoint& p : samples) {
    const PrepotentialJet j = jet(f, p.z, 3);
    const BaseMetric base = base_metric(j);
    const FiberPoint q{p.z, p.w + kI * psi_map(j, v)};
    const CMat jac = translation_jacobian(j, v);

    r.omega_residual = std::max(r.omega_residual, linalg::max_abs(CMat(jac.transpose() * omega * jac - omega)));

    const double k0 = hk_potential(f, p);
    const double k1 = hk_potential(f, q);
    const RVec x = 2.0 * p.w.real();
    const double expected = -2.0 * v.up.dot(x) + v.up.dot(base.g * v.up);
    r.potential_residual =
        std::max(r.potential_residual, std::abs(k1 - k0 - expected) / std::max({1.0, std::abs(k0), std::abs(k1)}));

    const CMat g0 = hk_metric(j, base, p.w).assembled();
    const CMat g1 = hk_metric(j, base, q.w).assembled();
    const CMat pulled = jac.transpose() * g1 * jac.conjugate();
    r.metric_residual =
        std::max(r.metric_residual, linalg::max_abs(CMat(pulled - g0)) / std::max(1.0, linalg::max_abs(g0)));
  }
  return r;
}

LatticeReduction lattice_reduce(const Prepotential& f, const CVec& z, const Lattice& lattice, const CVec& w) {
  if (lattice.dimension() != f.dimension()) throw InputError("lattice dimension does not match prepotential");
  const PrepotentialJet j = jet(f, z, 2);
  const RMat m = fiber_shift_matrix(j) * lattice.basis();
  if (linalg::reciprocal_condition(m) < 1e-12)
    throw NondegenerateCheckFailed("lattice image is rank deficient at this base point");
  const RVec t = m.fullPivLu().solve(linalg::realify(w));

  LatticeReduction out;
  out.coefficients.resize(t.size());
  RVec mf(t.size());
  for (Eigen::Index a = 0; a < t.size(); ++a) {
    // Snap coordinates within roundoff of an integer so exact lattice
    // translates land on the closed side of the half-open cell.
    const double nearest = std::round(t(a));
    const double ta = std::abs(t(a) - nearest) < 1e-9 ? nearest : t(a);
    const double fl = std::floor(ta);
    out.coefficients[a] = static_cast<std::int64_t>(fl);
    mf(a) = fl;
  }
  out.representative = w - linalg::complexify(m * mf);
  return out;
}

double lattice_periodicity_residual(const Prepotential& f, const CVec& z, const Lattice& lattice, const CVec& w) {
  const LatticeReduction red = lattice_reduce(f, z, lattice, w);
  RVec mf(red.coefficients.size());
  for (std::size_t a = 0; a < red.coefficients.size(); ++a) mf(a) = static_cast<double>(red.coefficients[a]);
  const SymplecticVectorReal shift = SymplecticVectorReal::from_stacked(lattice.basis() * mf);

  const PrepotentialJet j = jet(f, z, 3);
  const BaseMetric base = base_metric(j);
  const CMat g_rep = hk_metric(j, base, red.representative).assembled();
  const CMat g_w = hk_metric(j, base, w).assembled();
  const CMat jac = translation_jacobian(j, shift);
  const CMat pulled = jac.transpose() * g_w * jac.conjugate();
  return linalg::max_abs(CMat(pulled - g_rep)) / std::max(1.0, linalg::max_abs(g_rep));
}

DualityReport duality_check(const Prepotential& f, const RMat& A, std::span<const CVec> samples,
                            double membership_tol) {
  const int n = f.dimension();
  if (A.rows() != n || A.cols() != n) throw InputError("duality matrix must be n x n");
  Eigen::FullPivLU<RMat> lu(A);
  if (!lu.isInvertible()) throw InputError("duality matrix must be invertible");
  const CMat a = A.cast<cplx>();
  const CMat a_inv_t = lu.inverse().transpose().cast<cplx>();

  DualityReport r;
  for (const CVec& z : samples) {
    const PrepotentialJet j0 = jet(f, z, 1);
    const PrepotentialJet j1 = jet(f, a * z, 1);
    const double scale = std::max(1.0, j0.grad.cwiseAbs().maxCoeff());
    r.membership_residual =
        std::max(r.membership_residual, (j1.grad - a_inv_t * j0.grad).cwiseAbs().maxCoeff() / scale);
  }
  r.membership_pass = r.membership_residual <= membership_tol;
  if (r.membership_pass) {
    double iso = 0.0;
    for (const CVec& z : samples) {
      const RMat g0 = 2.0 * jet(f, z, 2).hess.imag();
      const RMat g1 = 2.0 * jet(f, a * z, 2).hess.imag();
      iso = std::max(iso, linalg::max_abs(RMat(A.transpose() * g1 * A - g0)) / std::max(1.0, linalg::max_abs(g0)));
    }
    r.isometry_residual = iso;
  }
  return r;
}

}  // namespace cmap
