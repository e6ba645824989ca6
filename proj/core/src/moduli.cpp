#include "cmap/moduli.hpp"

#include <cmath>
#include <numbers>

#include "cmap/linalg.hpp"

namespace cmap {

namespace {

CVec lift(const CVec& q) {
  CVec z(q.size() + 1);
  z(0) = 1.0;
  z.tail(q.size()) = q;
  return z;
}

// Orthonormal basis (standard Hermitian product) of the complement of c.
CMat orthogonal_complement(const CVec& c) {
  const CMat cm = c;
  Eigen::HouseholderQR<CMat> qr(cm);
  const CMat q = qr.householderQ() * CMat::Identity(c.size(), c.size());
  return q.rightCols(c.size() - 1);
}

struct RestrictedForm {
  CMat basis;  // coefficient vectors a spanning T_uM and u-perp
  CMat form;   // M = N^T g conj(N)
};

RestrictedForm restrict_to_complement(const RMat& g, const CVec& z) {
  // gamma(sum a t, u) = a^T g conj(z) = <a, g z> in the standard product.
  RestrictedForm r;
  r.basis = orthogonal_complement(g.cast<cplx>() * z);
  r.form = r.basis.transpose() * g.cast<cplx>() * r.basis.conjugate();
  r.form = 0.5 * (r.form + r.form.adjoint());
  return r;
}

}  // namespace

CMat HodgeDecomposition::stacked() const {
  CMat m(u.size(), 2 + h21.cols() + h12.cols());
  m << h30, h21, h12, h03;
  return m;
}

bool satisfies_cone_condition(const Prepotential& cone, const CVec& z, double tol, double* residual_out) {
  const PrepotentialJet j = jet(cone, z, 1);
  cplx acc{0.0, 0.0};
  double scale = std::max(1.0, std::abs(j.value));
  for (int a = 0; a < j.dimension(); ++a) {
    const cplx term = z(a) * j.grad(a);
    acc += term;
    scale = std::max(scale, std::abs(term));
  }
  const double residual = std::abs(acc - 2.0 * j.value);
  if (residual_out) *residual_out = residual;
  return residual <= tol * scale;
}

Prepotential chart_prepotential(const Prepotential& cone) {
  const int n = cone.dimension() - 1;
  if (n <= 0) throw InputError("a cone prepotential needs at least two variables");
  return Prepotential::oracle(n, cone.max_order(), [cone](std::span<const cplx> q, std::span<const int> counts) {
    std::vector<cplx> z(q.size() + 1);
    z[0] = 1.0;
    std::copy(q.begin(), q.end(), z.begin() + 1);
    std::vector<int> c(counts.size() + 1, 0);
    std::copy(counts.begin(), counts.end(), c.begin() + 1);
    return cone.partial(z, c);
  });
}

ConeChart cone_chart(const Prepotential& cone, const CVec& q, double euler_tol) {
  if (q.size() + 1 != cone.dimension()) throw InputError("chart point must have n = dim - 1 components");
  ConeChart c;
  c.ambient_dimension = cone.dimension();
  c.q = q;
  c.lifted = lift(q);
  if (!satisfies_cone_condition(cone, c.lifted, euler_tol)) throw InputError("cone condition violated");
  c.lowered = jet(chart_prepotential(cone), q, 3);
  return c;
}

Tensor3 third_fundamental_form(const Prepotential& cone, const CVec& q) {
  if (cone.kind() != Prepotential::Kind::very_special_cubic)
    throw InputError("third fundamental form not defined in scalar realization for this prepotential kind");
  return cone_chart(cone, q).lowered.third;
}

std::vector<FormalModuliRecord> formal_moduli_check(const Prepotential& cone, std::span<const CVec> samples,
                                                    double euler_tol) {
  std::vector<FormalModuliRecord> out;
  out.reserve(samples.size());
  for (const CVec& z : samples) {
    if (z.size() != cone.dimension()) throw InputError("sample dimension does not match cone prepotential");
    FormalModuliRecord rec;
    rec.point = z;
    rec.cone = satisfies_cone_condition(cone, z, euler_tol, &rec.euler_residual);

    const PrepotentialJet j = jet(cone, z, 2);
    const cplx a = z.cwiseProduct(j.grad.conjugate()).sum();
    rec.gamma_uu = -2.0 * a.imag();
    rec.positivity = rec.gamma_uu > 0.0;
    if (!rec.positivity) {
      out.push_back(std::move(rec));
      continue;
    }

    const RMat g = 2.0 * j.hess.imag();
    if (linalg::eigen_ratio(linalg::symmetric_eigenvalues(g)) < 1e-10) {
      rec.general_position = false;
      rec.negativity = false;
      out.push_back(std::move(rec));
      continue;
    }
    const RestrictedForm rf = restrict_to_complement(g, z);
    rec.eigenvalues = linalg::hermitian_eigenvalues(rf.form);
    rec.negativity = rec.eigenvalues.size() > 0 && rec.eigenvalues.maxCoeff() < 0.0;
    out.push_back(std::move(rec));
  }
  return out;
}

double projective_special_metric(const CVec& u, const CVec& v) {
  const double guu = gamma_form(u, u).real();
  if (std::abs(guu) <= 1e-12 * u.squaredNorm()) throw InputError("gamma(u, u) vanishes; projective metric undefined");
  const cplx guv = gamma_form(u, v) / guu;
  return gamma_form(v, v).real() / guu - std::norm(guv);
}

CVec tangent_vector(const PrepotentialJet& j, const CVec& a) { return tangent_frame(j) * a; }

HodgeDecomposition hodge_structure(const Prepotential& cone, const CVec& z) {
  const CVec pts[] = {z};
  const FormalModuliRecord rec = formal_moduli_check(cone, pts).front();
  if (!rec.passes()) throw InputError("point is not on a formal moduli space; Hodge decomposition undefined");

  const PrepotentialJet j = jet(cone, z, 2);
  const RMat g = 2.0 * j.hess.imag();
  const RestrictedForm rf = restrict_to_complement(g, z);
  Eigen::SelfAdjointEigenSolver<CMat> es(rf.form);
  const CMat frame = tangent_frame(j);

  HodgeDecomposition h;
  h.u = AmbientPoint{z, j.grad}.as_vector();
  h.h30 = h.u;
  h.h21.resize(h.u.size(), rf.basis.cols());
  for (Eigen::Index k = 0; k < rf.basis.cols(); ++k) {
    // gamma(N e, N e') = e^T M conj(e'); e = conj(U_k) / sqrt|lambda_k| makes it -delta.
    const CVec e = es.eigenvectors().col(k).conjugate() / std::sqrt(std::abs(es.eigenvalues()(k)));
    h.h21.col(k) = frame * (rf.basis * e);
  }
  h.h12 = h.h21.conjugate();
  h.h03 = h.u.conjugate();
  return h;
}

JacobianFiber jacobian_fiber(const Prepotential& f, const CVec& z, const Lattice& lattice, double rcond_threshold) {
  const int n = f.dimension();
  if (lattice.dimension() != n) throw InputError("lattice dimension does not match prepotential");
  const PrepotentialJet j = jet(f, z, 2);
  const RMat real_image = fiber_shift_matrix(j) * lattice.basis();

  JacobianFiber out;
  out.z = z;
  out.real_rank = linalg::numerical_rank(real_image);
  if (out.real_rank < 2 * n) throw NondegenerateCheckFailed("lattice image has real rank below 2n");
  out.lattice_image.resize(n, 2 * n);
  for (int a = 0; a < 2 * n; ++a) out.lattice_image.col(a) = linalg::complexify(real_image.col(a));

  const CMat p1 = out.lattice_image.leftCols(n);
  out.period_rcond = linalg::reciprocal_condition(p1);
  if (out.period_rcond >= rcond_threshold)
    out.period_matrix = p1.fullPivLu().solve(CMat(out.lattice_image.rightCols(n)));
  return out;
}

std::optional<CVec> find_formal_moduli_point(const Prepotential& cone, std::span<const double> magnitudes,
                                             int phase_steps, double margin) {
  const int n = cone.dimension() - 1;
  const int per_axis = static_cast<int>(magnitudes.size()) * phase_steps;
  if (n <= 0 || per_axis == 0) return std::nullopt;
  std::vector<int> idx(n, 0);
  while (true) {
    CVec q(n);
    for (int i = 0; i < n; ++i) {
      const double r = magnitudes[idx[i] / phase_steps];
      const double phase = 2.0 * std::numbers::pi * (idx[i] % phase_steps) / phase_steps;
      q(i) = std::polar(r, phase);
    }
    const CVec z = lift(q);
    bool defined = true;
    std::vector<FormalModuliRecord> recs;
    try {
      const CVec pts[] = {z};
      recs = formal_moduli_check(cone, pts);
    } catch (const DomainError&) {
      defined = false;
    }
    if (defined && recs.front().passes()) {
      const auto& rec = recs.front();
      const RMat g = 2.0 * jet(cone, z, 2).hess.imag();
      const double scale = linalg::symmetric_eigenvalues(g).cwiseAbs().maxCoeff();
      const double gap = -rec.eigenvalues.maxCoeff();
      if (rec.gamma_uu > margin * scale * z.squaredNorm() && gap > margin * scale) return q;
    }
    int p = n - 1;
    while (p >= 0 && idx[p] == per_axis - 1) idx[p--] = 0;
    if (p < 0) break;
    ++idx[p];
  }
  return std::nullopt;
}

}  // namespace cmap
