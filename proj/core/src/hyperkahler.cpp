#include "cmap/hyperkahler.hpp"

#include <cmath>

#include "cmap/linalg.hpp"

namespace cmap {

namespace {

void check_fiber_point(const Prepotential& f, const FiberPoint& at) {
  if (at.z.size() != f.dimension() || at.w.size() != f.dimension())
    throw InputError("fiber point dimension does not match prepotential");
}

// Shared pieces of the block formulas at one point:
//   x = w + conj w (real), u = g^{-1} x, S_{pi} = sum_q F_{pqi} u_q.
struct FiberData {
  RMat g;
  RMat gi;
  RVec x;
  RVec u;
  CMat S;
};

FiberData fiber_data(const PrepotentialJet& j, const BaseMetric& base, const CVec& w) {
  FiberData d;
  d.g = base.g;
  d.gi = base.g_inv;
  d.x = 2.0 * w.real();
  d.u = d.gi * d.x;
  d.S = contract_last(j.third, CVec(d.u.cast<cplx>()));
  return d;
}

}  // namespace

CMat HermitianBlockMetric::assembled() const {
  const auto n = A.rows();
  CMat g(2 * n, 2 * n);
  g.topLeftCorner(n, n) = A;
  g.topRightCorner(n, n) = B.transpose();
  g.bottomLeftCorner(n, n) = B.conjugate();
  g.bottomRightCorner(n, n) = C;
  return g;
}

double hk_potential(const Prepotential& f, const FiberPoint& at) {
  check_fiber_point(f, at);
  const PrepotentialJet j = jet(f, at.z, 2);
  const BaseMetric base = base_metric(j);
  const cplx a = at.z.cwiseProduct(j.grad.conjugate()).sum();
  const double km = -2.0 * a.imag();
  const RVec x = 2.0 * at.w.real();
  return km + x.dot(base.g_inv * x);
}

HermitianBlockMetric hk_metric(const PrepotentialJet& j, const BaseMetric& base, const CVec& w) {
  if (j.order < 3) throw OrderError("hk_metric needs a jet of order >= 3");
  const FiberData d = fiber_data(j, base, w);
  const CMat gi = d.gi.cast<cplx>();

  HermitianBlockMetric m;
  m.at = {j.z, w};
  m.B = 2.0 * kI * gi * d.S;
  m.A = d.g.cast<cplx>() + 2.0 * d.S * gi * d.S.conjugate();
  m.C = 2.0 * gi;
  const CMat full = m.assembled();
  m.eigenvalues = linalg::hermitian_eigenvalues(full);
  m.signature = linalg::signature_of(m.eigenvalues);
  return m;
}

HermitianBlockMetric hk_metric(const Prepotential& f, const FiberPoint& at) {
  check_fiber_point(f, at);
  const PrepotentialJet j = jet(f, at.z, 3);
  return hk_metric(j, base_metric(j), at.w);
}

CMat hk_metric_inverse(const HermitianBlockMetric& gb, const BaseMetric& base) {
  const auto n = gb.A.rows();
  const CMat g = base.g.cast<cplx>();
  const CMat& b = gb.B;
  CMat inv(2 * n, 2 * n);
  inv.topLeftCorner(n, n) = base.g_inv.cast<cplx>();
  inv.topRightCorner(n, n) = -0.5 * b;
  inv.bottomLeftCorner(n, n) = -0.5 * b.adjoint();
  inv.bottomRightCorner(n, n) = 0.5 * (g + 0.5 * b.adjoint() * g * b);
  return inv;
}

std::vector<CMat> hk_metric_derivatives(const Prepotential& f, const FiberPoint& at) {
  check_fiber_point(f, at);
  if (f.max_order() < 4) throw OrderError("Christoffel symbols need the jet of F to order 4");
  const int n = f.dimension();
  const PrepotentialJet j = jet(f, at.z, 4);
  const BaseMetric base = base_metric(j);
  const FiberData d = fiber_data(j, base, at.w);
  const CMat gi = d.gi.cast<cplx>();
  const CMat Sbar = d.S.conjugate();

  std::vector<CMat> out;
  out.reserve(2 * n);
  for (int K = 0; K < 2 * n; ++K) {
    CMat dg = CMat::Zero(n, n);
    CMat dgi = CMat::Zero(n, n);
    CVec du;
    CMat dS = CMat::Zero(n, n);
    if (K < n) {
      // d_k g = -i F_{..k}, d_k g^{-1} = i g^{-1} F_{..k} g^{-1}
      const CMat Ck = contract_last(j.third, K);
      dg = -kI * Ck;
      dgi = kI * gi * Ck * gi;
      du = dgi * d.x.cast<cplx>();
      CVec ek = CVec::Zero(n);
      ek(K) = 1.0;
      const Tensor3 F4k = contract_last(j.fourth, ek);
      dS = contract_last(F4k, CVec(d.u.cast<cplx>())) + contract_last(j.third, du);
    } else {
      // d/dw_m acts only through x = w + conj w
      du = gi.col(K - n);
      dS = contract_last(j.third, du);
    }
    // conj(S) = sum conj(F_pqi) u_q with u real; only u varies holomorphically.
    CMat dSbar = CMat::Zero(n, n);
    for (int p = 0; p < n; ++p)
      for (int i = 0; i < n; ++i) {
        cplx acc{0.0, 0.0};
        for (int q = 0; q < n; ++q) acc += std::conj(j.third(p, q, i)) * du(q);
        dSbar(p, i) = acc;
      }

    CMat dG(2 * n, 2 * n);
    dG.topLeftCorner(n, n) = dg + 2.0 * (dS * gi * Sbar + d.S * dgi * Sbar + d.S * gi * dSbar);
    dG.topRightCorner(n, n) = 2.0 * kI * (dS * gi + d.S * dgi);
    dG.bottomLeftCorner(n, n) = -2.0 * kI * (dgi * Sbar + gi * dSbar);
    dG.bottomRightCorner(n, n) = 2.0 * dgi;
    out.push_back(std::move(dG));
  }
  return out;
}

ChristoffelTensor christoffel(const Prepotential& f, const FiberPoint& at) {
  const std::vector<CMat> dG = hk_metric_derivatives(f, at);
  const PrepotentialJet j = jet(f, at.z, 3);
  const BaseMetric base = base_metric(j);
  const CMat ginv = hk_metric_inverse(hk_metric(j, base, at.w), base);

  const int dim = 2 * f.dimension();
  ChristoffelTensor c{at, Tensor3(dim)};
  for (int K = 0; K < dim; ++K) {
    // (dG_K * Ginv)(J, I) = sum_L d_K G_{JL} (G^{-1})_{LI}
    const CMat prod = dG[K] * ginv;
    for (int I = 0; I < dim; ++I)
      for (int J = 0; J < dim; ++J) c.gamma(I, J, K) = prod(J, I);
  }
  return c;
}

ParallelismReport parallel_symplectic_check(const ChristoffelTensor& gamma) {
  const int dim = gamma.dimension();
  const int n = dim / 2;
  ParallelismReport r;
  for (int J = 0; J < dim; ++J)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        r.max_residual_i = std::max(r.max_residual_i, std::abs(gamma(i, J, k) + gamma(n + k, J, n + i)));
        r.max_residual_ii = std::max(r.max_residual_ii, std::abs(gamma(i, J, n + k) - gamma(k, J, n + i)));
        r.max_residual_ii = std::max(r.max_residual_ii, std::abs(gamma(n + i, J, k) - gamma(n + k, J, i)));
      }
  return r;
}

HypercomplexTriple hypercomplex_triple(const HermitianBlockMetric& gb) {
  const int n = gb.base_dimension();
  const int N = 2 * n;

  // zeta = Z v maps real coordinates (Re z, Im z, Re w, Im w) to (z, w).
  CMat Z = CMat::Zero(N, 2 * N);
  for (int k = 0; k < n; ++k) {
    Z(k, k) = 1.0;
    Z(k, n + k) = kI;
    Z(n + k, 2 * n + k) = 1.0;
    Z(n + k, 3 * n + k) = kI;
  }
  const CMat G = gb.assembled();
  HypercomplexTriple t;
  t.metric = (Z.transpose() * G * Z.conjugate()).real();

  CMat omega = CMat::Zero(N, N);
  omega.topRightCorner(n, n) = CMat::Identity(n, n);
  omega.bottomLeftCorner(n, n) = -CMat::Identity(n, n);
  omega *= std::sqrt(2.0);
  const CMat P = Z.transpose() * omega * Z;

  Eigen::FullPivLU<RMat> lu(t.metric);
  if (!lu.isInvertible() || linalg::reciprocal_condition(t.metric) < 1e-14)
    throw NondegenerateCheckFailed("Re G is singular; hypercomplex triple undefined");
  // <J v, w> = v^T J^T S w = v^T P w  =>  J = S^{-1} P^T
  t.J2 = lu.solve(RMat(P.real().transpose()));
  t.J3 = lu.solve(RMat(P.imag().transpose()));

  t.J1 = RMat::Zero(2 * N, 2 * N);
  for (int blk = 0; blk < 2; ++blk) {
    const int o = blk * N;
    t.J1.block(o + n, o, n, n) = RMat::Identity(n, n);
    t.J1.block(o, o + n, n, n) = -RMat::Identity(n, n);
  }
  return t;
}

CurvatureTensor curvature(const Prepotential& f, const FiberPoint& at, double step) {
  check_fiber_point(f, at);
  if (f.max_order() < 4) throw OrderError("curvature needs the jet of F to order 4");
  const int n = f.dimension();
  const int dim = 2 * n;
  CurvatureTensor out{at, Tensor4(dim)};

  auto shifted = [&](int L, cplx delta) {
    FiberPoint p = at;
    if (L < n)
      p.z(L) += delta;
    else
      p.w(L - n) += delta;
    return christoffel(f, p);
  };

  for (int L = 0; L < dim; ++L) {
    const ChristoffelTensor xp = shifted(L, step);
    const ChristoffelTensor xm = shifted(L, -step);
    const ChristoffelTensor yp = shifted(L, kI * step);
    const ChristoffelTensor ym = shifted(L, -kI * step);
    for (int I = 0; I < dim; ++I)
      for (int J = 0; J < dim; ++J)
        for (int K = 0; K < dim; ++K) {
          const cplx dx = (xp(I, J, K) - xm(I, J, K)) / (2.0 * step);
          const cplx dy = (yp(I, J, K) - ym(I, J, K)) / (2.0 * step);
          out.r(I, J, K, L) = -0.5 * (dx + kI * dy);
        }
  }
  return out;
}

}  // namespace cmap
