#pragma once

#include "cmap/jets.hpp"
#include "cmap/types.hpp"

namespace cmap {

/// A point (q, p) of V = T*C^n.
struct AmbientPoint {
  CVec q;
  CVec p;

  /// Stacked (q; p) in C^{2n}.
  CVec as_vector() const;
};

/// The metric g = gamma|TM on the Lagrangean submanifold M = image(dF).
struct BaseMetric {
  CVec z;
  RMat g;
  RMat g_inv;
  RVec eigenvalues;
  Signature signature;

  int dimension() const { return static_cast<int>(g.rows()); }
};

struct GeneralPositionReport {
  bool pass = false;
  double min_singular_value = 0.0;
  double max_singular_value = 0.0;
};

/// (q, p) = (z, grad F(z)).
AmbientPoint embed_point(const Prepotential& f, const CVec& z);

/// omega((q,p),(q',p')) = sum q^i p'_i - p_i q'^i.
cplx omega_form(const CVec& u, const CVec& v);

/// gamma(u, v) = i omega(u, conj v). Hermitian of signature (n, n).
cplx gamma_form(const CVec& u, const CVec& v);

/// Hermitian matrix H of gamma on C^{2n}: gamma(u, v) = u^T H conj(v).
CMat gamma_matrix(int n);

/// Tangent vectors t_i = (e_i, F_{i.}) of M at the jet point, as columns.
CMat tangent_frame(const PrepotentialJet& j);

/// g_ij = i (conj F_ij - F_ij) = 2 Im F_ij with inverse and signature.
/// Throws NondegenerateCheckFailed when min|eig| / max|eig| < degeneracy_ratio.
BaseMetric base_metric(const PrepotentialJet& j, double degeneracy_ratio = 1e-10);

/// K^M(z) = i sum (z^i conj F_i - conj z^i F_i) = gamma(u, u) for u = embed_point.
double base_potential(const Prepotential& f, const CVec& z);

/// Margin of Im F_ij: passes when its singular values are bounded away from 0
/// relative to the largest.
GeneralPositionReport general_position_check(const PrepotentialJet& j, double ratio_tol = 1e-10);

}  // namespace cmap
