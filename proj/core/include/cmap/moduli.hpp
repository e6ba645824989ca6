#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cmap/base_geometry.hpp"
#include "cmap/jets.hpp"
#include "cmap/symmetry.hpp"

namespace cmap {

/// Affine chart z = (1, q) of a conic prepotential on C^{n+1}.
struct ConeChart {
  int ambient_dimension = 0;
  CVec q;
  CVec lifted;
  PrepotentialJet lowered;  // jet of f(q) = F(1, q), order 3
};

/// Polarized Hodge decomposition V = H30 + H21 + H12 + H03 at a point of a
/// formal moduli space. Vectors live in V = C^{2n+2}; H21/H12 are columns.
struct HodgeDecomposition {
  CVec u;
  CVec h30;
  CMat h21;
  CMat h12;
  CVec h03;

  /// Columns h30 | h21 | h12 | h03.
  CMat stacked() const;
};

struct FormalModuliRecord {
  CVec point;
  double euler_residual = 0.0;
  bool cone = false;
  double gamma_uu = 0.0;
  bool positivity = false;
  bool general_position = true;
  /// Empty when positivity fails (condition (iii) is then not evaluated).
  std::optional<bool> negativity;
  /// Eigenvalues of gamma restricted to T_uM intersected with u-perp.
  RVec eigenvalues;

  bool passes() const { return cone && positivity && negativity.value_or(false); }
};

struct JacobianFiber {
  CVec z;
  CMat lattice_image;  // n x 2n, columns i psi_z(gamma_a)
  int real_rank = 0;
  double period_rcond = 0.0;
  std::optional<CMat> period_matrix;  // P1^{-1} P2 when rcond(P1) >= threshold
};

/// Scale-aware Euler test: |euler_residual| <= tol * max(1, |F|, max|z^A F_A|).
bool satisfies_cone_condition(const Prepotential& cone, const CVec& z, double tol = 1e-9,
                              double* residual_out = nullptr);

/// Lifts q to (1, q) and lowers the jet. Throws InputError when the Euler
/// identity fails at the lifted point.
ConeChart cone_chart(const Prepotential& cone, const CVec& q, double euler_tol = 1e-9);

/// The chart prepotential f(q) = F(1, q) as a derivative oracle on C^n.
Prepotential chart_prepotential(const Prepotential& cone);

/// Third derivatives of the lowered prepotential f(q) = F(1, q). Only defined
/// for very-special cubics; other kinds throw InputError.
Tensor3 third_fundamental_form(const Prepotential& cone, const CVec& q);

/// Conditions (i) cone, (ii) gamma(u,u) > 0, (iii) gamma < 0 on T_uM and u-perp,
/// per sample point of C^{n+1}.
std::vector<FormalModuliRecord> formal_moduli_check(const Prepotential& cone, std::span<const CVec> samples,
                                                    double euler_tol = 1e-9);

/// gamma(v,v)/gamma(u,u) - |gamma(u,v)/gamma(u,u)|^2 for u, v in C^{2n+2}.
double projective_special_metric(const CVec& u, const CVec& v);

/// Tangent vector sum_A a^A t_A of M at the jet point, in C^{2n+2}.
CVec tangent_vector(const PrepotentialJet& j, const CVec& a);

/// H30 = C u, H21 = T_uM and u-perp with a gamma-orthonormal basis (gamma = -1),
/// H12 and H03 their conjugates. Throws InputError when the point fails the
/// formal moduli conditions.
HodgeDecomposition hodge_structure(const Prepotential& cone, const CVec& z);

/// Lattice image i psi_z(Gamma) in T*_z M and, when well conditioned, the
/// normalized period matrix.
JacobianFiber jacobian_fiber(const Prepotential& f, const CVec& z, const Lattice& lattice,
                             double rcond_threshold = 1e-8);

/// Grid scan of chart points: |q^i| over `magnitudes`, arguments over
/// `phase_steps` equally spaced angles. Returns the first chart point whose
/// lifted point passes all formal moduli conditions with eigenvalue margin
/// `margin` (relative to the largest), or nothing.
std::optional<CVec> find_formal_moduli_point(const Prepotential& cone, std::span<const double> magnitudes,
                                             int phase_steps, double margin = 1e-3);

}  // namespace cmap
