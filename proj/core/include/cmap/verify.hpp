#pragma once

#include "cmap/hyperkahler.hpp"
#include "cmap/symmetry.hpp"

namespace cmap {

/// |H - G| / max(1, |G|) where H is the central-difference Wirtinger Hessian
/// of hk_potential over (z, w) and G the analytic block metric.
double hessian_oracle_residual(const Prepotential& f, const FiberPoint& at, double step = 1e-4);

/// |G - G^H|.
double hermitian_residual(const CMat& g);

/// |G * G^{-1} - Id| with the closed-form inverse.
double inverse_residual(const HermitianBlockMetric& gb, const BaseMetric& base);

struct QuaternionReport {
  double squares = 0.0;        // |J_a^2 + Id|, worst over a
  double products = 0.0;       // |J1 J2 - J3| and |J2 J1 + J3|
  double compatibility = 0.0;  // |J_a^T S J_a - S| / max(1, |S|)
  double max() const { return std::max({squares, products, compatibility}); }
};

QuaternionReport quaternion_residuals(const HypercomplexTriple& t);

/// Reduces w, then reduces the representative again; returns the sum of
/// |coefficients| of the second reduction (0 when reduction is idempotent).
double lattice_idempotence_residual(const Prepotential& f, const CVec& z, const Lattice& lattice, const CVec& w);

}  // namespace cmap
