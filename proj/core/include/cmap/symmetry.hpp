#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cmap/hyperkahler.hpp"
#include "cmap/jets.hpp"

namespace cmap {

/// v = (v^1..v^n, v_1..v_n) in V^tau = T*R^n.
struct SymplecticVectorReal {
  RVec up;    // components along positions q
  RVec down;  // components along momenta p

  static SymplecticVectorReal from_stacked(const RVec& v);
  RVec stacked() const;
  int dimension() const { return static_cast<int>(up.size()); }
};

/// A full-rank lattice in V^tau; basis columns are generators in (v^i; v_i) order.
class Lattice {
 public:
  static Lattice standard(int n);
  static Lattice from_basis(RMat basis);

  const RMat& basis() const { return basis_; }
  int dimension() const { return static_cast<int>(basis_.rows()) / 2; }
  SymplecticVectorReal generator(int a) const { return SymplecticVectorReal::from_stacked(basis_.col(a)); }

 private:
  explicit Lattice(RMat b) : basis_(std::move(b)) {}
  RMat basis_;
};

/// Reads `{"basis": [[...], ...]}` (each inner array is one generator) or the
/// literal string "standard".
Lattice parse_lattice(std::string_view text, int n);
Lattice load_lattice(const std::filesystem::path& path, int n);

/// psi_z(v)_i = -(v_i - sum_j F_ij(z) v^j).
CVec psi_map(const PrepotentialJet& j, const SymplecticVectorReal& v);

/// Real 2n x 2n matrix of v -> i psi_z(v), columns indexed by stacked v,
/// rows by (Re; Im) of the fiber shift.
RMat fiber_shift_matrix(const PrepotentialJet& j);

/// (z, w) -> (z, w - i (v_i - sum_j F_ij v^j)).
FiberPoint translate(const Prepotential& f, const SymplecticVectorReal& v, const FiberPoint& at);

/// Holomorphic Jacobian of translate at `at`: identity plus the block
/// d w~_i / d z^k = i sum_j F_ijk v^j. Rows are new coordinates.
CMat translation_jacobian(const PrepotentialJet& j, const SymplecticVectorReal& v);

struct InvarianceReport {
  double omega_residual = 0.0;      // |J^T Omega J - Omega|
  double potential_residual = 0.0;  // |K(v.p) - K(p) - (-2 v^j x_j + g_ij v^i v^j)|
  double metric_residual = 0.0;     // |J^T G(v.p) conj(J) - G(p)|
};

/// Maximum residuals over the samples. Potential and metric residuals are
/// relative to max(1, scale of the compared quantity).
InvarianceReport invariance_check(const Prepotential& f, const SymplecticVectorReal& v,
                                  std::span<const FiberPoint> samples);

struct LatticeReduction {
  CVec representative;
  std::vector<std::int64_t> coefficients;
};

/// Writes w = representative + i psi_z(sum m_a gamma_a) with the
/// representative's real lattice coordinates in [0, 1)^{2n}.
LatticeReduction lattice_reduce(const Prepotential& f, const CVec& z, const Lattice& lattice, const CVec& w);

/// Pulled-back metric comparison between (z, w) and (z, representative):
/// | T^T G(z, w) conj(T) - G(z, rep) | / max(1, |G|) where T is the Jacobian of
/// the lattice translation carrying the representative to w.
double lattice_periodicity_residual(const Prepotential& f, const CVec& z, const Lattice& lattice, const CVec& w);

struct DualityReport {
  double membership_residual = 0.0;
  bool membership_pass = false;
  std::optional<double> isometry_residual;  // present only when membership passes
};

/// Point transformation phi = diag(A, A^{-T}) on (q, p).
DualityReport duality_check(const Prepotential& f, const RMat& A, std::span<const CVec> samples,
                            double membership_tol = 1e-10);

}  // namespace cmap
