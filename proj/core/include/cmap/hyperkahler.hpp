#pragma once

#include <vector>

#include "cmap/base_geometry.hpp"
#include "cmap/jets.hpp"
#include "cmap/tensor.hpp"

namespace cmap {

/// A point (z, w) of T*M; w are fiber coordinates dual to d/dz.
struct FiberPoint {
  CVec z;
  CVec w;
};

/// The metric G on T*M in block form. With b := B (b^i_j = G_{j i'}):
///
///     G = [ A        B^T ]      A = g + 1/2 b^T g conj(b)
///         [ conj(B)  C   ]      C = 2 g^{-1}
///
/// Indices run over z^1..z^n, then w_1..w_n.
struct HermitianBlockMetric {
  FiberPoint at;
  CMat A;
  CMat B;
  CMat C;
  RVec eigenvalues;
  Signature signature;

  int base_dimension() const { return static_cast<int>(A.rows()); }
  CMat assembled() const;
};

/// Gamma(I, J, K) = Gamma^I_{JK} = sum_L (G^{-1})_{LI} d_K G_{JL}, indices over
/// the 2n holomorphic coordinates (z, w).
struct ChristoffelTensor {
  FiberPoint at;
  Tensor3 gamma;

  int dimension() const { return gamma.dim(); }
  const cplx& operator()(int i, int j, int k) const { return gamma(i, j, k); }
};

struct ParallelismReport {
  double max_residual_i = 0.0;   // Gamma^i_{Jk} + Gamma^{k'}_{Ji'}
  double max_residual_ii = 0.0;  // Gamma^i_{Jk'} - Gamma^k_{Ji'} and Gamma^{i'}_{Jk} - Gamma^{k'}_{Ji}
};

/// Real 4n x 4n matrices in the basis (Re z, Im z, Re w, Im w).
struct HypercomplexTriple {
  RMat J1;
  RMat J2;
  RMat J3;
  RMat metric;  // <.,.> = Re G in the same basis
};

/// R(I, J, K, L) = R^I_{J K conj(L)} = -d Gamma^I_{JK} / d conj(z^L).
struct CurvatureTensor {
  FiberPoint at;
  Tensor4 r;

  const cplx& operator()(int i, int j, int k, int l) const { return r(i, j, k, l); }
};

/// K = K^M(z) + sum g^{ij} (w_i + conj w_i)(w_j + conj w_j).
double hk_potential(const Prepotential& f, const FiberPoint& at);

HermitianBlockMetric hk_metric(const Prepotential& f, const FiberPoint& at);

/// Same, from precomputed data at the base point (jet order >= 3).
HermitianBlockMetric hk_metric(const PrepotentialJet& j, const BaseMetric& base, const CVec& w);

/// Closed-form inverse
///     [ g^{-1}             -1/2 b                     ]
///     [ -1/2 conj(b)^T     1/2 (g + 1/2 conj(b)^T g b) ]
CMat hk_metric_inverse(const HermitianBlockMetric& gb, const BaseMetric& base);

/// Analytic holomorphic derivatives d_K G for K over (z, w), from the jet of F
/// to order 4. Entry K of the result is the 2n x 2n matrix d G / d z^K.
std::vector<CMat> hk_metric_derivatives(const Prepotential& f, const FiberPoint& at);

ChristoffelTensor christoffel(const Prepotential& f, const FiberPoint& at);

/// Maximum deviation from the symmetries equivalent to a parallel Omega = sum dz^i ^ dw_i.
ParallelismReport parallel_symplectic_check(const ChristoffelTensor& gamma);

/// J1 is multiplication by i. J2 and J3 solve
///     <J2 v, w> = Re Omega'(v, w),   <J3 v, w> = Im Omega'(v, w)
/// with <.,.> = Re G and Omega' = sqrt(2) sum dz^i ^ dw_i. The constant sqrt(2)
/// compensates the factor 2 in the fiber block C = 2 g^{-1}; without it J2^2 = -Id/2.
HypercomplexTriple hypercomplex_triple(const HermitianBlockMetric& gb);

/// Curvature by central differences of the analytic Christoffel symbols in conj(z^L).
CurvatureTensor curvature(const Prepotential& f, const FiberPoint& at, double step = 1e-4);

}  // namespace cmap
