#pragma once

#include "cmap/types.hpp"

namespace cmap::linalg {

/// Eigenvalues of a real symmetric matrix, ascending.
RVec symmetric_eigenvalues(const RMat& m);

/// Eigenvalues of a complex Hermitian matrix, ascending.
RVec hermitian_eigenvalues(const CMat& m);

/// Counts positive and negative entries of an eigenvalue list. Entries with
/// modulus below `zero_tol * max|eigenvalue|` are counted as neither.
Signature signature_of(const RVec& eigenvalues, double zero_tol = 1e-12);

/// min|eigenvalue| / max|eigenvalue|; 0 for the zero matrix.
double eigen_ratio(const RVec& eigenvalues);

/// Singular values, descending.
RVec singular_values(const RMat& m);
RVec singular_values(const CMat& m);

/// Smallest over largest singular value; 0 for the zero matrix.
double reciprocal_condition(const RMat& m);
double reciprocal_condition(const CMat& m);

/// Numerical rank: singular values above `tol * sigma_max`.
int numerical_rank(const RMat& m, double tol = 1e-12);

/// Entrywise max modulus (infinity-max norm).
double max_abs(const CMat& m);
double max_abs(const RMat& m);

/// Real 2n-vector (Re v; Im v) of a complex n-vector.
RVec realify(const CVec& v);

/// Complex n-vector from stacked (Re; Im).
CVec complexify(const RVec& v);

/// Real 2n x 2n matrix of the real-linear map x -> m x in the (Re; Im) basis.
RMat realify(const CMat& m);

}  // namespace cmap::linalg
