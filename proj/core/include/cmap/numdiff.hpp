#pragma once

#include <functional>

#include "cmap/types.hpp"

namespace cmap::numdiff {

/// Mixed Wirtinger Hessian H(I, J) = d^2 f / dz^I d conj(z^J) of a real
/// function on C^m by central differences with step h, using
/// d/dz = (d/dx - i d/dy) / 2.
CMat wirtinger_hessian(const std::function<double(const CVec&)>& f, const CVec& z, double h = 1e-4);

/// Holomorphic derivative d/dz^k of a matrix-valued function by central
/// differences: (d/dx - i d/dy) / 2.
CMat holomorphic_derivative(const std::function<CMat(const CVec&)>& f, const CVec& z, int k, double h = 1e-5);

}  // namespace cmap::numdiff
