#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace cmap {

using cplx = std::complex<double>;

using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

inline constexpr cplx kI{0.0, 1.0};

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent user input (documents, dimensions, options).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Evaluation at a point where the prepotential is not defined (z^0 = 0 pole).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A derivative order beyond what the prepotential can supply.
class OrderError : public Error {
 public:
  using Error::Error;
};

/// The base metric g is degenerate: the submanifold is not pseudo-Kaehler here.
class NondegenerateCheckFailed : public Error {
 public:
  using Error::Error;
};

/// Counts of positive and negative eigenvalues of a Hermitian or symmetric form.
struct Signature {
  int positive = 0;
  int negative = 0;

  friend bool operator==(const Signature&, const Signature&) = default;
};

}  // namespace cmap
