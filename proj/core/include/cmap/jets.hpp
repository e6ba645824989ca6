#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "cmap/tensor.hpp"
#include "cmap/types.hpp"

namespace cmap {

/// One monomial coeff * prod_i z_i^{exponents[i]}.
struct PolynomialTerm {
  cplx coeff;
  std::vector<int> exponents;
};

/// Partial derivative supplier for oracle prepotentials. `counts[i]` is the
/// number of derivatives taken in variable i (all zero returns F itself).
using PartialOracle = std::function<cplx(std::span<const cplx> z, std::span<const int> counts)>;

/// A holomorphic prepotential F on C^dim.
///
/// Three representations are supported:
///  - polynomial: a sum of monomials, differentiated term by term;
///  - very-special cubic: F(z^0, ..., z^n) = h(z^1, ..., z^n) / z^0 with h a real
///    symmetric cubic, optionally plus extra polynomial terms on C^{n+1};
///  - derivative oracle: an external evaluator up to a declared order.
///
/// Additive constants never change the Lagrangean submanifold dF and are
/// dropped on construction.
class Prepotential {
 public:
  enum class Kind { polynomial, very_special_cubic, derivative_oracle };

  static Prepotential polynomial(int n, std::vector<PolynomialTerm> terms);

  /// `cubic` is an n x n x n tensor, index (i, j, k) for variables z^{i+1}...
  /// It is symmetrized here; entries must be real.
  static Prepotential very_special(int base_n, const std::vector<double>& cubic,
                                   std::vector<PolynomialTerm> extra_terms = {});

  static Prepotential oracle(int n, int max_order, PartialOracle partial);

  Kind kind() const { return kind_; }

  /// Number of complex variables F depends on (n + 1 for very-special).
  int dimension() const { return dim_; }

  /// For very-special prepotentials the number of chart variables n; otherwise
  /// equal to dimension().
  int base_dimension() const { return kind_ == Kind::very_special_cubic ? dim_ - 1 : dim_; }

  /// Highest derivative order available (polynomial kinds are unbounded; 4 is
  /// reported since that is all the geometry needs, but partial() accepts any).
  int max_order() const { return max_order_; }

  const std::vector<PolynomialTerm>& terms() const { return terms_; }

  /// Fully symmetric cubic coefficients c_{ijk} (very-special only), row-major n^3.
  const std::vector<double>& cubic() const { return cubic_; }

  /// Arbitrary mixed partial derivative at z.
  cplx partial(std::span<const cplx> z, std::span<const int> counts) const;

  cplx value(std::span<const cplx> z) const;

 private:
  Prepotential() = default;

  Kind kind_ = Kind::polynomial;
  int dim_ = 0;
  int max_order_ = 0;
  std::vector<PolynomialTerm> terms_;  // polynomial part (all kinds but oracle)
  std::vector<double> cubic_;
  std::vector<PolynomialTerm> cubic_monomials_;  // h expanded on C^n
  PartialOracle oracle_;
};

/// Point evaluation of F and its symmetric derivative tensors.
struct PrepotentialJet {
  CVec z;
  int order = 0;
  cplx value{0.0, 0.0};
  CVec grad;
  CMat hess;
  Tensor3 third;
  Tensor4 fourth;

  int dimension() const { return static_cast<int>(z.size()); }
};

/// Jet of F at z up to `order` (0..4). Each distinct multiset of indices is
/// evaluated once and copied to its permutations, so the tensors are exactly
/// symmetric.
PrepotentialJet jet(const Prepotential& f, const CVec& z, int order);

/// sum_A z^A F_A - 2 F(z); vanishes iff F is homogeneous of degree 2 near z.
cplx euler_residual(const Prepotential& f, const CVec& z);

/// Parses the JSON prepotential document (see README for the schema).
Prepotential parse_prepotential(std::string_view text);

Prepotential load_prepotential(const std::filesystem::path& path);

}  // namespace cmap
