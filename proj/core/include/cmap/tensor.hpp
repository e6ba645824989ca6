#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <vector>

#include "cmap/types.hpp"

namespace cmap {

/// Dense complex tensor of fixed rank with all extents equal to `dim`.
/// Row-major: the last index varies fastest.
template <int Rank>
class CubeTensor {
 public:
  CubeTensor() = default;
  explicit CubeTensor(int dim) : dim_(dim), data_(extent(dim), cplx{0.0, 0.0}) {}

  int dim() const { return dim_; }
  std::size_t size() const { return data_.size(); }

  template <typename... Idx>
  cplx& operator()(Idx... idx) {
    static_assert(sizeof...(Idx) == Rank);
    return data_[offset({static_cast<int>(idx)...})];
  }
  template <typename... Idx>
  const cplx& operator()(Idx... idx) const {
    static_assert(sizeof...(Idx) == Rank);
    return data_[offset({static_cast<int>(idx)...})];
  }

  cplx& at(const std::array<int, Rank>& idx) { return data_[offset(idx)]; }
  const cplx& at(const std::array<int, Rank>& idx) const { return data_[offset(idx)]; }

  const std::vector<cplx>& data() const { return data_; }
  std::vector<cplx>& data() { return data_; }

  /// Largest entry modulus; 0 for an empty tensor.
  double max_abs() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
  }

 private:
  static std::size_t extent(int dim) {
    std::size_t s = 1;
    for (int r = 0; r < Rank; ++r) s *= static_cast<std::size_t>(dim);
    return s;
  }
  std::size_t offset(const std::array<int, Rank>& idx) const {
    std::size_t o = 0;
    for (int r = 0; r < Rank; ++r) o = o * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(idx[r]);
    return o;
  }

  int dim_ = 0;
  std::vector<cplx> data_;
};

using Tensor3 = CubeTensor<3>;
using Tensor4 = CubeTensor<4>;

/// Slice of a rank-3 tensor with its last index fixed: M(p, q) = T(p, q, k).
CMat contract_last(const Tensor3& t, int k);

/// Contraction T(p, q, r) v(r) over the last index.
CMat contract_last(const Tensor3& t, const CVec& v);

/// Contraction T(p, q, r, s) v(s) over the last index.
Tensor3 contract_last(const Tensor4& t, const CVec& v);

}  // namespace cmap
