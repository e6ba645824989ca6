#include "cmap/tensor.hpp"

namespace cmap {

CMat contract_last(const Tensor3& t, int k) {
  const int n = t.dim();
  CMat m(n, n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) m(p, q) = t(p, q, k);
  return m;
}

CMat contract_last(const Tensor3& t, const CVec& v) {
  const int n = t.dim();
  CMat m = CMat::Zero(n, n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      cplx acc{0.0, 0.0};
      for (int r = 0; r < n; ++r) acc += t(p, q, r) * v(r);
      m(p, q) = acc;
    }
  return m;
}

Tensor3 contract_last(const Tensor4& t, const CVec& v) {
  const int n = t.dim();
  Tensor3 out(n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r) {
        cplx acc{0.0, 0.0};
        for (int s = 0; s < n; ++s) acc += t(p, q, r, s) * v(s);
        out(p, q, r) = acc;
      }
  return out;
}

}  // namespace cmap
