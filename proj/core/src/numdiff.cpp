#include "cmap/numdiff.hpp"

namespace cmap::numdiff {

CMat wirtinger_hessian(const std::function<double(const CVec&)>& f, const CVec& z, double h) {
  const auto m = z.size();
  const auto r = 2 * m;
  // Real coordinates: index a < m is Re z^a, a >= m is Im z^{a-m}.
  auto direction = [m](Eigen::Index a) {
    CVec d = CVec::Zero(m);
    d(a % m) = a < m ? cplx(1.0, 0.0) : kI;
    return d;
  };
  RMat d2(r, r);
  const double f0 = f(z);
  for (Eigen::Index a = 0; a < r; ++a) {
    const CVec da = direction(a) * h;
    d2(a, a) = (f(z + da) - 2.0 * f0 + f(z - da)) / (h * h);
    for (Eigen::Index b = a + 1; b < r; ++b) {
      const CVec db = direction(b) * h;
      d2(a, b) = (f(z + da + db) - f(z + da - db) - f(z - da + db) + f(z - da - db)) / (4.0 * h * h);
      d2(b, a) = d2(a, b);
    }
  }
  CMat hess(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) {
      const double xx = d2(i, j), yy = d2(m + i, m + j), xy = d2(i, m + j), yx = d2(m + i, j);
      hess(i, j) = 0.25 * cplx(xx + yy, xy - yx);
    }
  return hess;
}

CMat holomorphic_derivative(const std::function<CMat(const CVec&)>& f, const CVec& z, int k, double h) {
  CVec dx = CVec::Zero(z.size());
  dx(k) = h;
  const CVec dy = kI * dx;
  const CMat fx = (f(z + dx) - f(z - dx)) / (2.0 * h);
  const CMat fy = (f(z + dy) - f(z - dy)) / (2.0 * h);
  return 0.5 * (fx - kI * fy);
}

}  // namespace cmap::numdiff
