#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"

namespace cmap {
namespace {

using testing::cvec;

FiberPoint fp(std::initializer_list<cplx> z, std::initializer_list<cplx> w) { return {cvec(z), cvec(w)}; }

CMat matrix2(cplx a, cplx b, cplx c, cplx d) {
  CMat m(2, 2);
  m << a, b, c, d;
  return m;
}

// Mixed derivative d^2 G / dz^K d conj(z^L) by second central differences.
CMat mixed_second_difference(const Prepotential& f, const FiberPoint& at, int k, int l, double h) {
  const int n = f.dimension();
  CVec zeta(2 * n);
  zeta << at.z, at.w;
  auto g = [&](const CVec& x) { return hk_metric(f, FiberPoint{x.head(n), x.tail(n)}).assembled(); };
  auto d2 = [&](cplx dk, cplx dl) {
    CVec ek = CVec::Zero(2 * n), el = CVec::Zero(2 * n);
    ek(k) = dk * h;
    el(l) = dl * h;
    return CMat((g(zeta + ek + el) - g(zeta + ek - el) - g(zeta - ek + el) + g(zeta - ek - el)) / (4.0 * h * h));
  };
  // d_K d_conj(L) = 1/4 (dx_K - i dy_K)(dx_L + i dy_L)
  return 0.25 * (d2(1.0, 1.0) + kI * d2(1.0, kI) - kI * d2(kI, 1.0) + d2(kI, kI));
}

TEST(HkPotential, Examples) {
  const Prepotential cubic = testing::fixture("cubic1.json");
  for (double t : {-2.0, 0.0, 0.5, 3.0}) EXPECT_NEAR(hk_potential(cubic, fp({kI}, {t * kI})), 1.0, 1e-14);
  EXPECT_NEAR(hk_potential(cubic, fp({kI}, {1.0})), 3.0, 1e-14);
  EXPECT_NEAR(hk_potential(Prepotential::polynomial(1, {{{0.0, 0.5}, {2}}}), fp({1.0}, {1.0})), 4.0, 1e-14);
}

TEST(HkPotential, ReducesToBaseOnImaginaryFiber) {
  for (const auto& fc : testing::geometry_fixtures()) {
    const Prepotential f = testing::fixture(fc.file);
    for (FiberPoint p : testing::fiber_points(f, fc.center, fc.radius, 10, 8)) {
      p.w = kI * p.w.imag();
      EXPECT_NEAR(hk_potential(f, p), base_potential(f, p.z), 1e-12 * std::max(1.0, std::abs(base_potential(f, p.z))));
    }
  }
}

TEST(HkPotential, DegenerateBaseRaises) {
  EXPECT_THROW(hk_potential(testing::fixture("real_quadratic.json"), fp({0.5}, {0.0})), NondegenerateCheckFailed);
}

TEST(HkMetric, QuadraticIsBlockDiagonal) {
  const Prepotential f = testing::fixture("split_quadratic.json");
  for (const FiberPoint& p : testing::fiber_points(f, 0.0, 1.0, 10, 9)) {
    const HermitianBlockMetric m = hk_metric(f, p);
    const RMat g = RVec((RVec(3) << 2.0, -2.0, -2.0).finished()).asDiagonal();
    EXPECT_EQ(m.B, CMat::Zero(3, 3));
    EXPECT_EQ(m.A, CMat(g.cast<cplx>()));
    EXPECT_EQ(m.C, CMat((2.0 * g.inverse()).cast<cplx>()));
  }
}

TEST(HkMetric, CubicHandValues) {
  const Prepotential f = testing::fixture("cubic1.json");
  const CMat g = hk_metric(f, fp({kI}, {1.0})).assembled();
  EXPECT_LE(linalg::max_abs(CMat(g - matrix2(3.0, kI, -kI, 1.0))), 1e-12);
  for (double t : {-1.0, 0.25, 2.0}) {
    const CMat g0 = hk_metric(f, fp({kI}, {t * kI})).assembled();
    EXPECT_LE(linalg::max_abs(CMat(g0 - matrix2(2.0, 0.0, 0.0, 1.0))), 1e-12);
  }
}

TEST(HkMetric, HessianOracleOnAllFixtures) {
  for (const auto& fc : testing::geometry_fixtures()) {
    const Prepotential f = testing::fixture(fc.file);
    for (const FiberPoint& p : testing::fiber_points(f, fc.center, fc.radius, 20, 10))
      EXPECT_LE(hessian_oracle_residual(f, p), 1e-6) << fc.file;
  }
}

TEST(HkMetric, HermitianAndFiberBlock) {
  for (const auto& fc : testing::geometry_fixtures()) {
    const Prepotential f = testing::fixture(fc.file);
    for (const FiberPoint& p : testing::fiber_points(f, fc.center, fc.radius, 20, 11)) {
      const PrepotentialJet j = jet(f, p.z, 3);
      const BaseMetric base = base_metric(j);
      const HermitianBlockMetric m = hk_metric(j, base, p.w);
      EXPECT_LE(hermitian_residual(m.assembled()), 1e-12);
      EXPECT_EQ(m.C, CMat((2.0 * base.g_inv).cast<cplx>()));
    }
  }
}

TEST(HkMetric, SignatureDoublesBaseSignature) {
  const Prepotential split = testing::fixture("split_quadratic.json");
  for (const FiberPoint& p : testing::fiber_points(split, 0.0, 1.0, 20, 12))
    EXPECT_EQ(hk_metric(split, p).signature, (Signature{2, 4}));

  for (const char* name : {"cubic1.json", "stu_chart.json"}) {
    const Prepotential f = testing::fixture(name);
    for (FiberPoint p : testing::fiber_points(f, kI, 0.5, 20, 13)) {
      p.w *= 1e-3;
      const BaseMetric base = base_metric(jet(f, p.z, 2));
      const Signature expected{2 * base.signature.positive, 2 * base.signature.negative};
      EXPECT_EQ(hk_metric(f, p).signature, expected) << name;
    }
  }
}

TEST(HkMetric, NeedsThirdOrderJet) {
  const Prepotential f = testing::fixture("cubic1.json");
  const PrepotentialJet j = jet(f, cvec({kI}), 2);
  EXPECT_THROW(hk_metric(j, base_metric(j), cvec({1.0})), OrderError);
  EXPECT_THROW(hk_metric(f, fp({kI, kI}, {0.0})), InputError);
}

TEST(HkMetricInverse, HandValues) {
  const Prepotential quad = testing::fixture("quadratic3.json");
  const PrepotentialJet jq = jet(quad, cvec({0.1, 0.2, 0.3}), 3);
  const BaseMetric bq = base_metric(jq);
  CMat expected = CMat::Zero(6, 6);
  expected.topLeftCorner(3, 3) = 0.5 * CMat::Identity(3, 3);
  expected.bottomRightCorner(3, 3) = CMat::Identity(3, 3);
  EXPECT_EQ(hk_metric_inverse(hk_metric(jq, bq, cvec({1.0, kI, 0.5})), bq), expected);

  const Prepotential cubic = testing::fixture("cubic1.json");
  const PrepotentialJet j = jet(cubic, cvec({kI}), 3);
  const BaseMetric b = base_metric(j);
  const CMat inv = hk_metric_inverse(hk_metric(j, b, cvec({1.0})), b);
  EXPECT_LE(linalg::max_abs(CMat(inv - matrix2(0.5, -0.5 * kI, 0.5 * kI, 1.5))), 1e-12);
  // Oracle: numeric inversion of the hand-derived G.
  EXPECT_LE(linalg::max_abs(CMat(inv - matrix2(3.0, kI, -kI, 1.0).inverse())), 1e-12);
}

TEST(HkMetricInverse, IdentityOnRandomPrepotentials) {
  int tested = 0;
  for (int trial = 0; tested < 100; ++trial) {
    const int n = 1 + trial % 3;
    const Prepotential f = testing::random_polynomial(n, 4, 5, 500 + trial);
    PolydiskSampler rng(600 + trial);
    const FiberPoint p{rng.polydisk(n, 0.0, 1.0), rng.polydisk(n, 0.0, 1.0)};
    const PrepotentialJet j = jet(f, p.z, 3);
    if (!general_position_check(j, 1e-3).pass) continue;
    const BaseMetric base = base_metric(j);
    const HermitianBlockMetric gb = hk_metric(j, base, p.w);
    // Backward-stable bound: a few hundred ulps times |G| |G^-1|.
    const double kappa = 2 * n * linalg::max_abs(gb.assembled()) * linalg::max_abs(hk_metric_inverse(gb, base));
    EXPECT_LE(inverse_residual(gb, base), 1e-13 * std::max(1.0, kappa)) << "trial " << trial;
    ++tested;
  }
}

TEST(HkMetricDerivatives, MatchFiniteDifferences) {
  for (const auto& fc : testing::geometry_fixtures()) {
    const Prepotential f = testing::fixture(fc.file);
    const int n = f.dimension();
    for (const FiberPoint& p : testing::fiber_points(f, fc.center, fc.radius, 5, 14)) {
      const std::vector<CMat> dG = hk_metric_derivatives(f, p);
      CVec zeta(2 * n);
      zeta << p.z, p.w;
      auto g = [&](const CVec& x) { return hk_metric(f, FiberPoint{x.head(n), x.tail(n)}).assembled(); };
      const double scale = std::max(1.0, linalg::max_abs(g(zeta)));
      for (int k = 0; k < 2 * n; ++k) {
        const CMat fd = numdiff::holomorphic_derivative(g, zeta, k, 1e-5);
        EXPECT_LE(linalg::max_abs(CMat(fd - dG[k])) / scale, 1e-6) << fc.file << " K=" << k;
      }
    }
  }
}

TEST(Christoffel, QuadraticVanishes) {
  for (const char* name : {"quadratic3.json", "split_quadratic.json"}) {
    const Prepotential f = testing::fixture(name);
    for (const FiberPoint& p : testing::fiber_points(f, 0.0, 1.0, 5, 15)) {
      const ChristoffelTensor c = christoffel(f, p);
      EXPECT_EQ(c.gamma.max_abs(), 0.0);
      const ParallelismReport r = parallel_symplectic_check(c);
      EXPECT_EQ(r.max_residual_i, 0.0);
      EXPECT_EQ(r.max_residual_ii, 0.0);
    }
  }
}

TEST(Christoffel, LowerIndicesSymmetric) {
  for (const char* name : {"cubic1.json", "stu_chart.json"}) {
    const Prepotential f = testing::fixture(name);
    for (const FiberPoint& p : testing::fiber_points(f, kI, 0.5, 50, 16)) {
      const ChristoffelTensor c = christoffel(f, p);
      const int d = c.dimension();
      double worst = 0.0;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          for (int k = 0; k < d; ++k) worst = std::max(worst, std::abs(c(i, j, k) - c(i, k, j)));
      EXPECT_LE(worst, 1e-10) << name;
    }
  }
}

TEST(Christoffel, MatchesDifferencedMetric) {
  // Independent path: Gamma^I_{JK} = sum_L (G^-1)_{LI} dG_{JL}/dz^K with dG by central differences
  // and G^-1 by numeric inversion.
  const Prepotential f = testing::fixture("cubic1.json");
  const FiberPoint p = fp({kI}, {1.0});
  CVec zeta = cvec({kI, 1.0});
  auto g = [&](const CVec& x) { return hk_metric(f, FiberPoint{x.head(1), x.tail(1)}).assembled(); };
  const CMat ginv = g(zeta).inverse();
  const ChristoffelTensor c = christoffel(f, p);
  for (int k = 0; k < 2; ++k) {
    const CMat prod = numdiff::holomorphic_derivative(g, zeta, k, 1e-5) * ginv;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) EXPECT_NEAR(std::abs(c(i, j, k) - prod(j, i)), 0.0, 1e-8);
  }
}

TEST(ParallelSymplectic, CubicAndChartFixtures) {
  const Prepotential cubic = testing::fixture("cubic1.json");
  for (const FiberPoint& p : testing::fiber_points(cubic, kI, 0.9, 20, 17)) {
    ASSERT_GT(p.z(0).imag(), 0.0);
    const ParallelismReport r = parallel_symplectic_check(christoffel(cubic, p));
    EXPECT_LE(r.max_residual_i, 1e-8);
    EXPECT_LE(r.max_residual_ii, 1e-8);
  }
  const Prepotential cone = testing::fixture("stu_cone.json");
  const Prepotential chart = chart_prepotential(cone);
  PolydiskSampler rng(18);
  for (int k = 0; k < 20; ++k) {
    const CVec q = rng.polydisk(3, kI, 0.5);
    const ConeChart c = cone_chart(cone, q);
    const FiberPoint p{c.q, rng.polydisk(3, 0.0, 0.5)};
    const ParallelismReport r = parallel_symplectic_check(christoffel(chart, p));
    EXPECT_LE(r.max_residual_i, 1e-8);
    EXPECT_LE(r.max_residual_ii, 1e-8);
  }
}

TEST(ParallelSymplectic, DetectsBrokenSymmetry) {
  ChristoffelTensor c = christoffel(testing::fixture("cubic1.json"), fp({kI}, {1.0}));
  c.gamma(0, 0, 0) += 1e-3;
  EXPECT_GT(parallel_symplectic_check(c).max_residual_i, 5e-4);
}

TEST(ParallelSymplectic, NeedsFourthOrder) {
  const Prepotential limited = Prepotential::oracle(1, 3, [](std::span<const cplx> z, std::span<const int> c) {
    const cplx v[] = {z[0] * z[0] * z[0] / 6.0, z[0] * z[0] / 2.0, z[0], 1.0};
    return v[c[0]];
  });
  EXPECT_NO_THROW(hk_metric(limited, fp({kI}, {1.0})));
  EXPECT_THROW(christoffel(limited, fp({kI}, {1.0})), OrderError);
  EXPECT_THROW(curvature(limited, fp({kI}, {1.0})), OrderError);
}

TEST(HypercomplexTriple, FlatModelExplicitMatrices) {
  const Prepotential f = Prepotential::polynomial(1, {{{0.0, 0.5}, {2}}});
  const HypercomplexTriple t = hypercomplex_triple(hk_metric(f, fp({0.3}, {0.7})));
  const double r = std::sqrt(2.0);
  RMat j2(4, 4), j3(4, 4), j1(4, 4);
  // Hand solution in the basis (Re z, Im z, Re w, Im w) with g = 2, fiber block 1.
  j1 << 0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0;
  j2 << 0, 0, -1 / r, 0, 0, 0, 0, 1 / r, r, 0, 0, 0, 0, -r, 0, 0;
  j3 << 0, 0, 0, -1 / r, 0, 0, -1 / r, 0, 0, r, 0, 0, r, 0, 0, 0;
  EXPECT_EQ(t.J1, j1);
  EXPECT_LE(linalg::max_abs(RMat(t.J2 - j2)), 1e-15);
  EXPECT_LE(linalg::max_abs(RMat(t.J3 - j3)), 1e-15);
  EXPECT_LE(linalg::max_abs(RMat(t.J2 * t.J2 + RMat::Identity(4, 4))), 1e-15);
}

TEST(HypercomplexTriple, QuaternionRelationsOnCubicPoints) {
  for (const char* name : {"cubic1.json", "stu_chart.json"}) {
    const Prepotential f = testing::fixture(name);
    for (const FiberPoint& p : testing::fiber_points(f, kI, 0.5, 50, 19)) {
      const QuaternionReport r = quaternion_residuals(hypercomplex_triple(hk_metric(f, p)));
      EXPECT_LE(r.squares, 1e-9) << name;
      EXPECT_LE(r.products, 1e-9) << name;
      EXPECT_LE(r.compatibility, 1e-9) << name;
    }
  }
}

TEST(HypercomplexTriple, CompatibleOnRandomVectorPairs) {
  const Prepotential f = testing::fixture("stu_chart.json");
  PolydiskSampler rng(20);
  for (const FiberPoint& p : testing::fiber_points(f, kI, 0.5, 10, 21)) {
    const HypercomplexTriple t = hypercomplex_triple(hk_metric(f, p));
    const double scale = std::max(1.0, linalg::max_abs(t.metric));
    for (int k = 0; k < 10; ++k) {
      const RVec v = rng.box(12, 1.0), w = rng.box(12, 1.0);
      const double base = v.dot(t.metric * w);
      for (const RMat* j : {&t.J1, &t.J2, &t.J3})
        EXPECT_NEAR((*j * v).dot(t.metric * (*j * w)), base, 1e-9 * scale);
    }
  }
}

TEST(Curvature, FlatForQuadratics) {
  for (const char* name : {"quadratic3.json", "split_quadratic.json"}) {
    const Prepotential f = testing::fixture(name);
    for (const FiberPoint& p : testing::fiber_points(f, 0.0, 1.0, 3, 22)) EXPECT_LE(curvature(f, p).r.max_abs(), 1e-12);
  }
}

TEST(Curvature, CubicIsNotFlatAndSymmetric) {
  const Prepotential f = testing::fixture("cubic1.json");
  const FiberPoint p = fp({kI}, {1.0});
  const CurvatureTensor r = curvature(f, p);
  EXPECT_GT(r.r.max_abs(), 1e-3);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) EXPECT_LE(std::abs(r(i, j, k, l) - r(i, k, j, l)), 1e-8);
}

TEST(Curvature, MatchesSecondDifferencesOfMetric) {
  // sum_I R^I_{J K conj L} G_{I conj M} = -d_K d_conj(L) G_{J conj M} + sum_I Gamma^I_{JK} d_conj(L) G_{I conj M}
  const Prepotential f = testing::fixture("cubic1.json");
  const FiberPoint p = fp({{0.2, 1.1}}, {{0.6, -0.3}});
  const CurvatureTensor r = curvature(f, p);
  const ChristoffelTensor c = christoffel(f, p);
  const CMat g = hk_metric(f, p).assembled();
  const std::vector<CMat> dG = hk_metric_derivatives(f, p);
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) {
      const CMat d2 = mixed_second_difference(f, p, k, l, 1e-4);
      for (int j = 0; j < 2; ++j)
        for (int m = 0; m < 2; ++m) {
          cplx lhs{0.0, 0.0}, rhs = -d2(j, m);
          for (int i = 0; i < 2; ++i) {
            lhs += r(i, j, k, l) * g(i, m);
            // d_conj(L) G_{I conj M} = conj(d_L G_{M conj I})
            rhs += c(i, j, k) * std::conj(dG[l](m, i));
          }
          EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-5) << j << k << l << m;
        }
    }
}

}  // namespace
}  // namespace cmap
