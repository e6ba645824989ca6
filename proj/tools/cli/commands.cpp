#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "cmap/cmap.hpp"

namespace cmap::cli {

namespace {

constexpr std::uint64_t kAuxSeedMix = 0x9E3779B97F4A7C15ULL;

double tolerance(const RunConfig& cfg, const std::string& name) {
  if (auto it = cfg.tolerances.find(name); it != cfg.tolerances.end()) return it->second;
  return default_tolerances().at(name);
}

void validate(const RunConfig& cfg) {
  for (const auto& [name, value] : cfg.tolerances)
    if (!default_tolerances().contains(name)) throw InputError("unknown tolerance name `" + name + "`");
  for (const auto& s : cfg.suites)
    if (std::find(known_suites().begin(), known_suites().end(), s) == known_suites().end())
      throw InputError("unknown suite `" + s + "`");
  if (cfg.points && cfg.sample) throw InputError("give either --points or --sample, not both");
  if (!cfg.points && !cfg.sample) throw InputError("a point set is required: --points PATH or --sample SPEC");
}

bool suite_enabled(const RunConfig& cfg, const std::string& name) {
  return cfg.suites.empty() || std::find(cfg.suites.begin(), cfg.suites.end(), name) != cfg.suites.end();
}

// Runs fn(i) for i in [0, count) on up to thread_count() workers.
template <typename Fn>
void parallel_for(int count, Fn&& fn) {
  const int workers = std::min(thread_count(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) fn(i);
    });
}

// Point set plus the draws the sampler gave up on (reported as failures).
struct PointSet {
  std::vector<FiberPoint> points;
  std::vector<FiberPoint> shortfall;
  std::uint64_t seed = 0;
};

PointSet gather_points(const RunConfig& cfg, const Prepotential& f, std::vector<int> sizes, std::ostream& log) {
  PointSet ps;
  if (cfg.points) {
    ps.points = load_points(*cfg.points, std::move(sizes));
    return ps;
  }
  const SampledPoints s = sample_points(f, *cfg.sample, log);
  ps.points = s.accepted;
  ps.seed = cfg.sample->seed;
  const auto missing = static_cast<std::size_t>(cfg.sample->count) - s.accepted.size();
  if (missing > 0) {
    log << "sampler: only " << s.accepted.size() << " of " << cfg.sample->count << " draws passed general position\n";
    ps.shortfall.assign(s.rejected.begin(), s.rejected.begin() + std::min(missing, s.rejected.size()));
  }
  return ps;
}

double general_position_residual(const PrepotentialJet& j) {
  const GeneralPositionReport gp = general_position_check(j);
  if (gp.min_singular_value == 0.0) return std::numeric_limits<double>::infinity();
  return gp.max_singular_value / gp.min_singular_value;
}

void add_general_position(Report& r, const RunConfig& cfg, int idx, const FiberPoint& p, const Prepotential& f) {
  double res = std::numeric_limits<double>::infinity();
  try {
    res = general_position_residual(jet(f, p.z, 2));
  } catch (const DomainError&) {
  }
  r.add_check("general_position", idx, p.z, p.w, res, tolerance(cfg, "general_position"));
}

bool last_passed(const Report& r) { return r.records().back().at("pass").get<bool>(); }

struct AuxDraw {
  SymplecticVectorReal v;
  RVec lattice_shift;
};

void check_point(const RunConfig& cfg, const Prepotential& f, const Lattice& lattice, int idx, const FiberPoint& p,
                 const AuxDraw& aux, Report& out) {
  const auto check = [&](const std::string& name, auto&& residual_fn) {
    double res = std::numeric_limits<double>::infinity();
    try {
      res = residual_fn();
    } catch (const Error&) {
    }
    out.add_check(name, idx, p.z, p.w, res, tolerance(cfg, name));
  };

  add_general_position(out, cfg, idx, p, f);
  if (!last_passed(out)) return;

  const PrepotentialJet j = jet(f, p.z, 3);
  const BaseMetric base = base_metric(j);
  const HermitianBlockMetric gb = hk_metric(j, base, p.w);

  if (suite_enabled(cfg, "hessian-oracle")) check("hessian_oracle", [&] { return hessian_oracle_residual(f, p); });
  if (suite_enabled(cfg, "hermitian")) check("hermitian", [&] { return hermitian_residual(gb.assembled()); });
  if (suite_enabled(cfg, "inverse")) check("inverse", [&] { return inverse_residual(gb, base); });
  if (suite_enabled(cfg, "parallel-symplectic"))
    check("parallel_symplectic", [&] {
      const ParallelismReport r = parallel_symplectic_check(christoffel(f, p));
      return std::max(r.max_residual_i, r.max_residual_ii);
    });
  if (suite_enabled(cfg, "quaternion"))
    check("quaternion", [&] { return quaternion_residuals(hypercomplex_triple(gb)).max(); });
  if (suite_enabled(cfg, "translation-invariance")) {
    const FiberPoint pts[] = {p};
    InvarianceReport inv;
    bool ok = true;
    try {
      inv = invariance_check(f, aux.v, pts);
    } catch (const Error&) {
      ok = false;
    }
    const double bad = std::numeric_limits<double>::infinity();
    out.add_check("translation_omega", idx, p.z, p.w, ok ? inv.omega_residual : bad, tolerance(cfg, "translation_omega"));
    out.add_check("translation_potential", idx, p.z, p.w, ok ? inv.potential_residual : bad,
                  tolerance(cfg, "translation_potential"));
    out.add_check("translation_metric", idx, p.z, p.w, ok ? inv.metric_residual : bad,
                  tolerance(cfg, "translation_metric"));
  }
  if (suite_enabled(cfg, "lattice-periodicity")) {
    const CVec shifted = p.w + linalg::complexify(fiber_shift_matrix(j) * lattice.basis() * aux.lattice_shift);
    check("lattice_periodicity", [&] { return lattice_periodicity_residual(f, p.z, lattice, shifted); });
    check("lattice_idempotence", [&] { return lattice_idempotence_residual(f, p.z, lattice, shifted); });
  }
}

Report merge(std::vector<Report>& parts) {
  Report all;
  for (auto& part : parts)
    for (const auto& r : part.records()) all.add(r);
  return all;
}

Json signature_json(const Signature& s) { return Json::array({s.positive, s.negative}); }

CVec lift_to_cone(const CVec& z, int ambient) {
  if (z.size() == ambient) return z;
  CVec out(ambient);
  out(0) = 1.0;
  out.tail(ambient - 1) = z;
  return out;
}

}  // namespace

const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> s{"hessian-oracle", "hermitian",          "inverse",
                                          "parallel-symplectic", "quaternion", "translation-invariance",
                                          "lattice-periodicity"};
  return s;
}

const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> t{
      {"general_position", 1e10},     {"hessian_oracle", 1e-6},      {"hermitian", 1e-12},
      {"inverse", 1e-10},             {"parallel_symplectic", 1e-8}, {"quaternion", 1e-9},
      {"translation_omega", 1e-12},   {"translation_metric", 1e-10}, {"translation_potential", 1e-10},
      {"lattice_periodicity", 1e-10}, {"lattice_idempotence", 0.0},  {"euler", 1e-9},
      {"projective_metric", 1e-12},   {"third_fundamental_form", 1e-12}, {"hodge", 1e-10},
      {"jacobian_rcond", 1e-8},
  };
  return t;
}

Report run_check(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  const Prepotential f = load_prepotential(cfg.prepotential);
  const int n = f.dimension();
  const Lattice lattice = load_lattice(cfg.lattice, n);
  const PointSet ps = gather_points(cfg, f, {n}, log);

  // Auxiliary randomness is drawn up front so results do not depend on scheduling.
  PolydiskSampler aux_rng(ps.seed ^ kAuxSeedMix);
  std::vector<AuxDraw> aux(ps.points.size());
  for (auto& a : aux) {
    a.v = SymplecticVectorReal::from_stacked(aux_rng.box(2 * n, 1.0));
    a.lattice_shift.resize(2 * n);
    for (int k = 0; k < 2 * n; ++k) a.lattice_shift(k) = std::floor(7.0 * aux_rng.uniform()) - 3.0;
  }

  std::vector<Report> parts(ps.points.size());
  parallel_for(static_cast<int>(ps.points.size()),
               [&](int i) { check_point(cfg, f, lattice, i, ps.points[i], aux[i], parts[i]); });
  Report all = merge(parts);
  for (std::size_t k = 0; k < ps.shortfall.size(); ++k)
    add_general_position(all, cfg, static_cast<int>(ps.points.size() + k), ps.shortfall[k], f);
  return all;
}

Report run_metric(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  const Prepotential f = load_prepotential(cfg.prepotential);
  const PointSet ps = gather_points(cfg, f, {f.dimension()}, log);

  std::vector<Report> parts(ps.points.size());
  parallel_for(static_cast<int>(ps.points.size()), [&](int i) {
    const FiberPoint& p = ps.points[i];
    Report& out = parts[i];
    add_general_position(out, cfg, i, p, f);
    if (!last_passed(out)) return;
    const PrepotentialJet j = jet(f, p.z, 3);
    const BaseMetric base = base_metric(j);
    const HermitianBlockMetric gb = hk_metric(j, base, p.w);
    Json r;
    r["check"] = "metric";
    r["point"] = i;
    r["z"] = to_json(p.z);
    r["w"] = to_json(p.w);
    r["G"] = to_json(gb.assembled());
    r["G_inv"] = to_json(hk_metric_inverse(gb, base));
    r["signature"] = signature_json(gb.signature);
    r["eigenvalues"] = to_json(gb.eigenvalues);
    out.add(std::move(r));
  });
  Report all = merge(parts);
  for (std::size_t k = 0; k < ps.shortfall.size(); ++k)
    add_general_position(all, cfg, static_cast<int>(ps.points.size() + k), ps.shortfall[k], f);
  return all;
}

Report run_moduli(const RunConfig& cfg, std::ostream& log) {
  validate(cfg);
  const Prepotential cone = load_prepotential(cfg.prepotential);
  const int ambient = cone.dimension();
  const int n = ambient - 1;
  if (n < 1) throw InputError("moduli needs a cone prepotential on at least two variables");
  const Lattice lattice = load_lattice(cfg.lattice, n);
  const Prepotential chart = chart_prepotential(cone);

  // Points are chart points q (lifted to (1, q)) or ambient points.
  PointSet ps;
  if (cfg.points) {
    ps.points = load_points(*cfg.points, {n, ambient});
  } else {
    ps = gather_points(cfg, chart, {}, log);
  }
  for (auto& p : ps.points) {
    if (p.z.size() == n) p.w = CVec::Zero(ambient);
    p.z = lift_to_cone(p.z, ambient);
  }

  PolydiskSampler aux_rng(ps.seed ^ kAuxSeedMix);
  struct ProjectiveDraw {
    CVec a;
    cplx lambda;
    cplx c;
  };
  std::vector<ProjectiveDraw> draws(ps.points.size());
  for (auto& d : draws) {
    d.a = aux_rng.polydisk(ambient, 0.0, 1.0);
    d.lambda = aux_rng.disk(0.0, 2.0);
    if (std::abs(d.lambda) < 0.1) d.lambda += 0.5;
    d.c = aux_rng.disk(0.0, 2.0);
  }

  std::vector<Report> parts(ps.points.size());
  parallel_for(static_cast<int>(ps.points.size()), [&](int i) {
    const FiberPoint& p = ps.points[i];
    Report& out = parts[i];
    const CVec pts[] = {p.z};
    FormalModuliRecord rec;
    try {
      rec = formal_moduli_check(cone, pts, tolerance(cfg, "euler")).front();
    } catch (const Error& e) {
      Json r;
      r["check"] = "formal_moduli";
      r["point"] = i;
      r["z"] = to_json(p.z);
      r["error"] = e.what();
      r["pass"] = false;
      out.add(std::move(r));
      return;
    }
    Json r;
    r["check"] = "formal_moduli";
    r["point"] = i;
    r["z"] = to_json(rec.point);
    r["cone"] = rec.cone;
    r["euler_residual"] = number(rec.euler_residual);
    r["positivity"] = rec.positivity;
    r["gamma_uu"] = number(rec.gamma_uu);
    r["negativity"] = rec.negativity ? Json(*rec.negativity) : Json(nullptr);
    r["eigenvalues"] = to_json(rec.eigenvalues);
    r["pass"] = rec.passes();
    out.add(std::move(r));

    // Projective special-Kaehler form: radial value and gauge invariance.
    {
      const PrepotentialJet j = jet(cone, p.z, 2);
      const CVec u = embed_point(cone, p.z).as_vector();
      const CVec v = tangent_vector(j, draws[i].a);
      Json pr;
      pr["check"] = "projective_metric";
      pr["point"] = i;
      pr["z"] = to_json(p.z);
      try {
        const double value = projective_special_metric(u, v);
        const double radial = std::abs(projective_special_metric(u, u));
        const cplx lam = draws[i].lambda;
        const double moved = projective_special_metric(lam * u, lam * (v + draws[i].c * u));
        const double gauge = std::abs(moved - value) / std::max(1.0, std::abs(value));
        const double res = std::max(radial, gauge);
        pr["value"] = number(value);
        pr["radial"] = number(radial);
        pr["gauge_residual"] = number(gauge);
        pr["residual"] = number(res);
        pr["tolerance"] = number(tolerance(cfg, "projective_metric"));
        pr["pass"] = res <= tolerance(cfg, "projective_metric");
      } catch (const Error& e) {
        pr["error"] = e.what();
        pr["pass"] = false;
      }
      out.add(std::move(pr));
    }

    // Intermediate Jacobian fiber over the chart point.
    {
      const CVec q = p.z.tail(n) / p.z(0);
      Json jr;
      jr["check"] = "jacobian_fiber";
      jr["point"] = i;
      jr["q"] = to_json(q);
      try {
        const JacobianFiber jf = jacobian_fiber(chart, q, lattice, tolerance(cfg, "jacobian_rcond"));
        jr["real_rank"] = jf.real_rank;
        jr["lattice_image"] = to_json(jf.lattice_image);
        jr["period_rcond"] = number(jf.period_rcond);
        jr["period_matrix"] = jf.period_matrix ? to_json(*jf.period_matrix) : Json(nullptr);
        jr["pass"] = jf.real_rank == 2 * n;
      } catch (const Error& e) {
        jr["error"] = e.what();
        jr["pass"] = false;
      }
      out.add(std::move(jr));
    }

    if (!rec.passes()) return;

    Json hr;
    hr["check"] = "hodge";
    hr["point"] = i;
    hr["z"] = to_json(p.z);
    try {
      const HodgeDecomposition h = hodge_structure(cone, p.z);
      const CMat s = h.stacked();
      double ortho = 0.0, norm = 0.0;
      for (Eigen::Index k = 0; k < h.h21.cols(); ++k) {
        ortho = std::max(ortho, std::abs(gamma_form(h.u, h.h21.col(k))));
        for (Eigen::Index l = 0; l < h.h21.cols(); ++l) {
          const cplx expect = k == l ? cplx(-1.0, 0.0) : cplx(0.0, 0.0);
          norm = std::max(norm, std::abs(gamma_form(h.h21.col(k), h.h21.col(l)) - expect));
        }
      }
      const int rank = linalg::numerical_rank(linalg::realify(s), 1e-10) / 2;
      const double res = std::max(ortho, norm);
      hr["dimensions"] = Json::array({1, h.h21.cols(), h.h12.cols(), 1});
      hr["rank"] = rank;
      hr["gamma_uu"] = number(gamma_form(h.u, h.u).real());
      hr["orthogonality"] = number(ortho);
      hr["normalization"] = number(norm);
      hr["residual"] = number(res);
      hr["tolerance"] = number(tolerance(cfg, "hodge"));
      hr["pass"] = rank == 2 * n + 2 && res <= tolerance(cfg, "hodge");
    } catch (const Error& e) {
      hr["error"] = e.what();
      hr["pass"] = false;
    }
    out.add(std::move(hr));

    Json sr;
    sr["check"] = "signature";
    sr["point"] = i;
    sr["z"] = to_json(p.z);
    sr["w"] = to_json(p.w);
    try {
      const HermitianBlockMetric gb = hk_metric(cone, p);
      sr["signature"] = signature_json(gb.signature);
      sr["expected"] = Json::array({2, 2 * n});
      sr["pass"] = gb.signature == Signature{2, 2 * n};
    } catch (const Error& e) {
      sr["error"] = e.what();
      sr["pass"] = false;
    }
    out.add(std::move(sr));
  });
  Report all = merge(parts);

  // Third fundamental form: one record over the whole point set.
  Json tr;
  tr["check"] = "third_fundamental_form";
  if (cone.kind() != Prepotential::Kind::very_special_cubic || ps.points.empty()) {
    tr["skipped"] = "not defined in scalar realization";
  } else {
    try {
      const CVec q0 = ps.points.front().z.tail(n) / ps.points.front().z(0);
      const Tensor3 theta = third_fundamental_form(cone, q0);
      double constancy = 0.0, reality = 0.0;
      for (const cplx& c : theta.data()) reality = std::max(reality, std::abs(c.imag()));
      for (const auto& p : ps.points) {
        const Tensor3 t = third_fundamental_form(cone, CVec(p.z.tail(n) / p.z(0)));
        for (std::size_t k = 0; k < t.size(); ++k)
          constancy = std::max(constancy, std::abs(t.data()[k] - theta.data()[k]));
      }
      Json coeffs = Json::array();
      for (int a = 0; a < n; ++a) {
        Json row = Json::array();
        for (int b = 0; b < n; ++b) {
          Json col = Json::array();
          for (int c = 0; c < n; ++c) col.push_back(number(theta(a, b, c).real()));
          row.push_back(col);
        }
        coeffs.push_back(row);
      }
      const double res = std::max(constancy, reality);
      tr["theta"] = coeffs;
      tr["constancy"] = number(constancy);
      tr["reality"] = number(reality);
      tr["residual"] = number(res);
      tr["tolerance"] = number(tolerance(cfg, "third_fundamental_form"));
      tr["pass"] = res <= tolerance(cfg, "third_fundamental_form");
    } catch (const Error& e) {
      tr["error"] = e.what();
      tr["pass"] = false;
    }
  }
  all.add(std::move(tr));
  for (std::size_t k = 0; k < ps.shortfall.size(); ++k) {
    FiberPoint lifted{lift_to_cone(ps.shortfall[k].z, ambient), CVec::Zero(ambient)};
    all.add_check("general_position", static_cast<int>(ps.points.size() + k), lifted.z, lifted.w,
                  std::numeric_limits<double>::infinity(), tolerance(cfg, "general_position"));
  }
  return all;
}

}  // namespace cmap::cli
