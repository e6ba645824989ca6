#include "cmap/jets.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace cmap {

namespace {

double falling_factorial(int e, int k) {
  double r = 1.0;
  for (int t = 0; t < k; ++t) r *= static_cast<double>(e - t);
  return r;
}

cplx ipow(cplx z, int e) {
  cplx r{1.0, 0.0};
  for (int t = 0; t < e; ++t) r *= z;
  return r;
}

// d^counts of a sum of monomials; `offset` shifts which z component the first
// exponent refers to (used for h living on z^1..z^n).
cplx polynomial_partial(const std::vector<PolynomialTerm>& terms, std::span<const cplx> z,
                        std::span<const int> counts, int offset) {
  cplx acc{0.0, 0.0};
  for (const auto& t : terms) {
    cplx v = t.coeff;
    for (std::size_t i = 0; i < t.exponents.size(); ++i) {
      const int e = t.exponents[i];
      const int k = counts[i + offset];
      if (k > e) {
        v = 0.0;
        break;
      }
      v *= falling_factorial(e, k) * ipow(z[i + offset], e - k);
    }
    acc += v;
  }
  return acc;
}

std::vector<PolynomialTerm> normalize_terms(int n, std::vector<PolynomialTerm> terms) {
  std::set<std::vector<int>> seen;
  std::vector<PolynomialTerm> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (static_cast<int>(t.exponents.size()) != n)
      throw InputError("term exponent list has length " + std::to_string(t.exponents.size()) +
                       ", expected " + std::to_string(n));
    for (int e : t.exponents)
      if (e < 0) throw InputError("negative exponent in term");
    if (!seen.insert(t.exponents).second) throw InputError("duplicate term");
    const bool constant = std::all_of(t.exponents.begin(), t.exponents.end(), [](int e) { return e == 0; });
    if (!constant) out.push_back(std::move(t));
  }
  return out;
}

std::vector<double> symmetrize_cubic(int n, const std::vector<double>& raw) {
  std::vector<double> sym(raw.size(), 0.0);
  auto at = [n](int i, int j, int k) { return (static_cast<std::size_t>(i) * n + j) * n + k; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        sym[at(i, j, k)] = (raw[at(i, j, k)] + raw[at(i, k, j)] + raw[at(j, i, k)] + raw[at(j, k, i)] +
                            raw[at(k, i, j)] + raw[at(k, j, i)]) /
                           6.0;
  return sym;
}

// Visit every nondecreasing index tuple of length r over {0..n-1}.
template <typename Fn>
void for_each_multiset(int n, int r, Fn&& fn) {
  std::vector<int> idx(r, 0);
  if (r == 0) {
    fn(idx);
    return;
  }
  while (true) {
    fn(idx);
    int p = r - 1;
    while (p >= 0 && idx[p] == n - 1) --p;
    if (p < 0) return;
    ++idx[p];
    for (int q = p + 1; q < r; ++q) idx[q] = idx[p];
  }
}

}  // namespace

Prepotential Prepotential::polynomial(int n, std::vector<PolynomialTerm> terms) {
  if (n <= 0) throw InputError("prepotential dimension must be positive");
  Prepotential f;
  f.kind_ = Kind::polynomial;
  f.dim_ = n;
  f.max_order_ = 4;
  f.terms_ = normalize_terms(n, std::move(terms));
  return f;
}

Prepotential Prepotential::very_special(int base_n, const std::vector<double>& cubic,
                                        std::vector<PolynomialTerm> extra_terms) {
  if (base_n <= 0) throw InputError("very-special prepotential needs at least one chart variable");
  const auto expect = static_cast<std::size_t>(base_n) * base_n * base_n;
  if (cubic.size() != expect) throw InputError("cubic tensor must have n^3 entries");
  Prepotential f;
  f.kind_ = Kind::very_special_cubic;
  f.dim_ = base_n + 1;
  f.max_order_ = 4;
  f.cubic_ = symmetrize_cubic(base_n, cubic);
  f.terms_ = normalize_terms(base_n + 1, std::move(extra_terms));

  // Expand h = sum c_ijk x^i x^j x^k into monomials over nondecreasing (i,j,k).
  for_each_multiset(base_n, 3, [&](const std::vector<int>& idx) {
    const int i = idx[0], j = idx[1], k = idx[2];
    const double c = f.cubic_[(static_cast<std::size_t>(i) * base_n + j) * base_n + k];
    if (c == 0.0) return;
    const int perms = (i == j && j == k) ? 1 : (i == j || j == k) ? 3 : 6;
    PolynomialTerm t{cplx(c * perms, 0.0), std::vector<int>(base_n, 0)};
    ++t.exponents[i];
    ++t.exponents[j];
    ++t.exponents[k];
    f.cubic_monomials_.push_back(std::move(t));
  });
  return f;
}

Prepotential Prepotential::oracle(int n, int max_order, PartialOracle partial) {
  if (n <= 0) throw InputError("prepotential dimension must be positive");
  if (max_order < 0) throw InputError("oracle order must be nonnegative");
  if (!partial) throw InputError("oracle evaluator is empty");
  Prepotential f;
  f.kind_ = Kind::derivative_oracle;
  f.dim_ = n;
  f.max_order_ = max_order;
  f.oracle_ = std::move(partial);
  return f;
}

cplx Prepotential::partial(std::span<const cplx> z, std::span<const int> counts) const {
  if (static_cast<int>(z.size()) != dim_ || static_cast<int>(counts.size()) != dim_)
    throw InputError("point dimension does not match prepotential");
  switch (kind_) {
    case Kind::polynomial:
      return polynomial_partial(terms_, z, counts, 0);
    case Kind::derivative_oracle: {
      int total = 0;
      for (int c : counts) total += c;
      if (total > max_order_) throw OrderError("derivative order beyond oracle capability");
      return oracle_(z, counts);
    }
    case Kind::very_special_cubic: {
      const cplx z0 = z[0];
      if (z0 == cplx{0.0, 0.0}) throw DomainError("very-special prepotential has a pole at z^0 = 0");
      // F = h(z^1..z^n) * s(z^0), s = 1/z^0: mixed partials factor.
      const int a0 = counts[0];
      const cplx dh = polynomial_partial(cubic_monomials_, z, counts, 1);
      double fact = 1.0;
      for (int t = 2; t <= a0; ++t) fact *= t;
      const cplx ds = (a0 % 2 ? -fact : fact) / ipow(z0, a0 + 1);
      return dh * ds + polynomial_partial(terms_, z, counts, 0);
    }
  }
  return {};
}

cplx Prepotential::value(std::span<const cplx> z) const {
  const std::vector<int> zero(dim_, 0);
  return partial(z, zero);
}

PrepotentialJet jet(const Prepotential& f, const CVec& z, int order) {
  const int n = f.dimension();
  if (z.size() != n) throw InputError("point dimension does not match prepotential");
  if (order < 0 || order > 4) throw OrderError("jet order must lie in 0..4");
  if (order > f.max_order()) throw OrderError("jet order beyond prepotential capability");

  PrepotentialJet j;
  j.z = z;
  j.order = order;
  j.grad = CVec::Zero(n);
  j.hess = CMat::Zero(n, n);
  if (order >= 3) j.third = Tensor3(n);
  if (order >= 4) j.fourth = Tensor4(n);

  const std::span<const cplx> zs(z.data(), static_cast<std::size_t>(n));
  std::vector<int> counts(n);
  for (int r = 0; r <= order; ++r) {
    for_each_multiset(n, r, [&](const std::vector<int>& idx) {
      std::fill(counts.begin(), counts.end(), 0);
      for (int i : idx) ++counts[i];
      const cplx v = f.partial(zs, counts);
      std::vector<int> perm = idx;
      switch (r) {
        case 0:
          j.value = v;
          break;
        case 1:
          j.grad(idx[0]) = v;
          break;
        case 2:
          j.hess(idx[0], idx[1]) = v;
          j.hess(idx[1], idx[0]) = v;
          break;
        case 3:
          do j.third(perm[0], perm[1], perm[2]) = v;
          while (std::next_permutation(perm.begin(), perm.end()));
          break;
        case 4:
          do j.fourth(perm[0], perm[1], perm[2], perm[3]) = v;
          while (std::next_permutation(perm.begin(), perm.end()));
          break;
      }
    });
  }
  return j;
}

cplx euler_residual(const Prepotential& f, const CVec& z) {
  const PrepotentialJet j = jet(f, z, 1);
  cplx acc{0.0, 0.0};
  for (int a = 0; a < j.dimension(); ++a) acc += z(a) * j.grad(a);
  return acc - 2.0 * j.value;
}

namespace {

using nlohmann::json;

cplx parse_complex(const json& v, const char* what) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw InputError(std::string(what) + " must be a number or [re, im]");
}

std::vector<PolynomialTerm> parse_terms(const json& arr) {
  if (!arr.is_array()) throw InputError("`terms` must be an array");
  std::vector<PolynomialTerm> terms;
  for (const auto& t : arr) {
    if (!t.is_object() || !t.contains("coeff") || !t.contains("exponents"))
      throw InputError("each term needs `coeff` and `exponents`");
    PolynomialTerm term{parse_complex(t.at("coeff"), "coeff"), {}};
    for (const auto& e : t.at("exponents")) {
      if (!e.is_number_integer()) throw InputError("exponents must be integers");
      term.exponents.push_back(e.get<int>());
    }
    terms.push_back(std::move(term));
  }
  return terms;
}

}  // namespace

Prepotential parse_prepotential(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed prepotential document: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("prepotential document must be a JSON object");
  if (!doc.contains("n") || !doc.at("n").is_number_integer()) throw InputError("missing integer field `n`");
  if (!doc.contains("kind") || !doc.at("kind").is_string()) throw InputError("missing string field `kind`");
  const int n = doc.at("n").get<int>();
  const std::string kind = doc.at("kind").get<std::string>();

  if (kind == "polynomial") {
    if (!doc.contains("terms")) throw InputError("polynomial prepotential needs `terms`");
    return Prepotential::polynomial(n, parse_terms(doc.at("terms")));
  }
  if (kind == "very-special-cubic" || kind == "very-special") {
    if (n <= 0) throw InputError("very-special prepotential needs n >= 1");
    if (!doc.contains("cubic") || !doc.at("cubic").is_array())
      throw InputError("very-special prepotential needs a `cubic` array");
    std::vector<double> raw(static_cast<std::size_t>(n) * n * n, 0.0);
    for (const auto& c : doc.at("cubic")) {
      if (!c.is_object() || !c.contains("indices") || !c.contains("value"))
        throw InputError("each cubic entry needs `indices` and `value`");
      const auto& ix = c.at("indices");
      if (!ix.is_array() || ix.size() != 3) throw InputError("cubic indices must be a triple");
      std::array<int, 3> id{};
      for (int t = 0; t < 3; ++t) {
        if (!ix[t].is_number_integer()) throw InputError("cubic indices must be integers");
        id[t] = ix[t].get<int>() - 1;
        if (id[t] < 0 || id[t] >= n) throw InputError("cubic index out of range 1..n");
      }
      const cplx v = parse_complex(c.at("value"), "cubic value");
      if (v.imag() != 0.0) throw InputError("cubic coefficients must be real");
      raw[(static_cast<std::size_t>(id[0]) * n + id[1]) * n + id[2]] += v.real();
    }
    std::vector<PolynomialTerm> extra;
    if (doc.contains("terms")) extra = parse_terms(doc.at("terms"));
    return Prepotential::very_special(n, raw, std::move(extra));
  }
  throw InputError("unknown prepotential kind `" + kind + "`");
}

Prepotential load_prepotential(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read prepotential document " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_prepotential(ss.str());
}

}  // namespace cmap
