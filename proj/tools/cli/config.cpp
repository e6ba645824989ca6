#include "config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "cmap/base_geometry.hpp"
#include "cmap/sampling.hpp"

namespace cmap::cli {

namespace {

double to_double(std::string_view s, const char* what) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw InputError(std::string("cannot parse ") + what + " `" + std::string(s) + "`");
  return v;
}

template <typename Int>
Int to_integer(std::string_view s, const char* what) {
  Int v{};
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw InputError(std::string("cannot parse ") + what + " `" + std::string(s) + "`");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

CVec parse_complex_list(const nlohmann::json& arr, const char* what) {
  if (!arr.is_array()) throw InputError(std::string(what) + " must be an array");
  CVec v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& c = arr[i];
    if (c.is_number())
      v(static_cast<Eigen::Index>(i)) = c.get<double>();
    else if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number())
      v(static_cast<Eigen::Index>(i)) = cplx(c[0].get<double>(), c[1].get<double>());
    else
      throw InputError(std::string(what) + " entries must be numbers or [re, im]");
  }
  return v;
}

}  // namespace

SampleSpec parse_sample_spec(std::string_view text) {
  const auto parts = split(text, ',');
  if (parts.size() != 4) throw InputError("--sample expects center,radius,count,seed");
  SampleSpec s;
  const auto c = split(parts[0], ':');
  if (c.size() == 1)
    s.center = to_double(c[0], "sample center");
  else if (c.size() == 2)
    s.center = {to_double(c[0], "sample center"), to_double(c[1], "sample center")};
  else
    throw InputError("sample center must be `re` or `re:im`");
  s.radius = to_double(parts[1], "sample radius");
  s.count = to_integer<int>(parts[2], "sample count");
  s.seed = to_integer<std::uint64_t>(parts[3], "sample seed");
  if (!(s.radius > 0.0)) throw InputError("sample radius must be positive");
  if (s.count <= 0) throw InputError("sample count must be positive");
  return s;
}

std::pair<std::string, double> parse_tolerance(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0) throw InputError("--tol expects NAME=VALUE");
  const double v = to_double(text.substr(eq + 1), "tolerance");
  if (!(v >= 0.0)) throw InputError("tolerances must be nonnegative");
  return {std::string(text.substr(0, eq)), v};
}

std::vector<FiberPoint> load_points(const std::filesystem::path& path, std::vector<int> allowed_sizes) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read points document " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed points document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("points") || !doc.at("points").is_array())
    throw InputError("points document needs a `points` array");
  std::vector<FiberPoint> out;
  for (const auto& p : doc.at("points")) {
    if (!p.is_object() || !p.contains("z")) throw InputError("each point needs `z`");
    FiberPoint fp;
    fp.z = parse_complex_list(p.at("z"), "z");
    if (std::find(allowed_sizes.begin(), allowed_sizes.end(), static_cast<int>(fp.z.size())) == allowed_sizes.end())
      throw InputError("point has " + std::to_string(fp.z.size()) + " components; dimension mismatch");
    fp.w = p.contains("w") ? parse_complex_list(p.at("w"), "w") : CVec(CVec::Zero(fp.z.size()));
    if (fp.w.size() != fp.z.size()) throw InputError("w must have as many components as z");
    out.push_back(std::move(fp));
  }
  if (out.empty()) throw InputError("points document is empty");
  return out;
}

SampledPoints sample_points(const Prepotential& f, const SampleSpec& spec, std::ostream& log) {
  PolydiskSampler rng(spec.seed);
  SampledPoints out;
  const int n = f.dimension();
  const long budget = 10L * spec.count;
  for (long draw = 0; draw < budget && static_cast<int>(out.accepted.size()) < spec.count; ++draw) {
    FiberPoint p;
    p.z = rng.polydisk(n, spec.center, spec.radius);
    p.w = rng.polydisk(n, 0.0, spec.radius);
    bool ok = false;
    try {
      ok = general_position_check(jet(f, p.z, 2)).pass;
    } catch (const DomainError&) {
      ok = false;
    }
    if (ok) {
      out.accepted.push_back(std::move(p));
    } else {
      log << "sampler: rejected draw " << draw << " (general position)\n";
      out.rejected.push_back(std::move(p));
    }
  }
  return out;
}

int thread_count() {
  if (const char* env = std::getenv("CMAP_THREADS")) {
    int v = 0;
    const std::string_view s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc{} && ptr == s.data() + s.size() && v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace cmap::cli
