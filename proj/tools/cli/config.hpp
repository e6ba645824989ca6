#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "cmap/hyperkahler.hpp"
#include "cmap/jets.hpp"

namespace cmap::cli {

/// Box sampler `center,radius,count,seed`; center is `re:im` or a real.
struct SampleSpec {
  cplx center{0.0, 0.0};
  double radius = 1.0;
  int count = 0;
  std::uint64_t seed = 0;
};

struct RunConfig {
  std::filesystem::path prepotential;
  std::string lattice = "standard";
  std::optional<std::filesystem::path> points;
  std::optional<SampleSpec> sample;
  std::map<std::string, double> tolerances;
  std::vector<std::string> suites;
  std::optional<std::filesystem::path> json;
};

SampleSpec parse_sample_spec(std::string_view text);
std::pair<std::string, double> parse_tolerance(std::string_view text);

/// Reads `{"points": [{"z": [[re, im], ...], "w": [...]}, ...]}`; w defaults to 0.
/// Each z must have one of `allowed_sizes` components; w must match z.
std::vector<FiberPoint> load_points(const std::filesystem::path& path, std::vector<int> allowed_sizes);

struct SampledPoints {
  std::vector<FiberPoint> accepted;
  /// Draws that failed general position, in draw order.
  std::vector<FiberPoint> rejected;
};

/// Draws z uniformly in the polydisk of `spec` and w in the polydisk of the
/// same radius around 0, rejecting general-position failures. Gives up after
/// 10 * count draws. Rejections are logged to `log`.
SampledPoints sample_points(const Prepotential& f, const SampleSpec& spec, std::ostream& log);

/// Worker count from CMAP_THREADS, else hardware concurrency; at least 1.
int thread_count();

}  // namespace cmap::cli
