#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cmap/types.hpp"

namespace cmap::cli {

using Json = nlohmann::ordered_json;

/// Rounds to 15 significant digits so printed reports are stable.
double round15(double x);
/// Non-finite values become null.
Json number(double x);
Json to_json(cplx c);
Json to_json(const CVec& v);
Json to_json(const RVec& v);
Json to_json(const CMat& m);
Json to_json(const RMat& m);

/// Ordered collection of JSON Lines records. Records carrying a boolean `pass`
/// count toward the summary; a residual of null counts as failed.
class Report {
 public:
  void add(Json record);
  /// {check, point, z, w, residual, tolerance, pass} with pass = residual <= tolerance.
  void add_check(const std::string& check, int point, const CVec& z, const CVec& w, double residual,
                 double tolerance);

  const std::vector<Json>& records() const { return records_; }
  Json summary() const;
  bool all_passed() const;
  void write(std::ostream& os) const;

 private:
  std::vector<Json> records_;
};

}  // namespace cmap::cli
