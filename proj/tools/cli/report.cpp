#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

namespace cmap::cli {

double round15(double x) {
  if (x == 0.0) return 0.0;  // drops the sign of -0
  if (!std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return std::strtod(buf, nullptr);
}

Json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round15(x);
}

Json to_json(cplx c) { return Json::array({number(c.real()), number(c.imag())}); }

Json to_json(const CVec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(to_json(v(i)));
  return a;
}

Json to_json(const RVec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(number(v(i)));
  return a;
}

Json to_json(const CMat& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) rows.push_back(to_json(CVec(m.row(r).transpose())));
  return rows;
}

Json to_json(const RMat& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) rows.push_back(to_json(RVec(m.row(r).transpose())));
  return rows;
}

void Report::add(Json record) { records_.push_back(std::move(record)); }

void Report::add_check(const std::string& check, int point, const CVec& z, const CVec& w, double residual,
                       double tolerance) {
  Json r;
  r["check"] = check;
  r["point"] = point;
  r["z"] = to_json(z);
  r["w"] = to_json(w);
  r["residual"] = number(residual);
  r["tolerance"] = number(tolerance);
  r["pass"] = std::isfinite(residual) && residual <= tolerance;
  records_.push_back(std::move(r));
}

Json Report::summary() const {
  int total = 0, passed = 0;
  std::map<std::string, double> worst;
  std::vector<std::string> order;
  for (const Json& r : records_) {
    if (!r.contains("pass") || !r.at("pass").is_boolean()) continue;
    ++total;
    if (r.at("pass").get<bool>()) ++passed;
    const std::string check = r.value("check", "");
    if (r.contains("residual")) {
      if (!worst.contains(check)) {
        order.push_back(check);
        worst[check] = 0.0;
      }
      const Json& res = r.at("residual");
      worst[check] = res.is_number() ? std::max(worst[check], res.get<double>())
                                     : std::numeric_limits<double>::infinity();
    }
  }
  Json s;
  s["summary"] = true;
  s["total"] = total;
  s["passed"] = passed;
  Json mr = Json::object();
  for (const auto& c : order) mr[c] = number(worst[c]);
  s["max_residual"] = mr;
  return s;
}

bool Report::all_passed() const {
  for (const Json& r : records_)
    if (r.contains("pass") && r.at("pass").is_boolean() && !r.at("pass").get<bool>()) return false;
  return true;
}

void Report::write(std::ostream& os) const {
  for (const Json& r : records_) os << r.dump() << '\n';
  os << summary().dump() << '\n';
}

}  // namespace cmap::cli
