#include "vlab/harness/report.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

#ifndef VLAB_BUILD_ID
#define VLAB_BUILD_ID "vlab-dev"
#endif

namespace vlab::harness {

namespace {

Json number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << std::setprecision(17);
  return out;
}

}  // namespace

std::string build_id() { return VLAB_BUILD_ID; }

double unit_spacing(int r) { return 1.0 / (r - 1); }

ConvergenceSeries convergence_series(std::string name, const std::vector<int>& resolutions,
                                     const std::vector<double>& errors, double floor) {
  if (resolutions.size() != errors.size()) {
    throw std::invalid_argument("convergence series needs one error per resolution");
  }
  ConvergenceSeries s{std::move(name), {}};
  for (std::size_t i = 0; i < errors.size(); ++i) {
    ConvergenceRow row{resolutions[i], unit_spacing(resolutions[i]), errors[i], std::nullopt,
                       false};
    if (i > 0) {
      const double e0 = errors[i - 1];
      const double e1 = errors[i];
      if (e0 <= floor && e1 <= floor) {
        row.saturated = true;
      } else {
        row.order = std::log(e0 / e1) / std::log(s.rows.back().h / row.h);
      }
    }
    s.rows.push_back(row);
  }
  return s;
}

bool CheckReport::passed() const {
  if (!failure.empty() || criteria.empty()) return false;
  for (const auto& c : criteria) {
    if (!c.passed) return false;
  }
  return true;
}

void CheckReport::set_metric(const std::string& name, double value) {
  for (auto& [k, v] : metrics) {
    if (k == name) {
      v = value;
      return;
    }
  }
  metrics.emplace_back(name, value);
}

bool CheckReport::has_metric(const std::string& name) const {
  for (const auto& kv : metrics) {
    if (kv.first == name) return true;
  }
  return false;
}

double CheckReport::metric(const std::string& name) const {
  for (const auto& [k, v] : metrics) {
    if (k == name) return v;
  }
  throw std::out_of_range(identity + ": no metric '" + name + "'");
}

const ConvergenceSeries* CheckReport::series(const std::string& name) const {
  for (const auto& s : convergence) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

const Criterion& CheckReport::require(const std::string& name, double measured,
                                      const std::string& cmp, double threshold) {
  bool ok = false;
  if (!std::isnan(measured)) {
    if (cmp == "<=") ok = measured <= threshold;
    else if (cmp == ">=") ok = measured >= threshold;
    else if (cmp == "<") ok = measured < threshold;
    else if (cmp == ">") ok = measured > threshold;
    else throw std::invalid_argument("unknown comparison " + cmp);
  }
  criteria.push_back({name, measured, cmp, threshold, ok});
  return criteria.back();
}

Json CheckReport::to_json() const {
  Json j;
  j["identity"] = identity;
  j["anchor"] = anchor;
  j["description"] = description;
  j["norms"] = norms;
  j["passed"] = passed();
  if (!failure.empty()) j["failure"] = failure;
  j["provenance"] = {{"config_hash", hex64(config.hash())}, {"build_id", build_id()}};
  j["config"] = config.to_json();

  Json crit = Json::array();
  for (const auto& c : criteria) {
    crit.push_back({{"name", c.name},
                    {"measured", number(c.measured)},
                    {"comparison", c.comparison},
                    {"threshold", c.threshold},
                    {"passed", c.passed}});
  }
  j["criteria"] = crit;

  Json m = Json::object();
  for (const auto& [k, v] : metrics) m[k] = number(v);
  j["metrics"] = m;

  Json errs = Json::array();
  for (const auto& e : errors) {
    errs.push_back({{"resolution", e.resolution},
                    {"h", e.h},
                    {"interior", number(e.interior)},
                    {"exterior", number(e.exterior)}});
  }
  j["resolution_errors"] = errs;

  Json conv = Json::array();
  for (const auto& s : convergence) {
    Json rows = Json::array();
    for (const auto& r : s.rows) {
      rows.push_back({{"resolution", r.resolution},
                      {"h", r.h},
                      {"error", number(r.error)},
                      {"order", r.order ? number(*r.order) : Json(nullptr)},
                      {"saturated", r.saturated}});
    }
    conv.push_back({{"series", s.name}, {"rows", rows}});
  }
  j["convergence"] = conv;

  Json pts = Json::array();
  for (const auto& p : points) {
    pts.push_back({{"region", p.region == Region::interior ? "interior" : "exterior"},
                   {"position", {p.position[0], p.position[1], p.position[2]}},
                   {"computed", number(p.computed)},
                   {"expected", number(p.expected)},
                   {"residual", number(p.residual)}});
  }
  j["points"] = pts;
  j["recorded"] = recorded;
  return j;
}

void CheckReport::write(const std::string& dir) const {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  {
    std::ofstream out = open_out(fs::path(dir) / "report.json");
    out << to_json().dump(2) << '\n';
  }
  {
    std::ofstream out = open_out(fs::path(dir) / "errors.csv");
    out << "point,region,x,y,z,computed,expected,residual\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto& p = points[i];
      out << i << ',' << (p.region == Region::interior ? "interior" : "exterior") << ','
          << p.position[0] << ',' << p.position[1] << ',' << p.position[2] << ',' << p.computed
          << ',' << p.expected << ',' << p.residual << '\n';
    }
  }
  {
    std::ofstream out = open_out(fs::path(dir) / "convergence.csv");
    out << "series,resolution,h,error,order,saturated\n";
    for (const auto& s : convergence) {
      for (const auto& r : s.rows) {
        out << s.name << ',' << r.resolution << ',' << r.h << ',' << r.error << ',';
        if (r.order) out << *r.order;
        out << ',' << (r.saturated ? 1 : 0) << '\n';
      }
    }
  }
}

}  // namespace vlab::harness
