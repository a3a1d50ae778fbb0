#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vlab/harness/config.hpp"
#include "vlab/integral_ops.hpp"

namespace vlab::harness {

/// Residual at one evaluation point of the finest resolution.
struct PointResidual {
  Region region = Region::interior;
  Vec3 position{};
  double computed = 0.0;
  double expected = 0.0;
  double residual = 0.0;  // relative to the interior magnitude
};

struct ResolutionError {
  int resolution = 0;
  double h = 0.0;
  double interior = 0.0;
  double exterior = 0.0;
};

struct ConvergenceRow {
  int resolution = 0;
  double h = 0.0;
  double error = 0.0;
  std::optional<double> order;  // empty on the first row or when saturated
  bool saturated = false;
};

struct ConvergenceSeries {
  std::string name;
  std::vector<ConvergenceRow> rows;
};

/// order_i = log(e_{i-1} / e_i) / log(h_{i-1} / h_i); rows where both errors sit
/// at or below `floor` are flagged saturated instead.
ConvergenceSeries convergence_series(std::string name, const std::vector<int>& resolutions,
                                     const std::vector<double>& errors, double floor = 1e-12);

/// Grid spacing of the unit cube with r nodes per axis.
double unit_spacing(int r);

struct Criterion {
  std::string name;
  double measured = 0.0;
  std::string comparison;  // "<=", ">=", "<", ">"
  double threshold = 0.0;
  bool passed = false;
};

class CheckReport {
 public:
  std::string identity;
  std::string anchor;
  std::string description;
  std::string norms;
  SuiteConfig config;
  std::vector<PointResidual> points;
  std::vector<ResolutionError> errors;
  std::vector<ConvergenceSeries> convergence;
  std::vector<Criterion> criteria;
  std::vector<std::pair<std::string, double>> metrics;
  Json recorded = Json::object();
  std::string failure;  // set when the check aborted with an exception

  /// Every criterion passed, at least one was asserted, and nothing threw.
  bool passed() const;

  void set_metric(const std::string& name, double value);
  bool has_metric(const std::string& name) const;
  /// Throws std::out_of_range for an unknown name.
  double metric(const std::string& name) const;
  const ConvergenceSeries* series(const std::string& name) const;

  /// Adds a criterion; NaN measurements always fail.
  const Criterion& require(const std::string& name, double measured, const std::string& cmp,
                           double threshold);

  Json to_json() const;
  /// report.json, errors.csv and convergence.csv inside `dir` (created if needed).
  void write(const std::string& dir) const;
};

std::string build_id();

}  // namespace vlab::harness
