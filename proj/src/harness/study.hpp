#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "vlab/harness/report.hpp"
#include "vlab/integral_ops.hpp"
#include "vlab/profile.hpp"

namespace vlab::harness::detail {

/// Value of an identity's two sides at one evaluation point.
struct PointSample {
  double computed = 0.0;
  double expected = 0.0;
  double residual = 0.0;  // absolute
};

struct PointStudyResult {
  std::vector<PointSample> samples;  // aligned with the evaluation set
  /// Reference magnitude the residuals are divided by; 0 means the largest
  /// |expected| over interior points.
  double scale = 0.0;
};

using PointStudyFn = std::function<PointStudyResult(const BoxGrid&, const EvaluationSet&)>;

struct PointStudyOptions {
  std::string series = "interior";
  bool assert_interior = true;
  bool assert_exterior = true;
  bool assert_ratio = true;
  /// Refinement rule: ratio >= cfg.tol.refinement_ratio, or plain decrease.
  bool ratio_means_decrease = false;
};

/// Runs `fn` on the unit cube at every configured resolution, fills errors,
/// convergence series, finest-resolution point residuals and the criteria
/// "<series>: interior", "<series>: exterior", "<series>: refinement".
void run_point_study(CheckReport& rep, const SuiteConfig& cfg, const PointStudyFn& fn,
                     const PointStudyOptions& opts = {});

EvaluationSet evaluation_set(const BoxGrid& g, const SuiteConfig& cfg);

/// Exponential profile from the config; throws for other kinds with the
/// identity named in the message.
ConductivityProfile require_exponential(const SuiteConfig& cfg, const std::string& identity);

/// u = exp((mu - lambda) . x) with mu a rotation of lambda, a non-separable
/// solution of the conductivity equation for f = exp(lambda . x).
Vec3 rotated_mu(const Vec3& lambda);

/// Closed-form solution of div(f^2 grad u) = 0 for the config's profile.
ExactSolution conductivity_solution(const ConductivityProfile& f);

/// Smooth trace generators: seeded combinations of low-order polynomials and
/// trigonometric modes.
std::vector<std::function<double(const Vec3&)>> random_smooth_functions(std::mt19937_64& rng,
                                                                        int count);

/// Largest value, ignoring NaN.
double max_of(const std::vector<double>& v);

void set_header(CheckReport& rep, const SuiteConfig& cfg, const std::string& identity);

}  // namespace vlab::harness::detail
