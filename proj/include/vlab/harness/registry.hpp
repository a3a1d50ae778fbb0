#pragma once

#include <functional>
#include <string>
#include <vector>

#include "vlab/harness/checks.hpp"

namespace vlab::harness {

struct IdentityInfo {
  std::string id;
  /// The identity written out as a formula.
  std::string anchor;
  std::string description;
  std::function<CheckReport(const SuiteConfig&)> run;
};

/// Every registered identity, in suite order.
const std::vector<IdentityInfo>& identities();
/// Throws std::invalid_argument listing the known ids when `id` is unknown.
const IdentityInfo& find_identity(const std::string& id);

/// Validates cfg and runs its identity. Exceptions thrown by the check itself
/// are caught and stored in CheckReport::failure.
CheckReport run_check(const SuiteConfig& cfg);

/// The check's convergence series; throws std::invalid_argument with fewer
/// than two resolutions or for identities without a discretisation.
std::vector<ConvergenceSeries> convergence_study(const SuiteConfig& cfg);

/// Runs every identity with its default configuration, identities spread over
/// the worker pool, reports returned in suite order.
std::vector<CheckReport> run_suite(const std::function<SuiteConfig(const std::string&)>& make_cfg);

}  // namespace vlab::harness
