#pragma once

#include <string>

#include "vlab/harness/config.hpp"
#include "vlab/harness/report.hpp"

namespace vlab::harness {

CheckReport check_algebra(const SuiteConfig& cfg);
CheckReport check_operator_consistency(const SuiteConfig& cfg);
CheckReport check_cauchy_theorem(const SuiteConfig& cfg);
CheckReport check_borel_pompeiu(const SuiteConfig& cfg);
CheckReport check_kernel_identities(const SuiteConfig& cfg);
CheckReport check_factorizations(const SuiteConfig& cfg);
CheckReport check_main_vekua(const SuiteConfig& cfg);
CheckReport check_hodge(const SuiteConfig& cfg);

/// id is one of scalar_bp, cauchy_vekua, green_vekua, integral_cauchy,
/// schrodinger_reconstruction. Throws std::invalid_argument for an unknown id or
/// a profile the identity does not support.
CheckReport check_reconstruction(const std::string& id, const SuiteConfig& cfg);

CheckReport check_dtn_properties(const SuiteConfig& cfg);
CheckReport check_difference_identities(const SuiteConfig& cfg);

}  // namespace vlab::harness
