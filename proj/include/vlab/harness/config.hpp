#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "vlab/profile.hpp"

namespace vlab::harness {

using Json = nlohmann::ordered_json;

struct ProfileParams {
  std::string kind = "exponential";  // constant | exponential | linear_z
  Vec3 lambda{0.0, 0.0, 1.0};
  double amplitude = 1.0;  // exponential prefactor, or the constant value
  double a = 1.0;          // linear_z: f = a + b x3
  double b = 0.5;
};

struct Tolerances {
  double interior_relative = 0.05;
  double exterior_absolute = 0.05;  // fraction of the interior magnitude
  double refinement_ratio = 1.8;
};

struct SuiteConfig {
  std::string identity;
  ProfileParams profile;
  std::vector<int> resolutions{16, 32};  // nodes per axis
  double margin = 0.2;                   // fraction of the shortest box side
  int points_per_axis = 3;
  Tolerances tol;
  std::string output_dir = "vekua-lab-out";
  std::uint64_t seed = 20240611;

  /// Throws std::invalid_argument on non-increasing resolutions, resolutions
  /// below BoxGrid::kMinResolution, non-positive tolerances or margin.
  void validate() const;
  Json to_json() const;
  /// FNV-1a over the compact JSON dump.
  std::uint64_t hash() const;
};

/// Defaults for one identity, with VEKUA_LAB_SEED applied when set.
SuiteConfig default_config(const std::string& identity);
/// Overlays the keys of `j` on `base`; unknown keys are rejected.
SuiteConfig apply_json(SuiteConfig base, const Json& j);
SuiteConfig load_config(const std::string& path, const std::string& identity);

ConductivityProfile make_profile(const ProfileParams& p);
/// Named profiles accepted on the command line: exp_z, exp_xyz, constant, linear_z.
ProfileParams named_profile(const std::string& name);

std::uint64_t fnv1a(const std::string& bytes);

}  // namespace vlab::harness
