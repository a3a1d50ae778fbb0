#include "vlab/harness/config.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "vlab/grid.hpp"

namespace vlab::harness {

namespace {

Json vec_json(const Vec3& v) { return Json::array({v[0], v[1], v[2]}); }

Vec3 json_vec(const Json& j, const char* key) {
  if (!j.is_array() || j.size() != 3) {
    throw std::invalid_argument(std::string(key) + " must be an array of three numbers");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

void reject_unknown(const Json& j, std::initializer_list<const char*> keys, const char* where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known) throw std::invalid_argument("unknown key '" + it.key() + "' in " + where);
  }
}

}  // namespace

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

void SuiteConfig::validate() const {
  if (resolutions.empty()) throw std::invalid_argument("at least one resolution is required");
  for (std::size_t i = 0; i < resolutions.size(); ++i) {
    if (resolutions[i] < BoxGrid::kMinResolution) {
      throw std::invalid_argument("resolution " + std::to_string(resolutions[i]) +
                                  " is below the minimum of " +
                                  std::to_string(BoxGrid::kMinResolution));
    }
    if (i > 0 && resolutions[i] <= resolutions[i - 1]) {
      throw std::invalid_argument("resolutions must be strictly increasing");
    }
  }
  if (!(margin > 0.0 && margin < 0.5)) throw std::invalid_argument("margin must lie in (0, 0.5)");
  if (points_per_axis < 1) throw std::invalid_argument("points_per_axis must be positive");
  if (!(tol.interior_relative > 0.0) || !(tol.exterior_absolute > 0.0) ||
      !(tol.refinement_ratio > 0.0)) {
    throw std::invalid_argument("tolerances must be positive");
  }
  const auto& k = profile.kind;
  if (k != "constant" && k != "exponential" && k != "linear_z") {
    throw std::invalid_argument("unknown profile kind '" + k + "'");
  }
}

Json SuiteConfig::to_json() const {
  Json j;
  j["identity"] = identity;
  j["profile"] = {{"kind", profile.kind},
                  {"lambda", vec_json(profile.lambda)},
                  {"amplitude", profile.amplitude},
                  {"a", profile.a},
                  {"b", profile.b}};
  j["resolutions"] = resolutions;
  j["margin"] = margin;
  j["points_per_axis"] = points_per_axis;
  j["tolerances"] = {{"interior_relative", tol.interior_relative},
                     {"exterior_absolute", tol.exterior_absolute},
                     {"refinement_ratio", tol.refinement_ratio}};
  j["output_dir"] = output_dir;
  j["seed"] = seed;
  return j;
}

std::uint64_t SuiteConfig::hash() const { return fnv1a(to_json().dump()); }

SuiteConfig default_config(const std::string& identity) {
  SuiteConfig c;
  c.identity = identity;
  if (identity == "cauchy_theorem") {
    c.resolutions = {33, 65};
    c.tol.interior_relative = 1e-3;
    c.tol.exterior_absolute = 1e-3;
  } else if (identity == "borel_pompeiu") {
    c.tol.interior_relative = 0.02;
    c.tol.exterior_absolute = 0.02;
  } else if (identity == "main_vekua") {
    c.tol.interior_relative = 0.03;
  } else if (identity == "hodge") {
    c.tol.interior_relative = 0.01;
  }
  if (const char* s = std::getenv("VEKUA_LAB_SEED")) {
    try {
      c.seed = std::stoull(s);
    } catch (const std::exception&) {
      throw std::invalid_argument("VEKUA_LAB_SEED must be a non-negative integer");
    }
  }
  return c;
}

SuiteConfig apply_json(SuiteConfig c, const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  reject_unknown(j,
                 {"identity", "profile", "resolutions", "margin", "points_per_axis", "tolerances",
                  "output_dir", "seed"},
                 "config");
  if (j.contains("identity")) c.identity = j["identity"].get<std::string>();
  if (j.contains("profile")) {
    const Json& p = j["profile"];
    reject_unknown(p, {"kind", "lambda", "amplitude", "a", "b"}, "profile");
    if (p.contains("kind")) c.profile.kind = p["kind"].get<std::string>();
    if (p.contains("lambda")) c.profile.lambda = json_vec(p["lambda"], "profile.lambda");
    if (p.contains("amplitude")) c.profile.amplitude = p["amplitude"].get<double>();
    if (p.contains("a")) c.profile.a = p["a"].get<double>();
    if (p.contains("b")) c.profile.b = p["b"].get<double>();
  }
  if (j.contains("resolutions")) c.resolutions = j["resolutions"].get<std::vector<int>>();
  if (j.contains("margin")) c.margin = j["margin"].get<double>();
  if (j.contains("points_per_axis")) c.points_per_axis = j["points_per_axis"].get<int>();
  if (j.contains("tolerances")) {
    const Json& t = j["tolerances"];
    reject_unknown(t, {"interior_relative", "exterior_absolute", "refinement_ratio"},
                   "tolerances");
    if (t.contains("interior_relative")) c.tol.interior_relative = t["interior_relative"];
    if (t.contains("exterior_absolute")) c.tol.exterior_absolute = t["exterior_absolute"];
    if (t.contains("refinement_ratio")) c.tol.refinement_ratio = t["refinement_ratio"];
  }
  if (j.contains("output_dir")) c.output_dir = j["output_dir"].get<std::string>();
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  c.validate();
  return c;
}

SuiteConfig load_config(const std::string& path, const std::string& identity) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("config " + path + ": " + e.what());
  }
  SuiteConfig c = apply_json(default_config(identity), j);
  if (c.identity != identity) {
    throw std::invalid_argument("config names identity '" + c.identity + "' but '" + identity +
                                "' was requested");
  }
  return c;
}

ConductivityProfile make_profile(const ProfileParams& p) {
  if (p.kind == "constant") return ConductivityProfile::constant(p.amplitude);
  if (p.kind == "exponential") return ConductivityProfile::exponential(p.lambda, p.amplitude);
  if (p.kind == "linear_z") return ConductivityProfile::linear_z(p.a, p.b);
  throw std::invalid_argument("unknown profile kind '" + p.kind + "'");
}

ProfileParams named_profile(const std::string& name) {
  ProfileParams p;
  if (name == "exp_z") {
    p.kind = "exponential";
    p.lambda = {0.0, 0.0, 1.0};
  } else if (name == "exp_xyz") {
    p.kind = "exponential";
    p.lambda = {0.5, -0.3, 0.8};
  } else if (name == "constant") {
    p.kind = "constant";
    p.amplitude = 2.0;
  } else if (name == "linear_z") {
    p.kind = "linear_z";
  } else {
    throw std::invalid_argument("unknown profile '" + name +
                                "' (expected exp_z, exp_xyz, constant or linear_z)");
  }
  return p;
}

}  // namespace vlab::harness
