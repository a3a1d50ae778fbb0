#include "study.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vlab/harness/registry.hpp"

namespace vlab::harness::detail {

void set_header(CheckReport& rep, const SuiteConfig& cfg, const std::string& identity) {
  const IdentityInfo& info = find_identity(identity);
  rep.identity = identity;
  rep.anchor = info.anchor;
  rep.description = info.description;
  rep.config = cfg;
}

EvaluationSet evaluation_set(const BoxGrid& g, const SuiteConfig& cfg) {
  return EvaluationSet::standard(g, cfg.points_per_axis, cfg.margin * g.min_extent());
}

double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) {
    if (std::isnan(x)) return x;
    m = std::max(m, x);
  }
  return m;
}

void run_point_study(CheckReport& rep, const SuiteConfig& cfg, const PointStudyFn& fn,
                     const PointStudyOptions& opts) {
  std::vector<double> interior_err;
  std::vector<double> exterior_err;
  for (int r : cfg.resolutions) {
    const BoxGrid g = BoxGrid::unit_cube(r);
    const EvaluationSet pts = evaluation_set(g, cfg);
    const PointStudyResult res = fn(g, pts);
    if (res.samples.size() != pts.size()) {
      throw std::logic_error(rep.identity + ": point study returned the wrong sample count");
    }
    double scale = res.scale;
    if (scale <= 0.0) {
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts.points()[i].region == Region::interior) {
          scale = std::max(scale, std::abs(res.samples[i].expected));
        }
      }
    }
    if (scale <= 0.0) scale = 1.0;
    double ei = 0.0;
    double ee = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double rel = res.samples[i].residual / scale;
      if (pts.points()[i].region == Region::interior) ei = std::max(ei, rel);
      else ee = std::max(ee, rel);
    }
    interior_err.push_back(ei);
    exterior_err.push_back(ee);
    rep.errors.push_back({r, unit_spacing(r), ei, ee});
    if (r == cfg.resolutions.back()) {
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& p = pts.points()[i];
        const auto& s = res.samples[i];
        rep.points.push_back({p.region, p.position, s.computed, s.expected, s.residual / scale});
      }
    }
  }

  const std::string& name = opts.series;
  rep.convergence.push_back(convergence_series(name, cfg.resolutions, interior_err));
  rep.convergence.push_back(convergence_series(name + " exterior", cfg.resolutions, exterior_err));
  rep.set_metric(name + ": interior", interior_err.back());
  rep.set_metric(name + ": exterior", exterior_err.back());
  if (opts.assert_interior) {
    rep.require(name + ": interior relative error", interior_err.back(), "<=",
                cfg.tol.interior_relative);
  }
  if (opts.assert_exterior) {
    rep.require(name + ": exterior magnitude", exterior_err.back(), "<=",
                cfg.tol.exterior_absolute);
  }
  if (interior_err.size() >= 2) {
    const double ratio = interior_err[interior_err.size() - 2] / interior_err.back();
    rep.set_metric(name + ": refinement ratio", ratio);
    if (opts.assert_ratio) {
      if (opts.ratio_means_decrease) {
        rep.require(name + ": error decreases under refinement", ratio, ">", 1.0);
      } else {
        rep.require(name + ": refinement ratio", ratio, ">=", cfg.tol.refinement_ratio);
      }
    }
  }
}

ConductivityProfile require_exponential(const SuiteConfig& cfg, const std::string& identity) {
  if (cfg.profile.kind != "exponential") {
    throw std::invalid_argument(identity + " needs an exponential profile f = A exp(lambda . x); "
                                "got '" + cfg.profile.kind + "'");
  }
  const Vec3& l = cfg.profile.lambda;
  if (dot(l, l) == 0.0) {
    throw std::invalid_argument(identity + " needs lambda != 0 for a positive Schrodinger "
                                "potential");
  }
  return make_profile(cfg.profile);
}

Vec3 rotated_mu(const Vec3& lambda) {
  // Rotate by 0.6435 rad (cos = 0.8, sin = 0.6) about an axis orthogonal to lambda.
  const double len = norm(lambda);
  if (len == 0.0) return lambda;
  const Vec3 u = (1.0 / len) * lambda;
  Vec3 ref{1.0, 0.0, 0.0};
  if (std::abs(u[0]) > 0.9) ref = {0.0, 1.0, 0.0};
  Vec3 p = ref - dot(ref, u) * u;
  p = (1.0 / norm(p)) * p;
  return len * ((0.8 * u) + (0.6 * p));
}

ExactSolution conductivity_solution(const ConductivityProfile& f) {
  if (f.kind() == ProfileKind::exponential) {
    return exponential_conductivity_solution(f, rotated_mu(f.lambda()));
  }
  if (f.kind() == ProfileKind::constant) {
    return ExactSolution{
        [](const Vec3& x) { return x[0] * x[0] - x[1] * x[1] + 0.5 * x[2] + 1.0; },
        [](const Vec3& x) { return Vec3{2.0 * x[0], -2.0 * x[1], 0.5}; }};
  }
  if (auto U = f.z_solution()) return *U;
  throw std::invalid_argument("no closed-form conductivity solution for profile " + f.name());
}

std::vector<std::function<double(const Vec3&)>> random_smooth_functions(std::mt19937_64& rng,
                                                                        int count) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  std::uniform_real_distribution<double> freq(0.5, 2.5);
  std::vector<std::function<double(const Vec3&)>> out;
  for (int k = 0; k < count; ++k) {
    std::array<double, 10> c{};
    for (double& v : c) v = coef(rng);
    const Vec3 kv{freq(rng), freq(rng), freq(rng)};
    const double phase = 3.0 * coef(rng);
    out.emplace_back([c, kv, phase](const Vec3& x) {
      return c[0] + c[1] * x[0] + c[2] * x[1] + c[3] * x[2] + c[4] * x[0] * x[1] +
             c[5] * x[1] * x[2] + c[6] * x[0] * x[2] + c[7] * (x[0] * x[0] - x[2] * x[2]) +
             c[8] * std::sin(dot(kv, x) + phase) + c[9] * std::cos(kv[0] * x[0] - kv[2] * x[1]);
    });
  }
  return out;
}

}  // namespace vlab::harness::detail
