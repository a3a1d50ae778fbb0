#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "study.hpp"
#include "vlab/fields.hpp"
#include "vlab/harness/checks.hpp"
#include "vlab/integral_ops.hpp"
#include "vlab/kernels.hpp"
#include "vlab/parallel.hpp"
#include "vlab/pde.hpp"
#include "vlab/vekua.hpp"

namespace vlab::harness {

using detail::PointSample;
using detail::PointStudyResult;

namespace {

double boundary_sum(const std::vector<BoundarySample>& samples,
                    const std::function<double(const BoundarySample&)>& term) {
  std::vector<double> t(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) t[i] = term(samples[i]) * samples[i].weight;
  return pairwise_sum(t);
}

PointSample sample(double computed, double expected) {
  return {computed, expected, std::abs(computed - expected)};
}

double expected_at(const EvalPoint& p, double inside) {
  return p.region == Region::interior ? inside : 0.0;
}

Multivector scalar_bp_field(const Vec3& x) {
  Multivector m(3);
  m.coeffs()[0] = 1.0 + x[0] * x[1] + 0.5 * std::sin(2.0 * x[2]);
  m[generator(2)] = x[0] * x[0];
  m[BladeIndex{0b101}] = std::sin(x[2]);
  m[BladeIndex{0b111}] = x[1];
  return m;
}

void scalar_bp(CheckReport& rep, const SuiteConfig& cfg) {
  const ConductivityProfile f = detail::require_exponential(cfg, "scalar_bp");
  const Vec3 lam = f.lambda();
  rep.norms = "|Sc(boundary - volume) - expected| / max interior |v0|";

  detail::PointStudyOptions opts;
  opts.series = "kernel grad theta - lambda theta";
  detail::run_point_study(
      rep, cfg,
      [&](const BoxGrid& g, const EvaluationSet& pts) {
        const MultivectorField v = MultivectorField::sample(g, 3, scalar_bp_field);
        const MultivectorField a = MultivectorField::from_vector(f.alpha_field(g));
        const MultivectorField rho = dirac_D(v) - multiply(a, conjugate(v));
        const CellQuadrature vol(rho);
        const BoundaryTrace tr = trace_from_function(boundary_sampling(g), 3, scalar_bp_field);
        const KernelSpec k = KernelSpec::vekua_phi(lam);
        PointStudyResult out;
        out.samples.resize(pts.size());
        parallel_for(pts.size(), [&](std::size_t i) {
          const Vec3 x = pts.points()[i].position;
          const double b = scalar_part(cauchy_boundary(k, tr, x));
          const double t = scalar_part(
              vol.vector_kernel(x, [&](const Vec3& d) { return vekua_phi3(d, lam); }));
          out.samples[i] = sample(b - t, expected_at(pts.points()[i], scalar_bp_field(x)[{0}]));
        });
        return out;
      },
      opts);

  opts.series = "kernel E/f";
  detail::run_point_study(
      rep, cfg,
      [&](const BoxGrid& g, const EvaluationSet& pts) {
        const MultivectorField v = MultivectorField::sample(g, 3, scalar_bp_field);
        const MultivectorField a = MultivectorField::from_vector(f.alpha_field(g));
        ScalarField inv = f.f_field(g);
        for (double& s : inv.values) s = 1.0 / s;
        const MultivectorField rho = scale(dirac_D(v) - multiply(conjugate(v), a), inv);
        const CellQuadrature vol(rho);
        const BoundaryTrace tr =
            trace_from_function(boundary_sampling(g), 3, [&](const Vec3& y) {
              return (1.0 / f.value(y)) * scalar_bp_field(y);
            });
        PointStudyResult out;
        out.samples.resize(pts.size());
        parallel_for(pts.size(), [&](std::size_t i) {
          const Vec3 x = pts.points()[i].position;
          const double b = scalar_part(cauchy_boundary(KernelSpec::cauchy(), tr, x));
          const double t = scalar_part(vol.vector_kernel(x, [](const Vec3& d) {
            return cauchy_E3(d);
          }));
          out.samples[i] =
              sample(b - t, expected_at(pts.points()[i], scalar_bp_field(x)[{0}] / f.value(x)));
        });
        return out;
      },
      opts);
}

void cauchy_vekua(CheckReport& rep, const SuiteConfig& cfg) {
  const ConductivityProfile f = detail::require_exponential(cfg, "cauchy_vekua");
  const Vec3 lam = f.lambda();
  const KernelSpec k = KernelSpec::vekua_phi(lam);
  rep.norms = "|Sc int Phi(y-x) eta w ds - expected| / max interior |w0|";

  auto run = [&](const std::string& series,
                 const std::function<MultivectorField(const BoxGrid&)>& make_w,
                 const std::function<double(const Vec3&)>& w0) {
    detail::PointStudyOptions opts;
    opts.series = series;
    detail::run_point_study(
        rep, cfg,
        [&](const BoxGrid& g, const EvaluationSet& pts) {
          const BoundaryTrace tr = trace_from_field(boundary_sampling(g), make_w(g));
          PointStudyResult out;
          out.samples.resize(pts.size());
          parallel_for(pts.size(), [&](std::size_t i) {
            const Vec3 x = pts.points()[i].position;
            out.samples[i] = sample(scalar_part(cauchy_boundary(k, tr, x)),
                                    expected_at(pts.points()[i], w0(x)));
          });
          return out;
        },
        opts);
  };

  run(
      "w = f",
      [&](const BoxGrid& g) { return MultivectorField::from_scalar(f.f_field(g)); },
      [&](const Vec3& x) { return f.value(x); });

  const auto U = f.depends_only_on_z() ? f.z_solution() : std::nullopt;
  if (!U) {
    rep.recorded["constructed_solution"] = "skipped: lambda not parallel to e3";
    return;
  }
  run(
      "w = f u0 + B",
      [&](const BoxGrid& g) {
        const ScalarField u0 = solve_conductivity(f.sigma_field(g), sample_trace(g, U->value));
        const BivectorConstruction b = construct_bivector_part(f, u0);
        return assemble_vekua_solution(f, u0, b.bivector);
      },
      [&](const Vec3& x) { return f.value(x) * U->value(x); });
}

void green_vekua(CheckReport& rep, const SuiteConfig& cfg) {
  const ConductivityProfile f = detail::require_exponential(cfg, "green_vekua");
  const Vec3 lam = f.lambda();
  const double q = dot(lam, lam);
  const ExactSolution u0 = detail::conductivity_solution(f);
  auto w0 = [&](const Vec3& x) { return f.value(x) * u0.value(x); };
  rep.norms = "|left side - w0(x) or 0| / max interior |w0|";

  detail::PointStudyOptions opts;
  opts.series = "strong flux";
  detail::run_point_study(
      rep, cfg,
      [&](const BoxGrid& g, const EvaluationSet& pts) {
        const auto samples = boundary_sampling(g);
        PointStudyResult out;
        out.samples.resize(pts.size());
        parallel_for(pts.size(), [&](std::size_t i) {
          const Vec3 x = pts.points()[i].position;
          const double v = boundary_sum(samples, [&](const BoundarySample& s) {
            const Vec3 d = s.position - x;
            const double fy = f.value(s.position);
            const double phi0 = yukawa_theta(d, q).value / fy;
            return -dot(vekua_phi3(d, lam), s.normal) * w0(s.position) +
                   phi0 * fy * fy * dot(u0.gradient(s.position), s.normal);
          });
          out.samples[i] = sample(v, expected_at(pts.points()[i], w0(x)));
        });
        return out;
      },
      opts);

  opts.series = "weak DtN pairing";
  detail::run_point_study(
      rep, cfg,
      [&](const BoxGrid& g, const EvaluationSet& pts) {
        const auto samples = boundary_sampling(g);
        const DtnForm dtn = DtnForm::conductivity(f, g);
        const ScalarField uh = dtn.solve(sample_trace(g, u0.value));
        PointStudyResult out;
        out.samples.resize(pts.size());
        parallel_for(pts.size(), [&](std::size_t i) {
          const Vec3 x = pts.points()[i].position;
          const double b = boundary_sum(samples, [&](const BoundarySample& s) {
            return -dot(vekua_phi3(s.position - x, lam), s.normal) * w0(s.position);
          });
          const Trace phi0 = sample_trace(
              g, [&](const Vec3& y) { return yukawa_theta(y - x, q).value / f.value(y); });
          const double p = dtn.pair_solved(uh, phi0, Extension::multilinear);
          out.samples[i] = sample(b + p, expected_at(pts.points()[i], w0(x)));
        });
        return out;
      },
      opts);
}

void integral_cauchy(CheckReport& rep, const SuiteConfig& cfg) {
  const ConductivityProfile f = make_profile(cfg.profile);
  const ExactSolution u0 = detail::conductivity_solution(f);
  rep.norms = "|left side - u0(x) or 0| / max interior |u0|";

  auto volume_density = [&](const BoxGrid& g, const ScalarField& u) {
    const VectorField a = f.alpha_field(g);
    const VectorField gu = gradient(u);
    ScalarField rho(g);
    for (std::size_t n = 0; n < g.node_count(); ++n) rho[n] = 2.0 * dot(a[n], gu[n]);
    return rho;
  };
  auto newton = [](const Vec3& d) { return newton_N3(d).value; };

  detail::PointStudyOptions opts;
  opts.series = "strong flux";
  detail::run_point_study(
      rep, cfg,
      [&](const BoxGrid& g, const EvaluationSet& pts) {
        const auto samples = boundary_sampling(g);
        const ScalarField uh = solve_conductivity(f.sigma_field(g), sample_trace(g, u0.value));
        const CellQuadrature vol(volume_density(g, uh));
        PointStudyResult out;
        out.samples.resize(pts.size());
        parallel_for(pts.size(), [&](std::size_t i) {
          const Vec3 x = pts.points()[i].position;
          const double b = boundary_sum(samples, [&](const BoundarySample& s) {
            const Vec3 d = s.position - x;
            return -dot(cauchy_E3(d), s.normal) * u0.value(s.position) +
                   newton_N3(d).value * dot(u0.gradient(s.position), s.normal);
          });
          const double v = scalar_part(vol.scalar_kernel(x, newton));
          out.samples[i] = sample(b + v, expected_at(pts.points()[i], u0.value(x)));
        });
        return out;
      },
      opts);

  opts.series = "weak DtN pairing";
  detail::run_point_study(
      rep, cfg,
      [&](const BoxGrid& g, const EvaluationSet& pts) {
        const auto samples = boundary_sampling(g);
        const DtnForm dtn = DtnForm::conductivity(f, g);
        const ScalarField uh = dtn.solve(sample_trace(g, u0.value));
        const CellQuadrature vol(volume_density(g, uh));
        PointStudyResult out;
        out.samples.resize(pts.size());
        parallel_for(pts.size(), [&](std::size_t i) {
          const Vec3 x = pts.points()[i].position;
          const double b = boundary_sum(samples, [&](const BoundarySample& s) {
            return -dot(cauchy_E3(s.position - x), s.normal) * u0.value(s.position);
          });
          const Trace psi = sample_trace(g, [&](const Vec3& y) {
            const double fy = f.value(y);
            return newton_N3(y - x).value / (fy * fy);
          });
          const double p = dtn.pair_solved(uh, psi, Extension::multilinear);
          const double v = scalar_part(vol.scalar_kernel(x, newton));
          out.samples[i] = sample(b + p + v, expected_at(pts.points()[i], u0.value(x)));
        });
        return out;
      },
      opts);
}

void schrodinger_reconstruction(CheckReport& rep, const SuiteConfig& cfg) {
  const ConductivityProfile f = detail::require_exponential(cfg, "schrodinger_reconstruction");
  const double q = dot(f.lambda(), f.lambda());
  const ExactSolution u0 = detail::conductivity_solution(f);
  auto w0 = [&](const Vec3& x) { return f.value(x) * u0.value(x); };
  rep.norms = "|left side - w0(x) or 0| / max interior |w0|";
  rep.recorded["q"] = q;

  detail::PointStudyOptions opts;
  opts.series = "weak DtN pairing";
  detail::run_point_study(
      rep, cfg,
      [&](const BoxGrid& g, const EvaluationSet& pts) {
        const auto samples = boundary_sampling(g);
        const DtnForm dtn = DtnForm::schrodinger(f, g);
        const ScalarField wh = dtn.solve(sample_trace(g, w0));
        PointStudyResult out;
        out.samples.resize(pts.size());
        parallel_for(pts.size(), [&](std::size_t i) {
          const Vec3 x = pts.points()[i].position;
          const double b = boundary_sum(samples, [&](const BoundarySample& s) {
            return -dot(yukawa_theta(s.position - x, q).gradient, s.normal) * w0(s.position);
          });
          const Trace theta =
              sample_trace(g, [&](const Vec3& y) { return yukawa_theta(y - x, q).value; });
          const double p = dtn.pair_solved(wh, theta, Extension::multilinear);
          out.samples[i] = sample(b + p, expected_at(pts.points()[i], w0(x)));
        });
        return out;
      },
      opts);
}

}  // namespace

CheckReport check_reconstruction(const std::string& id, const SuiteConfig& cfg) {
  CheckReport rep;
  detail::set_header(rep, cfg, id);
  if (id == "scalar_bp") scalar_bp(rep, cfg);
  else if (id == "cauchy_vekua") cauchy_vekua(rep, cfg);
  else if (id == "green_vekua") green_vekua(rep, cfg);
  else if (id == "integral_cauchy") integral_cauchy(rep, cfg);
  else if (id == "schrodinger_reconstruction") schrodinger_reconstruction(rep, cfg);
  else throw std::invalid_argument("not a reconstruction identity: " + id);
  return rep;
}

}  // namespace vlab::harness
