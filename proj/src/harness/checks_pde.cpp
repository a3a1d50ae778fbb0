#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "study.hpp"
#include "vlab/fields.hpp"
#include "vlab/harness/checks.hpp"
#include "vlab/integral_ops.hpp"
#include "vlab/kernels.hpp"
#include "vlab/pde.hpp"
#include "vlab/vekua.hpp"

namespace vlab::harness {

namespace {

using Matrix = std::vector<std::vector<double>>;

double max_entry(const Matrix& m) {
  double v = 0.0;
  for (const auto& row : m) {
    for (double x : row) v = std::max(v, std::abs(x));
  }
  return v;
}

double asymmetry(const Matrix& m) {
  double v = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) v = std::max(v, std::abs(m[i][j] - m[j][i]));
  }
  return v / max_entry(m);
}

std::vector<Trace> random_traces(const BoxGrid& g, std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<Trace> out;
  for (const auto& fn : detail::random_smooth_functions(rng, count)) {
    out.push_back(sample_trace(g, fn));
  }
  return out;
}

}  // namespace

CheckReport check_dtn_properties(const SuiteConfig& cfg) {
  CheckReport rep;
  detail::set_header(rep, cfg, "dtn_properties");
  rep.norms = "pairing discrepancies relative to the largest Gram-matrix entry; relation residual "
              "|c - s + b| / max(|c|, |s|, |b|)";
  const ConductivityProfile f = make_profile(cfg.profile);

  double sym_c = 0.0, sym_s = 0.0, constants = 0.0, ext = 0.0;
  std::vector<double> relation;
  for (int r : cfg.resolutions) {
    const BoxGrid g = BoxGrid::unit_cube(r);
    const std::vector<Trace> basis = random_traces(g, cfg.seed, 6);
    const DtnForm cond = DtnForm::conductivity(f, g);
    const DtnForm schr = DtnForm::schrodinger(f, g);
    const Matrix mc = cond.matrix(basis);
    const Matrix ms = schr.matrix(basis);
    sym_c = std::max(sym_c, asymmetry(mc));
    sym_s = std::max(sym_s, asymmetry(ms));

    const double scale = max_entry(mc);
    const Trace one(g.boundary_nodes().size(), 1.0);
    const ScalarField u_one = cond.solve(one);
    for (const auto& b : basis) {
      constants = std::max(constants, std::abs(cond.pair_solved(u_one, b)) / scale);
      constants = std::max(constants, std::abs(cond.pair(b, one)) / scale);
    }

    for (std::size_t k = 0; k + 1 < basis.size(); k += 2) {
      const ScalarField u = cond.solve(basis[k]);
      const double ph = cond.pair_solved(u, basis[k + 1], Extension::harmonic);
      const double pm = cond.pair_solved(u, basis[k + 1], Extension::multilinear);
      const double pz = cond.pair_solved(u, basis[k + 1], Extension::zero_interior);
      ext = std::max({ext, std::abs(ph - pm) / scale, std::abs(ph - pz) / scale});
    }

    const Trace x1 = sample_trace(g, [](const Vec3& x) { return x[0]; });
    double rel = dtn_relation_residual(f, g, x1, x1);
    rel = std::max(rel, dtn_relation_residual(f, g, basis[0], basis[1]));
    rel = std::max(rel, dtn_relation_residual(f, g, basis[2], basis[2]));
    relation.push_back(rel);
    rep.errors.push_back({r, unit_spacing(r), rel, 0.0});
  }
  rep.convergence.push_back(convergence_series("D-N relation residual", cfg.resolutions, relation));

  const BoxGrid gf = BoxGrid::unit_cube(cfg.resolutions.back());
  const std::vector<Trace> basis = random_traces(gf, cfg.seed, 2);
  const double rel_const =
      dtn_relation_residual(ConductivityProfile::constant(2.0), gf, basis[0], basis[1]);

  // f = 1 with the harmonic input e^{s x1} cos(s x2) to the Schrodinger solver.
  const double s = 1.0;
  auto cgo = [s](const Vec3& x) { return std::exp(s * x[0]) * std::cos(s * x[1]); };
  std::vector<double> cgo_err;
  for (int r : cfg.resolutions) {
    const BoxGrid g = BoxGrid::unit_cube(r);
    const ScalarField w = solve_schrodinger(ScalarField(g, 0.0), sample_trace(g, cgo));
    double e = 0.0, m = 0.0;
    for (std::size_t n = 0; n < g.node_count(); ++n) {
      e = std::max(e, std::abs(w[n] - cgo(g.node(n))));
      m = std::max(m, std::abs(cgo(g.node(n))));
    }
    cgo_err.push_back(e / m);
  }
  rep.convergence.push_back(convergence_series("harmonic exponential smoke", cfg.resolutions,
                                               cgo_err));

  double mq_rel = 0.0;
  {
    const ScalarField w0 = solve_schrodinger(f, gf, sample_trace(gf, [&](const Vec3& x) {
      return f.value(x) * detail::conductivity_solution(f).value(x);
    }));
    const ScalarField psi = compact_bump(gf, {0.5, 0.5, 0.5}, 0.35);
    const double mq = mq_product(f, w0, psi);
    const ScalarField qf = f.q_field(gf);
    ScalarField dens(gf);
    for (std::size_t n = 0; n < gf.node_count(); ++n) dens[n] = qf[n] * w0[n] * psi[n];
    const double ref = integrate(dens);
    mq_rel = std::abs(mq - ref) / std::max(std::abs(ref), 1e-300);
    rep.recorded["weak_product"] = {{"m_q", mq}, {"integral_q_w0_psi", ref}};
    if (ref == 0.0) mq_rel = std::abs(mq);
  }

  rep.set_metric("conductivity asymmetry", sym_c);
  rep.set_metric("schrodinger asymmetry", sym_s);
  rep.set_metric("constant annihilation", constants);
  rep.set_metric("extension dependence", ext);
  rep.set_metric("D-N relation residual", relation.back());
  rep.set_metric("D-N relation residual, constant f", rel_const);
  rep.set_metric("harmonic exponential smoke error", cgo_err.back());
  rep.set_metric("weak product relative error", mq_rel);

  rep.require("conductivity pairing symmetric", sym_c, "<=", 1e-8);
  rep.require("schrodinger pairing symmetric", sym_s, "<=", 1e-8);
  rep.require("constants annihilated", constants, "<=", 1e-8);
  rep.require("pairing independent of extension", ext, "<=", 1e-8);
  rep.require("D-N relation residual", relation.back(), "<=", cfg.tol.interior_relative);
  rep.require("D-N relation, constant f", rel_const, "<=", 1e-9);
  rep.require("harmonic exponential smoke error", cgo_err.back(), "<=", 1e-3);
  rep.require("weak product vs int q w0 psi", mq_rel, "<=", cfg.tol.interior_relative);
  if (relation.size() >= 2) {
    rep.require("D-N relation improves under refinement",
                relation[relation.size() - 2] / relation.back(), ">", 1.0);
  }
  return rep;
}

CheckReport check_difference_identities(const SuiteConfig& cfg) {
  CheckReport rep;
  detail::set_header(rep, cfg, "difference_identities");
  rep.norms = "absolute values relative to max |w_{0,f}|; falsification gap relative to the largest "
              "Gram-matrix entry";
  const ConductivityProfile f = detail::require_exponential(cfg, "difference_identities");
  const BoxGrid g = BoxGrid::unit_cube(cfg.resolutions.back());
  const EvaluationSet pts = detail::evaluation_set(g, cfg);
  const ExactSolution u0 = detail::conductivity_solution(f);
  const Trace phi0 = sample_trace(g, [&](const Vec3& x) { return f.value(x) * u0.value(x); });

  struct Arm {
    double identity = 0.0;  // max over points of both sides of the potential identity
    double newton = 0.0;
    Json points = Json::array();
  };
  auto evaluate = [&](const ConductivityProfile& p, const ConductivityProfile& q) {
    const double qf = dot(p.lambda(), p.lambda());
    const double qg = dot(q.lambda(), q.lambda());
    const ScalarField wf = solve_schrodinger(p, g, phi0);
    const ScalarField wg = solve_schrodinger(q, g, phi0);
    const double scale = max_abs(wf);
    const ScalarField qpf = p.q_field(g);
    const ScalarField qpg = q.q_field(g);
    ScalarField d1(g), d2(g), uf(g), ug(g);
    for (std::size_t n = 0; n < g.node_count(); ++n) {
      d1[n] = (qpg[n] - qpf[n]) * wf[n];
      d2[n] = (qpg[n] - qpf[n]) * wg[n];
      uf[n] = wf[n] / p.value(g.node(n));
      ug[n] = wg[n] / q.value(g.node(n));
    }
    const VectorField af = p.alpha_field(g);
    const VectorField ag = q.alpha_field(g);
    const VectorField guf = gradient(uf);
    const VectorField gug = gradient(ug);
    ScalarField rho(g);
    for (std::size_t n = 0; n < g.node_count(); ++n) {
      rho[n] = dot(af[n], guf[n]) - dot(ag[n], gug[n]);
    }
    const CellQuadrature c1(d1), c2(d2), cr(rho);
    Arm arm;
    for (const auto& pt : pts.points()) {
      const Vec3 x = pt.position;
      const bool in = pt.region == Region::interior;
      const double l1 = scalar_part(
          c1.scalar_kernel(x, [qg](const Vec3& d) { return yukawa_theta(d, qg).value; }));
      const double l2 = scalar_part(
          c2.scalar_kernel(x, [qf](const Vec3& d) { return yukawa_theta(d, qf).value; }));
      const double rhs = in ? interpolate(wf, x) - interpolate(wg, x) : 0.0;
      const double np =
          2.0 * scalar_part(cr.scalar_kernel(x, [](const Vec3& d) { return newton_N3(d).value; }));
      const double nr = in ? interpolate(uf, x) - interpolate(ug, x) : 0.0;
      arm.identity = std::max({arm.identity, std::abs(l1), std::abs(l2), std::abs(rhs)});
      arm.newton = std::max({arm.newton, std::abs(np), std::abs(nr)});
      arm.points.push_back({{"region", in ? "interior" : "exterior"},
                            {"position", {x[0], x[1], x[2]}},
                            {"potential_lhs_theta_g", l1},
                            {"potential_lhs_theta_f", l2},
                            {"potential_rhs", rhs},
                            {"newton_lhs", np},
                            {"newton_rhs", nr}});
    }
    arm.identity /= scale;
    arm.newton /= scale;
    return arm;
  };

  const Arm trivial = evaluate(f, f);
  rep.set_metric("trivial arm: potential identity sides", trivial.identity);
  rep.set_metric("trivial arm: newton identity sides", trivial.newton);
  rep.require("trivial arm g = f: both sides of the potential identity vanish", trivial.identity,
              "<=", 1e-12);
  rep.require("trivial arm g = f: both sides of the newton identity vanish", trivial.newton, "<=",
              1e-12);

  const Vec3 lg = 1.5 * f.lambda();
  const ConductivityProfile gprof = ConductivityProfile::exponential(lg, cfg.profile.amplitude);
  const std::vector<Trace> basis = random_traces(g, cfg.seed, 10);
  const Matrix mf = DtnForm::conductivity(f, g).matrix(basis);
  const Matrix mg = DtnForm::conductivity(gprof, g).matrix(basis);
  double gap = 0.0;
  for (std::size_t i = 0; i < mf.size(); ++i) {
    for (std::size_t j = 0; j < mf.size(); ++j) gap = std::max(gap, std::abs(mf[i][j] - mg[i][j]));
  }
  const double rel_gap = gap / max_entry(mf);
  const double solver_tol = SolverOptions{}.relative_tolerance;
  rep.set_metric("falsification: max |pair_f - pair_g|", gap);
  rep.set_metric("falsification: relative DtN discrepancy", rel_gap);
  rep.require("falsification: DtN discrepancy exceeds 10x solver tolerance", rel_gap, ">",
              10.0 * solver_tol);

  const Arm broken = evaluate(f, gprof);
  rep.recorded["falsification"] = {{"g_lambda", {lg[0], lg[1], lg[2]}},
                                   {"traces", basis.size()},
                                   {"max_abs_pair_gap", gap},
                                   {"relative_pair_gap", rel_gap},
                                   {"solver_relative_tolerance", solver_tol},
                                   {"potential_identity_max_side", broken.identity},
                                   {"newton_identity_max_side", broken.newton},
                                   {"points", broken.points}};
  rep.recorded["trivial_arm_points"] = trivial.points;
  return rep;
}

}  // namespace vlab::harness
