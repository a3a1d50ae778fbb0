#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "vlab/pde.hpp"
#include "vlab/vekua.hpp"

using namespace vlab;

namespace {

const ConductivityProfile& exp_z() {
  static const ConductivityProfile f = ConductivityProfile::exponential({0, 0, 1});
  return f;
}

double max_diff(const ScalarField& u, const std::function<double(const Vec3&)>& exact) {
  double e = 0.0;
  for (std::size_t n = 0; n < u.values.size(); ++n) e = std::max(e, std::abs(u[n] - exact(u.grid.node(n))));
  return e;
}

double x1(const Vec3& x) { return x[0]; }

/// |m_q(w0)(psi) - int (lap f / f) w0 psi| relative to the oracle.
double mq_error(int r) {
  const ConductivityProfile f = ConductivityProfile::exponential({0.3, 0.0, 0.9});
  const BoxGrid g = BoxGrid::unit_cube(r);
  const ScalarField w0 = ScalarField::sample(g, [](const Vec3& x) { return std::cos(x[0]) + x[1] * x[2]; });
  const ScalarField psi = compact_bump(g, {0.5, 0.5, 0.5}, 0.35);
  ScalarField integrand(g);
  for (std::size_t n = 0; n < g.node_count(); ++n) integrand[n] = f.q(g.node(n)) * w0[n] * psi[n];
  const double oracle = integrate(integrand);
  return std::abs(mq_product(f, w0, psi) - oracle) / std::abs(oracle);
}

}  // namespace

TEST_CASE("conductivity solves reproduce exact solutions") {
  const BoxGrid g = BoxGrid::unit_cube(12);
  const ScalarField u = solve_conductivity(ScalarField(g, 1.0), sample_trace(g, x1));
  CHECK(max_diff(u, x1) <= 1e-9);

  const ScalarField c = solve_conductivity(exp_z().sigma_field(g), Trace(g.boundary_nodes().size(), 0.7));
  CHECK(max_diff(c, [](const Vec3&) { return 0.7; }) <= 1e-12);

  const BoxGrid g32 = BoxGrid::unit_cube(32);
  auto U = [](const Vec3& x) { return -0.5 * std::exp(-2.0 * x[2]); };
  SolveStats stats;
  const ScalarField s = solve_conductivity(exp_z().sigma_field(g32), sample_trace(g32, U), &stats);
  CHECK(max_diff(s, U) <= 0.02 * 0.5);
  CHECK(stats.relative_residual <= 1e-12);

  ScalarField neg(g, 1.0);
  neg[g.index(4, 4, 4)] = -1.0;
  CHECK_THROWS_AS(solve_conductivity(neg, sample_trace(g, x1)), std::invalid_argument);
}

TEST_CASE("Schrodinger solves") {
  const BoxGrid g = BoxGrid::unit_cube(12);
  const ScalarField w = solve_schrodinger(ScalarField(g, 0.0), sample_trace(g, x1));
  CHECK(max_diff(w, x1) <= 1e-9);

  const Vec3 lambda{0.5, -0.3, 0.8};
  const BoxGrid g32 = BoxGrid::unit_cube(32);
  auto e = [&](const Vec3& x) { return std::exp(dot(lambda, x)); };
  const ScalarField sol = solve_schrodinger(ScalarField(g32, dot(lambda, lambda)), sample_trace(g32, e));
  CHECK(max_diff(sol, e) <= 0.02 * std::exp(1.3));

  ScalarField neg(g, 0.0);
  neg[g.index(3, 3, 3)] = -0.5;
  CHECK_THROWS_AS(solve_schrodinger(neg, sample_trace(g, x1)), std::invalid_argument);
}

TEST_CASE("Schrodinger solution divided by f solves the conductivity problem") {
  const ConductivityProfile f = ConductivityProfile::separable_z(
      "quadratic", [](double z) { return 1.0 + z * z; }, [](double z) { return 2.0 * z; },
      [](double) { return 2.0; });
  auto gap = [&](int r) {
    const BoxGrid g = BoxGrid::unit_cube(r);
    const ScalarField w0 =
        solve_schrodinger(f, g, sample_trace(g, [](const Vec3& x) { return std::cos(x[0]) + x[2]; }));
    const ScalarField fv = f.f_field(g);
    ScalarField s(g);
    for (std::size_t n = 0; n < g.node_count(); ++n) s[n] = w0[n] / fv[n];
    const ScalarField u = solve_conductivity(f.sigma_field(g), restrict_to_boundary(s));
    double d = 0.0;
    for (std::size_t n = 0; n < g.node_count(); ++n) d = std::max(d, std::abs(u[n] - s[n]));
    return d / max_abs(s);
  };
  const double r16 = gap(16), r32 = gap(32);
  CHECK(r32 <= 1e-3);
  CHECK(r16 / r32 >= 3.0);
}

TEST_CASE("Dirichlet problem accepts conductivity-type potentials only") {
  const BoxGrid g = BoxGrid::unit_cube(10);
  const Trace t = sample_trace(g, x1);
  ScalarField zero_at_node(g, 1.0);
  zero_at_node[g.index(5, 5, 5)] = 0.0;
  const ConductivityProfile bad = ConductivityProfile::sampled(zero_at_node);
  CHECK_THROWS_AS(DirichletProblem::schrodinger(bad, g, t), std::invalid_argument);
  CHECK_THROWS_AS(DirichletProblem::conductivity(bad, g, t), std::invalid_argument);
  const DirichletProblem p = DirichletProblem::schrodinger(exp_z(), g, t);
  CHECK(p.kind == ProblemKind::schrodinger);
  CHECK(p.solve().values.size() == g.node_count());
}

TEST_CASE("DtN pairings") {
  const BoxGrid g = BoxGrid::unit_cube(12);
  const DtnForm one = DtnForm::conductivity(ScalarField(g, 1.0));
  const Trace t1 = sample_trace(g, x1);
  CHECK(dtn_pair(one, t1, t1) == doctest::Approx(1.0).epsilon(1e-9));

  const DtnForm cond = DtnForm::conductivity(exp_z(), g);
  const Trace ones(g.boundary_nodes().size(), 1.0);
  const Trace psi = sample_trace(g, [](const Vec3& x) { return std::sin(2 * x[1]) + x[0] * x[2]; });
  const double scale = std::abs(dtn_pair(cond, psi, psi));
  CHECK(std::abs(dtn_pair(cond, ones, psi)) <= 1e-8 * scale);
  CHECK(std::abs(dtn_pair(cond, psi, ones)) <= 1e-8 * scale);
  const double a = dtn_pair(cond, t1, psi), b = dtn_pair(cond, psi, t1);
  CHECK(std::abs(a - b) <= 1e-8 * scale);
  const double m = dtn_pair(cond, t1, psi, Extension::multilinear);
  const double z = dtn_pair(cond, t1, psi, Extension::zero_interior);
  CHECK(std::abs(a - m) <= 1e-8 * scale);
  CHECK(std::abs(a - z) <= 1e-8 * scale);
}

TEST_CASE("Schrodinger DtN pairing matches the closed-form flux") {
  const Vec3 lambda{0.5, -0.3, 0.8};
  const BoxGrid g = BoxGrid::unit_cube(32);
  auto e = [&](const Vec3& x) { return std::exp(dot(lambda, x)); };
  const DtnForm form = DtnForm::schrodinger(ScalarField(g, dot(lambda, lambda)));
  const Trace phi = sample_trace(g, e);
  const Trace psi = sample_trace(g, [](const Vec3& x) { return 1.0 + x[0] * x[1] - x[2]; });
  const double flux = boundary_integral(g, phi, psi, [&](const Vec3&, const Vec3& n) { return dot(lambda, n); });
  CHECK(std::abs(dtn_pair(form, phi, psi) - flux) <= 0.03 * std::abs(flux));
}

TEST_CASE("conductivity-Schrodinger DtN relation") {
  const BoxGrid g = BoxGrid::unit_cube(12);
  const Trace t1 = sample_trace(g, x1);
  CHECK(dtn_relation_residual(ConductivityProfile::constant(2.0), g, t1, t1) <= 1e-9);
  CHECK(dtn_relation_residual(exp_z(), g, Trace(t1.size(), 0.0), t1) == 0.0);

  auto rel = [](int r) {
    const BoxGrid gr = BoxGrid::unit_cube(r);
    const Trace t = sample_trace(gr, x1);
    return dtn_relation_residual(exp_z(), gr, t, t);
  };
  const double r16 = rel(16), r32 = rel(32);
  CHECK(r32 <= 0.05);
  CHECK(r32 < r16);
}

TEST_CASE("weak potential product") {
  const BoxGrid g = BoxGrid::unit_cube(12);
  const ScalarField w0 = ScalarField::sample(g, [](const Vec3& x) { return 1.0 + x[0]; });
  const ScalarField psi = compact_bump(g, {0.5, 0.5, 0.5}, 0.3);
  CHECK(mq_product(ConductivityProfile::constant(3.0), w0, psi) == 0.0);
  CHECK(mq_product(exp_z(), w0, ScalarField(g, 0.0)) == 0.0);

  const double e16 = mq_error(16), e32 = mq_error(32);
  CHECK(e32 <= 0.01);
  CHECK(e16 / e32 >= 3.0);

  CHECK_THROWS_AS(mq_product(exp_z(), w0, ScalarField(g, 1.0)), std::invalid_argument);
}

TEST_CASE("trace and matrix CSV output") {
  const BoxGrid g = BoxGrid::unit_cube(8);
  std::ostringstream ts, ms;
  write_trace_csv(g, sample_trace(g, x1), ts);
  write_matrix_csv({{1.0, 2.0}, {2.0, 3.0}}, ms);
  std::size_t lines = 0;
  for (char c : ts.str()) lines += c == '\n';
  CHECK(lines == g.boundary_nodes().size() + 1);
  CHECK(ms.str().find("2") != std::string::npos);
  CHECK(boundary_face(g, g.index(0, 3, 3)) == 0);
  CHECK(boundary_face(g, g.index(7, 3, 3)) == 1);
  CHECK(boundary_face(g, g.index(3, 3, 7)) == 5);
}
