#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "vlab/pde.hpp"
#include "vlab/vekua.hpp"

using namespace vlab;

namespace {

constexpr BladeIndex e1{0b001}, e2{0b010};

const ConductivityProfile& exp_z() {
  static const ConductivityProfile f = ConductivityProfile::exponential({0, 0, 1});
  return f;
}

ScalarField exp_z_u0(const BoxGrid& g) {
  return ScalarField::sample(g, [](const Vec3& x) { return -0.5 * std::exp(-2.0 * x[2]); });
}

double constructed_residual(int r) {
  const BoxGrid g = BoxGrid::unit_cube(r);
  const BivectorConstruction b = construct_bivector_part(exp_z(), exp_z_u0(g));
  const MultivectorField w = assemble_vekua_solution(exp_z(), exp_z_u0(g), b.bivector);
  const VectorField alpha = exp_z().alpha_field(g);
  return max_abs(vekua_residual(w, alpha, Side::left)) / (max_norm(alpha) * max_norm(w));
}

}  // namespace

TEST_CASE("duality signs fixed by the algebra") {
  const DualitySigns s = duality_curl_sign();
  CHECK(s.curl == -1);
  CHECK(s.div == -1);
}

TEST_CASE("Vekua residual of trivial solutions") {
  const BoxGrid g = BoxGrid::unit_cube(16);
  auto scalar_residual = [](int r) {
    const BoxGrid gr = BoxGrid::unit_cube(r);
    const MultivectorField w = MultivectorField::from_scalar(exp_z().f_field(gr));
    return max_abs(vekua_residual(w, exp_z().alpha_field(gr), Side::left));
  };
  const double s16 = scalar_residual(16), s32 = scalar_residual(32);
  CHECK(s32 <= 1e-3);
  CHECK(s16 / s32 >= 3.5);

  const auto mono = MultivectorField::sample(g, 3, [](const Vec3& x) {
    return Multivector::blade(3, e2, x[0]) + Multivector::blade(3, e1, x[1]);
  });
  CHECK(max_abs(vekua_residual(mono, VectorField(g), Side::left)) <= 1e-12);

  const auto s = MultivectorField::sample(g, 3, [](const Vec3& x) {
    return Multivector::scalar(3, std::sin(x[0]) * x[1] + x[2]);
  });
  const VectorField a = VectorField::sample(g, [](const Vec3& x) { return Vec3{x[1], 1.0, -x[0]}; });
  const ScalarField l = vekua_residual(s, a, Side::left), r = vekua_residual(s, a, Side::right);
  CHECK(l.values == r.values);
}

TEST_CASE("Beltrami transform") {
  const BoxGrid g = BoxGrid::unit_cube(9);
  const MultivectorField w = MultivectorField::from_scalar(exp_z().f_field(g));
  const MultivectorField u = beltrami_transform(w, exp_z());
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    REQUIRE(u.value(n)[{0}] == doctest::Approx(1.0).epsilon(1e-14));
  }

  const auto mix = MultivectorField::sample(g, 3, [](const Vec3& x) {
    Multivector m(3);
    for (std::uint32_t b = 0; b < 8; ++b) m.coeffs()[b] = b + x[0];
    return m;
  });
  const MultivectorField same = beltrami_transform(mix, ConductivityProfile::constant(1.0));
  CHECK(max_norm(same - mix) == 0.0);

  const ConductivityProfile two = ConductivityProfile::constant(2.0);
  const auto we1 = MultivectorField::sample(g, 3, [](const Vec3&) { return Multivector::blade(3, e1); });
  const MultivectorField ue1 = beltrami_transform(we1, two);
  CHECK(ue1.value(0) == Multivector::blade(3, e1, 2.0));
  const BeltramiCoefficient mu = BeltramiCoefficient::from_profile(two, g);
  CHECK(mu.mu[0] == doctest::Approx(-0.6));
  CHECK(mu.max_abs() < 1.0);
}

TEST_CASE("Beltrami residual") {
  const BoxGrid g = BoxGrid::unit_cube(12);
  const BeltramiCoefficient mu = BeltramiCoefficient::from_profile(exp_z(), g);
  const auto c = MultivectorField::sample(g, 3, [](const Vec3&) {
    return Multivector::scalar(3, 1.5) + Multivector::blade(3, {0b011}, -2.0);
  });
  CHECK(max_abs(beltrami_residual(c, mu)) <= 1e-12);

  const auto u = MultivectorField::sample(g, 3, [](const Vec3& x) {
    return Multivector::scalar(3, x[0] * x[1]) + Multivector::blade(3, e2, x[2]);
  });
  const BeltramiCoefficient zero = BeltramiCoefficient::from_profile(ConductivityProfile::constant(1.0), g);
  const ScalarField r = beltrami_residual(u, zero);
  const MultivectorField du = dirac_D(u);
  for (std::size_t n : interior_nodes(g, 2)) {
    REQUIRE(r[n] == doctest::Approx(du.value(n).max_norm()).epsilon(1e-14));
  }
}

TEST_CASE("bivector part for constant u0 vanishes") {
  const BoxGrid g = BoxGrid::unit_cube(12);
  const BivectorConstruction b = construct_bivector_part(exp_z(), ScalarField(g, 3.0));
  CHECK(max_norm(b.bivector) == 0.0);
}

TEST_CASE("closed-form bivector part for the exponential profile") {
  const BoxGrid g = BoxGrid::unit_cube(12);
  const BivectorConstruction b = construct_bivector_part(exp_z(), exp_z_u0(g));
  CHECK(b.method == "closed_form");
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    const Vec3 x = g.node(n);
    const Vec3 v = b.potential[n];
    REQUIRE(v[0] == doctest::Approx(0.5 * (x[1] - 0.5)).scale(1.0));
    REQUIRE(v[1] == doctest::Approx(-0.5 * (x[0] - 0.5)).scale(1.0));
    REQUIRE(v[2] == doctest::Approx(0.0).scale(1.0));
  }
  CHECK(b.curl_residual <= 1e-12);
  CHECK(b.div_residual <= 1e-12);

  const double r16 = constructed_residual(16);
  const double r32 = constructed_residual(32);
  CHECK(r32 <= 0.03);
  CHECK(r32 < r16);
}

TEST_CASE("bivector construction rejects a non-solution") {
  const BoxGrid g = BoxGrid::unit_cube(12);
  const ScalarField bad = ScalarField::sample(g, [](const Vec3& x) { return x[2] * x[2]; });
  CHECK_THROWS_AS(construct_bivector_part(exp_z(), bad), std::invalid_argument);
}

TEST_CASE("Hodge orthogonality") {
  const BoxGrid g = BoxGrid::unit_cube(16);
  const ScalarField bump = compact_bump(g, {0.5, 0.5, 0.5}, 0.35);
  auto bump_times = [&](BladeIndex b) {
    MultivectorField v(g, 3);
    for (std::size_t n = 0; n < g.node_count(); ++n) v.at(n)[b.mask] = bump[n];
    return v;
  };

  const auto mono = MultivectorField::sample(g, 3, [](const Vec3& x) {
    return Multivector::blade(3, e2, x[0]) + Multivector::blade(3, e1, x[1]);
  });
  const MultivectorField v1 = bump_times(e1);
  CHECK(std::abs(hodge_orthogonality(mono, v1, VectorField(g))) <=
        1e-10 * l2_norm(mono) * l2_norm(dirac_D(v1)));
  CHECK(hodge_orthogonality(mono, MultivectorField(g, 3), VectorField(g)) == 0.0);

  const BoxGrid g32 = BoxGrid::unit_cube(32);
  const ScalarField u0 = solve_conductivity(exp_z().sigma_field(g32), restrict_to_boundary(exp_z_u0(g32)));
  const BivectorConstruction b = construct_bivector_part(exp_z(), u0);
  const MultivectorField w = assemble_vekua_solution(exp_z(), u0, b.bivector);
  const ScalarField bump32 = compact_bump(g32, {0.5, 0.5, 0.5}, 0.35);
  MultivectorField v2(g32, 3);
  for (std::size_t n = 0; n < g32.node_count(); ++n) v2.at(n)[e2.mask] = bump32[n];
  const VectorField alpha = exp_z().alpha_field(g32);
  const double ip = hodge_orthogonality(w, v2, alpha);
  CHECK(std::abs(ip) / (l2_norm(w) * l2_norm(v2)) <= 0.01);

  MultivectorField edge(g, 3);
  edge.at(g.index(1, 5, 5))[0] = 1.0;
  CHECK_THROWS_AS(hodge_orthogonality(mono, edge, VectorField(g)), std::invalid_argument);
}
