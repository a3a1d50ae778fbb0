#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "vlab/fields.hpp"

using namespace vlab;

namespace {

constexpr BladeIndex e1{0b001}, e2{0b010};

double max_coeff_interior(const MultivectorField& w, int layers = 1) {
  return max_norm(w, interior_nodes(w.grid(), layers));
}

}  // namespace

TEST_CASE("Dirac operator on linear fields") {
  const BoxGrid g = BoxGrid::unit_cube(12);
  const auto mono = MultivectorField::sample(g, 3, [](const Vec3& x) {
    return Multivector::blade(3, e2, x[0]) + Multivector::blade(3, e1, x[1]);
  });
  CHECK(max_norm(dirac_D(mono)) <= 1e-12);

  const auto x1 = MultivectorField::sample(g, 3, [](const Vec3& x) {
    return Multivector::scalar(3, x[0]);
  });
  const MultivectorField d = dirac_D(x1);
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    REQUIRE(d.value(n)[e1] == doctest::Approx(1.0).epsilon(1e-12));
  }

  const auto x1e1 = MultivectorField::sample(g, 3, [](const Vec3& x) {
    return Multivector::blade(3, e1, x[0]);
  });
  const ScalarField sc = scalar_part(dirac_D(x1e1));
  for (double v : sc.values) REQUIRE(v == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("Dirac squared is minus the Laplacian on quadratics") {
  const BoxGrid g = BoxGrid::unit_cube(10);
  const auto w = MultivectorField::sample(g, 3, [](const Vec3& x) {
    return Multivector::scalar(3, x[0] * x[1]) + Multivector::blade(3, e2, x[2] * x[2]);
  });
  MultivectorField r = dirac_D(dirac_D(w)) + laplacian(w);
  CHECK(max_coeff_interior(r, 2) <= 1e-10);
}

TEST_CASE("Laplacian") {
  const BoxGrid g = BoxGrid::unit_cube(10);
  const ScalarField sq = laplacian(ScalarField::sample(g, [](const Vec3& x) { return x[0] * x[0]; }));
  for (double v : sq.values) REQUIRE(v == doctest::Approx(2.0).epsilon(1e-9));
  const ScalarField r2 =
      laplacian(ScalarField::sample(g, [](const Vec3& x) { return dot(x, x); }));
  for (double v : r2.values) REQUIRE(v == doctest::Approx(6.0).epsilon(1e-9));

  auto err = [](int r) {
    const BoxGrid gr = BoxGrid::unit_cube(r);
    const double pi = std::numbers::pi;
    const ScalarField s =
        laplacian(ScalarField::sample(gr, [pi](const Vec3& x) { return std::sin(pi * x[0]); }));
    double e = 0.0;
    for (std::size_t n = 0; n < gr.node_count(); ++n) {
      const Vec3 x = gr.node(n);
      e = std::max(e, std::abs(s[n] + pi * pi * std::sin(pi * x[0])));
    }
    return e;
  };
  CHECK(err(17) / err(33) >= 3.8);
}

TEST_CASE("scalar inner product") {
  const BoxGrid g = BoxGrid::unit_cube(9);
  const auto a = MultivectorField::sample(g, 3, [](const Vec3&) { return Multivector::blade(3, e1); });
  const auto b = MultivectorField::sample(g, 3, [](const Vec3&) { return Multivector::blade(3, e2); });
  CHECK(sc_inner(a, a) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(sc_inner(a, b)) <= 1e-15);
  const auto x1 = MultivectorField::sample(g, 3, [](const Vec3& x) { return Multivector::scalar(3, x[0]); });
  const auto one = MultivectorField::sample(g, 3, [](const Vec3&) { return Multivector::scalar(3, 1.0); });
  CHECK(sc_inner(x1, one) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("boundary sampling of the unit cube") {
  for (int r : {9, 17}) {
    const BoxGrid g = BoxGrid::unit_cube(r);
    const auto s = boundary_sampling(g);
    CHECK(s.size() == static_cast<std::size_t>(6 * (r - 1) * (r - 1)));
    double area = 0.0;
    Vec3 flux{};
    for (const auto& b : s) {
      area += b.weight;
      flux = flux + b.weight * b.normal;
      CHECK(norm(b.normal) == doctest::Approx(1.0));
      CHECK(b.normal == face_normal(b.face));
    }
    CHECK(area == doctest::Approx(6.0).epsilon(1e-13));
    CHECK(norm(flux) <= 1e-13);
  }
}

TEST_CASE("binary snapshot round trip") {
  const BoxGrid g({0.1, -0.2, 0.3}, {1.0, 2.0, 0.5}, {9, 10, 11});
  const auto w = MultivectorField::sample(g, 3, [](const Vec3& x) {
    Multivector m(3);
    for (std::uint32_t b = 0; b < 8; ++b) m.coeffs()[b] = std::sin(b + x[0]) * x[1] + x[2] * b;
    return m;
  });
  std::stringstream ss;
  write_binary(w, ss);
  const MultivectorField back = read_binary(ss);
  CHECK(back.grid() == w.grid());
  CHECK(back.dimension() == 3);
  const auto a = w.data(), b = back.data();
  CHECK(std::equal(a.begin(), a.end(), b.begin(), b.end()));
}

TEST_CASE("trapezoid integration and interpolation") {
  const BoxGrid g = BoxGrid::unit_cube(11);
  const ScalarField s = ScalarField::sample(g, [](const Vec3& x) { return 1.0 + x[0] + 2.0 * x[1] * x[2]; });
  CHECK(integrate(s) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(interpolate(s, {0.33, 0.5, 0.1}) == doctest::Approx(1.33 + 0.1).epsilon(1e-13));
}

TEST_CASE("grid mismatch is rejected") {
  const auto a = MultivectorField(BoxGrid::unit_cube(9), 3);
  const auto b = MultivectorField(BoxGrid::unit_cube(10), 3);
  CHECK_THROWS_AS(a + b, std::invalid_argument);
}
