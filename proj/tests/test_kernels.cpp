#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "vlab/kernels.hpp"

using namespace vlab;

namespace {

constexpr double kInv4Pi = 0.25 / std::numbers::pi;

template <class F>
Vec3 central_gradient(F&& fn, const Vec3& x, double h = 1e-5) {
  Vec3 g{};
  for (int i = 0; i < 3; ++i) {
    Vec3 p = x, m = x;
    p[i] += h;
    m[i] -= h;
    g[i] = (fn(p) - fn(m)) / (2 * h);
  }
  return g;
}

}  // namespace

TEST_CASE("Cauchy kernel values") {
  const Vec3 e = cauchy_E3({1, 0, 0});
  CHECK(e[0] == doctest::Approx(-0.0795775).epsilon(1e-6));
  CHECK(e[1] == 0.0);
  const Vec3 x{0.3, -0.7, 1.1};
  const Vec3 a = cauchy_E3(x), b = cauchy_E3(-1.0 * x);
  for (int i = 0; i < 3; ++i) CHECK(a[i] == doctest::Approx(-b[i]));
  CHECK_THROWS_AS(cauchy_E3({0, 0, 0}), std::domain_error);

  const double x4[4] = {1, 0, 0, 0};
  const Multivector e4 = cauchy_E(x4);
  CHECK(e4[generator(1)] == doctest::Approx(-1.0 / sphere_area(4)));
}

TEST_CASE("Newton kernel values and gradient") {
  CHECK(newton_N3({0, 1, 0}).value == doctest::Approx(0.0795775).epsilon(1e-6));
  const Vec3 x{0.2, 0.4, -0.1};
  CHECK(newton_N3(2.0 * x).value == doctest::Approx(newton_N3(x).value / 2));
  const Vec3 g = newton_N3(x).gradient, e = cauchy_E3(x);
  for (int i = 0; i < 3; ++i) CHECK(g[i] == doctest::Approx(e[i]).epsilon(1e-13));
  const Vec3 fd = central_gradient([](const Vec3& y) { return newton_N3(y).value; }, x);
  for (int i = 0; i < 3; ++i) CHECK(g[i] == doctest::Approx(fd[i]).epsilon(1e-7));
}

TEST_CASE("Yukawa kernel") {
  CHECK(yukawa_theta({0, 0, 1}, 1.0).value == doctest::Approx(0.029276).epsilon(1e-5));
  const Vec3 x{0.5, 0.1, 0.3};
  CHECK(yukawa_theta(x, 1e-12).value == doctest::Approx(newton_N3(x).value).epsilon(1e-5));
  const double q = 2.3;
  const Vec3 fd = central_gradient([q](const Vec3& y) { return yukawa_theta(y, q).value; }, x);
  const Vec3 g = yukawa_theta(x, q).gradient;
  for (int i = 0; i < 3; ++i) CHECK(g[i] == doctest::Approx(fd[i]).epsilon(1e-7));

  // (-lap + q) theta = 0 away from the origin, from the Hessian trace.
  const Mat3 h = yukawa_hessian(x, q);
  CHECK(-(h[0][0] + h[1][1] + h[2][2]) + q * yukawa_theta(x, q).value ==
        doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("Vekua kernel") {
  const Vec3 x{-0.4, 0.6, 0.2};
  const Vec3 zero = vekua_phi3(x, {0, 0, 0}), e = cauchy_E3(x);
  for (int i = 0; i < 3; ++i) CHECK(zero[i] == doctest::Approx(e[i]).epsilon(1e-14));

  const Vec3 lambda{0.5, -0.3, 0.8};
  const double q = dot(lambda, lambda);
  const Vec3 phi = vekua_phi3(x, lambda);
  const Vec3 gt = yukawa_theta(x, q).gradient;
  const double t = yukawa_theta(x, q).value;
  for (int i = 0; i < 3; ++i) CHECK(phi[i] == doctest::Approx(gt[i] - lambda[i] * t));

  const Mat3 jac = vekua_phi3_jacobian(x, lambda);
  for (int i = 0; i < 3; ++i) {
    const Vec3 row = central_gradient([&](const Vec3& y) { return vekua_phi3(y, lambda)[i]; }, x);
    for (int j = 0; j < 3; ++j) CHECK(jac[i][j] == doctest::Approx(row[j]).epsilon(1e-6));
  }
}

TEST_CASE("Cauchy kernel is monogenic away from the origin") {
  const Vec3 x{0.7, -0.2, 0.45};
  const Multivector d = dirac_from_jacobian(cauchy_E3_jacobian(x));
  CHECK(d.max_norm() <= 1e-12);
}

TEST_CASE("kernel specs") {
  CHECK(KernelSpec::cauchy().singular_order() == 2);
  CHECK(KernelSpec::cauchy(4).singular_order() == 3);
  CHECK(KernelSpec::newton().singular_order() == 1);
  CHECK(KernelSpec::yukawa(1.0).singular_order() == 1);
  CHECK(KernelSpec::vekua_phi({0, 0, 1}).singular_order() == 2);
  CHECK(KernelSpec::cauchy().vector_valued());
  CHECK_FALSE(KernelSpec::newton().vector_valued());
  CHECK(sphere_area(3) == doctest::Approx(4 * std::numbers::pi));

  const Multivector n = evaluate_kernel(KernelSpec::newton(), {0, 0, 2});
  CHECK(scalar_part(n) == doctest::Approx(kInv4Pi / 2));
}
