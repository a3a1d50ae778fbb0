#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "vlab/integral_ops.hpp"

using namespace vlab;

namespace {

constexpr BladeIndex e1{0b001}, e2{0b010}, e3{0b100};

std::vector<Vec3> interior_points(const EvaluationSet& set) {
  std::vector<Vec3> out;
  for (const auto& p : set.points()) {
    if (p.region == Region::interior) out.push_back(p.position);
  }
  return out;
}

Multivector monogenic(const Vec3& x) {
  return Multivector::blade(3, e2, x[0]) + Multivector::blade(3, e1, x[1]);
}

/// max over interior points of |D T[e1] - e1|.
double teodorescu_inverse_error(int r) {
  const BoxGrid g = BoxGrid::unit_cube(r);
  const auto ge1 = MultivectorField::sample(g, 3, [](const Vec3&) { return Multivector::blade(3, e1); });
  const auto pts = interior_points(EvaluationSet::standard(g));
  const auto d = central_dirac(
      [&](std::span<const Vec3> p) { return teodorescu(ge1, p); }, pts, g.spacing());
  double e = 0.0;
  for (const auto& m : d) e = std::max(e, (m - Multivector::blade(3, e1)).max_norm());
  return e;
}

/// max over interior points of |D S_alpha[f]| / max|grad f| for f = exp(x3), alpha = e3.
double s_alpha_error(int r) {
  const BoxGrid g = BoxGrid::unit_cube(r);
  const auto w = MultivectorField::sample(g, 3, [](const Vec3& x) {
    return Multivector::scalar(3, std::exp(x[2]));
  });
  const auto alpha = MultivectorField::sample(g, 3, [](const Vec3&) { return Multivector::blade(3, e3); });
  const auto pts = interior_points(EvaluationSet::standard(g));
  const auto d = central_dirac(
      [&](std::span<const Vec3> p) { return s_alpha_at(w, alpha, p); }, pts, g.spacing());
  double e = 0.0;
  for (const auto& m : d) e = std::max(e, m.max_norm());
  return e / std::exp(1.0);
}

double bp_interior_error(int r) {
  const BoxGrid g = BoxGrid::unit_cube(r);
  const auto v = MultivectorField::sample(g, 3, [](const Vec3& x) {
    return Multivector::blade(3, e2, x[0] * x[0]);
  });
  const EvaluationSet set = EvaluationSet::standard(g);
  const auto res = borel_pompeiu_residual(v, set);
  double e = 0.0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set.points()[i].region == Region::interior) e = std::max(e, res[i]);
  }
  return e / max_norm(v);
}

}  // namespace

TEST_CASE("evaluation set respects the margin") {
  const BoxGrid g = BoxGrid::unit_cube(16);
  const EvaluationSet set = EvaluationSet::standard(g);
  CHECK(set.size() == 27 + 8);
  for (const auto& p : set.points()) {
    const double d = g.signed_distance(p.position);
    if (p.region == Region::interior) {
      CHECK(d >= set.margin() - 1e-14);
    } else {
      CHECK(-d >= set.margin() - 1e-14);
    }
  }
  CHECK_THROWS_AS(EvaluationSet(g, {{{0.5, 0.5, 0.01}, Region::interior}}, 0.2),
                  std::invalid_argument);
}

TEST_CASE("Teodorescu transform of a constant vanishes at the centre") {
  const BoxGrid g = BoxGrid::unit_cube(16);
  const auto one = MultivectorField::sample(g, 3, [](const Vec3&) { return Multivector::scalar(3, 1.0); });
  const Vec3 c{0.5, 0.5, 0.5};
  const auto t = teodorescu(one, std::span<const Vec3>(&c, 1));
  CHECK(t[0].max_norm() <= 1e-14);
}

TEST_CASE("Teodorescu transform is a right inverse of D") {
  const double e16 = teodorescu_inverse_error(16);
  const double e32 = teodorescu_inverse_error(32);
  CHECK(e32 <= 0.02);
  CHECK(e16 / e32 >= 1.8);
}

TEST_CASE("Cauchy boundary integral of 1") {
  const BoxGrid faces = BoxGrid::unit_cube(65);
  const BoundaryTrace tr = trace_from_function(boundary_sampling(faces), 3,
                                               [](const Vec3&) { return Multivector::scalar(3, 1.0); });
  const EvaluationSet set = EvaluationSet::standard(BoxGrid::unit_cube(32));
  for (const auto& p : set.points()) {
    const double s = scalar_part(cauchy_boundary(KernelSpec::cauchy(), tr, p.position));
    CHECK(std::abs(s - (p.region == Region::interior ? 1.0 : 0.0)) <= 1e-3);
  }
}

TEST_CASE("Cauchy boundary integral reproduces a monogenic function") {
  const BoxGrid faces = BoxGrid::unit_cube(65);
  const BoundaryTrace tr = trace_from_function(boundary_sampling(faces), 3, monogenic);
  const EvaluationSet set = EvaluationSet::standard(BoxGrid::unit_cube(32));
  for (const auto& p : set.points()) {
    const Multivector c = cauchy_boundary(KernelSpec::cauchy(), tr, p.position);
    const Multivector expect = p.region == Region::interior ? monogenic(p.position) : Multivector(3);
    CHECK((c - expect).max_norm() <= 1e-3);
  }
}

TEST_CASE("Cauchy boundary integral rejects points on the boundary") {
  const BoxGrid g = BoxGrid::unit_cube(16);
  const BoundaryTrace tr = trace_from_function(boundary_sampling(g), 3,
                                               [](const Vec3&) { return Multivector::scalar(3, 1.0); });
  CHECK_THROWS_AS(cauchy_boundary(KernelSpec::cauchy(), tr, {0.5, 0.5, 1.0}), std::invalid_argument);
}

TEST_CASE("Borel-Pompeiu for a constant reduces to the Cauchy theorem") {
  const BoxGrid g = BoxGrid::unit_cube(16);
  const auto v = MultivectorField::sample(g, 3, [](const Vec3&) { return Multivector::scalar(3, 2.0); });
  const EvaluationSet set = EvaluationSet::standard(g);
  const auto terms = borel_pompeiu_terms(v, set);
  const BoundaryTrace tr = trace_from_field(boundary_sampling(g), v);
  for (std::size_t i = 0; i < set.size(); ++i) {
    CHECK(terms[i].volume.max_norm() <= 1e-13);
    const Multivector c = cauchy_boundary(KernelSpec::cauchy(), tr, set.points()[i].position);
    CHECK((terms[i].boundary - c).max_norm() <= 1e-13);
  }
}

TEST_CASE("Borel-Pompeiu for a quadratic field") {
  const double e16 = bp_interior_error(16);
  const double e32 = bp_interior_error(32);
  CHECK(e32 <= 0.02);
  CHECK(e16 / e32 >= 1.8);

  const BoxGrid g = BoxGrid::unit_cube(32);
  const auto v = MultivectorField::sample(g, 3, [](const Vec3& x) {
    return Multivector::blade(3, e2, x[0] * x[0]);
  });
  const EvaluationSet set = EvaluationSet::standard(g);
  const auto res = borel_pompeiu_residual(v, set);
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set.points()[i].region == Region::exterior) CHECK(res[i] <= 0.02 * max_norm(v));
  }
}

TEST_CASE("Borel-Pompeiu exterior branch for a monogenic field") {
  const BoxGrid g = BoxGrid::unit_cube(32);
  const auto v = MultivectorField::sample(g, 3, monogenic);
  const EvaluationSet set = EvaluationSet::standard(g);
  const auto terms = borel_pompeiu_terms(v, set);
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set.points()[i].region == Region::interior) continue;
    CHECK((terms[i].volume + terms[i].boundary).max_norm() <= 1e-3);
  }
}

TEST_CASE("S_alpha with alpha = 0 is the identity") {
  const BoxGrid g = BoxGrid::unit_cube(9);
  const auto w = MultivectorField::sample(g, 3, [](const Vec3& x) {
    return Multivector::scalar(3, x[0]) + Multivector::blade(3, e3, x[1] * x[2]);
  });
  const MultivectorField s = s_alpha(w, MultivectorField(g, 3));
  const auto a = s.data(), b = w.data();
  CHECK(std::equal(a.begin(), a.end(), b.begin(), b.end()));
}

TEST_CASE("S_alpha is affine in w") {
  const BoxGrid g = BoxGrid::unit_cube(9);
  const auto alpha = MultivectorField::sample(g, 3, [](const Vec3& x) {
    return Multivector::blade(3, e1, x[2]) + Multivector::blade(3, e3, 1.0);
  });
  const auto w1 = MultivectorField::sample(g, 3, [](const Vec3& x) { return Multivector::scalar(3, std::exp(x[0])); });
  const auto w2 = MultivectorField::sample(g, 3, [](const Vec3& x) { return Multivector::blade(3, {0b011}, x[1]); });
  const MultivectorField lhs = s_alpha(w1 + w2, alpha) - w1 - w2;
  const MultivectorField rhs = (s_alpha(w1, alpha) - w1) + (s_alpha(w2, alpha) - w2);
  CHECK(max_norm(lhs - rhs) <= 1e-13 * std::max(1.0, max_norm(lhs)));
}

TEST_CASE("S_alpha maps a Vekua solution to a monogenic function") {
  const double e16 = s_alpha_error(16);
  const double e32 = s_alpha_error(32);
  CHECK(e32 <= 0.03);
  CHECK(e32 < e16);
}
