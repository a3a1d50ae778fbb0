#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "vlab/clifford.hpp"

using namespace vlab;

namespace {

constexpr BladeIndex e1{0b001}, e2{0b010}, e12{0b011}, e123{0b111};

Multivector mv(std::initializer_list<std::pair<BladeIndex, double>> terms) {
  Multivector m(3);
  for (auto [b, c] : terms) m[b] += c;
  return m;
}

}  // namespace

TEST_CASE("generators square to -1") {
  for (int i = 1; i <= 3; ++i) {
    const Multivector ei = Multivector::blade(3, generator(i));
    CHECK(ei * ei == Multivector::scalar(3, -1.0));
  }
}

TEST_CASE("product of distinct generators is antisymmetric") {
  const Multivector a = Multivector::blade(3, e1), b = Multivector::blade(3, e2);
  CHECK(a * b == Multivector::blade(3, e12));
  CHECK(b * a == Multivector::blade(3, e12, -1.0));
  CHECK((a + b) * (a - b) == Multivector::blade(3, e12, -2.0));
}

TEST_CASE("sign routines agree with word reduction") {
  for (int n = 3; n <= 5; ++n) {
    const std::uint32_t m = 1u << n;
    for (std::uint32_t a = 0; a < m; ++a) {
      for (std::uint32_t b = 0; b < m; ++b) {
        const int ref = blade_product_sign_by_reduction({a}, {b});
        REQUIRE(blade_product_sign({a}, {b}) == ref);
        if (n <= 4) REQUIRE(blade_product_sign_table({a}, {b}) == ref);
      }
    }
  }
}

TEST_CASE("conjugation") {
  const Multivector a = mv({{{0}, 1}, {e1, 1}, {e12, 1}, {e123, 1}});
  CHECK(conjugate(a) == mv({{{0}, 1}, {e1, -1}, {e12, -1}, {e123, 1}}));
  CHECK(conjugate(conjugate(a)) == a);
  const Multivector p = Multivector::blade(3, e1) * Multivector::blade(3, e2);
  CHECK(conjugate(p) == Multivector::blade(3, e12, -1.0));

  const Multivector x = mv({{{0}, 2}, {e2, -1}, {{0b101}, 3}, {e123, 0.5}});
  const Multivector y = mv({{e1, 1}, {{0b110}, 4}, {{0b100}, -2}});
  CHECK(conjugate(x * y) == conjugate(y) * conjugate(x));
}

TEST_CASE("grade projection") {
  const Multivector a = mv({{{0}, 1}, {e1, 2}, {e12, 3}});
  CHECK(grade_project(a, 1) == Multivector::blade(3, e1, 2.0));
  Multivector sum(3);
  for (int k = 0; k <= 3; ++k) sum += grade_project(a, k);
  CHECK(sum == a);
  CHECK_THROWS_AS(grade_project(a, 4), std::out_of_range);
  CHECK_THROWS_AS(grade_project(a, -1), std::out_of_range);
  CHECK(scalar_part(a) == 1.0);
}

TEST_CASE("paravector and parity splits") {
  const Multivector a = mv({{{0}, 1}, {e1, 1}, {e12, 1}, {e123, 1}});
  CHECK(non_paravector_part(a) == mv({{e12, 1}, {e123, 1}}));
  CHECK(paravector_part(a) == mv({{{0}, 1}, {e1, 1}}));

  const ParitySplit s = parity_split(a);
  CHECK(s.part03 == mv({{{0}, 1}, {e123, 1}}));
  CHECK(s.part12 == mv({{e1, 1}, {e12, 1}}));
  CHECK(s.part03 - s.part12 == conjugate(a));

  const ParitySplit z = parity_split(Multivector(3));
  CHECK(z.part03 == Multivector(3));
  CHECK(z.part12 == Multivector(3));
}

TEST_CASE("dimension checks") {
  CHECK_THROWS_AS(Multivector(3) * Multivector(4), std::invalid_argument);
  CHECK(dimension_for_size(8) == 3);
  CHECK(dimension_for_size(256) == 8);
  CHECK_THROWS(dimension_for_size(6));
  CHECK_THROWS(dimension_for_size(4));
}

TEST_CASE("vector products match the dense product") {
  const double v[3] = {0.3, -1.2, 2.0};
  const Multivector vm = Multivector::vector(3, v);
  const Multivector a = mv({{{0}, 1}, {e2, -1}, {{0b101}, 3}, {e123, 0.5}});
  std::vector<double> left(8, 0.0), right(8, 0.0);
  accumulate_left_vector_product(v, a.coeffs(), left);
  accumulate_right_vector_product(a.coeffs(), v, right);
  const Multivector l = vm * a, r = a * vm;
  for (std::uint32_t b = 0; b < 8; ++b) {
    CHECK(left[b] == doctest::Approx(l.coeff(b)).epsilon(1e-15));
    CHECK(right[b] == doctest::Approx(r.coeff(b)).epsilon(1e-15));
  }
}
