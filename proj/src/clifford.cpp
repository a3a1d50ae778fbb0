#include "vlab/clifford.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace vlab {

namespace {

void check_dimension(int n) {
  if (n < kMinAlgebraDim || n > kMaxAlgebraDim) {
    throw std::invalid_argument("algebra dimension must be in [3, 8], got " +
                                std::to_string(n));
  }
}

void require_same_dimension(const Multivector& a, const Multivector& b) {
  if (a.dimension() != b.dimension()) {
    throw std::invalid_argument("multivector dimension mismatch: " +
                                std::to_string(a.dimension()) + " vs " +
                                std::to_string(b.dimension()));
  }
}

constexpr std::uint32_t kTableBlades = 16;  // 2^4

std::array<std::int8_t, kTableBlades * kTableBlades> build_sign_table() {
  std::array<std::int8_t, kTableBlades * kTableBlades> t{};
  for (std::uint32_t a = 0; a < kTableBlades; ++a) {
    for (std::uint32_t b = 0; b < kTableBlades; ++b) {
      t[a * kTableBlades + b] = static_cast<std::int8_t>(
          blade_product_sign_by_reduction(BladeIndex{a}, BladeIndex{b}));
    }
  }
  return t;
}

}  // namespace

int blade_product_sign_by_reduction(BladeIndex a, BladeIndex b) {
  std::vector<int> word;
  for (int i = 0; i < 32; ++i) {
    if (a.mask & (1u << i)) word.push_back(i);
  }
  for (int i = 0; i < 32; ++i) {
    if (b.mask & (1u << i)) word.push_back(i);
  }
  int sign = 1;
  // Bubble sort; every adjacent transposition of distinct generators flips sign.
  for (std::size_t pass = 0; pass < word.size(); ++pass) {
    for (std::size_t j = 0; j + 1 < word.size(); ++j) {
      if (word[j] > word[j + 1]) {
        std::swap(word[j], word[j + 1]);
        sign = -sign;
      }
    }
  }
  // Equal neighbours contract: e_i e_i = -1.
  for (std::size_t j = 0; j + 1 < word.size();) {
    if (word[j] == word[j + 1]) {
      sign = -sign;
      j += 2;
    } else {
      ++j;
    }
  }
  return sign;
}

int blade_product_sign_table(BladeIndex a, BladeIndex b) {
  static const auto table = build_sign_table();
  if (a.mask >= kTableBlades || b.mask >= kTableBlades) {
    throw std::out_of_range("sign table covers n <= 4 only");
  }
  return table[a.mask * kTableBlades + b.mask];
}

int dimension_for_size(std::size_t size) {
  for (int n = kMinAlgebraDim; n <= kMaxAlgebraDim; ++n) {
    if (size == (std::size_t{1} << n)) return n;
  }
  throw std::invalid_argument("coefficient count " + std::to_string(size) +
                              " is not 2^n for 3 <= n <= 8");
}

Multivector::Multivector(int n) : n_(n) {
  check_dimension(n);
  coeffs_.assign(std::size_t{1} << n, 0.0);
}

Multivector::Multivector(int n, std::vector<double> coeffs)
    : n_(n), coeffs_(std::move(coeffs)) {
  check_dimension(n);
  if (coeffs_.size() != (std::size_t{1} << n)) {
    throw std::invalid_argument("coefficient array must have length 2^n");
  }
}

Multivector Multivector::scalar(int n, double s) {
  Multivector m(n);
  m.coeffs_[0] = s;
  return m;
}

Multivector Multivector::blade(int n, BladeIndex b, double coeff) {
  Multivector m(n);
  if (b.mask >= m.size()) throw std::out_of_range("blade outside algebra");
  m.coeffs_[b.mask] = coeff;
  return m;
}

Multivector Multivector::vector(int n, std::span<const double> v) {
  Multivector m(n);
  if (static_cast<int>(v.size()) > n) {
    throw std::invalid_argument("vector has more components than generators");
  }
  for (std::size_t i = 0; i < v.size(); ++i) m.coeffs_[1u << i] = v[i];
  return m;
}

Multivector& Multivector::operator+=(const Multivector& o) {
  require_same_dimension(*this, o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& o) {
  require_same_dimension(*this, o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

Multivector& Multivector::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

double Multivector::max_norm() const {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
Multivector operator-(Multivector a) { return a *= -1.0; }
Multivector operator*(Multivector a, double s) { return a *= s; }
Multivector operator*(double s, Multivector a) { return a *= s; }

void geometric_product_into(std::span<const double> a,
                            std::span<const double> b, std::span<double> out) {
  const std::size_t size = a.size();
  std::fill(out.begin(), out.end(), 0.0);
  const bool use_table = size <= kTableBlades;
  for (std::uint32_t i = 0; i < size; ++i) {
    if (a[i] == 0.0) continue;
    for (std::uint32_t j = 0; j < size; ++j) {
      if (b[j] == 0.0) continue;
      const int s = use_table ? blade_product_sign_table(BladeIndex{i}, BladeIndex{j})
                              : blade_product_sign(BladeIndex{i}, BladeIndex{j});
      out[i ^ j] += s * a[i] * b[j];
    }
  }
}

Multivector geometric_product(const Multivector& a, const Multivector& b) {
  require_same_dimension(a, b);
  Multivector out(a.dimension());
  geometric_product_into(a.coeffs(), b.coeffs(), out.coeffs());
  return out;
}

Multivector operator*(const Multivector& a, const Multivector& b) {
  return geometric_product(a, b);
}

void accumulate_left_vector_product(std::span<const double> v,
                                    std::span<const double> a,
                                    std::span<double> out) {
  const std::uint32_t size = static_cast<std::uint32_t>(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0.0) continue;
    const BladeIndex g{1u << i};
    for (std::uint32_t b = 0; b < size; ++b) {
      out[b ^ g.mask] += blade_product_sign(g, BladeIndex{b}) * v[i] * a[b];
    }
  }
}

void accumulate_right_vector_product(std::span<const double> a,
                                     std::span<const double> v,
                                     std::span<double> out) {
  const std::uint32_t size = static_cast<std::uint32_t>(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0.0) continue;
    const BladeIndex g{1u << i};
    for (std::uint32_t b = 0; b < size; ++b) {
      out[b ^ g.mask] += blade_product_sign(BladeIndex{b}, g) * a[b] * v[i];
    }
  }
}

Multivector conjugate(const Multivector& a) {
  Multivector out = a;
  auto c = out.coeffs();
  for (std::uint32_t m = 0; m < c.size(); ++m) {
    c[m] *= conjugation_sign(BladeIndex{m}.grade());
  }
  return out;
}

Multivector grade_project(const Multivector& a, int k) {
  if (k < 0 || k > a.dimension()) {
    throw std::out_of_range("grade " + std::to_string(k) + " outside [0, " +
                            std::to_string(a.dimension()) + "]");
  }
  Multivector out(a.dimension());
  auto src = a.coeffs();
  auto dst = out.coeffs();
  for (std::uint32_t m = 0; m < src.size(); ++m) {
    if (BladeIndex{m}.grade() == k) dst[m] = src[m];
  }
  return out;
}

double scalar_part(const Multivector& a) { return a.coeff(0); }

Multivector vector_part(const Multivector& a) { return grade_project(a, 1); }

Multivector paravector_part(const Multivector& a) {
  return grade_project(a, 0) + grade_project(a, 1);
}

Multivector non_paravector_part(const Multivector& a) {
  Multivector out(a.dimension());
  for (int k = 2; k <= a.dimension(); ++k) out += grade_project(a, k);
  return out;
}

ParitySplit parity_split(const Multivector& a) {
  ParitySplit s{Multivector(a.dimension()), Multivector(a.dimension())};
  auto src = a.coeffs();
  for (std::uint32_t m = 0; m < src.size(); ++m) {
    if (conjugation_sign(BladeIndex{m}.grade()) > 0) {
      s.part03.coeffs()[m] = src[m];
    } else {
      s.part12.coeffs()[m] = src[m];
    }
  }
  return s;
}

std::ostream& operator<<(std::ostream& os, const Multivector& a) {
  bool first = true;
  auto c = a.coeffs();
  for (std::uint32_t m = 0; m < c.size(); ++m) {
    if (c[m] == 0.0) continue;
    if (!first) os << " + ";
    first = false;
    os << c[m];
    if (m != 0) {
      os << "*e";
      for (int i = 0; i < a.dimension(); ++i) {
        if (m & (1u << i)) os << (i + 1);
      }
    }
  }
  if (first) os << 0;
  return os;
}

}  // namespace vlab
