#pragma once

#include <bit>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace vlab {

inline constexpr int kMinAlgebraDim = 3;
inline constexpr int kMaxAlgebraDim = 8;

/// Basis blade e_A of Cl(0,n). Bit i set means generator e_{i+1} is a factor;
/// generators inside a blade are always in ascending order.
struct BladeIndex {
  std::uint32_t mask = 0;

  constexpr int grade() const { return std::popcount(mask); }
  friend constexpr bool operator==(BladeIndex, BladeIndex) = default;
};

/// Blade for generator e_i, 1-based as in e_1..e_n.
constexpr BladeIndex generator(int i) { return BladeIndex{1u << (i - 1)}; }

/// Sign s with e_A e_B = s e_{A xor B}, from transposition count and e_i^2 = -1.
constexpr int blade_product_sign(BladeIndex a, BladeIndex b) {
  int swaps = 0;
  for (std::uint32_t t = a.mask >> 1; t != 0; t >>= 1) {
    swaps += std::popcount(t & b.mask);
  }
  swaps += std::popcount(a.mask & b.mask);
  return (swaps & 1) ? -1 : 1;
}

/// Conjugation sign of a grade-k blade: + for k = 0,3 (mod 4), - for k = 1,2.
constexpr int conjugation_sign(int grade) {
  const int r = grade % 4;
  return (r == 0 || r == 3) ? 1 : -1;
}

/// Product sign computed by reducing the generator word e_A e_B with explicit
/// adjacent swaps, independent of blade_product_sign. Used to build the n <= 4
/// lookup table and to cross-check the bit-count routine.
int blade_product_sign_by_reduction(BladeIndex a, BladeIndex b);

/// Lookup table of blade product signs for n <= 4, built once from the
/// reduction routine.
int blade_product_sign_table(BladeIndex a, BladeIndex b);

/// Dense element of Cl(0,n) with 2^n real coefficients indexed by BladeIndex.
class Multivector {
 public:
  Multivector() : Multivector(3) {}
  explicit Multivector(int n);
  Multivector(int n, std::vector<double> coeffs);

  static Multivector scalar(int n, double s);
  static Multivector blade(int n, BladeIndex b, double coeff = 1.0);
  /// Grade-1 element sum_i v[i] e_{i+1}; v.size() <= n.
  static Multivector vector(int n, std::span<const double> v);

  int dimension() const { return n_; }
  std::size_t size() const { return coeffs_.size(); }

  double operator[](BladeIndex b) const { return coeffs_[b.mask]; }
  double& operator[](BladeIndex b) { return coeffs_[b.mask]; }
  double coeff(std::uint32_t mask) const { return coeffs_[mask]; }

  std::span<const double> coeffs() const { return coeffs_; }
  std::span<double> coeffs() { return coeffs_; }

  Multivector& operator+=(const Multivector& o);
  Multivector& operator-=(const Multivector& o);
  Multivector& operator*=(double s);

  /// Largest absolute coefficient.
  double max_norm() const;

  friend bool operator==(const Multivector&, const Multivector&) = default;

 private:
  int n_;
  std::vector<double> coeffs_;
};

Multivector operator+(Multivector a, const Multivector& b);
Multivector operator-(Multivector a, const Multivector& b);
Multivector operator-(Multivector a);
Multivector operator*(Multivector a, double s);
Multivector operator*(double s, Multivector a);

/// Clifford product; throws std::invalid_argument when dimensions differ.
Multivector geometric_product(const Multivector& a, const Multivector& b);
Multivector operator*(const Multivector& a, const Multivector& b);

Multivector conjugate(const Multivector& a);

/// [a]_k; throws std::out_of_range unless 0 <= k <= n.
Multivector grade_project(const Multivector& a, int k);

double scalar_part(const Multivector& a);
Multivector vector_part(const Multivector& a);
Multivector paravector_part(const Multivector& a);
Multivector non_paravector_part(const Multivector& a);

/// a = part03 + part12 with grades k = 0,3 and k = 1,2 (mod 4) respectively.
struct ParitySplit {
  Multivector part03;
  Multivector part12;
};
ParitySplit parity_split(const Multivector& a);

/// out += coefficient-wise product of vector v (length <= n) from the left:
/// out += (sum_i v_i e_{i+1}) * a. Spans hold 2^n coefficients.
void accumulate_left_vector_product(std::span<const double> v,
                                    std::span<const double> a,
                                    std::span<double> out);

/// out += a * (sum_i v_i e_{i+1}).
void accumulate_right_vector_product(std::span<const double> a,
                                     std::span<const double> v,
                                     std::span<double> out);

/// out = a * b for raw 2^n coefficient spans.
void geometric_product_into(std::span<const double> a,
                            std::span<const double> b, std::span<double> out);

/// Algebra dimension for a coefficient count; throws unless it is 2^n, 3<=n<=8.
int dimension_for_size(std::size_t size);

std::ostream& operator<<(std::ostream& os, const Multivector& a);

}  // namespace vlab
