#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "vlab/clifford.hpp"
#include "vlab/grid.hpp"

namespace vlab {

/// Surface area of the unit sphere in R^n (sigma_3 = 4 pi).
double sphere_area(int n);

using Mat3 = std::array<Vec3, 3>;  // m[i][j] = d F_i / d x_j

enum class KernelFamily { cauchy, newton, yukawa, vekua_phi };

struct KernelSpec {
  KernelFamily family = KernelFamily::cauchy;
  int dimension = 3;
  double q = 0.0;               // yukawa screening, q > 0
  Vec3 lambda{0.0, 0.0, 0.0};   // vekua_phi: f = exp(lambda . x)

  static KernelSpec cauchy(int n = 3);
  static KernelSpec newton(int n = 3);
  static KernelSpec yukawa(double q);
  static KernelSpec vekua_phi(const Vec3& lambda);

  /// Exponent s with |kernel| ~ |x|^{-s} near the origin.
  int singular_order() const;
  bool vector_valued() const {
    return family == KernelFamily::cauchy || family == KernelFamily::vekua_phi;
  }
  std::string name() const;
};

struct ScalarKernelValue {
  double value = 0.0;
  Vec3 gradient{};
};

// Cauchy kernel E(x) = -x / (sigma_n |x|^n). Throws std::domain_error at x = 0.
Multivector cauchy_E(std::span<const double> x);
Vec3 cauchy_E3(const Vec3& x);
Mat3 cauchy_E3_jacobian(const Vec3& x);

/// Newton kernel 1 / (sigma_n (n-2) |x|^{n-2}) and its gradient, general n >= 3.
struct NewtonValue {
  double value = 0.0;
  std::vector<double> gradient;
};
NewtonValue newton_N(std::span<const double> x);
ScalarKernelValue newton_N3(const Vec3& x);

/// Yukawa kernel exp(-sqrt(q)|x|) / (4 pi |x|), solving (-Delta + q) theta = delta in R^3.
ScalarKernelValue yukawa_theta(const Vec3& x, double q);
Mat3 yukawa_hessian(const Vec3& x, double q);

/// Vekua kernel grad theta_q(x) - lambda theta_q(x), q = |lambda|^2; equals
/// cauchy_E for lambda = 0.
Vec3 vekua_phi3(const Vec3& x, const Vec3& lambda);
Multivector vekua_phi(const Vec3& x, const Vec3& lambda, int n = 3);
Mat3 vekua_phi3_jacobian(const Vec3& x, const Vec3& lambda);

/// Kernel value as a multivector: grade 1 for vector kernels, grade 0 otherwise.
Multivector evaluate_kernel(const KernelSpec& spec, const Vec3& x, int n = 3);

/// D F for a vector field F from its Jacobian: sum_{i,j} dF_i/dx_j e_j e_i.
Multivector dirac_from_jacobian(const Mat3& jac, int n = 3);

}  // namespace vlab
