#include "vlab/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vlab {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

double checked_radius(std::span<const double> x) {
  double r2 = 0.0;
  for (double c : x) r2 += c * c;
  if (r2 == 0.0) throw std::domain_error("kernel evaluated at the origin");
  return std::sqrt(r2);
}

// Screened kernel with q >= 0 (q = 0 is the Newton kernel); value, radial
// derivative and second radial derivative.
struct Radial {
  double value, d1, d2;
};

Radial screened_radial(double r, double q) {
  const double k = std::sqrt(q);
  const double e = std::exp(-k * r);
  return {e / (kFourPi * r), -e * (1.0 + k * r) / (kFourPi * r * r),
          e * (k * k * r * r + 2.0 * k * r + 2.0) / (kFourPi * r * r * r)};
}

Mat3 radial_hessian(const Vec3& x, const Radial& rad) {
  const double r = norm(x);
  Mat3 h{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double xx = x[i] * x[j] / (r * r);
      h[i][j] = rad.d2 * xx + rad.d1 * ((i == j ? 1.0 : 0.0) - xx) / r;
    }
  }
  return h;
}

}  // namespace

double sphere_area(int n) {
  if (n < 1) throw std::invalid_argument("sphere dimension must be positive");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

KernelSpec KernelSpec::cauchy(int n) { return {KernelFamily::cauchy, n, 0.0, {}}; }
KernelSpec KernelSpec::newton(int n) { return {KernelFamily::newton, n, 0.0, {}}; }

KernelSpec KernelSpec::yukawa(double q) {
  if (!(q > 0.0)) throw std::invalid_argument("yukawa kernel requires q > 0");
  return {KernelFamily::yukawa, 3, q, {}};
}

KernelSpec KernelSpec::vekua_phi(const Vec3& lambda) {
  return {KernelFamily::vekua_phi, 3, dot(lambda, lambda), lambda};
}

int KernelSpec::singular_order() const {
  switch (family) {
    case KernelFamily::cauchy:
    case KernelFamily::vekua_phi:
      return dimension - 1;
    case KernelFamily::newton:
    case KernelFamily::yukawa:
      return dimension - 2;
  }
  return 0;
}

std::string KernelSpec::name() const {
  switch (family) {
    case KernelFamily::cauchy: return "cauchy";
    case KernelFamily::newton: return "newton";
    case KernelFamily::yukawa: return "yukawa";
    case KernelFamily::vekua_phi: return "vekua_phi";
  }
  return "unknown";
}

Multivector cauchy_E(std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  const double r = checked_radius(x);
  const double c = -1.0 / (sphere_area(n) * std::pow(r, n));
  std::vector<double> v(x.begin(), x.end());
  for (double& a : v) a *= c;
  return Multivector::vector(n, v);
}

Vec3 cauchy_E3(const Vec3& x) {
  const double r = checked_radius(x);
  const double c = -1.0 / (kFourPi * r * r * r);
  return c * x;
}

Mat3 cauchy_E3_jacobian(const Vec3& x) {
  const double r = checked_radius(x);
  const double r3 = r * r * r;
  const double r5 = r3 * r * r;
  Mat3 j{};
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      j[a][b] = -((a == b ? 1.0 : 0.0) / r3 - 3.0 * x[a] * x[b] / r5) / kFourPi;
    }
  }
  return j;
}

NewtonValue newton_N(std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  if (n < 3) throw std::invalid_argument("newton kernel needs n >= 3");
  const double r = checked_radius(x);
  const double sigma = sphere_area(n);
  NewtonValue out;
  out.value = 1.0 / (sigma * (n - 2) * std::pow(r, n - 2));
  // d/dx_i r^{2-n} = (2-n) r^{-n} x_i
  const double g = (2.0 - n) / (sigma * (n - 2) * std::pow(r, n));
  out.gradient.reserve(x.size());
  for (double c : x) out.gradient.push_back(g * c);
  return out;
}

ScalarKernelValue newton_N3(const Vec3& x) {
  const double r = checked_radius(x);
  return {1.0 / (kFourPi * r), (-1.0 / (kFourPi * r * r * r)) * x};
}

ScalarKernelValue yukawa_theta(const Vec3& x, double q) {
  if (!(q > 0.0)) throw std::invalid_argument("yukawa kernel requires q > 0");
  const double r = checked_radius(x);
  const Radial rad = screened_radial(r, q);
  return {rad.value, (rad.d1 / r) * x};
}

Mat3 yukawa_hessian(const Vec3& x, double q) {
  if (!(q > 0.0)) throw std::invalid_argument("yukawa kernel requires q > 0");
  const double r = checked_radius(x);
  return radial_hessian(x, screened_radial(r, q));
}

Vec3 vekua_phi3(const Vec3& x, const Vec3& lambda) {
  const double r = checked_radius(x);
  const Radial rad = screened_radial(r, dot(lambda, lambda));
  return (rad.d1 / r) * x - rad.value * lambda;
}

Multivector vekua_phi(const Vec3& x, const Vec3& lambda, int n) {
  return Multivector::vector(n, vekua_phi3(x, lambda));
}

Mat3 vekua_phi3_jacobian(const Vec3& x, const Vec3& lambda) {
  const double r = checked_radius(x);
  const Radial rad = screened_radial(r, dot(lambda, lambda));
  Mat3 j = radial_hessian(x, rad);
  const Vec3 grad = (rad.d1 / r) * x;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) j[a][b] -= lambda[a] * grad[b];
  }
  return j;
}

Multivector evaluate_kernel(const KernelSpec& spec, const Vec3& x, int n) {
  switch (spec.family) {
    case KernelFamily::cauchy:
      return Multivector::vector(n, cauchy_E3(x));
    case KernelFamily::vekua_phi:
      return vekua_phi(x, spec.lambda, n);
    case KernelFamily::newton:
      return Multivector::scalar(n, newton_N3(x).value);
    case KernelFamily::yukawa:
      return Multivector::scalar(n, yukawa_theta(x, spec.q).value);
  }
  throw std::logic_error("unknown kernel family");
}

Multivector dirac_from_jacobian(const Mat3& jac, int n) {
  Multivector out(n);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (jac[i][j] == 0.0) continue;
      out += jac[i][j] * (Multivector::blade(n, generator(j + 1)) *
                          Multivector::blade(n, generator(i + 1)));
    }
  }
  return out;
}

}  // namespace vlab
