#include "vlab/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vlab {

ConductivityProfile ConductivityProfile::constant(double c) {
  if (c == 0.0) throw std::invalid_argument("constant conductivity factor must be nonzero");
  ConductivityProfile p;
  p.kind_ = ProfileKind::constant;
  p.name_ = "constant";
  p.amplitude_ = c;
  return p;
}

ConductivityProfile ConductivityProfile::exponential(const Vec3& lambda, double amplitude) {
  if (amplitude == 0.0) throw std::invalid_argument("exponential amplitude must be nonzero");
  ConductivityProfile p;
  p.kind_ = ProfileKind::exponential;
  p.name_ = "exponential";
  p.amplitude_ = amplitude;
  p.lambda_ = lambda;
  return p;
}

ConductivityProfile ConductivityProfile::separable_z(std::string name,
                                                     std::function<double(double)> F,
                                                     std::function<double(double)> dF,
                                                     std::function<double(double)> d2F,
                                                     std::function<double(double)> U,
                                                     std::function<double(double)> dU) {
  if (!F || !dF || !d2F) throw std::invalid_argument("separable profile needs F, F', F''");
  if (static_cast<bool>(U) != static_cast<bool>(dU)) {
    throw std::invalid_argument("separable profile solution needs both U and U'");
  }
  ConductivityProfile p;
  p.kind_ = ProfileKind::separable_z;
  p.name_ = std::move(name);
  p.F_ = std::move(F);
  p.dF_ = std::move(dF);
  p.d2F_ = std::move(d2F);
  p.U_ = std::move(U);
  p.dU_ = std::move(dU);
  return p;
}

ConductivityProfile ConductivityProfile::linear_z(double a, double b) {
  if (b == 0.0) return constant(a);
  return separable_z(
      "linear_z", [a, b](double z) { return a + b * z; }, [b](double) { return b; },
      [](double) { return 0.0; }, [a, b](double z) { return -1.0 / (b * (a + b * z)); },
      [a, b](double z) { return 1.0 / ((a + b * z) * (a + b * z)); });
}

ConductivityProfile ConductivityProfile::sampled(ScalarField f) {
  ConductivityProfile p;
  p.kind_ = ProfileKind::sampled;
  p.name_ = "sampled";
  p.sample_grad_ = vlab::gradient(f);
  p.sample_lap_ = vlab::laplacian(f);
  p.samples_ = std::move(f);
  return p;
}

bool ConductivityProfile::depends_only_on_z() const {
  switch (kind_) {
    case ProfileKind::constant:
    case ProfileKind::separable_z:
      return true;
    case ProfileKind::exponential:
      return lambda_[0] == 0.0 && lambda_[1] == 0.0;
    case ProfileKind::sampled:
      return false;
  }
  return false;
}

double ConductivityProfile::value(const Vec3& x) const {
  switch (kind_) {
    case ProfileKind::constant: return amplitude_;
    case ProfileKind::exponential: return amplitude_ * std::exp(dot(lambda_, x));
    case ProfileKind::separable_z: return F_(x[2]);
    case ProfileKind::sampled: return interpolate(*samples_, x);
  }
  return 0.0;
}

Vec3 ConductivityProfile::gradient(const Vec3& x) const {
  switch (kind_) {
    case ProfileKind::constant: return {0.0, 0.0, 0.0};
    case ProfileKind::exponential: return value(x) * lambda_;
    case ProfileKind::separable_z: return {0.0, 0.0, dF_(x[2])};
    case ProfileKind::sampled: {
      Vec3 g{};
      for (int d = 0; d < 3; ++d) {
        ScalarField comp(samples_->grid);
        for (std::size_t i = 0; i < comp.values.size(); ++i) comp[i] = (*sample_grad_)[i][d];
        g[d] = interpolate(comp, x);
      }
      return g;
    }
  }
  return {};
}

double ConductivityProfile::laplacian(const Vec3& x) const {
  switch (kind_) {
    case ProfileKind::constant: return 0.0;
    case ProfileKind::exponential: return dot(lambda_, lambda_) * value(x);
    case ProfileKind::separable_z: return d2F_(x[2]);
    case ProfileKind::sampled: return interpolate(*sample_lap_, x);
  }
  return 0.0;
}

Vec3 ConductivityProfile::alpha(const Vec3& x) const {
  const double f = value(x);
  return (1.0 / f) * gradient(x);
}

double ConductivityProfile::q(const Vec3& x) const { return laplacian(x) / value(x); }

const ScalarField& ConductivityProfile::samples_on(const BoxGrid& g) const {
  require_same_grid(samples_->grid, g);
  return *samples_;
}

ScalarField ConductivityProfile::f_field(const BoxGrid& g) const {
  if (kind_ == ProfileKind::sampled) return samples_on(g);
  return ScalarField::sample(g, [this](const Vec3& x) { return value(x); });
}

ScalarField ConductivityProfile::sigma_field(const BoxGrid& g) const {
  ScalarField s = f_field(g);
  for (double& v : s.values) v *= v;
  return s;
}

VectorField ConductivityProfile::grad_field(const BoxGrid& g) const {
  if (kind_ == ProfileKind::sampled) {
    samples_on(g);
    return *sample_grad_;
  }
  return VectorField::sample(g, [this](const Vec3& x) { return gradient(x); });
}

VectorField ConductivityProfile::alpha_field(const BoxGrid& g) const {
  const ScalarField f = f_field(g);
  VectorField a = grad_field(g);
  for (std::size_t i = 0; i < a.values.size(); ++i) a[i] = (1.0 / f[i]) * a[i];
  return a;
}

ScalarField ConductivityProfile::q_field(const BoxGrid& g) const {
  ScalarField out = f_field(g);
  if (kind_ == ProfileKind::sampled) {
    for (std::size_t i = 0; i < out.values.size(); ++i) out[i] = (*sample_lap_)[i] / out[i];
    return out;
  }
  for (std::size_t i = 0; i < out.values.size(); ++i) out[i] = q(g.node(i));
  return out;
}

std::pair<double, double> ConductivityProfile::bounds(const BoxGrid& g) const {
  const ScalarField f = f_field(g);
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (double v : f.values) {
    lo = std::min(lo, std::abs(v));
    hi = std::max(hi, std::abs(v));
  }
  return {lo, hi};
}

void ConductivityProfile::require_away_from_zero(const BoxGrid& g) const {
  if (!(bounds(g).first > 0.0)) {
    throw std::invalid_argument("conductivity factor " + name_ + " is not bounded away from zero");
  }
}

std::optional<ExactSolution> ConductivityProfile::z_solution() const {
  switch (kind_) {
    case ProfileKind::constant:
      return ExactSolution{[](const Vec3& x) { return x[2]; },
                           [](const Vec3&) { return Vec3{0.0, 0.0, 1.0}; }};
    case ProfileKind::exponential: {
      if (!depends_only_on_z() || lambda_[2] == 0.0) return std::nullopt;
      // (A^2 e^{2sz} U')' = 0 with U' = e^{-2sz}.
      const double s = lambda_[2];
      return ExactSolution{
          [s](const Vec3& x) { return -std::exp(-2.0 * s * x[2]) / (2.0 * s); },
          [s](const Vec3& x) { return Vec3{0.0, 0.0, std::exp(-2.0 * s * x[2])}; }};
    }
    case ProfileKind::separable_z: {
      if (!U_) return std::nullopt;
      auto U = U_;
      auto dU = dU_;
      return ExactSolution{[U](const Vec3& x) { return U(x[2]); },
                           [dU](const Vec3& x) { return Vec3{0.0, 0.0, dU(x[2])}; }};
    }
    case ProfileKind::sampled:
      return std::nullopt;
  }
  return std::nullopt;
}

ExactSolution exponential_conductivity_solution(const ConductivityProfile& f, const Vec3& mu) {
  if (f.kind() != ProfileKind::exponential) {
    throw std::invalid_argument("exponential solution family needs an exponential profile");
  }
  const Vec3 lam = f.lambda();
  const double mismatch = std::abs(dot(mu, mu) - dot(lam, lam));
  if (mismatch > 1e-12 * (1.0 + dot(lam, lam))) {
    throw std::invalid_argument("|mu| must equal |lambda|");
  }
  const Vec3 nu = mu - lam;
  return ExactSolution{[nu](const Vec3& x) { return std::exp(dot(nu, x)); },
                       [nu](const Vec3& x) { return std::exp(dot(nu, x)) * nu; }};
}

BeltramiCoefficient BeltramiCoefficient::from_profile(const ConductivityProfile& f,
                                                      const BoxGrid& g) {
  f.require_away_from_zero(g);
  ScalarField mu = f.f_field(g);
  for (double& v : mu.values) {
    const double f2 = v * v;
    v = (1.0 - f2) / (1.0 + f2);
  }
  return {std::move(mu)};
}

double BeltramiCoefficient::max_abs() const { return vlab::max_abs(mu); }

}  // namespace vlab
