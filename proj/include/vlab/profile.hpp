#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "vlab/fields.hpp"
#include "vlab/grid.hpp"

namespace vlab {

enum class ProfileKind { constant, exponential, separable_z, sampled };

/// Scalar function together with its gradient.
struct ExactSolution {
  std::function<double(const Vec3&)> value;
  std::function<Vec3(const Vec3&)> gradient;
};

/// The scalar conductivity factor f, with f^2 the physical conductivity.
class ConductivityProfile {
 public:
  static ConductivityProfile constant(double c);
  /// f = amplitude * exp(lambda . x).
  static ConductivityProfile exponential(const Vec3& lambda, double amplitude = 1.0);
  /// f = F(x3). `U`/`dU` optionally give a solution of (F^2 U')' = 0.
  static ConductivityProfile separable_z(std::string name, std::function<double(double)> F,
                                         std::function<double(double)> dF,
                                         std::function<double(double)> d2F,
                                         std::function<double(double)> U = {},
                                         std::function<double(double)> dU = {});
  /// f = a + b x3.
  static ConductivityProfile linear_z(double a, double b);
  /// Nodal samples; derivatives come from the grid stencils.
  static ConductivityProfile sampled(ScalarField f);

  ProfileKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  bool closed_form() const { return kind_ != ProfileKind::sampled; }
  /// f depends on x3 only.
  bool depends_only_on_z() const;
  const Vec3& lambda() const { return lambda_; }

  double value(const Vec3& x) const;
  Vec3 gradient(const Vec3& x) const;
  double laplacian(const Vec3& x) const;
  Vec3 alpha(const Vec3& x) const;  // grad f / f
  double q(const Vec3& x) const;    // lap f / f

  ScalarField f_field(const BoxGrid& g) const;
  ScalarField sigma_field(const BoxGrid& g) const;  // f^2
  VectorField grad_field(const BoxGrid& g) const;
  VectorField alpha_field(const BoxGrid& g) const;
  ScalarField q_field(const BoxGrid& g) const;

  /// (min |f|, max |f|) over the grid nodes.
  std::pair<double, double> bounds(const BoxGrid& g) const;
  /// Throws std::invalid_argument unless min |f| > 0 on the grid.
  void require_away_from_zero(const BoxGrid& g) const;

  /// Solution U(x3) of the conductivity equation when the profile carries one.
  std::optional<ExactSolution> z_solution() const;

 private:
  ConductivityProfile() = default;
  const ScalarField& samples_on(const BoxGrid& g) const;

  ProfileKind kind_ = ProfileKind::constant;
  std::string name_;
  double amplitude_ = 1.0;
  Vec3 lambda_{0.0, 0.0, 0.0};
  std::function<double(double)> F_, dF_, d2F_, U_, dU_;
  std::optional<ScalarField> samples_;
  std::optional<VectorField> sample_grad_;
  std::optional<ScalarField> sample_lap_;
};

/// u = exp((mu - lambda) . x) solves div(f^2 grad u) = 0 for f = exp(lambda . x)
/// whenever |mu| = |lambda|.
ExactSolution exponential_conductivity_solution(const ConductivityProfile& f, const Vec3& mu);

/// mu = (1 - f^2) / (1 + f^2).
struct BeltramiCoefficient {
  ScalarField mu;

  static BeltramiCoefficient from_profile(const ConductivityProfile& f, const BoxGrid& g);
  /// max |mu| over the grid nodes.
  double max_abs() const;
};

}  // namespace vlab
