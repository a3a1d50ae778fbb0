#pragma once

#include <string>

#include "vlab/fields.hpp"
#include "vlab/profile.hpp"

namespace vlab {

enum class Side { left, right };

/// |Dw - alpha conj(w)| (left) or |Dw - conj(w) alpha| (right), max coefficient
/// norm per node; zero on nodes closer than `layers` to the boundary.
ScalarField vekua_residual(const MultivectorField& w, const VectorField& alpha, Side side,
                           int layers = 2);

/// u = part03(w) / f + f part12(w).
MultivectorField beltrami_transform(const MultivectorField& w, const ConductivityProfile& f);

/// |Du - mu D conj(u)| per node, zero within `layers` of the boundary.
ScalarField beltrami_residual(const MultivectorField& u, const BeltramiCoefficient& mu,
                              int layers = 2);

/// Signs (s, t) with Vec D(dual v) = s curl v and [D(dual v)]_3 = t (div v) e123
/// in Cl(0,3), where dual(v) = v e123. Derived by applying D to the linear
/// monomials x_j e_i symbolically; throws std::logic_error if the algebra gives
/// no consistent sign.
struct DualitySigns {
  int curl = 0;
  int div = 0;
};
DualitySigns duality_curl_sign();

/// dual(v) = v e123, a bivector in Cl(0,n) for n >= 3.
Multivector dual_bivector(const Vec3& v, int n = 3);

enum class BivectorMethod { automatic, closed_form, vector_potential };

struct BivectorConstruction {
  MultivectorField bivector;
  VectorField potential;       // v with curl v = g
  std::string method;
  double div_residual = 0.0;   // max |div v| at interior nodes
  double curl_residual = 0.0;  // max |curl v - g| at interior nodes
  double g_divergence = 0.0;   // max |div g| * L / max|g|
};

/// Bivector B with w = f u0 + B solving Dw = (grad f / f) conj(w), from a
/// solution u0 of div(f^2 grad u0) = 0. Throws std::invalid_argument when
/// g = -f^2 grad u0 is not divergence-free to `div_tolerance` (relative).
BivectorConstruction construct_bivector_part(const ConductivityProfile& f, const ScalarField& u0,
                                             BivectorMethod method = BivectorMethod::automatic,
                                             double div_tolerance = 0.05);

/// w = f u0 + B.
MultivectorField assemble_vekua_solution(const ConductivityProfile& f, const ScalarField& u0,
                                         const MultivectorField& bivector);

/// <w, Dv - conj(v) alpha> = sc_inner(w, Dv - conj(v) alpha). Throws
/// std::invalid_argument when v is nonzero within two node layers of the boundary.
double hodge_orthogonality(const MultivectorField& w, const MultivectorField& v,
                           const VectorField& alpha);

/// Smooth bump (1 - |x - c|^2 / R^2)^4 inside the ball, 0 outside.
ScalarField compact_bump(const BoxGrid& g, const Vec3& center, double radius);

/// sqrt(sc_inner(w, w)).
double l2_norm(const MultivectorField& w);

}  // namespace vlab
