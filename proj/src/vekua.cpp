#include "vlab/vekua.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vlab/pde.hpp"

namespace vlab {

namespace {

constexpr std::uint32_t kE123 = 0b111;
// Misfit allowed between u0 and a U + b, relative to the range of u0; covers the
// discretisation error of a solver-produced u0.
constexpr double kAffineFitTolerance = 1e-2;

ScalarField interior_norms(const MultivectorField& r, int layers) {
  const BoxGrid& g = r.grid();
  ScalarField out(g, 0.0);
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    const auto idx = g.multi_index(n);
    if (!g.is_interior(idx[0], idx[1], idx[2], layers)) continue;
    double m = 0.0;
    for (double c : r.at(n)) m = std::max(m, std::abs(c));
    out[n] = m;
  }
  return out;
}

void require_no_boundary_support(const MultivectorField& v, int layers) {
  const BoxGrid& g = v.grid();
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    const auto idx = g.multi_index(n);
    if (g.is_interior(idx[0], idx[1], idx[2], layers)) continue;
    for (double c : v.at(n)) {
      if (c != 0.0) throw std::invalid_argument("test field touches the outer node layers");
    }
  }
}

// Least-squares fit u0 ~ a U + b over all nodes; returns (a, b, max misfit).
std::array<double, 3> fit_affine(const ScalarField& u0, const ExactSolution& U) {
  const BoxGrid& g = u0.grid;
  double su = 0, sv = 0, suu = 0, suv = 0;
  const double n = static_cast<double>(g.node_count());
  std::vector<double> basis(g.node_count());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    basis[i] = U.value(g.node(i));
    su += basis[i];
    sv += u0[i];
    suu += basis[i] * basis[i];
    suv += basis[i] * u0[i];
  }
  const double det = n * suu - su * su;
  double a = 0.0;
  if (det > 1e-300) a = (n * suv - su * sv) / det;
  const double b = (sv - a * su) / n;
  double misfit = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    misfit = std::max(misfit, std::abs(u0[i] - a * basis[i] - b));
  }
  return {a, b, misfit};
}

}  // namespace

ScalarField vekua_residual(const MultivectorField& w, const VectorField& alpha, Side side,
                           int layers) {
  require_same_grid(w.grid(), alpha.grid);
  const MultivectorField a = MultivectorField::from_vector(alpha, w.dimension());
  const MultivectorField cw = conjugate(w);
  MultivectorField r = dirac_D(w);
  r -= side == Side::left ? multiply(a, cw) : multiply(cw, a);
  return interior_norms(r, layers);
}

MultivectorField beltrami_transform(const MultivectorField& w, const ConductivityProfile& f) {
  f.require_away_from_zero(w.grid());
  const ScalarField fv = f.f_field(w.grid());
  MultivectorField u(w.grid(), w.dimension());
  for (std::size_t n = 0; n < w.node_count(); ++n) {
    auto src = w.at(n);
    auto dst = u.at(n);
    for (std::size_t b = 0; b < src.size(); ++b) {
      const int k = BladeIndex{static_cast<std::uint32_t>(b)}.grade();
      dst[b] = conjugation_sign(k) > 0 ? src[b] / fv[n] : src[b] * fv[n];
    }
  }
  return u;
}

ScalarField beltrami_residual(const MultivectorField& u, const BeltramiCoefficient& mu,
                              int layers) {
  require_same_grid(u.grid(), mu.mu.grid);
  MultivectorField r = dirac_D(u);
  r -= scale(dirac_D(conjugate(u)), mu.mu);
  return interior_norms(r, layers);
}

Multivector dual_bivector(const Vec3& v, int n) {
  return Multivector::vector(n, v) * Multivector::blade(n, BladeIndex{kE123});
}

DualitySigns duality_curl_sign() {
  // v = x_j e_i gives D(dual v) = e_j dual(e_i), curl v = e_j x e_i,
  // div v = delta_ij.
  DualitySigns s;
  for (int i = 0; i < 3; ++i) {
    Vec3 ei{0.0, 0.0, 0.0};
    ei[i] = 1.0;
    for (int j = 0; j < 3; ++j) {
      Vec3 ej{0.0, 0.0, 0.0};
      ej[j] = 1.0;
      const Multivector d = Multivector::blade(3, generator(j + 1)) * dual_bivector(ei, 3);
      const Vec3 c = cross(ej, ei);
      for (int a = 0; a < 3; ++a) {
        const double got = d.coeff(1u << a);
        if (c[a] == 0.0) {
          if (got != 0.0) throw std::logic_error("duality: curl pattern mismatch");
          continue;
        }
        const int sign = got == c[a] ? 1 : (got == -c[a] ? -1 : 0);
        if (sign == 0 || (s.curl != 0 && s.curl != sign)) {
          throw std::logic_error("duality: inconsistent curl sign");
        }
        s.curl = sign;
      }
      const double tri = d.coeff(kE123);
      const double div = i == j ? 1.0 : 0.0;
      if (div == 0.0) {
        if (tri != 0.0) throw std::logic_error("duality: divergence pattern mismatch");
      } else {
        const int sign = tri == div ? 1 : (tri == -div ? -1 : 0);
        if (sign == 0 || (s.div != 0 && s.div != sign)) {
          throw std::logic_error("duality: inconsistent divergence sign");
        }
        s.div = sign;
      }
    }
  }
  return s;
}

BivectorConstruction construct_bivector_part(const ConductivityProfile& f, const ScalarField& u0,
                                             BivectorMethod method, double div_tolerance) {
  const BoxGrid& g = u0.grid;
  f.require_away_from_zero(g);
  const ScalarField sigma = f.sigma_field(g);
  const ScalarField fv = f.f_field(g);

  VectorField gfield = vlab::gradient(u0);
  for (std::size_t n = 0; n < g.node_count(); ++n) gfield[n] = (-sigma[n]) * gfield[n];
  const double gmax = max_norm(gfield);

  BivectorConstruction out{MultivectorField(g, 3), VectorField(g), "", 0.0, 0.0, 0.0};
  if (gmax > 0.0) {
    const ScalarField dg = divergence(gfield);
    out.g_divergence = max_abs(dg, interior_nodes(g, 2)) * g.min_extent() / gmax;
    if (out.g_divergence > div_tolerance) {
      throw std::invalid_argument("-f^2 grad u0 is not divergence-free; u0 does not solve the "
                                  "conductivity equation");
    }
  }

  bool closed = false;
  Vec3 gconst{0.0, 0.0, 0.0};
  if (method != BivectorMethod::vector_potential && f.depends_only_on_z()) {
    if (auto U = f.z_solution()) {
      const auto [a, b, misfit] = fit_affine(u0, *U);
      (void)b;
      const auto [lo, hi] = std::minmax_element(u0.values.begin(), u0.values.end());
      if (misfit <= kAffineFitTolerance * std::max(*hi - *lo, 1e-300)) {
        const Vec3 c = g.origin() + 0.5 * g.extent();
        gconst = (-a * f.value(c) * f.value(c)) * U->gradient(c);
        closed = true;
      }
    }
  }
  if (method == BivectorMethod::closed_form && !closed) {
    throw std::invalid_argument("closed-form bivector path needs u0 = a U(x3) + b for a "
                                "separable profile carrying U");
  }

  const DualitySigns signs = duality_curl_sign();
  if (closed) {
    out.method = "closed_form";
    const Vec3 c = g.origin() + 0.5 * g.extent();
    for (std::size_t n = 0; n < g.node_count(); ++n) {
      out.potential[n] = 0.5 * cross(gconst, g.node(n) - c);
    }
  } else {
    out.method = "vector_potential";
    const EllipticForm lap = EllipticForm::conductivity(ScalarField(g, 1.0));
    const Trace zero(g.boundary_nodes().size(), 0.0);
    VectorField A(g);
    for (int d = 0; d < 3; ++d) {
      ScalarField src(g);
      for (std::size_t n = 0; n < g.node_count(); ++n) src[n] = gfield[n][d];
      const ScalarField ad = lap.solve_with_source(zero, src);
      for (std::size_t n = 0; n < g.node_count(); ++n) A[n][d] = ad[n];
    }
    out.potential = curl(A);
  }

  const auto inner = interior_nodes(g, 2);
  out.div_residual = max_abs(divergence(out.potential), inner);
  const VectorField cv = curl(out.potential);
  double cr = 0.0;
  for (std::size_t n : inner) cr = std::max(cr, norm(cv[n] - (closed ? gconst : gfield[n])));
  out.curl_residual = cr;

  for (std::size_t n = 0; n < g.node_count(); ++n) {
    Multivector b = dual_bivector(out.potential[n], 3);
    b *= signs.curl / fv[n];
    out.bivector.set(n, b);
  }
  return out;
}

MultivectorField assemble_vekua_solution(const ConductivityProfile& f, const ScalarField& u0,
                                         const MultivectorField& bivector) {
  require_same_grid(u0.grid, bivector.grid());
  const ScalarField fv = f.f_field(u0.grid);
  MultivectorField w = bivector;
  for (std::size_t n = 0; n < w.node_count(); ++n) w.at(n)[0] += fv[n] * u0[n];
  return w;
}

double hodge_orthogonality(const MultivectorField& w, const MultivectorField& v,
                           const VectorField& alpha) {
  require_same_grid(w.grid(), v.grid());
  require_same_grid(w.grid(), alpha.grid);
  require_no_boundary_support(v, 2);
  const MultivectorField a = MultivectorField::from_vector(alpha, v.dimension());
  MultivectorField t = dirac_D(v);
  t -= multiply(conjugate(v), a);
  return sc_inner(w, t);
}

ScalarField compact_bump(const BoxGrid& g, const Vec3& center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("bump radius must be positive");
  return ScalarField::sample(g, [&](const Vec3& x) {
    const Vec3 d = x - center;
    const double t = 1.0 - dot(d, d) / (radius * radius);
    return t > 0.0 ? t * t * t * t : 0.0;
  });
}

double l2_norm(const MultivectorField& w) { return std::sqrt(std::max(0.0, sc_inner(w, w))); }

}  // namespace vlab
