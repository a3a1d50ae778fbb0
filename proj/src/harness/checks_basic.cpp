#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include "study.hpp"
#include "vlab/clifford.hpp"
#include "vlab/fields.hpp"
#include "vlab/harness/checks.hpp"
#include "vlab/integral_ops.hpp"
#include "vlab/kernels.hpp"
#include "vlab/parallel.hpp"

namespace vlab::harness {

using detail::PointSample;
using detail::PointStudyResult;

namespace {

Multivector random_integer_multivector(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-5, 5);
  Multivector m(n);
  for (double& c : m.coeffs()) c = d(rng);
  return m;
}

int grade_sign_oracle(int k) { return ((k * (k + 1) / 2) % 2 == 0) ? 1 : -1; }

double max_abs_diff(const Multivector& a, const Multivector& b) { return (a - b).max_norm(); }

/// max |D(E/f) + alpha E/f| / scale over random pairs y != x, f = A exp(lambda . y),
/// all derivatives in closed form.
double fundamental_cauchy_residual(const Vec3& lambda, double amplitude, std::mt19937_64& rng,
                                   int count) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Multivector alpha = Multivector::vector(3, lambda);
  double worst = 0.0;
  for (int s = 0; s < count;) {
    const Vec3 x{u(rng), u(rng), u(rng)};
    const Vec3 y{u(rng), u(rng), u(rng)};
    const Vec3 d = y - x;
    if (norm(d) < 0.05) continue;
    ++s;
    const double f = amplitude * std::exp(dot(lambda, y));
    const Vec3 e = cauchy_E3(d);
    const Mat3 je = cauchy_E3_jacobian(d);
    Mat3 j{};
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) j[a][b] = (je[a][b] - e[a] * lambda[b]) / f;
    }
    const Multivector ef = Multivector::vector(3, (1.0 / f) * e);
    const Multivector r = dirac_from_jacobian(j) + alpha * ef;
    double jn = 0.0;
    for (const auto& row : je) {
      for (double v : row) jn = std::max(jn, std::abs(v));
    }
    const double scale = (norm(lambda) * norm(e) + jn) / std::abs(f);
    worst = std::max(worst, r.max_norm() / scale);
  }
  return worst;
}

/// Gauss-Legendre nodes and weights on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int m) {
  std::vector<double> x(m), w(m);
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return {x, w};
}

/// -sum over the sphere |y| = eps of grad k(y) . eta.
template <class GradFn>
double sphere_flux(double eps, GradFn&& grad) {
  const auto [ct, wt] = gauss_legendre(24);
  const int nphi = 48;
  double flux = 0.0;
  for (std::size_t a = 0; a < ct.size(); ++a) {
    const double st = std::sqrt(1.0 - ct[a] * ct[a]);
    for (int b = 0; b < nphi; ++b) {
      const double phi = 2.0 * std::numbers::pi * (b + 0.5) / nphi;
      const Vec3 eta{st * std::cos(phi), st * std::sin(phi), ct[a]};
      const double w = wt[a] * (2.0 * std::numbers::pi / nphi) * eps * eps;
      flux -= dot(grad(eps * eta), eta) * w;
    }
  }
  return flux;
}

Multivector smooth_multivector(const Vec3& x) {
  Multivector m(3);
  auto c = m.coeffs();
  c[0] = std::sin(1.3 * x[0] + 0.7 * x[1]) * std::cos(0.9 * x[2]);
  c[1] = std::exp(0.5 * x[2]) * x[0];
  c[2] = std::cos(2.0 * x[1]) + x[0] * x[2];
  c[3] = std::sin(x[0] * x[1] + x[2]);
  c[4] = std::exp(-x[0]) * std::sin(1.7 * x[2]);
  c[5] = std::cos(x[0] + 2.0 * x[1] - x[2]);
  c[6] = x[1] * x[1] * std::sin(x[2]);
  c[7] = std::exp(0.3 * (x[0] + x[1] + x[2]));
  return m;
}

}  // namespace

CheckReport check_algebra(const SuiteConfig& cfg) {
  CheckReport rep;
  detail::set_header(rep, cfg, "algebra");
  rep.norms = "exact equality of integer blade signs and integer-coefficient products";
  std::mt19937_64 rng(cfg.seed);

  double assoc_fail = 0, assoc_mv_fail = 0, anticomm_fail = 0, square_fail = 0;
  double anti_auto_fail = 0, pattern_fail = 0, table_fail = 0;
  for (int n : {3, 4}) {
    const std::uint32_t count = 1u << n;
    std::vector<Multivector> blades;
    for (std::uint32_t a = 0; a < count; ++a) blades.push_back(Multivector::blade(n, {a}));
    for (std::uint32_t a = 0; a < count; ++a) {
      for (std::uint32_t b = 0; b < count; ++b) {
        const Multivector ab = blades[a] * blades[b];
        if (!(conjugate(ab) == conjugate(blades[b]) * conjugate(blades[a]))) ++anti_auto_fail;
        for (std::uint32_t c = 0; c < count; ++c) {
          const int s1 = blade_product_sign({a}, {b}) * blade_product_sign({a ^ b}, {c});
          const int s2 = blade_product_sign({b}, {c}) * blade_product_sign({a}, {b ^ c});
          if (s1 != s2) ++assoc_fail;
          if (!(ab * blades[c] == blades[a] * (blades[b] * blades[c]))) ++assoc_fail;
        }
        const int t = blade_product_sign_table({a}, {b});
        if (t != blade_product_sign({a}, {b}) || t != blade_product_sign_by_reduction({a}, {b})) {
          ++table_fail;
        }
      }
      const int k = BladeIndex{a}.grade();
      if (!(conjugate(blades[a]) == grade_sign_oracle(k) * blades[a])) ++pattern_fail;
      if (conjugation_sign(k) != grade_sign_oracle(k)) ++pattern_fail;
    }
    for (int i = 1; i <= n; ++i) {
      const Multivector ei = Multivector::blade(n, generator(i));
      if (!(ei * ei == Multivector::scalar(n, -1.0))) ++square_fail;
      for (int j = 1; j <= n; ++j) {
        if (i == j) continue;
        const Multivector ej = Multivector::blade(n, generator(j));
        if (!(ei * ej + ej * ei == Multivector(n))) ++anticomm_fail;
      }
    }
    for (int s = 0; s < 200; ++s) {
      const Multivector a = random_integer_multivector(n, rng);
      const Multivector b = random_integer_multivector(n, rng);
      const Multivector c = random_integer_multivector(n, rng);
      if (!((a * b) * c == a * (b * c))) ++assoc_mv_fail;
      if (!(conjugate(a * b) == conjugate(b) * conjugate(a))) ++anti_auto_fail;
    }
  }
  for (int n = 5; n <= kMaxAlgebraDim; ++n) {
    const std::uint32_t count = 1u << n;
    for (std::uint32_t a = 0; a < count; ++a) {
      for (std::uint32_t b = 0; b < count; ++b) {
        if (blade_product_sign({a}, {b}) != blade_product_sign_by_reduction({a}, {b})) {
          ++table_fail;
        }
      }
    }
  }

  rep.require("blade-triple associativity failures (n = 3, 4)", assoc_fail, "<=", 0);
  rep.require("integer multivector associativity failures", assoc_mv_fail, "<=", 0);
  rep.require("anticommutation failures", anticomm_fail, "<=", 0);
  rep.require("generator square failures", square_fail, "<=", 0);
  rep.require("conjugation anti-automorphism failures", anti_auto_fail, "<=", 0);
  rep.require("grade-sign pattern failures", pattern_fail, "<=", 0);
  rep.require("sign table cross-check failures", table_fail, "<=", 0);
  return rep;
}

CheckReport check_operator_consistency(const SuiteConfig& cfg) {
  CheckReport rep;
  detail::set_header(rep, cfg, "operator_consistency");
  rep.norms = "max coefficient norm of D(Dw) + lap w over nodes two layers inside";

  std::vector<double> errs;
  for (int r : cfg.resolutions) {
    const BoxGrid g = BoxGrid::unit_cube(r);
    const MultivectorField w = MultivectorField::sample(g, 3, smooth_multivector);
    const MultivectorField res = dirac_D(dirac_D(w)) + laplacian(w);
    const double e = max_norm(res, interior_nodes(g, 2));
    errs.push_back(e);
    rep.errors.push_back({r, unit_spacing(r), e, 0.0});
  }
  rep.convergence.push_back(convergence_series("smooth field", cfg.resolutions, errs));
  rep.set_metric("smooth: error at finest", errs.back());
  if (errs.size() >= 2) {
    const double p = *rep.convergence.back().rows.back().order;
    rep.set_metric("smooth: order", p);
    rep.require("smooth field: measured order", p, ">=", 1.9);
  }

  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<int> d(-3, 3);
  std::vector<std::array<double, 10>> poly(8);
  for (auto& c : poly) {
    for (double& v : c) v = d(rng);
  }
  const BoxGrid g = BoxGrid::unit_cube(cfg.resolutions.front());
  const MultivectorField q = MultivectorField::sample(g, 3, [&](const Vec3& x) {
    Multivector m(3);
    for (std::size_t b = 0; b < 8; ++b) {
      const auto& c = poly[b];
      m.coeffs()[b] = c[0] + c[1] * x[0] + c[2] * x[1] + c[3] * x[2] + c[4] * x[0] * x[0] +
                      c[5] * x[1] * x[1] + c[6] * x[2] * x[2] + c[7] * x[0] * x[1] +
                      c[8] * x[1] * x[2] + c[9] * x[0] * x[2];
    }
    return m;
  });
  const MultivectorField lq = laplacian(q);
  const auto inner = interior_nodes(g, 1);
  const double scale = std::max(1.0, max_norm(lq, inner));
  const double eq = max_norm(dirac_D(dirac_D(q)) + lq, inner) / scale;
  rep.set_metric("quadratic: relative error", eq);
  rep.require("quadratic field: exact at interior nodes", eq, "<=", 1e-12);
  return rep;
}

CheckReport check_cauchy_theorem(const SuiteConfig& cfg) {
  CheckReport rep;
  detail::set_header(rep, cfg, "cauchy_theorem");
  rep.norms = "|Sc int E(y-x) eta ds - 1| inside, |Sc int ...| outside";
  detail::PointStudyOptions opts;
  opts.series = "v = 1";
  opts.assert_ratio = false;
  detail::run_point_study(
      rep, cfg,
      [](const BoxGrid& g, const EvaluationSet& pts) {
        const BoundaryTrace trace = trace_from_function(
            boundary_sampling(g), 3, [](const Vec3&) { return Multivector::scalar(3, 1.0); });
        PointStudyResult out;
        out.samples.resize(pts.size());
        out.scale = 1.0;
        parallel_for(pts.size(), [&](std::size_t i) {
          const auto& p = pts.points()[i];
          const double c = scalar_part(cauchy_boundary(KernelSpec::cauchy(), trace, p.position));
          const double e = p.region == Region::interior ? 1.0 : 0.0;
          out.samples[i] = {c, e, std::abs(c - e)};
        });
        return out;
      },
      opts);
  return rep;
}

CheckReport check_borel_pompeiu(const SuiteConfig& cfg) {
  CheckReport rep;
  detail::set_header(rep, cfg, "borel_pompeiu");
  rep.norms = "max coefficient norm of the full multivector residual over ||v||_inf";
  detail::PointStudyOptions opts;
  opts.series = "v = x1^2 e2";
  detail::run_point_study(
      rep, cfg,
      [](const BoxGrid& g, const EvaluationSet& pts) {
        const MultivectorField v = MultivectorField::sample(g, 3, [](const Vec3& x) {
          return Multivector::blade(3, generator(2), x[0] * x[0]);
        });
        const auto terms = borel_pompeiu_terms(v, pts);
        PointStudyResult out;
        out.scale = max_norm(v);
        const BladeIndex e2 = generator(2);
        for (const auto& t : terms) {
          out.samples.push_back({(t.volume + t.boundary)[e2], t.expected[e2],
                                 t.residual.max_norm()});
        }
        return out;
      },
      opts);
  return rep;
}

CheckReport check_kernel_identities(const SuiteConfig& cfg) {
  CheckReport rep;
  detail::set_header(rep, cfg, "kernel_identities");
  rep.norms = "relative max coefficient error at seeded random points";
  std::mt19937_64 rng(cfg.seed);

  Vec3 lambda{0.0, 0.0, 1.0};
  double amplitude = 1.0;
  if (cfg.profile.kind == "exponential") {
    lambda = cfg.profile.lambda;
    amplitude = cfg.profile.amplitude;
  }
  const double fc = fundamental_cauchy_residual(lambda, amplitude, rng, 100);
  rep.set_metric("fundamental Cauchy residual", fc);
  rep.require("(D - (grad f/f) C)(E/f) = 0 away from 0, 100 points", fc, "<=", 1e-12);

  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double mono = 0.0;
  double grad_n = 0.0;
  for (int s = 0; s < 100; ++s) {
    Vec3 x{u(rng), u(rng), u(rng)};
    if (norm(x) < 0.05) x = {0.5, 0.5, 0.5};
    const Mat3 j = cauchy_E3_jacobian(x);
    double jn = 0.0;
    for (const auto& row : j) {
      for (double v : row) jn = std::max(jn, std::abs(v));
    }
    mono = std::max(mono, dirac_from_jacobian(j).max_norm() / jn);
    for (int n = 3; n <= 6; ++n) {
      std::vector<double> xn(n);
      for (double& c : xn) c = u(rng);
      if (std::sqrt(std::inner_product(xn.begin(), xn.end(), xn.begin(), 0.0)) < 0.05) {
        xn[0] = 0.5;
      }
      const NewtonValue nv = newton_N(xn);
      const Multivector e = cauchy_E(xn);
      double emax = 0.0;
      double diff = 0.0;
      for (int i = 0; i < n; ++i) {
        const double ei = e.coeff(1u << i);
        emax = std::max(emax, std::abs(ei));
        diff = std::max(diff, std::abs(nv.gradient[i] - ei));
      }
      grad_n = std::max(grad_n, diff / emax);
    }
  }
  rep.set_metric("DE relative residual", mono);
  rep.set_metric("grad N - E relative", grad_n);
  rep.require("E monogenic away from 0", mono, "<=", 1e-12);
  rep.require("grad N == E, n = 3..6", grad_n, "<=", 1e-12);

  const double q = dot(lambda, lambda) > 0.0 ? dot(lambda, lambda) : 1.0;
  const std::vector<double> eps{0.2, 0.1, 0.05};
  std::vector<double> yerr;
  double nerr = 0.0;
  Json flux = Json::array();
  for (double e : eps) {
    const double fy = sphere_flux(e, [q](const Vec3& y) { return yukawa_theta(y, q).gradient; });
    const double fn = sphere_flux(e, [](const Vec3& y) { return newton_N3(y).gradient; });
    yerr.push_back(std::abs(fy - 1.0));
    nerr = std::max(nerr, std::abs(fn - 1.0));
    flux.push_back({{"eps", e}, {"yukawa_flux", fy}, {"newton_flux", fn}});
  }
  rep.recorded["sphere_flux"] = flux;
  rep.recorded["yukawa_q"] = q;
  ConvergenceSeries ys{"yukawa flux error vs eps", {}};
  for (std::size_t i = 0; i < eps.size(); ++i) {
    ConvergenceRow row{0, eps[i], yerr[i], std::nullopt, false};
    if (i > 0) row.order = std::log(yerr[i - 1] / yerr[i]) / std::log(eps[i - 1] / eps[i]);
    ys.rows.push_back(row);
  }
  rep.convergence.push_back(ys);
  double min_order = ys.rows[1].order.value_or(0.0);
  double max_ratio = 0.0;
  for (std::size_t i = 1; i < ys.rows.size(); ++i) min_order = std::min(min_order, *ys.rows[i].order);
  for (std::size_t i = 0; i < eps.size(); ++i) max_ratio = std::max(max_ratio, yerr[i] / eps[i]);
  rep.set_metric("yukawa flux error at eps = 0.05", yerr.back());
  rep.set_metric("yukawa flux min order", min_order);
  rep.set_metric("yukawa flux max error / eps", max_ratio);
  rep.set_metric("newton flux max error", nerr);
  rep.require("Yukawa flux error order in eps", min_order, ">=", 0.9);
  rep.require("Yukawa flux error / eps bounded by q", max_ratio, "<=", q);
  rep.require("Newton flux exact", nerr, "<=", 1e-12);
  return rep;
}

namespace {

/// Polynomial in x1 with multivector coefficients, index = power.
using Poly = std::vector<Multivector>;

Poly poly_derivative(const Poly& p) {
  Poly out;
  for (std::size_t k = 1; k < p.size(); ++k) out.push_back(static_cast<double>(k) * p[k]);
  if (out.empty()) out.push_back(Multivector(3));
  return out;
}

Poly poly_map(const Poly& p, const std::function<Multivector(const Multivector&)>& fn) {
  Poly out;
  for (const auto& c : p) out.push_back(fn(c));
  return out;
}

Poly poly_add(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Multivector(3));
  for (std::size_t k = 0; k < b.size(); ++k) a[k] += b[k];
  return a;
}

/// D p for p depending on x1 only: e1 dp/dx1.
Poly poly_dirac(const Poly& p) {
  const Multivector e1 = Multivector::blade(3, generator(1));
  return poly_map(poly_derivative(p), [&](const Multivector& c) { return e1 * c; });
}

double poly_max_diff(const Poly& a, const Poly& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < std::max(a.size(), b.size()); ++k) {
    const Multivector ak = k < a.size() ? a[k] : Multivector(3);
    const Multivector bk = k < b.size() ? b[k] : Multivector(3);
    m = std::max(m, max_abs_diff(ak, bk));
  }
  return m;
}

struct LocalProfile {
  static double f(const Vec3& x) {
    return 2.0 + 0.5 * std::sin(x[0]) * std::cos(x[1]) + 0.25 * x[2] * x[2];
  }
  static Vec3 grad(const Vec3& x) {
    return {0.5 * std::cos(x[0]) * std::cos(x[1]), -0.5 * std::sin(x[0]) * std::sin(x[1]),
            0.5 * x[2]};
  }
  static double lap(const Vec3& x) { return -std::sin(x[0]) * std::cos(x[1]) + 0.5; }
};

/// (D - M^alpha C)(D - alpha C) h0 = D u + u alpha with u = D h0 - alpha h0.
MultivectorField factored_side(const ScalarField& h0, const VectorField& alpha) {
  const MultivectorField h = MultivectorField::from_scalar(h0);
  const MultivectorField a = MultivectorField::from_vector(alpha);
  const MultivectorField u = dirac_D(h) - multiply(a, h);
  return dirac_D(u) + multiply(u, a);
}

}  // namespace

CheckReport check_factorizations(const SuiteConfig& cfg) {
  CheckReport rep;
  detail::set_header(rep, cfg, "factorizations");
  rep.norms = "max coefficient norm over nodes two layers inside, relative to the left side";
  std::mt19937_64 rng(cfg.seed);

  // alpha = c e1, h0 = x1^2, expanded as polynomials in x1.
  const double c = 0.5;
  const Multivector alpha = Multivector::blade(3, generator(1), c);
  const Poly h0{Multivector(3), Multivector(3), Multivector::scalar(3, 1.0)};
  const Poly u = poly_add(poly_dirac(h0), poly_map(h0, [&](const Multivector& m) {
                            return -(alpha * conjugate(m));
                          }));
  const Poly rhs = poly_add(poly_dirac(u), poly_map(u, [&](const Multivector& m) {
                              return -(conjugate(m) * alpha);
                            }));
  const Poly lap = poly_derivative(poly_derivative(h0));
  const double a2 = scalar_part(alpha * conjugate(alpha));
  const Poly lhs = poly_add(poly_map(lap, [](const Multivector& m) { return -m; }),
                            poly_map(h0, [&](const Multivector& m) { return a2 * m; }));
  const Poly oracle{Multivector::scalar(3, -2.0), Multivector(3), Multivector::scalar(3, c * c)};
  rep.set_metric("symbolic: factored side - oracle", poly_max_diff(rhs, oracle));
  rep.set_metric("symbolic: left side - oracle", poly_max_diff(lhs, oracle));
  rep.require("symbolic alpha = c e1, h0 = x1^2: factored side == -2 + c^2 x1^2",
              poly_max_diff(rhs, oracle), "<=", 0.0);
  rep.require("symbolic alpha = c e1, h0 = x1^2: left side == -2 + c^2 x1^2",
              poly_max_diff(lhs, oracle), "<=", 0.0);

  {
    const BoxGrid g = BoxGrid::unit_cube(cfg.resolutions.front());
    const ScalarField hq = ScalarField::sample(g, [](const Vec3& x) { return x[0] * x[0]; });
    const VectorField ac = VectorField::sample(g, [c](const Vec3&) { return Vec3{c, 0.0, 0.0}; });
    const MultivectorField fr = factored_side(hq, ac);
    double err = 0.0;
    for (std::size_t n : interior_nodes(g, 2)) {
      const double x1 = g.node(n)[0];
      err = std::max(err, (fr.value(n) - Multivector::scalar(3, -2.0 + c * c * x1 * x1)).max_norm());
    }
    rep.set_metric("stencil: quadratic case error", err);
    rep.require("stencil factored side on x1^2 matches -2 + c^2 x1^2", err, "<=", 1e-12);
  }

  const auto h0s = detail::random_smooth_functions(rng, 3);
  std::uniform_real_distribution<double> ud(-1.0, 1.0);
  const Vec3 aconst{ud(rng), ud(rng), ud(rng)};
  std::vector<double> e_const, e_var, e_red, e_zero;
  for (int r : cfg.resolutions) {
    const BoxGrid g = BoxGrid::unit_cube(r);
    const auto inner = interior_nodes(g, 2);
    const VectorField a_const = VectorField::sample(g, [&](const Vec3&) { return aconst; });
    const VectorField a_zero(g);
    const VectorField a_var = VectorField::sample(
        g, [](const Vec3& x) { return (1.0 / LocalProfile::f(x)) * LocalProfile::grad(x); });
    const ScalarField qf =
        ScalarField::sample(g, [](const Vec3& x) { return LocalProfile::lap(x) / LocalProfile::f(x); });
    double wc = 0.0, wv = 0.0, wr = 0.0, wz = 0.0;
    for (const auto& fn : h0s) {
      const ScalarField h = ScalarField::sample(g, fn);
      const MultivectorField hm = MultivectorField::from_scalar(h);
      const MultivectorField lh = laplacian(hm);
      auto general_lhs = [&](const VectorField& a) {
        const MultivectorField am = MultivectorField::from_vector(a);
        const MultivectorField da = dirac_D(am);
        ScalarField a2f(g);
        for (std::size_t n = 0; n < g.node_count(); ++n) a2f[n] = dot(a[n], a[n]);
        MultivectorField l = scale(hm, a2f);
        l -= lh;
        l -= multiply(da, hm);
        return l;
      };
      auto rel = [&](const MultivectorField& l, const MultivectorField& rr) {
        return max_norm(l - rr, inner) / max_norm(l, inner);
      };
      wc = std::max(wc, rel(general_lhs(a_const), factored_side(h, a_const)));
      wv = std::max(wv, rel(general_lhs(a_var), factored_side(h, a_var)));
      MultivectorField l3 = scale(hm, qf);
      l3 -= lh;
      wr = std::max(wr, rel(l3, factored_side(h, a_var)));
      MultivectorField l0 = lh;
      l0 *= -1.0;
      wz = std::max(wz, rel(l0, factored_side(h, a_zero)));
    }
    e_const.push_back(wc);
    e_var.push_back(wv);
    e_red.push_back(wr);
    e_zero.push_back(wz);
    rep.errors.push_back({r, unit_spacing(r), std::max({wc, wv, wr}), 0.0});
  }
  rep.convergence.push_back(convergence_series("constant alpha", cfg.resolutions, e_const));
  rep.convergence.push_back(convergence_series("alpha = grad f / f", cfg.resolutions, e_var));
  rep.convergence.push_back(
      convergence_series("-lap + lap f / f reduction", cfg.resolutions, e_red));
  rep.convergence.push_back(convergence_series("alpha = 0", cfg.resolutions, e_zero));
  for (const auto& s : rep.convergence) {
    rep.set_metric(s.name + ": error at finest", s.rows.back().error);
    if (s.rows.size() >= 2 && s.rows.back().order) {
      rep.set_metric(s.name + ": order", *s.rows.back().order);
      rep.require(s.name + ": stencil order", *s.rows.back().order, ">=", 0.9);
    }
  }

  const double fc = fundamental_cauchy_residual(aconst, 1.0, rng, 100);
  rep.set_metric("fundamental Cauchy residual", fc);
  rep.require("(D - (grad f/f) C)(E/f) = 0 at 100 random points", fc, "<=", 1e-12);
  return rep;
}

}  // namespace vlab::harness
