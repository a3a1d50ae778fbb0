#include "vlab/pde.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <ostream>

#include "vlab/parallel.hpp"

namespace vlab {

namespace {

double trapezoid_factor(int i, int r) { return (i == 0 || i == r - 1) ? 0.5 : 1.0; }

double harmonic_mean(double a, double b) { return 2.0 * a * b / (a + b); }

double dot_interior(const BoxGrid& g, std::span<const double> a, std::span<const double> b) {
  const auto r = g.resolution();
  double s = 0.0;
  for (int k = 1; k < r[2] - 1; ++k) {
    for (int j = 1; j < r[1] - 1; ++j) {
      for (int i = 1; i < r[0] - 1; ++i) {
        const std::size_t n = g.index(i, j, k);
        s += a[n] * b[n];
      }
    }
  }
  return s;
}

void check_trace(const BoxGrid& g, const Trace& t) {
  if (t.size() != g.boundary_nodes().size()) {
    throw std::invalid_argument("trace length does not match the boundary node count");
  }
}

}  // namespace

Trace sample_trace(const BoxGrid& g, const std::function<double(const Vec3&)>& fn) {
  Trace t;
  t.reserve(g.boundary_nodes().size());
  for (std::size_t n : g.boundary_nodes()) t.push_back(fn(g.node(n)));
  return t;
}

Trace restrict_to_boundary(const ScalarField& u) {
  Trace t;
  t.reserve(u.grid.boundary_nodes().size());
  for (std::size_t n : u.grid.boundary_nodes()) t.push_back(u[n]);
  return t;
}

Trace scale_trace(const Trace& t, const ScalarField& s) {
  check_trace(s.grid, t);
  Trace out(t.size());
  const auto& nodes = s.grid.boundary_nodes();
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = t[i] * s[nodes[i]];
  return out;
}

Trace divide_trace(const Trace& t, const ScalarField& s) {
  check_trace(s.grid, t);
  Trace out(t.size());
  const auto& nodes = s.grid.boundary_nodes();
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = t[i] / s[nodes[i]];
  return out;
}

EllipticForm::EllipticForm(ScalarField sigma, ScalarField q)
    : sigma_(std::move(sigma)), q_(std::move(q)) {
  require_same_grid(sigma_.grid, q_.grid);
  for (double s : sigma_.values) {
    if (!(s > 0.0)) throw std::invalid_argument("elliptic coefficient must be positive");
  }
}

EllipticForm EllipticForm::conductivity(const ScalarField& sigma) {
  return EllipticForm(sigma, ScalarField(sigma.grid, 0.0));
}

EllipticForm EllipticForm::schrodinger(const ScalarField& q) {
  return EllipticForm(ScalarField(q.grid, 1.0), q);
}

double EllipticForm::edge_sigma(std::size_t a, std::size_t b) const {
  return harmonic_mean(sigma_[a], sigma_[b]);
}

double EllipticForm::energy(const ScalarField& u, const ScalarField& v) const {
  require_same_grid(grid(), u.grid);
  require_same_grid(grid(), v.grid);
  const BoxGrid& g = grid();
  const auto r = g.resolution();
  const double cell = g.spacing(0) * g.spacing(1) * g.spacing(2);
  std::vector<double> terms;
  terms.reserve(4 * g.node_count());
  for (int d = 0; d < 3; ++d) {
    const double inv_h2 = 1.0 / (g.spacing(d) * g.spacing(d));
    std::array<int, 3> step{0, 0, 0};
    step[d] = 1;
    for (int k = 0; k < r[2] - step[2]; ++k) {
      for (int j = 0; j < r[1] - step[1]; ++j) {
        for (int i = 0; i < r[0] - step[0]; ++i) {
          const std::array<int, 3> idx{i, j, k};
          double w = cell * inv_h2;
          for (int e = 0; e < 3; ++e) {
            if (e != d) w *= trapezoid_factor(idx[e], r[e]);
          }
          const std::size_t a = g.index(i, j, k);
          const std::size_t b = g.index(i + step[0], j + step[1], k + step[2]);
          terms.push_back(w * edge_sigma(a, b) * (u[b] - u[a]) * (v[b] - v[a]));
        }
      }
    }
  }
  for (int k = 0; k < r[2]; ++k) {
    for (int j = 0; j < r[1]; ++j) {
      for (int i = 0; i < r[0]; ++i) {
        const std::size_t n = g.index(i, j, k);
        if (q_[n] != 0.0) terms.push_back(g.trapezoid_weight(i, j, k) * q_[n] * u[n] * v[n]);
      }
    }
  }
  return pairwise_sum(terms);
}

void EllipticForm::apply_node(std::span<const double> u, int i, int j, int k,
                              double& out) const {
  const BoxGrid& g = grid();
  const auto r = g.resolution();
  const std::array<int, 3> idx{i, j, k};
  const std::size_t n = g.index(i, j, k);
  const double cell = g.spacing(0) * g.spacing(1) * g.spacing(2);
  double acc = 0.0;
  for (int d = 0; d < 3; ++d) {
    double w = cell / (g.spacing(d) * g.spacing(d));
    for (int e = 0; e < 3; ++e) {
      if (e != d) w *= trapezoid_factor(idx[e], r[e]);
    }
    for (int s : {-1, 1}) {
      std::array<int, 3> nb = idx;
      nb[d] += s;
      if (nb[d] < 0 || nb[d] >= r[d]) continue;
      const std::size_t m = g.index(nb[0], nb[1], nb[2]);
      acc += w * edge_sigma(n, m) * (u[n] - u[m]);
    }
  }
  acc += g.trapezoid_weight(i, j, k) * q_[n] * u[n];
  out = acc;
}

void EllipticForm::apply(std::span<const double> u, std::span<double> out) const {
  const BoxGrid& g = grid();
  const auto r = g.resolution();
  for (int k = 0; k < r[2]; ++k) {
    for (int j = 0; j < r[1]; ++j) {
      for (int i = 0; i < r[0]; ++i) apply_node(u, i, j, k, out[g.index(i, j, k)]);
    }
  }
}

ScalarField EllipticForm::solve(const Trace& trace, SolveStats* stats,
                                const SolverOptions& opts) const {
  return solve_impl(trace, nullptr, stats, opts);
}

ScalarField EllipticForm::solve_with_source(const Trace& trace, const ScalarField& source,
                                            SolveStats* stats, const SolverOptions& opts) const {
  require_same_grid(grid(), source.grid);
  return solve_impl(trace, &source, stats, opts);
}

ScalarField EllipticForm::solve_impl(const Trace& trace, const ScalarField* source,
                                     SolveStats* stats, const SolverOptions& opts) const {
  const BoxGrid& g = grid();
  check_trace(g, trace);
  const auto r = g.resolution();
  const std::size_t nn = g.node_count();

  ScalarField u(g, 0.0);
  const auto& bnodes = g.boundary_nodes();
  for (std::size_t s = 0; s < bnodes.size(); ++s) u[bnodes[s]] = trace[s];

  auto apply_interior = [&](std::span<const double> x, std::span<double> y) {
    for (int k = 1; k < r[2] - 1; ++k) {
      for (int j = 1; j < r[1] - 1; ++j) {
        for (int i = 1; i < r[0] - 1; ++i) apply_node(x, i, j, k, y[g.index(i, j, k)]);
      }
    }
  };

  std::vector<double> res(nn, 0.0), z(nn, 0.0), p(nn, 0.0), ap(nn, 0.0), diag(nn, 0.0);
  apply_interior(u.values, res);
  for (double& v : res) v = -v;
  if (source) {
    const double cell = g.spacing(0) * g.spacing(1) * g.spacing(2);
    for (std::size_t n = 0; n < nn; ++n) res[n] += cell * (*source)[n];
  }
  for (std::size_t n : bnodes) res[n] = 0.0;

  {
    std::vector<double> unit(nn, 0.0);
    for (int k = 1; k < r[2] - 1; ++k) {
      for (int j = 1; j < r[1] - 1; ++j) {
        for (int i = 1; i < r[0] - 1; ++i) {
          const std::size_t n = g.index(i, j, k);
          unit[n] = 1.0;
          apply_node(unit, i, j, k, diag[n]);
          unit[n] = 0.0;
          if (!(diag[n] > 0.0)) throw SolverError("non-positive diagonal in elliptic system");
        }
      }
    }
  }

  const double r0 = std::sqrt(dot_interior(g, res, res));
  SolveStats st;
  if (r0 == 0.0) {
    if (stats) *stats = st;
    return u;
  }
  for (std::size_t n = 0; n < nn; ++n) z[n] = diag[n] > 0.0 ? res[n] / diag[n] : 0.0;
  p = z;
  double rz = dot_interior(g, res, z);
  std::vector<double> x(nn, 0.0);
  double rel = 1.0;
  int it = 0;
  for (; it < opts.max_iterations; ++it) {
    apply_interior(p, ap);
    const double pap = dot_interior(g, p, ap);
    if (!(pap > 0.0)) throw SolverError("elliptic system is not positive definite");
    const double a = rz / pap;
    for (std::size_t n = 0; n < nn; ++n) {
      x[n] += a * p[n];
      res[n] -= a * ap[n];
    }
    rel = std::sqrt(dot_interior(g, res, res)) / r0;
    if (rel <= opts.relative_tolerance) {
      ++it;
      break;
    }
    for (std::size_t n = 0; n < nn; ++n) z[n] = diag[n] > 0.0 ? res[n] / diag[n] : 0.0;
    const double rz_new = dot_interior(g, res, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t n = 0; n < nn; ++n) p[n] = z[n] + beta * p[n];
  }
  if (rel > opts.relative_tolerance) {
    throw SolverError("conjugate gradient did not converge (relative residual " +
                      std::to_string(rel) + ")");
  }
  for (int k = 1; k < r[2] - 1; ++k) {
    for (int j = 1; j < r[1] - 1; ++j) {
      for (int i = 1; i < r[0] - 1; ++i) {
        const std::size_t n = g.index(i, j, k);
        u[n] += x[n];
      }
    }
  }
  st.iterations = it;
  st.relative_residual = rel;
  if (stats) *stats = st;
  return u;
}

ScalarField solve_conductivity(const ScalarField& f2, const Trace& trace, SolveStats* stats) {
  return EllipticForm::conductivity(f2).solve(trace, stats);
}

ScalarField solve_schrodinger(const ScalarField& q, const Trace& trace, SolveStats* stats) {
  for (double v : q.values) {
    if (v < 0.0) {
      throw std::invalid_argument(
          "negative potential: pass the conductivity profile to certify well-posedness");
    }
  }
  return EllipticForm::schrodinger(q).solve(trace, stats);
}

ScalarField solve_schrodinger(const ConductivityProfile& f, const BoxGrid& g, const Trace& trace,
                              SolveStats* stats) {
  f.require_away_from_zero(g);
  return EllipticForm::schrodinger(f.q_field(g)).solve(trace, stats);
}

DirichletProblem DirichletProblem::conductivity(const ConductivityProfile& f, const BoxGrid& g,
                                                Trace t) {
  f.require_away_from_zero(g);
  check_trace(g, t);
  return {ProblemKind::conductivity, g, f.sigma_field(g), std::move(t)};
}

DirichletProblem DirichletProblem::schrodinger(const ConductivityProfile& f, const BoxGrid& g,
                                               Trace t) {
  f.require_away_from_zero(g);
  check_trace(g, t);
  return {ProblemKind::schrodinger, g, f.q_field(g), std::move(t)};
}

ScalarField DirichletProblem::solve(SolveStats* stats) const {
  if (kind == ProblemKind::conductivity) return solve_conductivity(coefficient, trace, stats);
  return EllipticForm::schrodinger(coefficient).solve(trace, stats);
}

ScalarField extend_trace(const BoxGrid& g, const Trace& t, Extension kind) {
  check_trace(g, t);
  switch (kind) {
    case Extension::harmonic:
      return EllipticForm::conductivity(ScalarField(g, 1.0)).solve(t);
    case Extension::zero_interior: {
      ScalarField u(g, 0.0);
      const auto& b = g.boundary_nodes();
      for (std::size_t s = 0; s < b.size(); ++s) u[b[s]] = t[s];
      return u;
    }
    case Extension::multilinear: {
      const auto r = g.resolution();
      ScalarField u(g, 0.0);
      auto at = [&](std::array<int, 3> idx) {
        return t[g.boundary_slot(g.index(idx[0], idx[1], idx[2]))];
      };
      for (int k = 0; k < r[2]; ++k) {
        for (int j = 0; j < r[1]; ++j) {
          for (int i = 0; i < r[0]; ++i) {
            const std::array<int, 3> idx{i, j, k};
            std::array<std::array<double, 2>, 3> w{};
            for (int d = 0; d < 3; ++d) {
              const double s = static_cast<double>(idx[d]) / (r[d] - 1);
              w[d] = {1.0 - s, s};
            }
            double v = 0.0;
            // Faces, minus edges, plus corners (Boolean sum of 1-D blends).
            for (int mask = 1; mask < 8; ++mask) {
              const int fixed = std::popcount(static_cast<unsigned>(mask));
              const double sign = (fixed % 2 == 1) ? 1.0 : -1.0;
              for (int ends = 0; ends < 8; ++ends) {
                if ((ends & ~mask) != 0) continue;
                std::array<int, 3> p = idx;
                double weight = 1.0;
                for (int d = 0; d < 3; ++d) {
                  if (!(mask & (1 << d))) continue;
                  const int e = (ends >> d) & 1;
                  p[d] = e ? r[d] - 1 : 0;
                  weight *= w[d][e];
                }
                if (weight != 0.0) v += sign * weight * at(p);
              }
            }
            u[g.index(i, j, k)] = v;
          }
        }
      }
      const auto& b = g.boundary_nodes();
      for (std::size_t s = 0; s < b.size(); ++s) u[b[s]] = t[s];
      return u;
    }
  }
  throw std::logic_error("unknown extension kind");
}

DtnForm DtnForm::conductivity(const ConductivityProfile& f, const BoxGrid& g) {
  f.require_away_from_zero(g);
  return conductivity(f.sigma_field(g));
}

DtnForm DtnForm::conductivity(const ScalarField& f2) {
  return DtnForm(ProblemKind::conductivity, EllipticForm::conductivity(f2));
}

DtnForm DtnForm::schrodinger(const ConductivityProfile& f, const BoxGrid& g) {
  f.require_away_from_zero(g);
  return DtnForm(ProblemKind::schrodinger, EllipticForm::schrodinger(f.q_field(g)));
}

DtnForm DtnForm::schrodinger(const ScalarField& q) {
  for (double v : q.values) {
    if (v < 0.0) throw std::invalid_argument("negative potential needs a conductivity profile");
  }
  return DtnForm(ProblemKind::schrodinger, EllipticForm::schrodinger(q));
}

double DtnForm::pair_solved(const ScalarField& u_phi, const Trace& psi, Extension ext) const {
  return form_.energy(u_phi, extend_trace(grid(), psi, ext));
}

double DtnForm::pair(const Trace& phi, const Trace& psi, Extension ext) const {
  return pair_solved(form_.solve(phi), psi, ext);
}

std::vector<std::vector<double>> DtnForm::matrix(std::span<const Trace> basis) const {
  std::vector<ScalarField> sols;
  std::vector<ScalarField> exts;
  for (const auto& b : basis) {
    sols.push_back(form_.solve(b));
    exts.push_back(extend_trace(grid(), b, Extension::harmonic));
  }
  std::vector<std::vector<double>> m(basis.size(), std::vector<double>(basis.size(), 0.0));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) m[i][j] = form_.energy(sols[i], exts[j]);
  }
  return m;
}

double dtn_pair(const DtnForm& form, const Trace& phi, const Trace& psi, Extension ext) {
  return form.pair(phi, psi, ext);
}

double boundary_integral(const BoxGrid& g, const Trace& a, const Trace& b,
                         const std::function<double(const Vec3&, const Vec3&)>& weight) {
  check_trace(g, a);
  check_trace(g, b);
  std::vector<double> terms;
  for (const auto& s : boundary_node_quadrature(g)) {
    const std::size_t slot = g.boundary_slot(s.node);
    terms.push_back(s.weight * a[slot] * b[slot] * weight(s.position, s.normal));
  }
  return pairwise_sum(terms);
}

DtnRelationTerms dtn_relation_terms(const ConductivityProfile& f, const BoxGrid& g,
                                    const Trace& phi, const Trace& psi) {
  const ScalarField fv = f.f_field(g);
  DtnRelationTerms t{};
  t.conductivity_pair = DtnForm::conductivity(f, g).pair(divide_trace(phi, fv), psi);
  t.schrodinger_pair = DtnForm::schrodinger(f, g).pair(phi, scale_trace(psi, fv));
  t.boundary_term = boundary_integral(
      g, phi, psi, [&f](const Vec3& y, const Vec3& eta) { return dot(f.gradient(y), eta); });
  const double scale = std::max(
      {std::abs(t.conductivity_pair), std::abs(t.schrodinger_pair), std::abs(t.boundary_term)});
  const double raw = t.conductivity_pair - t.schrodinger_pair + t.boundary_term;
  t.residual = scale > 0.0 ? std::abs(raw) / scale : 0.0;
  return t;
}

double dtn_relation_residual(const ConductivityProfile& f, const BoxGrid& g, const Trace& phi,
                             const Trace& psi) {
  return dtn_relation_terms(f, g, phi, psi).residual;
}

void require_compact_support(const ScalarField& s, int layers, const std::string& what) {
  const BoxGrid& g = s.grid;
  for (std::size_t n = 0; n < g.node_count(); ++n) {
    const auto idx = g.multi_index(n);
    if (!g.is_interior(idx[0], idx[1], idx[2], layers) && s[n] != 0.0) {
      throw std::invalid_argument(what + " is not compactly supported inside the box");
    }
  }
}

double mq_product(const ConductivityProfile& f, const ScalarField& w0, const ScalarField& psi) {
  require_same_grid(w0.grid, psi.grid);
  require_compact_support(psi, 2, "test function");
  const BoxGrid& g = w0.grid;
  f.require_away_from_zero(g);
  const ScalarField fv = f.f_field(g);
  ScalarField prod(g);
  for (std::size_t n = 0; n < prod.values.size(); ++n) prod[n] = w0[n] * psi[n] / fv[n];
  const VectorField gp = gradient(prod);
  const VectorField gf = f.grad_field(g);
  ScalarField integrand(g);
  for (std::size_t n = 0; n < integrand.values.size(); ++n) integrand[n] = -dot(gf[n], gp[n]);
  return integrate(integrand);
}

int boundary_face(const BoxGrid& g, std::size_t node) {
  const auto idx = g.multi_index(node);
  const auto r = g.resolution();
  for (int d = 0; d < 3; ++d) {
    if (idx[d] == 0) return 2 * d;
    if (idx[d] == r[d] - 1) return 2 * d + 1;
  }
  return -1;
}

void write_trace_csv(const BoxGrid& g, const Trace& t, std::ostream& os) {
  check_trace(g, t);
  os << "boundary_index,face,x,y,z,value\n";
  os.precision(17);
  const auto& b = g.boundary_nodes();
  for (std::size_t s = 0; s < b.size(); ++s) {
    const Vec3 x = g.node(b[s]);
    os << s << ',' << boundary_face(g, b[s]) << ',' << x[0] << ',' << x[1] << ',' << x[2] << ','
       << t[s] << '\n';
  }
}

void write_matrix_csv(const std::vector<std::vector<double>>& m, std::ostream& os) {
  os.precision(17);
  for (const auto& row : m) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << row[j];
    os << '\n';
  }
}

}  // namespace vlab
