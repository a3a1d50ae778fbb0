#pragma once

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vlab/fields.hpp"
#include "vlab/grid.hpp"
#include "vlab/profile.hpp"

namespace vlab {

/// Boundary values ordered like BoxGrid::boundary_nodes().
using Trace = std::vector<double>;

Trace sample_trace(const BoxGrid& g, const std::function<double(const Vec3&)>& fn);
Trace restrict_to_boundary(const ScalarField& u);
/// Trace values multiplied nodewise by s on the boundary.
Trace scale_trace(const Trace& t, const ScalarField& s);
Trace divide_trace(const Trace& t, const ScalarField& s);

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolverOptions {
  double relative_tolerance = 1e-12;
  int max_iterations = 20000;
};

struct SolveStats {
  int iterations = 0;
  double relative_residual = 0.0;
};

/// Discrete energy a(u,v) = sum_e w_e sigma_e du dv / h^2 + sum_n w_n q_n u_n v_n
/// with trapezoid edge and node weights and harmonic-mean edge coefficients.
/// The stationarity equations at interior nodes are the conservative 7-point
/// stencil for -div(sigma grad u) + q u.
class EllipticForm {
 public:
  EllipticForm(ScalarField sigma, ScalarField q);
  static EllipticForm conductivity(const ScalarField& sigma);
  static EllipticForm schrodinger(const ScalarField& q);

  const BoxGrid& grid() const { return sigma_.grid; }
  const ScalarField& sigma() const { return sigma_; }
  const ScalarField& q() const { return q_; }

  double energy(const ScalarField& u, const ScalarField& v) const;
  /// (A u)_i = d a(u, e_i) at every node, boundary rows included.
  void apply(std::span<const double> u, std::span<double> out) const;
  /// Dirichlet solve: trace on boundary nodes, A u = 0 at interior nodes.
  ScalarField solve(const Trace& trace, SolveStats* stats = nullptr,
                    const SolverOptions& opts = {}) const;
  /// Same with -div(sigma grad u) + q u = source at interior nodes.
  ScalarField solve_with_source(const Trace& trace, const ScalarField& source,
                                SolveStats* stats = nullptr, const SolverOptions& opts = {}) const;

 private:
  ScalarField solve_impl(const Trace& trace, const ScalarField* source, SolveStats* stats,
                         const SolverOptions& opts) const;
  void apply_node(std::span<const double> u, int i, int j, int k, double& out) const;
  double edge_sigma(std::size_t a, std::size_t b) const;

  ScalarField sigma_;
  ScalarField q_;
};

/// div(f2 grad u) = 0 with u = trace on the boundary. Throws std::invalid_argument
/// for a non-positive coefficient, SolverError when CG stalls.
ScalarField solve_conductivity(const ScalarField& f2, const Trace& trace,
                               SolveStats* stats = nullptr);
/// (-lap + q) w = 0 for q >= 0 nodewise.
ScalarField solve_schrodinger(const ScalarField& q, const Trace& trace,
                              SolveStats* stats = nullptr);
/// Same with q = lap f / f, which may change sign.
ScalarField solve_schrodinger(const ConductivityProfile& f, const BoxGrid& g, const Trace& trace,
                              SolveStats* stats = nullptr);

enum class ProblemKind { conductivity, schrodinger };

struct DirichletProblem {
  ProblemKind kind = ProblemKind::conductivity;
  BoxGrid grid;
  ScalarField coefficient;  // sigma = f^2 or q
  Trace trace;

  static DirichletProblem conductivity(const ConductivityProfile& f, const BoxGrid& g, Trace t);
  static DirichletProblem schrodinger(const ConductivityProfile& f, const BoxGrid& g, Trace t);
  ScalarField solve(SolveStats* stats = nullptr) const;
};

enum class Extension { harmonic, multilinear, zero_interior };

/// Discrete-harmonic, transfinite multilinear, or zero-interior extension.
ScalarField extend_trace(const BoxGrid& g, const Trace& t, Extension kind);

/// Weak Dirichlet-to-Neumann pairing (Lambda phi, psi) = a(u_phi, E psi).
class DtnForm {
 public:
  static DtnForm conductivity(const ConductivityProfile& f, const BoxGrid& g);
  static DtnForm conductivity(const ScalarField& f2);
  static DtnForm schrodinger(const ConductivityProfile& f, const BoxGrid& g);
  static DtnForm schrodinger(const ScalarField& q);

  ProblemKind kind() const { return kind_; }
  const EllipticForm& form() const { return form_; }
  const BoxGrid& grid() const { return form_.grid(); }

  ScalarField solve(const Trace& phi) const { return form_.solve(phi); }
  double pair(const Trace& phi, const Trace& psi, Extension ext = Extension::harmonic) const;
  /// pair with the solution for phi already available.
  double pair_solved(const ScalarField& u_phi, const Trace& psi,
                     Extension ext = Extension::harmonic) const;
  /// Gram matrix M_ij = pair(basis_i, basis_j).
  std::vector<std::vector<double>> matrix(std::span<const Trace> basis) const;

 private:
  DtnForm(ProblemKind k, EllipticForm form) : kind_(k), form_(std::move(form)) {}
  ProblemKind kind_;
  EllipticForm form_;
};

double dtn_pair(const DtnForm& form, const Trace& phi, const Trace& psi,
                Extension ext = Extension::harmonic);

/// Trapezoid boundary integral of the nodewise product of traces times weight(y).
double boundary_integral(const BoxGrid& g, const Trace& a, const Trace& b,
                         const std::function<double(const Vec3&, const Vec3&)>& weight);

struct DtnRelationTerms {
  double conductivity_pair;   // (Lambda_f(phi/f), psi)
  double schrodinger_pair;    // (Lambda_q(phi), f psi)
  double boundary_term;       // int (grad f . eta) phi psi
  double residual;            // |c - s + b| / max(|c|, |s|, |b|)
};

DtnRelationTerms dtn_relation_terms(const ConductivityProfile& f, const BoxGrid& g,
                                    const Trace& phi, const Trace& psi);
double dtn_relation_residual(const ConductivityProfile& f, const BoxGrid& g, const Trace& phi,
                             const Trace& psi);

/// -int grad f . grad(w0 psi / f); psi must vanish on the two outermost layers.
double mq_product(const ConductivityProfile& f, const ScalarField& w0, const ScalarField& psi);

/// Rows: boundary-node index, face, x, y, z, value.
void write_trace_csv(const BoxGrid& g, const Trace& t, std::ostream& os);
void write_matrix_csv(const std::vector<std::vector<double>>& m, std::ostream& os);

/// Lowest face id a boundary node lies on.
int boundary_face(const BoxGrid& g, std::size_t node);

/// Throws std::invalid_argument when s is nonzero within `layers` of the boundary.
void require_compact_support(const ScalarField& s, int layers, const std::string& what);

}  // namespace vlab
