#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "vlab/clifford.hpp"
#include "vlab/fields.hpp"
#include "vlab/grid.hpp"
#include "vlab/kernels.hpp"

namespace vlab {

enum class Region { interior, exterior };

struct EvalPoint {
  Vec3 position;
  Region region;
};

/// Points tagged inside or outside the box, each at least `margin` from the
/// boundary.
class EvaluationSet {
 public:
  EvaluationSet(const BoxGrid& domain, std::vector<EvalPoint> points, double margin);

  static double default_margin(const BoxGrid& domain) { return 0.2 * domain.min_extent(); }

  /// per_axis^3 interior points on a lattice spanning the margin-shrunk box,
  /// each snapped inward to the nearest cell centre of `domain`, plus eight
  /// exterior points (one beyond every face, two off opposite corners).
  static EvaluationSet standard(const BoxGrid& domain, int per_axis = 3, double margin = -1.0);

  const std::vector<EvalPoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  double margin() const { return margin_; }
  std::vector<Vec3> positions() const;

 private:
  std::vector<EvalPoint> points_;
  double margin_;
};

/// Nearest cell centre to x, moved inward until it keeps `margin` from the
/// boundary.
Vec3 snap_to_cell_center(const BoxGrid& grid, const Vec3& x, double margin);

/// Midpoint quadrature over the grid cells, with the density of each cell taken
/// as the mean of its eight corner nodes. Cells whose closed box contains the
/// evaluation point are dropped.
class CellQuadrature {
 public:
  explicit CellQuadrature(const MultivectorField& density);
  explicit CellQuadrature(const ScalarField& density);

  const BoxGrid& grid() const { return grid_; }
  std::size_t blades() const { return blades_; }
  int dimension() const { return n_; }

  /// sum_cells K(c - x) * rho_c * |cell| with K vector-valued (left product).
  template <class Kernel>
  Multivector vector_kernel(const Vec3& x, Kernel&& kernel) const;

  /// sum_cells k(c - x) * rho_c * |cell| with k scalar-valued.
  template <class Kernel>
  Multivector scalar_kernel(const Vec3& x, Kernel&& kernel) const;

  /// Inclusive cell index ranges per axis holding cells that contain x.
  std::array<std::array<int, 2>, 3> containing_cells(const Vec3& x) const;

 private:
  BoxGrid grid_;
  int n_ = 3;
  std::size_t blades_ = 1;
  double cell_volume_ = 0.0;
  std::vector<Vec3> centers_;
  std::vector<double> values_;  // cells x blades
};

std::vector<Multivector> teodorescu(const MultivectorField& g, const EvaluationSet& pts);
std::vector<Multivector> teodorescu(const MultivectorField& g, std::span<const Vec3> pts);

/// Multivector values at boundary quadrature samples.
struct BoundaryTrace {
  std::vector<BoundarySample> samples;
  std::vector<Multivector> values;
};

BoundaryTrace trace_from_function(std::vector<BoundarySample> samples, int n,
                                  const std::function<Multivector(const Vec3&)>& fn);
BoundaryTrace trace_from_field(std::vector<BoundarySample> samples, const MultivectorField& w);

/// sum_samples kernel(y - x) * eta(y) * trace(y) * weight. Throws
/// std::invalid_argument when x is within one face-cell diameter of a sample's
/// cell.
Multivector cauchy_boundary(const KernelSpec& kernel, const BoundaryTrace& trace, const Vec3& x);

struct BorelPompeiuTerms {
  Multivector volume;    // T[Dv](x)
  Multivector boundary;  // int E(y-x) eta v ds
  Multivector expected;  // v(x) inside, 0 outside
  Multivector residual;
};

std::vector<BorelPompeiuTerms> borel_pompeiu_terms(const MultivectorField& v,
                                                   const EvaluationSet& pts);
/// Max-coefficient norm of T[Dv](x) + int E(y-x) eta v ds - (v(x) or 0).
std::vector<double> borel_pompeiu_residual(const MultivectorField& v, const EvaluationSet& pts);

/// S_alpha[w] = w - T[alpha conj(w)] at every grid node.
MultivectorField s_alpha(const MultivectorField& w, const MultivectorField& alpha);
/// S_alpha[w] at arbitrary points of the closed box (w interpolated).
std::vector<Multivector> s_alpha_at(const MultivectorField& w, const MultivectorField& alpha,
                                    std::span<const Vec3> pts);

using PointEvaluator = std::function<std::vector<Multivector>(std::span<const Vec3>)>;

/// sum_i e_i (F(x + h_i e_i) - F(x - h_i e_i)) / (2 h_i) for a point evaluator F.
std::vector<Multivector> central_dirac(const PointEvaluator& eval, std::span<const Vec3> pts,
                                       const Vec3& spacing);

// ---------------------------------------------------------------------------

template <class Kernel>
Multivector CellQuadrature::vector_kernel(const Vec3& x, Kernel&& kernel) const {
  const auto skip = containing_cells(x);
  const auto cc = grid_.cell_counts();
  Multivector out(n_);
  std::vector<double> acc(blades_, 0.0);
  std::size_t c = 0;
  for (int k = 0; k < cc[2]; ++k) {
    const bool sk = k >= skip[2][0] && k <= skip[2][1];
    for (int j = 0; j < cc[1]; ++j) {
      const bool sj = sk && j >= skip[1][0] && j <= skip[1][1];
      for (int i = 0; i < cc[0]; ++i, ++c) {
        if (sj && i >= skip[0][0] && i <= skip[0][1]) continue;
        const Vec3 kv = kernel(centers_[c] - x);
        accumulate_left_vector_product(kv, {values_.data() + c * blades_, blades_}, acc);
      }
    }
  }
  for (std::size_t b = 0; b < blades_; ++b) out.coeffs()[b] = acc[b] * cell_volume_;
  return out;
}

template <class Kernel>
Multivector CellQuadrature::scalar_kernel(const Vec3& x, Kernel&& kernel) const {
  const auto skip = containing_cells(x);
  const auto cc = grid_.cell_counts();
  std::vector<double> acc(blades_, 0.0);
  std::size_t c = 0;
  for (int k = 0; k < cc[2]; ++k) {
    const bool sk = k >= skip[2][0] && k <= skip[2][1];
    for (int j = 0; j < cc[1]; ++j) {
      const bool sj = sk && j >= skip[1][0] && j <= skip[1][1];
      for (int i = 0; i < cc[0]; ++i, ++c) {
        if (sj && i >= skip[0][0] && i <= skip[0][1]) continue;
        const double kv = kernel(centers_[c] - x);
        const double* v = values_.data() + c * blades_;
        for (std::size_t b = 0; b < blades_; ++b) acc[b] += kv * v[b];
      }
    }
  }
  Multivector out(n_);
  for (std::size_t b = 0; b < blades_; ++b) out.coeffs()[b] = acc[b] * cell_volume_;
  return out;
}

}  // namespace vlab
