#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "vlab/clifford.hpp"
#include "vlab/grid.hpp"

namespace vlab {

struct ScalarField {
  BoxGrid grid;
  std::vector<double> values;

  explicit ScalarField(BoxGrid g, double fill = 0.0)
      : grid(std::move(g)), values(grid.node_count(), fill) {}
  static ScalarField sample(const BoxGrid& g, const std::function<double(const Vec3&)>& fn);

  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
};

struct VectorField {
  BoxGrid grid;
  std::vector<Vec3> values;

  explicit VectorField(BoxGrid g) : grid(std::move(g)), values(grid.node_count(), Vec3{}) {}
  static VectorField sample(const BoxGrid& g, const std::function<Vec3(const Vec3&)>& fn);

  Vec3& operator[](std::size_t i) { return values[i]; }
  const Vec3& operator[](std::size_t i) const { return values[i]; }
};

/// Cl(0,n)-valued samples on a BoxGrid, stored node-major, blade-minor.
class MultivectorField {
 public:
  MultivectorField(BoxGrid grid, int n);
  static MultivectorField sample(const BoxGrid& g, int n,
                                 const std::function<Multivector(const Vec3&)>& fn);
  static MultivectorField from_scalar(const ScalarField& s, int n = 3);
  static MultivectorField from_vector(const VectorField& v, int n = 3);

  const BoxGrid& grid() const { return grid_; }
  int dimension() const { return n_; }
  std::size_t blades() const { return blades_; }
  std::size_t node_count() const { return grid_.node_count(); }

  std::span<double> at(std::size_t node) { return {data_.data() + node * blades_, blades_}; }
  std::span<const double> at(std::size_t node) const {
    return {data_.data() + node * blades_, blades_};
  }
  Multivector value(std::size_t node) const;
  void set(std::size_t node, const Multivector& m);

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  MultivectorField& operator+=(const MultivectorField& o);
  MultivectorField& operator-=(const MultivectorField& o);
  MultivectorField& operator*=(double s);

 private:
  BoxGrid grid_;
  int n_;
  std::size_t blades_;
  std::vector<double> data_;
};

MultivectorField operator+(MultivectorField a, const MultivectorField& b);
MultivectorField operator-(MultivectorField a, const MultivectorField& b);

void require_same_grid(const BoxGrid& a, const BoxGrid& b);

// Pointwise algebra on fields.
MultivectorField conjugate(const MultivectorField& w);
MultivectorField grade_project(const MultivectorField& w, int k);
ScalarField scalar_part(const MultivectorField& w);
VectorField vector_part(const MultivectorField& w);
/// s(x) * w(x).
MultivectorField scale(const MultivectorField& w, const ScalarField& s);
/// v(x) * w(x) with v a vector field.
MultivectorField left_multiply(const VectorField& v, const MultivectorField& w);
/// w(x) * v(x).
MultivectorField right_multiply(const MultivectorField& w, const VectorField& v);
/// a(x) * b(x).
MultivectorField multiply(const MultivectorField& a, const MultivectorField& b);

// Finite differences: second-order centred in the interior, second-order
// one-sided on boundary nodes.

/// d/dx_axis of every coefficient.
MultivectorField partial(const MultivectorField& w, int axis);
ScalarField partial(const ScalarField& s, int axis);
VectorField gradient(const ScalarField& s);
ScalarField divergence(const VectorField& v);
VectorField curl(const VectorField& v);

/// D w = sum_i e_i d_i w.
MultivectorField dirac_D(const MultivectorField& w);
/// (w D) = sum_i (d_i w) e_i.
MultivectorField dirac_D_right(const MultivectorField& w);
/// Componentwise 7-point Laplacian (one-sided second-order rows on the boundary).
MultivectorField laplacian(const MultivectorField& w);
ScalarField laplacian(const ScalarField& s);

/// Tensor-product trapezoid rule with pairwise summation.
double integrate(const ScalarField& s);
/// Sc int conj(u) v dy.
double sc_inner(const MultivectorField& u, const MultivectorField& v);
/// Sc(conj(a) b) for coefficient spans.
double sc_conj_product(std::span<const double> a, std::span<const double> b);

/// Nodes whose signed distance to the boundary is at least `margin`.
std::vector<std::size_t> nodes_with_margin(const BoxGrid& grid, double margin);
/// Nodes at least `layers` index steps from every face.
std::vector<std::size_t> interior_nodes(const BoxGrid& grid, int layers);

double max_norm(const MultivectorField& w, std::span<const std::size_t> nodes);
double max_norm(const MultivectorField& w);
double max_abs(const ScalarField& s, std::span<const std::size_t> nodes);
double max_abs(const ScalarField& s);
double max_norm(const VectorField& v);

/// Trilinear interpolation; x must lie in the closed box.
double interpolate(const ScalarField& s, const Vec3& x);
Multivector interpolate(const MultivectorField& w, const Vec3& x);

/// Binary snapshot: little-endian int64 n, int64 resolution[3], float64
/// origin[3], float64 extent[3], then coefficients node-major, blade-minor.
void write_binary(const MultivectorField& w, std::ostream& os);
MultivectorField read_binary(std::istream& is);
void write_binary(const MultivectorField& w, const std::string& path);
MultivectorField read_binary(const std::string& path);

/// CSV with columns x,y,z followed by one column per blade (e0, e1, e2, e12, ...).
void write_csv(const MultivectorField& w, std::ostream& os);
std::string blade_label(BladeIndex b);

}  // namespace vlab
