#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace vlab {

using Vec3 = std::array<double, 3>;

inline Vec3 operator+(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Vec3 operator-(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Vec3 operator*(double s, const Vec3& a) {
  return {s * a[0], s * a[1], s * a[2]};
}
inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}
double norm(const Vec3& a);

/// Uniform node grid over the box [origin, origin + extent] in R^3.
class BoxGrid {
 public:
  static constexpr int kMinResolution = 8;

  BoxGrid(Vec3 origin, Vec3 extent, std::array<int, 3> resolution);
  /// Cube [0,1]^3 with r nodes per axis.
  static BoxGrid unit_cube(int r);

  const Vec3& origin() const { return origin_; }
  const Vec3& extent() const { return extent_; }
  const std::array<int, 3>& resolution() const { return resolution_; }
  double spacing(int axis) const { return spacing_[axis]; }
  const Vec3& spacing() const { return spacing_; }
  double max_spacing() const;
  double min_extent() const;
  double volume() const { return extent_[0] * extent_[1] * extent_[2]; }
  double surface_area() const;

  std::size_t node_count() const;
  /// Node-major ordering with x fastest.
  std::size_t index(int i, int j, int k) const {
    return static_cast<std::size_t>(i) +
           static_cast<std::size_t>(resolution_[0]) *
               (static_cast<std::size_t>(j) +
                static_cast<std::size_t>(resolution_[1]) * static_cast<std::size_t>(k));
  }
  std::array<int, 3> multi_index(std::size_t idx) const;
  double coordinate(int axis, int i) const { return origin_[axis] + i * spacing_[axis]; }
  Vec3 node(int i, int j, int k) const {
    return {coordinate(0, i), coordinate(1, j), coordinate(2, k)};
  }
  Vec3 node(std::size_t idx) const;

  bool is_boundary(int i, int j, int k) const;
  /// Node sits at least `layers` index steps away from every face.
  bool is_interior(int i, int j, int k, int layers = 1) const;

  /// Trapezoid weight of a node (product of 1-D trapezoid weights).
  double trapezoid_weight(int i, int j, int k) const;

  std::array<int, 3> cell_counts() const {
    return {resolution_[0] - 1, resolution_[1] - 1, resolution_[2] - 1};
  }
  std::size_t cell_count() const;
  Vec3 cell_center(int ci, int cj, int ck) const;

  /// Signed distance to the box surface: positive inside, negative outside.
  double signed_distance(const Vec3& x) const;
  bool contains(const Vec3& x) const;

  /// Linear indices of all nodes on the boundary, increasing.
  const std::vector<std::size_t>& boundary_nodes() const { return boundary_nodes_; }
  /// Slot of a boundary node inside boundary_nodes(), or npos.
  std::size_t boundary_slot(std::size_t node_index) const;

  friend bool operator==(const BoxGrid& a, const BoxGrid& b) {
    return a.origin_ == b.origin_ && a.extent_ == b.extent_ &&
           a.resolution_ == b.resolution_;
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  Vec3 origin_;
  Vec3 extent_;
  std::array<int, 3> resolution_;
  Vec3 spacing_;
  std::vector<std::size_t> boundary_nodes_;
  std::vector<std::size_t> boundary_slot_;
};

/// Face ids: 0 = -x, 1 = +x, 2 = -y, 3 = +y, 4 = -z, 5 = +z.
Vec3 face_normal(int face);

/// Boundary quadrature node with outward unit normal.
struct BoundarySample {
  Vec3 position;
  Vec3 normal;
  double weight = 0.0;
  int face = 0;
  /// Diameter of the face cell the sample represents.
  double diameter = 0.0;
  /// Grid node the sample sits on (node quadrature only), else BoxGrid::npos.
  std::size_t node = BoxGrid::npos;
};

/// Midpoint rule: one sample per face cell, (r_a - 1)(r_b - 1) per face.
std::vector<BoundarySample> boundary_sampling(const BoxGrid& grid);

/// 2-D trapezoid rule on every face at the boundary grid nodes. Edge and corner
/// nodes appear once per face they belong to.
std::vector<BoundarySample> boundary_node_quadrature(const BoxGrid& grid);

}  // namespace vlab
