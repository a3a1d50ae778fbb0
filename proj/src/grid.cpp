#include "vlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace vlab {

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

BoxGrid::BoxGrid(Vec3 origin, Vec3 extent, std::array<int, 3> resolution)
    : origin_(origin), extent_(extent), resolution_(resolution) {
  for (int d = 0; d < 3; ++d) {
    if (resolution_[d] < kMinResolution) {
      throw std::invalid_argument("grid resolution must be >= 8 per axis, got " +
                                  std::to_string(resolution_[d]));
    }
    if (!(extent_[d] > 0.0)) {
      throw std::invalid_argument("grid extent must be positive");
    }
    spacing_[d] = extent_[d] / (resolution_[d] - 1);
  }
  boundary_slot_.assign(node_count(), npos);
  for (int k = 0; k < resolution_[2]; ++k) {
    for (int j = 0; j < resolution_[1]; ++j) {
      for (int i = 0; i < resolution_[0]; ++i) {
        if (is_boundary(i, j, k)) {
          boundary_slot_[index(i, j, k)] = boundary_nodes_.size();
          boundary_nodes_.push_back(index(i, j, k));
        }
      }
    }
  }
}

BoxGrid BoxGrid::unit_cube(int r) { return BoxGrid({0, 0, 0}, {1, 1, 1}, {r, r, r}); }

double BoxGrid::max_spacing() const {
  return std::max({spacing_[0], spacing_[1], spacing_[2]});
}

double BoxGrid::min_extent() const {
  return std::min({extent_[0], extent_[1], extent_[2]});
}

double BoxGrid::surface_area() const {
  return 2.0 * (extent_[0] * extent_[1] + extent_[1] * extent_[2] +
                extent_[0] * extent_[2]);
}

std::size_t BoxGrid::node_count() const {
  return static_cast<std::size_t>(resolution_[0]) * resolution_[1] * resolution_[2];
}

std::array<int, 3> BoxGrid::multi_index(std::size_t idx) const {
  const auto r0 = static_cast<std::size_t>(resolution_[0]);
  const auto r1 = static_cast<std::size_t>(resolution_[1]);
  return {static_cast<int>(idx % r0), static_cast<int>((idx / r0) % r1),
          static_cast<int>(idx / (r0 * r1))};
}

Vec3 BoxGrid::node(std::size_t idx) const {
  const auto m = multi_index(idx);
  return node(m[0], m[1], m[2]);
}

bool BoxGrid::is_boundary(int i, int j, int k) const {
  return i == 0 || j == 0 || k == 0 || i == resolution_[0] - 1 ||
         j == resolution_[1] - 1 || k == resolution_[2] - 1;
}

bool BoxGrid::is_interior(int i, int j, int k, int layers) const {
  return i >= layers && j >= layers && k >= layers &&
         i <= resolution_[0] - 1 - layers && j <= resolution_[1] - 1 - layers &&
         k <= resolution_[2] - 1 - layers;
}

double BoxGrid::trapezoid_weight(int i, int j, int k) const {
  const std::array<int, 3> m{i, j, k};
  double w = 1.0;
  for (int d = 0; d < 3; ++d) {
    const bool end = m[d] == 0 || m[d] == resolution_[d] - 1;
    w *= end ? 0.5 * spacing_[d] : spacing_[d];
  }
  return w;
}

std::size_t BoxGrid::cell_count() const {
  const auto c = cell_counts();
  return static_cast<std::size_t>(c[0]) * c[1] * c[2];
}

Vec3 BoxGrid::cell_center(int ci, int cj, int ck) const {
  return {origin_[0] + (ci + 0.5) * spacing_[0], origin_[1] + (cj + 0.5) * spacing_[1],
          origin_[2] + (ck + 0.5) * spacing_[2]};
}

double BoxGrid::signed_distance(const Vec3& x) const {
  // Inside: distance to the nearest face. Outside: Euclidean distance to the box.
  double inside = std::numeric_limits<double>::infinity();
  double outside2 = 0.0;
  bool is_inside = true;
  for (int d = 0; d < 3; ++d) {
    const double lo = x[d] - origin_[d];
    const double hi = origin_[d] + extent_[d] - x[d];
    inside = std::min({inside, lo, hi});
    const double out = std::max({-lo, -hi, 0.0});
    if (out > 0.0) is_inside = false;
    outside2 += out * out;
  }
  return is_inside ? inside : -std::sqrt(outside2);
}

bool BoxGrid::contains(const Vec3& x) const { return signed_distance(x) >= 0.0; }

std::size_t BoxGrid::boundary_slot(std::size_t node_index) const {
  return node_index < boundary_slot_.size() ? boundary_slot_[node_index] : npos;
}

Vec3 face_normal(int face) {
  Vec3 n{0.0, 0.0, 0.0};
  n[face / 2] = (face % 2 == 0) ? -1.0 : 1.0;
  return n;
}

namespace {

// In-face axes for a face normal to `axis`.
std::array<int, 2> face_axes(int axis) {
  return {axis == 0 ? 1 : 0, axis == 2 ? 1 : 2};
}

}  // namespace

std::vector<BoundarySample> boundary_sampling(const BoxGrid& grid) {
  std::vector<BoundarySample> out;
  const auto& o = grid.origin();
  const auto& e = grid.extent();
  for (int face = 0; face < 6; ++face) {
    const int axis = face / 2;
    const auto [a, b] = face_axes(axis);
    const int na = grid.resolution()[a] - 1;
    const int nb = grid.resolution()[b] - 1;
    const double ha = grid.spacing(a);
    const double hb = grid.spacing(b);
    const double diameter = std::sqrt(ha * ha + hb * hb);
    for (int jb = 0; jb < nb; ++jb) {
      for (int ia = 0; ia < na; ++ia) {
        BoundarySample s;
        s.position[axis] = o[axis] + ((face % 2 == 0) ? 0.0 : e[axis]);
        s.position[a] = o[a] + (ia + 0.5) * ha;
        s.position[b] = o[b] + (jb + 0.5) * hb;
        s.normal = face_normal(face);
        s.weight = ha * hb;
        s.face = face;
        s.diameter = diameter;
        out.push_back(s);
      }
    }
  }
  return out;
}

std::vector<BoundarySample> boundary_node_quadrature(const BoxGrid& grid) {
  std::vector<BoundarySample> out;
  const auto& r = grid.resolution();
  for (int face = 0; face < 6; ++face) {
    const int axis = face / 2;
    const auto [a, b] = face_axes(axis);
    const double ha = grid.spacing(a);
    const double hb = grid.spacing(b);
    const double diameter = std::sqrt(ha * ha + hb * hb);
    for (int jb = 0; jb < r[b]; ++jb) {
      for (int ia = 0; ia < r[a]; ++ia) {
        std::array<int, 3> m{};
        m[axis] = (face % 2 == 0) ? 0 : r[axis] - 1;
        m[a] = ia;
        m[b] = jb;
        const double wa = (ia == 0 || ia == r[a] - 1) ? 0.5 * ha : ha;
        const double wb = (jb == 0 || jb == r[b] - 1) ? 0.5 * hb : hb;
        BoundarySample s;
        s.node = grid.index(m[0], m[1], m[2]);
        s.position = grid.node(m[0], m[1], m[2]);
        s.normal = face_normal(face);
        s.weight = wa * wb;
        s.face = face;
        s.diameter = diameter;
        out.push_back(s);
      }
    }
  }
  return out;
}

}  // namespace vlab
