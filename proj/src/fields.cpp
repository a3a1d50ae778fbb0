#include "vlab/fields.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "vlab/parallel.hpp"

namespace vlab {

namespace {

std::size_t axis_stride(const BoxGrid& g, int axis) {
  const auto& r = g.resolution();
  if (axis == 0) return 1;
  if (axis == 1) return static_cast<std::size_t>(r[0]);
  return static_cast<std::size_t>(r[0]) * r[1];
}

// First derivative of every component along `axis`.
void diff_axis(const BoxGrid& g, std::span<const double> in, std::size_t ncomp, int axis,
               std::span<double> out) {
  const int r = g.resolution()[axis];
  if (r < 3) throw std::invalid_argument("grid too small for the derivative stencil");
  const double inv2h = 1.0 / (2.0 * g.spacing(axis));
  const std::size_t s = axis_stride(g, axis) * ncomp;
  const std::size_t nodes = g.node_count();
  for (std::size_t n = 0; n < nodes; ++n) {
    const int m = g.multi_index(n)[axis];
    const double* f = in.data() + n * ncomp;
    double* o = out.data() + n * ncomp;
    for (std::size_t c = 0; c < ncomp; ++c) {
      if (m == 0) {
        o[c] = (-3.0 * f[c] + 4.0 * f[c + s] - f[c + 2 * s]) * inv2h;
      } else if (m == r - 1) {
        o[c] = (3.0 * f[c] - 4.0 * f[c - s] + f[c - 2 * s]) * inv2h;
      } else {
        o[c] = (f[c + s] - f[c - s]) * inv2h;
      }
    }
  }
}

// Second derivative of every component along `axis`, accumulated into out.
void add_second_diff_axis(const BoxGrid& g, std::span<const double> in, std::size_t ncomp,
                          int axis, std::span<double> out) {
  const int r = g.resolution()[axis];
  if (r < 4) throw std::invalid_argument("grid too small for the Laplacian stencil");
  const double h = g.spacing(axis);
  const double inv_h2 = 1.0 / (h * h);
  const std::size_t s = axis_stride(g, axis) * ncomp;
  const std::size_t nodes = g.node_count();
  for (std::size_t n = 0; n < nodes; ++n) {
    const int m = g.multi_index(n)[axis];
    const double* f = in.data() + n * ncomp;
    double* o = out.data() + n * ncomp;
    for (std::size_t c = 0; c < ncomp; ++c) {
      double d2;
      if (m == 0) {
        d2 = 2.0 * f[c] - 5.0 * f[c + s] + 4.0 * f[c + 2 * s] - f[c + 3 * s];
      } else if (m == r - 1) {
        d2 = 2.0 * f[c] - 5.0 * f[c - s] + 4.0 * f[c - 2 * s] - f[c - 3 * s];
      } else {
        d2 = f[c + s] - 2.0 * f[c] + f[c - s];
      }
      o[c] += d2 * inv_h2;
    }
  }
}

std::span<const double> flat(const std::vector<Vec3>& v) {
  return {v.empty() ? nullptr : v.front().data(), v.size() * 3};
}
std::span<double> flat(std::vector<Vec3>& v) {
  return {v.empty() ? nullptr : v.front().data(), v.size() * 3};
}

}  // namespace

ScalarField ScalarField::sample(const BoxGrid& g, const std::function<double(const Vec3&)>& fn) {
  ScalarField s(g);
  for (std::size_t n = 0; n < g.node_count(); ++n) s.values[n] = fn(g.node(n));
  return s;
}

VectorField VectorField::sample(const BoxGrid& g, const std::function<Vec3(const Vec3&)>& fn) {
  VectorField v(g);
  for (std::size_t n = 0; n < g.node_count(); ++n) v.values[n] = fn(g.node(n));
  return v;
}

MultivectorField::MultivectorField(BoxGrid grid, int n)
    : grid_(std::move(grid)), n_(n), blades_(std::size_t{1} << n) {
  if (n < kMinAlgebraDim || n > kMaxAlgebraDim) {
    throw std::invalid_argument("field algebra dimension must be in [3, 8]");
  }
  data_.assign(grid_.node_count() * blades_, 0.0);
}

MultivectorField MultivectorField::sample(const BoxGrid& g, int n,
                                          const std::function<Multivector(const Vec3&)>& fn) {
  MultivectorField w(g, n);
  for (std::size_t k = 0; k < g.node_count(); ++k) w.set(k, fn(g.node(k)));
  return w;
}

MultivectorField MultivectorField::from_scalar(const ScalarField& s, int n) {
  MultivectorField w(s.grid, n);
  for (std::size_t k = 0; k < w.node_count(); ++k) w.at(k)[0] = s.values[k];
  return w;
}

MultivectorField MultivectorField::from_vector(const VectorField& v, int n) {
  MultivectorField w(v.grid, n);
  for (std::size_t k = 0; k < w.node_count(); ++k) {
    auto c = w.at(k);
    c[1] = v.values[k][0];
    c[2] = v.values[k][1];
    c[4] = v.values[k][2];
  }
  return w;
}

Multivector MultivectorField::value(std::size_t node) const {
  auto c = at(node);
  return Multivector(n_, std::vector<double>(c.begin(), c.end()));
}

void MultivectorField::set(std::size_t node, const Multivector& m) {
  if (m.dimension() != n_) throw std::invalid_argument("multivector dimension mismatch");
  std::copy(m.coeffs().begin(), m.coeffs().end(), at(node).begin());
}

void require_same_grid(const BoxGrid& a, const BoxGrid& b) {
  if (!(a == b)) throw std::invalid_argument("fields live on different grids");
}

MultivectorField& MultivectorField::operator+=(const MultivectorField& o) {
  require_same_grid(grid_, o.grid_);
  if (n_ != o.n_) throw std::invalid_argument("field algebra dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

MultivectorField& MultivectorField::operator-=(const MultivectorField& o) {
  require_same_grid(grid_, o.grid_);
  if (n_ != o.n_) throw std::invalid_argument("field algebra dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

MultivectorField& MultivectorField::operator*=(double s) {
  for (double& d : data_) d *= s;
  return *this;
}

MultivectorField operator+(MultivectorField a, const MultivectorField& b) { return a += b; }
MultivectorField operator-(MultivectorField a, const MultivectorField& b) { return a -= b; }

MultivectorField conjugate(const MultivectorField& w) {
  MultivectorField out = w;
  for (std::size_t k = 0; k < out.node_count(); ++k) {
    auto c = out.at(k);
    for (std::uint32_t m = 0; m < c.size(); ++m) c[m] *= conjugation_sign(std::popcount(m));
  }
  return out;
}

MultivectorField grade_project(const MultivectorField& w, int k) {
  if (k < 0 || k > w.dimension()) throw std::out_of_range("grade outside [0, n]");
  MultivectorField out(w.grid(), w.dimension());
  for (std::size_t node = 0; node < w.node_count(); ++node) {
    auto src = w.at(node);
    auto dst = out.at(node);
    for (std::uint32_t m = 0; m < src.size(); ++m) {
      if (std::popcount(m) == k) dst[m] = src[m];
    }
  }
  return out;
}

ScalarField scalar_part(const MultivectorField& w) {
  ScalarField s(w.grid());
  for (std::size_t k = 0; k < w.node_count(); ++k) s.values[k] = w.at(k)[0];
  return s;
}

VectorField vector_part(const MultivectorField& w) {
  VectorField v(w.grid());
  for (std::size_t k = 0; k < w.node_count(); ++k) {
    auto c = w.at(k);
    v.values[k] = {c[1], c[2], c[4]};
  }
  return v;
}

MultivectorField scale(const MultivectorField& w, const ScalarField& s) {
  require_same_grid(w.grid(), s.grid);
  MultivectorField out = w;
  for (std::size_t k = 0; k < out.node_count(); ++k) {
    for (double& c : out.at(k)) c *= s.values[k];
  }
  return out;
}

MultivectorField left_multiply(const VectorField& v, const MultivectorField& w) {
  require_same_grid(w.grid(), v.grid);
  MultivectorField out(w.grid(), w.dimension());
  for (std::size_t k = 0; k < w.node_count(); ++k) {
    accumulate_left_vector_product(v.values[k], w.at(k), out.at(k));
  }
  return out;
}

MultivectorField right_multiply(const MultivectorField& w, const VectorField& v) {
  require_same_grid(w.grid(), v.grid);
  MultivectorField out(w.grid(), w.dimension());
  for (std::size_t k = 0; k < w.node_count(); ++k) {
    accumulate_right_vector_product(w.at(k), v.values[k], out.at(k));
  }
  return out;
}

MultivectorField multiply(const MultivectorField& a, const MultivectorField& b) {
  require_same_grid(a.grid(), b.grid());
  if (a.dimension() != b.dimension()) throw std::invalid_argument("dimension mismatch");
  MultivectorField out(a.grid(), a.dimension());
  for (std::size_t k = 0; k < a.node_count(); ++k) {
    geometric_product_into(a.at(k), b.at(k), out.at(k));
  }
  return out;
}

MultivectorField partial(const MultivectorField& w, int axis) {
  MultivectorField out(w.grid(), w.dimension());
  diff_axis(w.grid(), w.data(), w.blades(), axis, out.data());
  return out;
}

ScalarField partial(const ScalarField& s, int axis) {
  ScalarField out(s.grid);
  diff_axis(s.grid, s.values, 1, axis, out.values);
  return out;
}

VectorField gradient(const ScalarField& s) {
  VectorField g(s.grid);
  for (int d = 0; d < 3; ++d) {
    const ScalarField p = partial(s, d);
    for (std::size_t k = 0; k < p.values.size(); ++k) g.values[k][d] = p.values[k];
  }
  return g;
}

ScalarField divergence(const VectorField& v) {
  ScalarField out(v.grid);
  std::vector<Vec3> d(v.values.size());
  for (int axis = 0; axis < 3; ++axis) {
    diff_axis(v.grid, flat(v.values), 3, axis, flat(d));
    for (std::size_t k = 0; k < d.size(); ++k) out.values[k] += d[k][axis];
  }
  return out;
}

VectorField curl(const VectorField& v) {
  std::array<std::vector<Vec3>, 3> d;
  for (int axis = 0; axis < 3; ++axis) {
    d[axis].resize(v.values.size());
    diff_axis(v.grid, flat(v.values), 3, axis, flat(d[axis]));
  }
  VectorField out(v.grid);
  for (std::size_t k = 0; k < v.values.size(); ++k) {
    // d[j][k][i] = d v_i / d x_j
    out.values[k] = {d[1][k][2] - d[2][k][1], d[2][k][0] - d[0][k][2],
                     d[0][k][1] - d[1][k][0]};
  }
  return out;
}

MultivectorField dirac_D(const MultivectorField& w) {
  MultivectorField out(w.grid(), w.dimension());
  for (int axis = 0; axis < 3; ++axis) {
    const MultivectorField d = partial(w, axis);
    std::array<double, 3> e{};
    e[axis] = 1.0;
    for (std::size_t k = 0; k < w.node_count(); ++k) {
      accumulate_left_vector_product(e, d.at(k), out.at(k));
    }
  }
  return out;
}

MultivectorField dirac_D_right(const MultivectorField& w) {
  MultivectorField out(w.grid(), w.dimension());
  for (int axis = 0; axis < 3; ++axis) {
    const MultivectorField d = partial(w, axis);
    std::array<double, 3> e{};
    e[axis] = 1.0;
    for (std::size_t k = 0; k < w.node_count(); ++k) {
      accumulate_right_vector_product(d.at(k), e, out.at(k));
    }
  }
  return out;
}

MultivectorField laplacian(const MultivectorField& w) {
  MultivectorField out(w.grid(), w.dimension());
  for (int axis = 0; axis < 3; ++axis) {
    add_second_diff_axis(w.grid(), w.data(), w.blades(), axis, out.data());
  }
  return out;
}

ScalarField laplacian(const ScalarField& s) {
  ScalarField out(s.grid);
  for (int axis = 0; axis < 3; ++axis) {
    add_second_diff_axis(s.grid, s.values, 1, axis, out.values);
  }
  return out;
}

double integrate(const ScalarField& s) {
  const BoxGrid& g = s.grid;
  std::vector<double> terms(g.node_count());
  for (std::size_t n = 0; n < terms.size(); ++n) {
    const auto m = g.multi_index(n);
    terms[n] = g.trapezoid_weight(m[0], m[1], m[2]) * s.values[n];
  }
  return pairwise_sum(terms);
}

double sc_conj_product(std::span<const double> a, std::span<const double> b) {
  // Sc(conj(e_A) e_A) = conj_sign(A) * sign(A, A); non-matching blades have no
  // scalar part.
  double s = 0.0;
  for (std::uint32_t m = 0; m < a.size(); ++m) {
    if (a[m] == 0.0 || b[m] == 0.0) continue;
    s += conjugation_sign(std::popcount(m)) * blade_product_sign(BladeIndex{m}, BladeIndex{m}) *
         a[m] * b[m];
  }
  return s;
}

double sc_inner(const MultivectorField& u, const MultivectorField& v) {
  require_same_grid(u.grid(), v.grid());
  if (u.dimension() != v.dimension()) throw std::invalid_argument("dimension mismatch");
  ScalarField density(u.grid());
  for (std::size_t k = 0; k < u.node_count(); ++k) {
    density.values[k] = sc_conj_product(u.at(k), v.at(k));
  }
  return integrate(density);
}

std::vector<std::size_t> nodes_with_margin(const BoxGrid& grid, double margin) {
  std::vector<std::size_t> out;
  const double slack = 1e-12 * grid.min_extent();
  for (std::size_t n = 0; n < grid.node_count(); ++n) {
    if (grid.signed_distance(grid.node(n)) >= margin - slack) out.push_back(n);
  }
  return out;
}

std::vector<std::size_t> interior_nodes(const BoxGrid& grid, int layers) {
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n < grid.node_count(); ++n) {
    const auto m = grid.multi_index(n);
    if (grid.is_interior(m[0], m[1], m[2], layers)) out.push_back(n);
  }
  return out;
}

double max_norm(const MultivectorField& w, std::span<const std::size_t> nodes) {
  double m = 0.0;
  for (std::size_t n : nodes) {
    for (double c : w.at(n)) m = std::max(m, std::abs(c));
  }
  return m;
}

double max_norm(const MultivectorField& w) {
  double m = 0.0;
  for (double c : w.data()) m = std::max(m, std::abs(c));
  return m;
}

double max_abs(const ScalarField& s, std::span<const std::size_t> nodes) {
  double m = 0.0;
  for (std::size_t n : nodes) m = std::max(m, std::abs(s.values[n]));
  return m;
}

double max_abs(const ScalarField& s) {
  double m = 0.0;
  for (double v : s.values) m = std::max(m, std::abs(v));
  return m;
}

double max_norm(const VectorField& v) {
  double m = 0.0;
  for (const auto& x : v.values) m = std::max(m, norm(x));
  return m;
}

namespace {

struct Trilinear {
  std::array<std::size_t, 8> node;
  std::array<double, 8> weight;
};

Trilinear trilinear(const BoxGrid& g, const Vec3& x) {
  if (g.signed_distance(x) < -1e-12 * g.min_extent()) {
    throw std::invalid_argument("interpolation point outside the grid box");
  }
  std::array<int, 3> base{};
  std::array<double, 3> t{};
  for (int d = 0; d < 3; ++d) {
    const double u = (x[d] - g.origin()[d]) / g.spacing(d);
    int i = static_cast<int>(std::floor(u));
    i = std::clamp(i, 0, g.resolution()[d] - 2);
    base[d] = i;
    t[d] = std::clamp(u - i, 0.0, 1.0);
  }
  Trilinear out{};
  for (int c = 0; c < 8; ++c) {
    const int di = c & 1, dj = (c >> 1) & 1, dk = (c >> 2) & 1;
    out.node[c] = g.index(base[0] + di, base[1] + dj, base[2] + dk);
    out.weight[c] = (di ? t[0] : 1 - t[0]) * (dj ? t[1] : 1 - t[1]) * (dk ? t[2] : 1 - t[2]);
  }
  return out;
}

}  // namespace

double interpolate(const ScalarField& s, const Vec3& x) {
  const Trilinear tl = trilinear(s.grid, x);
  double v = 0.0;
  for (int c = 0; c < 8; ++c) v += tl.weight[c] * s.values[tl.node[c]];
  return v;
}

Multivector interpolate(const MultivectorField& w, const Vec3& x) {
  const Trilinear tl = trilinear(w.grid(), x);
  Multivector out(w.dimension());
  auto o = out.coeffs();
  for (int c = 0; c < 8; ++c) {
    auto src = w.at(tl.node[c]);
    for (std::size_t b = 0; b < o.size(); ++b) o[b] += tl.weight[c] * src[b];
  }
  return out;
}

namespace {

template <typename T>
void put_le(std::ostream& os, T value) {
  static_assert(sizeof(T) == 8);
  std::uint64_t bits;
  std::memcpy(&bits, &value, 8);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  os.write(reinterpret_cast<const char*>(&bits), 8);
}

template <typename T>
T get_le(std::istream& is) {
  static_assert(sizeof(T) == 8);
  std::uint64_t bits = 0;
  if (!is.read(reinterpret_cast<char*>(&bits), 8)) {
    throw std::runtime_error("truncated field snapshot");
  }
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
  T value;
  std::memcpy(&value, &bits, 8);
  return value;
}

}  // namespace

void write_binary(const MultivectorField& w, std::ostream& os) {
  const BoxGrid& g = w.grid();
  put_le<std::int64_t>(os, w.dimension());
  for (int d = 0; d < 3; ++d) put_le<std::int64_t>(os, g.resolution()[d]);
  for (int d = 0; d < 3; ++d) put_le<double>(os, g.origin()[d]);
  for (int d = 0; d < 3; ++d) put_le<double>(os, g.extent()[d]);
  for (double c : w.data()) put_le<double>(os, c);
}

MultivectorField read_binary(std::istream& is) {
  const auto n = get_le<std::int64_t>(is);
  std::array<int, 3> r{};
  Vec3 origin{}, extent{};
  for (int d = 0; d < 3; ++d) r[d] = static_cast<int>(get_le<std::int64_t>(is));
  for (int d = 0; d < 3; ++d) origin[d] = get_le<double>(is);
  for (int d = 0; d < 3; ++d) extent[d] = get_le<double>(is);
  MultivectorField w(BoxGrid(origin, extent, r), static_cast<int>(n));
  for (double& c : w.data()) c = get_le<double>(is);
  return w;
}

void write_binary(const MultivectorField& w, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path);
  write_binary(w, os);
}

MultivectorField read_binary(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  return read_binary(is);
}

std::string blade_label(BladeIndex b) {
  if (b.mask == 0) return "e0";
  std::string s = "e";
  for (int i = 0; i < 8; ++i) {
    if (b.mask & (1u << i)) s += std::to_string(i + 1);
  }
  return s;
}

void write_csv(const MultivectorField& w, std::ostream& os) {
  os << "x,y,z";
  for (std::uint32_t m = 0; m < w.blades(); ++m) os << ',' << blade_label(BladeIndex{m});
  os << '\n';
  os.precision(17);
  for (std::size_t k = 0; k < w.node_count(); ++k) {
    const Vec3 x = w.grid().node(k);
    os << x[0] << ',' << x[1] << ',' << x[2];
    for (double c : w.at(k)) os << ',' << c;
    os << '\n';
  }
}

}  // namespace vlab
