#include "vlab/integral_ops.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "vlab/parallel.hpp"

namespace vlab {

namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

// Cauchy kernel without the origin check; callers guarantee d != 0.
inline Vec3 cauchy_unchecked(const Vec3& d) {
  const double r2 = dot(d, d);
  return (-1.0 / (kFourPi * r2 * std::sqrt(r2))) * d;
}

template <class Fn>
std::vector<Multivector> map_points(std::span<const Vec3> pts, Fn&& fn) {
  std::vector<Multivector> out(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { out[i] = fn(pts[i]); });
  return out;
}

}  // namespace

EvaluationSet::EvaluationSet(const BoxGrid& domain, std::vector<EvalPoint> points, double margin)
    : points_(std::move(points)), margin_(margin) {
  if (!(margin > 0.0)) throw std::invalid_argument("evaluation margin must be positive");
  const double slack = 1e-12 * domain.min_extent();
  for (const auto& p : points_) {
    const double sd = domain.signed_distance(p.position);
    if (p.region == Region::interior && sd < margin - slack) {
      throw std::invalid_argument("interior evaluation point closer than margin to the boundary");
    }
    if (p.region == Region::exterior && -sd < margin - slack) {
      throw std::invalid_argument("exterior evaluation point closer than margin to the boundary");
    }
  }
}

std::vector<Vec3> EvaluationSet::positions() const {
  std::vector<Vec3> out;
  out.reserve(points_.size());
  for (const auto& p : points_) out.push_back(p.position);
  return out;
}

Vec3 snap_to_cell_center(const BoxGrid& grid, const Vec3& x, double margin) {
  const auto cells = grid.cell_counts();
  Vec3 out{};
  for (int d = 0; d < 3; ++d) {
    const double h = grid.spacing(d);
    const double lo = grid.origin()[d];
    const double hi = lo + grid.extent()[d];
    int c = std::clamp(static_cast<int>(std::floor((x[d] - lo) / h)), 0, cells[d] - 1);
    auto center = [&](int ci) { return lo + (ci + 0.5) * h; };
    while (c < cells[d] - 1 && center(c) - lo < margin) ++c;
    while (c > 0 && hi - center(c) < margin) --c;
    if (center(c) - lo < margin || hi - center(c) < margin) {
      throw std::invalid_argument("margin leaves no cell centre inside the box");
    }
    out[d] = center(c);
  }
  return out;
}

EvaluationSet EvaluationSet::standard(const BoxGrid& domain, int per_axis, double margin) {
  if (per_axis < 1) throw std::invalid_argument("per_axis must be positive");
  if (margin <= 0.0) margin = default_margin(domain);
  std::vector<EvalPoint> pts;
  const Vec3& o = domain.origin();
  const Vec3& e = domain.extent();
  for (int k = 0; k < per_axis; ++k) {
    for (int j = 0; j < per_axis; ++j) {
      for (int i = 0; i < per_axis; ++i) {
        const std::array<int, 3> idx{i, j, k};
        Vec3 x{};
        for (int d = 0; d < 3; ++d) {
          const double t = per_axis == 1 ? 0.5 : static_cast<double>(idx[d]) / (per_axis - 1);
          x[d] = o[d] + margin + t * (e[d] - 2.0 * margin);
        }
        pts.push_back({snap_to_cell_center(domain, x, margin), Region::interior});
      }
    }
  }
  const Vec3 mid = o + 0.5 * e;
  for (int face = 0; face < 6; ++face) {
    const int axis = face / 2;
    Vec3 x = mid;
    x[axis] += face_normal(face)[axis] * (0.5 * e[axis] + 1.5 * margin);
    pts.push_back({x, Region::exterior});
  }
  const Vec3 off{1.5 * margin, 1.5 * margin, 1.5 * margin};
  pts.push_back({o - off, Region::exterior});
  pts.push_back({o + e + off, Region::exterior});
  return EvaluationSet(domain, std::move(pts), margin);
}

CellQuadrature::CellQuadrature(const MultivectorField& density)
    : grid_(density.grid()), n_(density.dimension()), blades_(density.blades()) {
  const auto cc = grid_.cell_counts();
  cell_volume_ = grid_.spacing(0) * grid_.spacing(1) * grid_.spacing(2);
  centers_.reserve(grid_.cell_count());
  values_.assign(grid_.cell_count() * blades_, 0.0);
  std::size_t c = 0;
  for (int k = 0; k < cc[2]; ++k) {
    for (int j = 0; j < cc[1]; ++j) {
      for (int i = 0; i < cc[0]; ++i, ++c) {
        centers_.push_back(grid_.cell_center(i, j, k));
        double* v = values_.data() + c * blades_;
        for (int corner = 0; corner < 8; ++corner) {
          auto src = density.at(grid_.index(i + (corner & 1), j + ((corner >> 1) & 1),
                                            k + ((corner >> 2) & 1)));
          for (std::size_t b = 0; b < blades_; ++b) v[b] += 0.125 * src[b];
        }
      }
    }
  }
}

CellQuadrature::CellQuadrature(const ScalarField& density)
    : CellQuadrature(MultivectorField::from_scalar(density, kMinAlgebraDim)) {}

std::array<std::array<int, 2>, 3> CellQuadrature::containing_cells(const Vec3& x) const {
  const auto cc = grid_.cell_counts();
  std::array<std::array<int, 2>, 3> out{};
  constexpr double tol = 1e-9;
  for (int d = 0; d < 3; ++d) {
    const double u = (x[d] - grid_.origin()[d]) / grid_.spacing(d);
    const int lo = std::max(0, static_cast<int>(std::ceil(u - 1.0 - tol)));
    const int hi = std::min(cc[d] - 1, static_cast<int>(std::floor(u + tol)));
    out[d] = {lo, hi};  // empty when lo > hi
  }
  return out;
}

std::vector<Multivector> teodorescu(const MultivectorField& g, std::span<const Vec3> pts) {
  if (g.node_count() == 0) throw std::invalid_argument("teodorescu: empty field");
  if (pts.empty()) throw std::invalid_argument("teodorescu: empty point set");
  const CellQuadrature quad(g);
  return map_points(pts, [&](const Vec3& x) {
    Multivector t = quad.vector_kernel(x, cauchy_unchecked);
    t *= -1.0;
    return t;
  });
}

std::vector<Multivector> teodorescu(const MultivectorField& g, const EvaluationSet& pts) {
  const auto xs = pts.positions();
  return teodorescu(g, std::span<const Vec3>(xs));
}

BoundaryTrace trace_from_function(std::vector<BoundarySample> samples, int n,
                                  const std::function<Multivector(const Vec3&)>& fn) {
  BoundaryTrace t{std::move(samples), {}};
  t.values.reserve(t.samples.size());
  for (const auto& s : t.samples) {
    Multivector v = fn(s.position);
    if (v.dimension() != n) throw std::invalid_argument("trace value has wrong dimension");
    t.values.push_back(std::move(v));
  }
  return t;
}

BoundaryTrace trace_from_field(std::vector<BoundarySample> samples, const MultivectorField& w) {
  BoundaryTrace t{std::move(samples), {}};
  t.values.reserve(t.samples.size());
  for (const auto& s : t.samples) t.values.push_back(interpolate(w, s.position));
  return t;
}

Multivector cauchy_boundary(const KernelSpec& kernel, const BoundaryTrace& trace, const Vec3& x) {
  if (trace.samples.size() != trace.values.size()) {
    throw std::invalid_argument("trace values do not match samples");
  }
  if (trace.samples.empty()) throw std::invalid_argument("empty boundary trace");
  const int n = trace.values.front().dimension();
  const std::size_t blades = trace.values.front().size();
  for (const auto& s : trace.samples) {
    if (norm(s.position - x) < s.diameter) {
      throw std::invalid_argument("evaluation point within one face-cell diameter of the boundary");
    }
  }
  std::vector<double> acc(blades, 0.0);
  std::vector<double> k_eta(blades, 0.0);
  std::vector<double> eta(blades, 0.0);
  std::vector<double> term(blades, 0.0);
  for (std::size_t s = 0; s < trace.samples.size(); ++s) {
    const auto& smp = trace.samples[s];
    const Vec3 d = smp.position - x;
    std::fill(eta.begin(), eta.end(), 0.0);
    for (int i = 0; i < 3; ++i) eta[1u << i] = smp.normal[i];
    std::fill(k_eta.begin(), k_eta.end(), 0.0);
    if (kernel.vector_valued()) {
      const Vec3 k = kernel.family == KernelFamily::cauchy ? cauchy_E3(d)
                                                           : vekua_phi3(d, kernel.lambda);
      accumulate_left_vector_product(k, eta, k_eta);
    } else {
      const double k = kernel.family == KernelFamily::newton ? newton_N3(d).value
                                                             : yukawa_theta(d, kernel.q).value;
      for (std::size_t b = 0; b < blades; ++b) k_eta[b] = k * eta[b];
    }
    geometric_product_into(k_eta, trace.values[s].coeffs(), term);
    for (std::size_t b = 0; b < blades; ++b) acc[b] += smp.weight * term[b];
  }
  return Multivector(n, std::move(acc));
}

std::vector<BorelPompeiuTerms> borel_pompeiu_terms(const MultivectorField& v,
                                                   const EvaluationSet& pts) {
  const auto xs = pts.positions();
  const auto volume = teodorescu(dirac_D(v), std::span<const Vec3>(xs));
  const BoundaryTrace trace = trace_from_field(boundary_sampling(v.grid()), v);
  const KernelSpec e = KernelSpec::cauchy(3);
  std::vector<BorelPompeiuTerms> out(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    auto& t = out[i];
    t.volume = volume[i];
    t.boundary = cauchy_boundary(e, trace, xs[i]);
    t.expected = pts.points()[i].region == Region::interior ? interpolate(v, xs[i])
                                                            : Multivector(v.dimension());
    t.residual = t.volume + t.boundary - t.expected;
  });
  return out;
}

std::vector<double> borel_pompeiu_residual(const MultivectorField& v, const EvaluationSet& pts) {
  std::vector<double> out;
  for (const auto& t : borel_pompeiu_terms(v, pts)) out.push_back(t.residual.max_norm());
  return out;
}

namespace {

MultivectorField alpha_conj(const MultivectorField& w, const MultivectorField& alpha) {
  require_same_grid(w.grid(), alpha.grid());
  if (w.dimension() != alpha.dimension()) {
    throw std::invalid_argument("s_alpha: algebra dimension mismatch");
  }
  return multiply(alpha, conjugate(w));
}

}  // namespace

MultivectorField s_alpha(const MultivectorField& w, const MultivectorField& alpha) {
  const MultivectorField g = alpha_conj(w, alpha);
  const CellQuadrature quad(g);
  MultivectorField out = w;
  const BoxGrid& grid = w.grid();
  parallel_for(grid.node_count(), [&](std::size_t node) {
    const Multivector t = quad.vector_kernel(grid.node(node), cauchy_unchecked);
    auto dst = out.at(node);
    for (std::size_t b = 0; b < dst.size(); ++b) dst[b] += t.coeffs()[b];  // w - (-sum E g)
  });
  return out;
}

std::vector<Multivector> s_alpha_at(const MultivectorField& w, const MultivectorField& alpha,
                                    std::span<const Vec3> pts) {
  const MultivectorField g = alpha_conj(w, alpha);
  const CellQuadrature quad(g);
  return map_points(pts, [&](const Vec3& x) {
    return interpolate(w, x) + quad.vector_kernel(x, cauchy_unchecked);
  });
}

std::vector<Multivector> central_dirac(const PointEvaluator& eval, std::span<const Vec3> pts,
                                       const Vec3& spacing) {
  std::vector<Vec3> shifted;
  shifted.reserve(6 * pts.size());
  for (const auto& x : pts) {
    for (int d = 0; d < 3; ++d) {
      Vec3 p = x, m = x;
      p[d] += spacing[d];
      m[d] -= spacing[d];
      shifted.push_back(p);
      shifted.push_back(m);
    }
  }
  const auto values = eval(shifted);
  if (values.size() != shifted.size()) throw std::logic_error("evaluator returned wrong count");
  std::vector<Multivector> out;
  out.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const int n = values[6 * i].dimension();
    Multivector acc(n);
    for (int d = 0; d < 3; ++d) {
      const Multivector diff =
          (values[6 * i + 2 * d] - values[6 * i + 2 * d + 1]) * (0.5 / spacing[d]);
      acc += Multivector::blade(n, generator(d + 1)) * diff;
    }
    out.push_back(std::move(acc));
  }
  return out;
}

}  // namespace vlab
