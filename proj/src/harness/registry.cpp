#include "vlab/harness/registry.hpp"

#include <stdexcept>

#include "vlab/parallel.hpp"

namespace vlab::harness {

namespace {

std::function<CheckReport(const SuiteConfig&)> reconstruction(const std::string& id) {
  return [id](const SuiteConfig& c) { return check_reconstruction(id, c); };
}

std::vector<IdentityInfo> make_registry() {
  return {
      {"algebra",
       "e_i e_j + e_j e_i = -2 delta_ij;  (ab)c = a(bc);  conj(ab) = conj(b) conj(a);  "
       "conj(e_A) = (-1)^(k(k+1)/2) e_A for |A| = k",
       "Exact Cl(0,n) structure for n = 3, 4 over all blade pairs and triples", check_algebra},
      {"operator_consistency", "D^2 w = -lap w",
       "Composed Dirac stencil against the 7-point Laplacian", check_operator_consistency},
      {"cauchy_theorem", "Sc int_dO E(y-x) eta(y) ds = 1 for x in O, 0 outside",
       "Boundary Cauchy integral of v = 1 on face-midpoint samples", check_cauchy_theorem},
      {"borel_pompeiu", "int_dO E(y-x) eta v ds - int_O E(y-x) Dv dy = v(x) in O, 0 outside",
       "Boundary Cauchy integral plus Teodorescu transform of Dv", check_borel_pompeiu},
      {"kernel_identities",
       "(D - (grad f/f) C)(E/f) = delta/f;  grad N = E;  -int_{|y|=eps} grad theta . eta ds -> 1",
       "Closed-form kernel identities at seeded random points", check_kernel_identities},
      {"factorizations",
       "(-lap + |a|^2 - D a) h0 = (D - M^a C)(D - a C) h0;  a = grad f/f: -lap + lap f/f",
       "Both sides of the factorization applied to scalar fields by stencils",
       check_factorizations},
      {"main_vekua",
       "w = f u0 + B with div(f^2 grad u0) = 0 solves Dw = (grad f/f) conj(w);  "
       "u = part03(w)/f + f part12(w) solves Du = mu D conj(u), mu = (1-f^2)/(1+f^2)",
       "Vekua solution built from a conductivity solution, with its Beltrami transform",
       check_main_vekua},
      {"scalar_bp",
       "Sc int_dO Phi(y-x) eta v ds - Sc int_O Phi(y-x) (D - a C) v dy = v0(x) in O, 0 outside, "
       "Phi = grad theta - lambda theta",
       "Scalar part of the weighted Borel-Pompeiu formula, plus the E/f-kernel variant",
       reconstruction("scalar_bp")},
      {"cauchy_vekua",
       "Sc int_dO (grad theta - lambda theta)(y-x) eta w ds = w0(x) in O, 0 outside, for "
       "Dw = lambda conj(w)",
       "Cauchy-type reconstruction of the scalar part of a Vekua solution",
       reconstruction("cauchy_vekua")},
      {"green_vekua",
       "int_dO (-Phi(y-x) . eta w0 + phi0 f^2 grad(w0/f) . eta) ds = w0(x) in O, 0 outside, "
       "phi0 = theta/f, Phi = f grad phi0",
       "Green-type reconstruction with strong and weak (DtN) boundary flux",
       reconstruction("green_vekua")},
      {"integral_cauchy",
       "int_dO (-E(y-x) . eta u0 + N(y-x) grad u0 . eta) ds + int_O 2 N(y-x) (grad f/f) . "
       "grad u0 dy = u0(x) in O, 0 outside",
       "Newton-kernel reconstruction of a conductivity solution, strong and weak flux",
       reconstruction("integral_cauchy")},
      {"schrodinger_reconstruction",
       "-int_dO grad theta(y-x) . eta phi0 ds + (Lambda_q phi0, theta(. - x)) = w0(x) in O, "
       "0 outside",
       "Yukawa-kernel reconstruction of a Schrodinger solution from its DtN pairing",
       reconstruction("schrodinger_reconstruction")},
      {"dtn_properties",
       "(Lambda phi, psi) = (Lambda psi, phi);  Lambda_f 1 = 0;  Lambda_f(phi/f) = f Lambda_q(phi) "
       "- (grad f . eta) phi",
       "Weak Dirichlet-to-Neumann pairings: symmetry, constants, extension, relation",
       check_dtn_properties},
      {"hodge", "<w, Dv - conj(v) alpha> = 0 for Dw = alpha conj(w), v compactly supported",
       "Orthogonality of a Vekua solution to the adjoint image of bump fields", check_hodge},
      {"difference_identities",
       "int_O (q_g - q_f) w_{0,f} theta_g = w_{0,f} - w_{0,g};  2 int_O N rho = w_{0,f}/f - "
       "w_{0,g}/g, rho = (grad f/f) . grad(w_{0,f}/f) - (grad g/g) . grad(w_{0,g}/g)",
       "Forced case g = f, plus the DtN gap when g != f", check_difference_identities},
  };
}

}  // namespace

const std::vector<IdentityInfo>& identities() {
  static const std::vector<IdentityInfo> reg = make_registry();
  return reg;
}

const IdentityInfo& find_identity(const std::string& id) {
  for (const auto& info : identities()) {
    if (info.id == id) return info;
  }
  std::string known;
  for (const auto& info : identities()) known += (known.empty() ? "" : ", ") + info.id;
  throw std::invalid_argument("unknown identity '" + id + "' (known: " + known + ")");
}

CheckReport run_check(const SuiteConfig& cfg) {
  const IdentityInfo& info = find_identity(cfg.identity);
  cfg.validate();
  try {
    return info.run(cfg);
  } catch (const std::exception& e) {
    CheckReport rep;
    rep.identity = info.id;
    rep.anchor = info.anchor;
    rep.description = info.description;
    rep.config = cfg;
    rep.failure = e.what();
    return rep;
  }
}

std::vector<ConvergenceSeries> convergence_study(const SuiteConfig& cfg) {
  if (cfg.resolutions.size() < 2) {
    throw std::invalid_argument("a convergence study needs at least two resolutions");
  }
  if (cfg.identity == "algebra") {
    throw std::invalid_argument("algebra has no discretisation to refine");
  }
  CheckReport rep = run_check(cfg);
  if (!rep.failure.empty()) throw std::runtime_error(cfg.identity + ": " + rep.failure);
  return rep.convergence;
}

std::vector<CheckReport> run_suite(const std::function<SuiteConfig(const std::string&)>& make_cfg) {
  const auto& reg = identities();
  std::vector<SuiteConfig> cfgs;
  for (const auto& info : reg) cfgs.push_back(make_cfg(info.id));
  std::vector<CheckReport> out(reg.size());
  parallel_for(reg.size(), [&](std::size_t i) { out[i] = run_check(cfgs[i]); });
  return out;
}

}  // namespace vlab::harness
