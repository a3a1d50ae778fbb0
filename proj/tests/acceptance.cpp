#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "vlab/harness/registry.hpp"

using namespace vlab::harness;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void expect(const std::string& what, double value, const std::string& cmp, double threshold) {
    bool ok = false;
    if (cmp == "<=") ok = value <= threshold;
    if (cmp == ">=") ok = value >= threshold;
    if (cmp == "<") ok = value < threshold;
    if (cmp == ">") ok = value > threshold;
    pass = pass && ok;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s%s %.3g %s %.3g", detail.empty() ? "" : "; ", what.c_str(),
                  value, cmp.c_str(), threshold);
    detail += buf;
  }
  void expect_true(const std::string& what, bool ok) {
    pass = pass && ok;
    detail += (detail.empty() ? "" : "; ") + what + (ok ? " yes" : " NO");
  }
};

struct Timed {
  CheckReport report;
  double seconds = 0.0;
};

Timed run(const std::string& id) {
  const auto t0 = std::chrono::steady_clock::now();
  Timed t{run_check(default_config(id))};
  t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return t;
}

/// Measured value of the named criterion; NaN when the check did not record it.
double measured(const CheckReport& r, const std::string& name) {
  for (const auto& c : r.criteria) {
    if (c.name == name) return c.measured;
  }
  return std::nan("");
}

bool criterion_passed(const CheckReport& r, const std::string& name) {
  for (const auto& c : r.criteria) {
    if (c.name == name) return c.passed;
  }
  return false;
}

void no_failure(Outcome& o, const CheckReport& r) {
  if (!r.failure.empty()) {
    o.pass = false;
    o.detail += (o.detail.empty() ? "" : "; ") + r.identity + " error: " + r.failure;
  }
}

Outcome algebra() {
  Outcome o;
  const Timed t = run("algebra");
  no_failure(o, t.report);
  o.expect_true("checks ran", !t.report.criteria.empty());
  double failures = 0.0;
  for (const auto& c : t.report.criteria) failures += c.measured;
  o.expect("exact failures", failures, "<=", 0.0);
  o.expect("runtime s", t.seconds, "<", 5.0);
  return o;
}

Outcome operator_consistency() {
  Outcome o;
  const Timed t = run("operator_consistency");
  no_failure(o, t.report);
  o.expect_true("resolutions 16, 32", t.report.config.resolutions == std::vector<int>{16, 32});
  o.expect("order", measured(t.report, "smooth field: measured order"), ">=", 1.9);
  o.expect("quadratic", measured(t.report, "quadratic field: exact at interior nodes"), "<=", 1e-12);
  return o;
}

Outcome cauchy_theorem() {
  Outcome o;
  const Timed t = run("cauchy_theorem");
  no_failure(o, t.report);
  o.expect_true("64^2 face cells", t.report.config.resolutions.back() == 65);
  o.expect("interior", measured(t.report, "v = 1: interior relative error"), "<=", 1e-3);
  o.expect("exterior", measured(t.report, "v = 1: exterior magnitude"), "<=", 1e-3);
  o.expect("runtime s", t.seconds, "<", 10.0);
  return o;
}

Outcome borel_pompeiu() {
  Outcome o;
  const Timed t = run("borel_pompeiu");
  no_failure(o, t.report);
  o.expect_true("finest 32", t.report.config.resolutions.back() == 32);
  o.expect("interior", measured(t.report, "v = x1^2 e2: interior relative error"), "<=", 0.02);
  o.expect("ratio", measured(t.report, "v = x1^2 e2: refinement ratio"), ">=", 1.8);
  o.expect("exterior", measured(t.report, "v = x1^2 e2: exterior magnitude"), "<=", 0.02);
  o.expect("runtime s", t.seconds, "<", 120.0);
  return o;
}

Outcome kernel_identities() {
  Outcome o;
  const Timed t = run("kernel_identities");
  no_failure(o, t.report);
  o.expect("fundamental Cauchy",
           measured(t.report, "(D - (grad f/f) C)(E/f) = 0 away from 0, 100 points"), "<=", 1e-12);
  o.expect("grad N - E", measured(t.report, "grad N == E, n = 3..6"), "<=", 1e-12);
  o.expect("Yukawa flux order", measured(t.report, "Yukawa flux error order in eps"), ">=", 0.9);
  return o;
}

Outcome factorizations() {
  Outcome o;
  const Timed t = run("factorizations");
  no_failure(o, t.report);
  o.expect("symbolic",
           measured(t.report, "symbolic alpha = c e1, h0 = x1^2: factored side == -2 + c^2 x1^2"),
           "<=", 0.0);
  double order = 1e300;
  int n = 0;
  for (const auto& c : t.report.criteria) {
    if (c.name.find("stencil order") != std::string::npos) {
      order = std::min(order, c.measured);
      ++n;
    }
  }
  o.expect_true("stencil cases present", n > 0);
  o.expect("min stencil order", order, ">=", 0.9);
  return o;
}

Outcome main_vekua() {
  Outcome o;
  const Timed t = run("main_vekua");
  no_failure(o, t.report);
  const CheckReport& r = t.report;
  o.expect("vekua residual", measured(r, "vekua residual (normalized)"), "<=", 0.03);
  o.expect("vekua order", measured(r, "vekua residual order"), ">", 0.0);
  o.expect("|beltrami - vekua order|", measured(r, "|beltrami order - vekua order|"), "<=", 0.5);
  const bool floor = criterion_passed(r, "Sc(w)/f conductivity residual at solver floor");
  const bool order = measured(r, "Sc(w)/f conductivity residual order") >= 1.5;
  o.expect_true("Sc(w)/f conductivity residual at stencil order or solver floor", floor || order);
  return o;
}

Outcome reconstruction() {
  Outcome o;
  for (const char* id : {"integral_cauchy", "schrodinger_reconstruction"}) {
    const Timed t = run(id);
    no_failure(o, t.report);
    for (const char* arm : {"strong flux", "weak DtN pairing"}) {
      const std::string a = arm;
      const double interior = measured(t.report, a + ": interior relative error");
      if (std::isnan(interior)) continue;
      o.expect(std::string(id) + " " + a + " interior", interior, "<=", 0.05);
      o.expect("exterior", measured(t.report, a + ": exterior magnitude"), "<=", 0.05);
      o.expect("refinement ratio", measured(t.report, a + ": refinement ratio"), ">", 1.0);
    }
  }
  return o;
}

Outcome dtn_properties() {
  Outcome o;
  const Timed t = run("dtn_properties");
  no_failure(o, t.report);
  const CheckReport& r = t.report;
  o.expect("symmetry", measured(r, "conductivity pairing symmetric"), "<=", 1e-8);
  o.expect("constants", measured(r, "constants annihilated"), "<=", 1e-8);
  o.expect("relation", measured(r, "D-N relation residual"), "<=", 0.05);
  o.expect("relation, constant f", measured(r, "D-N relation, constant f"), "<=", 1e-9);
  o.expect("extension", measured(r, "pairing independent of extension"), "<=", 1e-8);
  return o;
}

Outcome hodge() {
  Outcome o;
  const Timed t = run("hodge");
  no_failure(o, t.report);
  o.expect_true("finest 32", t.report.config.resolutions.back() == 32);
  o.expect("normalized inner product", measured(t.report, "max normalized inner product"), "<=",
           0.01);
  return o;
}

Outcome difference_identities() {
  Outcome o;
  const Timed t = run("difference_identities");
  no_failure(o, t.report);
  const CheckReport& r = t.report;
  o.expect("potential identity",
           measured(r, "trivial arm g = f: both sides of the potential identity vanish"), "<=", 1e-12);
  o.expect("newton identity",
           measured(r, "trivial arm g = f: both sides of the newton identity vanish"), "<=", 1e-12);
  o.expect("DtN discrepancy",
           measured(r, "falsification: DtN discrepancy exceeds 10x solver tolerance"), ">", 1e-11);
  o.expect_true("discrepancy archived", r.has_metric("falsification: relative DtN discrepancy"));
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"algebra exactness", algebra},
      {"operator consistency", operator_consistency},
      {"Cauchy theorem", cauchy_theorem},
      {"Borel-Pompeiu formula", borel_pompeiu},
      {"kernel identities", kernel_identities},
      {"factorization", factorizations},
      {"main Vekua pipeline", main_vekua},
      {"reconstruction identities", reconstruction},
      {"DtN properties", dtn_properties},
      {"Hodge orthogonality", hodge},
      {"difference identities", difference_identities},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Outcome o = criteria[i].second();
    failed += o.pass ? 0 : 1;
    std::printf("AC%zu %s  %s  (%s)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu acceptance criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
