#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "vlab/harness/registry.hpp"
#include "vlab/pde.hpp"

namespace fs = std::filesystem;
using namespace vlab;
using namespace vlab::harness;

namespace {

SuiteConfig config_for(const std::string& id, const std::string& path, const std::string& out) {
  SuiteConfig c = path.empty() ? default_config(id) : load_config(path, id);
  if (!out.empty()) c.output_dir = out;
  c.validate();
  return c;
}

void print_report(const CheckReport& r) {
  std::printf("%s  %s\n", r.passed() ? "PASS" : "FAIL", r.identity.c_str());
  std::printf("  anchor: %s\n", r.anchor.c_str());
  if (!r.failure.empty()) std::printf("  error: %s\n", r.failure.c_str());
  for (const auto& c : r.criteria) {
    std::printf("  [%s] %-62s %.6g %s %.6g\n", c.passed ? "ok" : "xx", c.name.c_str(), c.measured,
                c.comparison.c_str(), c.threshold);
  }
}

void print_series(const std::vector<ConvergenceSeries>& series) {
  for (const auto& s : series) {
    std::printf("%s\n  %10s %14s %14s %10s\n", s.name.c_str(), "resolution", "h", "error",
                "order");
    for (const auto& row : s.rows) {
      std::string order = row.saturated ? "saturated" : "";
      if (row.order) order = std::to_string(*row.order);
      std::printf("  %10d %14.6g %14.6g %10s\n", row.resolution, row.h, row.error, order.c_str());
    }
  }
}

int run_dtn(const std::string& profile_name, int resolution, int traces, const std::string& out) {
  const ProfileParams pp = named_profile(profile_name);
  const ConductivityProfile f = make_profile(pp);
  const BoxGrid g = BoxGrid::unit_cube(resolution);
  std::vector<Trace> basis;
  basis.push_back(Trace(g.boundary_nodes().size(), 1.0));
  for (int d = 0; d < 3 && static_cast<int>(basis.size()) < traces; ++d) {
    basis.push_back(sample_trace(g, [d](const Vec3& x) { return x[d]; }));
  }
  while (static_cast<int>(basis.size()) < traces) {
    const int k = static_cast<int>(basis.size());
    basis.push_back(sample_trace(g, [k](const Vec3& x) {
      return std::cos(k * x[0]) * std::sin(x[1] + 0.5 * k) + x[2] * x[0];
    }));
  }
  const DtnForm cond = DtnForm::conductivity(f, g);
  const DtnForm schr = DtnForm::schrodinger(f, g);
  const auto mc = cond.matrix(basis);
  const auto ms = schr.matrix(basis);

  const fs::path dir = fs::path(out) / ("dtn_" + profile_name);
  fs::create_directories(dir);
  {
    std::ofstream os(dir / "conductivity_pairs.csv");
    write_matrix_csv(mc, os);
  }
  {
    std::ofstream os(dir / "schrodinger_pairs.csv");
    write_matrix_csv(ms, os);
  }
  for (std::size_t k = 0; k < basis.size(); ++k) {
    std::ofstream os(dir / ("trace_" + std::to_string(k) + ".csv"));
    write_trace_csv(g, basis[k], os);
  }

  double asym = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < mc.size(); ++i) {
    for (std::size_t j = 0; j < mc.size(); ++j) {
      asym = std::max(asym, std::abs(mc[i][j] - mc[j][i]));
      scale = std::max(scale, std::abs(mc[i][j]));
    }
  }
  double rel = 0.0;
  for (std::size_t k = 1; k < basis.size(); ++k) {
    rel = std::max(rel, dtn_relation_residual(f, g, basis[k], basis[k]));
  }
  const bool ok = asym <= 1e-8 * scale;
  std::printf("profile %s, %d^3 nodes, %zu traces\n", profile_name.c_str(), resolution,
              basis.size());
  std::printf("  conductivity pairing asymmetry (relative): %.3g\n", asym / scale);
  std::printf("  conductivity-Schrodinger relation residual (max): %.3g\n", rel);
  std::printf("  matrices written to %s\n", dir.string().c_str());
  std::printf("%s\n", ok ? "PASS" : "FAIL");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of Vekua-equation and conductivity identities"};
  app.require_subcommand(1);

  std::string id, config_path, out;
  auto* verify = app.add_subcommand("verify", "Run one identity check and write its report");
  verify->add_option("identity", id, "Identity id (see `list`)")->required();
  verify->add_option("--config", config_path, "JSON config overriding the defaults")
      ->check(CLI::ExistingFile);
  verify->add_option("--output", out, "Output directory");

  auto* conv = app.add_subcommand("convergence", "Refinement study for one identity");
  conv->add_option("identity", id, "Identity id")->required();
  conv->add_option("--config", config_path, "JSON config")->check(CLI::ExistingFile);
  conv->add_option("--output", out, "Output directory");

  std::string which;
  auto* suite = app.add_subcommand("suite", "Run every identity");
  suite->add_option("which", which, "Only `all` is accepted")
      ->required()
      ->check(CLI::IsMember({"all"}));
  suite->add_option("--output", out, "Output directory");

  std::string profile;
  int resolution = 16;
  int traces = 6;
  auto* dtn = app.add_subcommand("dtn", "Weak DtN pairing matrices for a named profile");
  dtn->add_option("--profile", profile, "exp_z, exp_xyz, constant or linear_z")->required();
  dtn->add_option("--resolution", resolution, "Nodes per axis")->check(CLI::Range(8, 65));
  dtn->add_option("--traces", traces, "Number of boundary traces")->check(CLI::Range(2, 32));
  dtn->add_option("--output", out, "Output directory");

  app.add_subcommand("list", "List identity ids");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) {
      const SuiteConfig cfg = config_for(id, config_path, out);
      const CheckReport rep = run_check(cfg);
      rep.write((fs::path(cfg.output_dir) / cfg.identity).string());
      print_report(rep);
      return rep.passed() ? 0 : 1;
    }
    if (*conv) {
      const SuiteConfig cfg = config_for(id, config_path, out);
      if (cfg.resolutions.size() < 2) {
        throw std::invalid_argument("a convergence study needs at least two resolutions");
      }
      const CheckReport rep = run_check(cfg);
      if (!rep.failure.empty()) throw std::runtime_error(rep.failure);
      rep.write((fs::path(cfg.output_dir) / cfg.identity).string());
      print_series(rep.convergence);
      return rep.passed() ? 0 : 1;
    }
    if (*suite) {
      const auto reports = run_suite([&](const std::string& i) { return config_for(i, "", out); });
      bool all = true;
      Json summary = Json::array();
      for (const auto& r : reports) {
        r.write((fs::path(r.config.output_dir) / r.identity).string());
        print_report(r);
        all = all && r.passed();
        summary.push_back({{"identity", r.identity}, {"passed", r.passed()}});
      }
      const fs::path dir = reports.empty() ? fs::path(out) : fs::path(reports[0].config.output_dir);
      std::ofstream(dir / "suite.json") << summary.dump(2) << '\n';
      std::printf("%s: %s\n", all ? "PASS" : "FAIL", "suite all");
      return all ? 0 : 1;
    }
    if (*dtn) {
      return run_dtn(profile, resolution, traces, out.empty() ? "vekua-lab-out" : out);
    }
    for (const auto& info : identities()) {
      std::printf("%-28s %s\n", info.id.c_str(), info.description.c_str());
    }
    return 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "vekua-lab: %s\n", e.what());
    return 2;
  }
}
