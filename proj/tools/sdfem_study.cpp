// Convergence-study driver: runs the SDFEM benchmark over (eps, N) and
// writes the error/rate table.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sdfem/error.hpp"
#include "sdfem/kernels/kernels.hpp"
#include "sdfem/study.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitCheck = 4;

std::string join_overrides(const std::vector<std::string>& items) {
  std::string s;
  for (std::size_t k = 0; k < items.size(); ++k) s += (k ? "," : "") + items[k];
  return s;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw sdfem::ConfigError("cannot write '" + path + "'");
  out << text;
}

// Checks the headline trends of the table; returns the failed descriptions.
std::vector<std::string> check_table(const sdfem::ConvergenceTable& table) {
  std::vector<std::string> failed;
  for (const auto& rr : table.rate_rows) {
    const std::string tag = "eps=" + sdfem::format_number(rr.epsilon) + ": ";
    auto need = [&](std::size_t metric, double min_rate) {
      const auto& r = rr.rates[metric];
      if (!r || *r < min_rate) {
        failed.push_back(tag + "rate of " + std::string(sdfem::kMetricNames[metric]) + " " +
                         (r ? sdfem::format_number(*r) : std::string("n/a")) + " < " + sdfem::format_number(min_rate));
      }
    };
    need(0, 1.9 - 0.15);
    need(1, 1.9 - 0.15);
    need(3, 1.75);
    const auto& g = rr.rates[4];
    if (g && -*g > 1.15) failed.push_back(tag + "|||G|||^2 grows faster than N ln N");
  }
  for (const auto& row : table.rows) {
    for (const auto& p : row.probes) {
      if (!(p.residual <= 1e-9)) failed.push_back("Green's function residual above 1e-9");
    }
  }
  return failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SDFEM convergence study on Shishkin meshes"};
  std::string config_path, out_path, format, backend, probe_out;
  std::vector<std::string> epsilons, n_list, green_nodes;
  double c_star = 0.0;
  int quad_order = 0;
  bool check = false;
  app.add_option("--config", config_path, "key=value configuration file");
  app.add_option("--epsilon", epsilons, "perturbation parameters (overrides config)")->delimiter(',');
  app.add_option("--n-list", n_list, "mesh sizes, multiples of 6 (overrides config)")->delimiter(',');
  auto* c_star_opt = app.add_option("--c-star", c_star, "stabilization constant C*");
  auto* quad_opt = app.add_option("--quad-order", quad_order, "Gauss points per direction for assembly");
  app.add_option("--green-node", green_nodes, "Green's function probe as x,y (repeatable)");
  app.add_option("--out", out_path, "output file (default: stdout)");
  app.add_option("--format", format, "csv or markdown");
  app.add_option("--probe-out", probe_out, "write per-probe details as csv");
  app.add_option("--backend", backend, "kernel backend: auto, scalar, avx2, neon");
  app.add_flag("--check", check, "exit with status 4 when the expected trends fail");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (!backend.empty() && backend != "auto") {
      if (backend == "scalar") {
        sdfem::kernels::set_backend(sdfem::kernels::Backend::Scalar);
      } else if (backend == "avx2") {
        sdfem::kernels::set_backend(sdfem::kernels::Backend::Avx2);
      } else if (backend == "neon") {
        sdfem::kernels::set_backend(sdfem::kernels::Backend::Neon);
      } else {
        throw sdfem::ConfigError("unknown backend '" + backend + "'");
      }
    }

    sdfem::StudySpec spec;
    if (!config_path.empty()) spec = sdfem::load_study_config(config_path);
    std::ostringstream overrides;
    if (!epsilons.empty()) overrides << "epsilon = " << join_overrides(epsilons) << "\n";
    if (!n_list.empty()) overrides << "n_list = " << join_overrides(n_list) << "\n";
    if (c_star_opt->count() > 0) overrides << "c_star = " << sdfem::format_number(c_star) << "\n";
    if (quad_opt->count() > 0) overrides << "quad_order = " << quad_order << "\n";
    if (!green_nodes.empty()) {
      std::string joined;
      for (std::size_t k = 0; k < green_nodes.size(); ++k) joined += (k ? ";" : "") + green_nodes[k];
      overrides << "green_node = " << joined << "\n";
    }
    if (!format.empty()) overrides << "format = " << format << "\n";
    if (!out_path.empty()) overrides << "out = " << out_path << "\n";
    spec = sdfem::parse_study_config(overrides.str(), spec);
    spec.validate();

    const sdfem::ConvergenceTable table = sdfem::run_study(spec);
    write_text(spec.out, sdfem::emit(table, spec.format));
    if (!probe_out.empty()) write_text(probe_out, sdfem::emit_probes(table));

    if (check) {
      const auto failed = check_table(table);
      for (const auto& f : failed) std::cerr << "check failed: " << f << "\n";
      if (!failed.empty()) return kExitCheck;
    }
  } catch (const sdfem::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const sdfem::DomainError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const sdfem::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitOk;
}
