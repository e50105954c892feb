#include "sdfem/study.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "sdfem/error.hpp"
#include "sdfem/fem.hpp"
#include "sdfem/norms.hpp"

namespace sdfem {

void StudySpec::validate() const {
  if (epsilons.empty()) throw ConfigError("study: epsilon list is empty");
  if (n_list.empty()) throw ConfigError("study: N list is empty");
  for (const double e : epsilons) {
    if (!std::isfinite(e) || !(e > 0.0) || !(e < 1.0)) throw ConfigError("study: every epsilon must lie in (0, 1)");
  }
  for (std::size_t a = 0; a < epsilons.size(); ++a) {
    for (std::size_t b2 = a + 1; b2 < epsilons.size(); ++b2) {
      if (epsilons[a] == epsilons[b2]) throw ConfigError("study: epsilon values must be distinct");
    }
  }
  for (const int n : n_list) {
    if (n < 6 || n % 6 != 0) throw ConfigError("study: every N must be a positive multiple of 6");
  }
  CoefficientSet{epsilons.front(), b, c, beta}.validate();
  if (!std::isfinite(rho) || !(rho > 0.0)) throw ConfigError("study: rho must be > 0");
  QuadratureRule{quad_order, graded_quadrature}.validate();
  QuadratureRule{norm_quad_order, graded_quadrature}.validate();
  if (sampling < 2) throw ConfigError("study: sampling must be >= 2");
  if (probes.empty()) throw ConfigError("study: at least one Green's function probe is required");
  for (const ProbeSpec& p : probes) {
    if (!(p.x > 0.0 && p.x < 1.0 && p.y > 0.0 && p.y < 1.0)) throw ConfigError("study: probes must be interior points");
    if (!(p.k > 0.0) || !(p.K > 0.0)) throw ConfigError("study: green_k and green_K must be > 0");
  }
  if (format != "csv" && format != "markdown") throw ConfigError("study: format must be csv or markdown");
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_double(std::string_view s, const std::string& where) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ConfigError(where + ": '" + std::string(s) + "' is not a number");
  }
  return v;
}

int parse_int(std::string_view s, const std::string& where) {
  s = trim(s);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ConfigError(where + ": '" + std::string(s) + "' is not an integer");
  }
  return v;
}

bool parse_bool(std::string_view s, const std::string& where) {
  s = trim(s);
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw ConfigError(where + ": '" + std::string(s) + "' is not a boolean");
}

}  // namespace

StudySpec parse_study_config(std::string_view text, StudySpec base) {
  StudySpec spec = std::move(base);
  double green_k = spec.probes.empty() ? 2.0 : spec.probes.front().k;
  double green_K = spec.probes.empty() ? 2.0 : spec.probes.front().K;
  std::optional<std::vector<ProbeSpec>> probes;
  int line_no = 0;
  for (std::string_view raw : split(text, '\n')) {
    ++line_no;
    const std::size_t hash = raw.find('#');
    const std::string_view line = trim(raw.substr(0, hash));
    if (line.empty()) continue;
    const std::string where = "config line " + std::to_string(line_no);
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + ": expected key = value");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));

    if (key == "epsilon") {
      spec.epsilons.clear();
      for (const auto part : split(value, ',')) spec.epsilons.push_back(parse_double(part, where));
    } else if (key == "n_list") {
      spec.n_list.clear();
      for (const auto part : split(value, ',')) spec.n_list.push_back(parse_int(part, where));
    } else if (key == "b") {
      spec.b = parse_double(value, where);
    } else if (key == "c") {
      spec.c = parse_double(value, where);
    } else if (key == "beta") {
      spec.beta = parse_double(value, where);
    } else if (key == "rho") {
      spec.rho = parse_double(value, where);
    } else if (key == "c_star") {
      spec.c_star = parse_double(value, where);
    } else if (key == "quad_order") {
      spec.quad_order = parse_int(value, where);
    } else if (key == "norm_quad_order") {
      spec.norm_quad_order = parse_int(value, where);
    } else if (key == "graded_quadrature") {
      spec.graded_quadrature = parse_bool(value, where);
    } else if (key == "sampling") {
      spec.sampling = parse_int(value, where);
    } else if (key == "benchmark") {
      spec.benchmark = parse_benchmark(value);
    } else if (key == "green_node") {
      probes.emplace();
      for (const auto pair : split(value, ';')) {
        const auto xy = split(pair, ',');
        if (xy.size() != 2) throw ConfigError(where + ": green_node expects x,y pairs separated by ';'");
        probes->push_back(ProbeSpec{parse_double(xy[0], where), parse_double(xy[1], where), 0.0, 0.0});
      }
    } else if (key == "green_k") {
      green_k = parse_double(value, where);
    } else if (key == "green_K") {
      green_K = parse_double(value, where);
    } else if (key == "format") {
      spec.format = std::string(value);
    } else if (key == "out") {
      spec.out = std::string(value);
    } else {
      throw ConfigError(where + ": unknown key '" + std::string(key) + "'");
    }
  }
  if (probes) spec.probes = std::move(*probes);
  for (ProbeSpec& p : spec.probes) {
    p.k = green_k;
    p.K = green_K;
  }
  return spec;
}

StudySpec load_study_config(const std::string& path, StudySpec base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("study: cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_study_config(buf.str(), std::move(base));
}

StudyRow run_case(const StudySpec& spec, double epsilon, int n) {
  const CoefficientSet coeffs{epsilon, spec.b, spec.c, spec.beta};
  const ShishkinMesh mesh(MeshConfig{n, epsilon, spec.beta, spec.rho});
  const ManufacturedProblem problem = make_benchmark(coeffs, spec.benchmark);
  const StabilizationParam stab(mesh, spec.c_star, spec.c);
  const QuadratureRule assembly_rule{spec.quad_order, spec.graded_quadrature};
  const QuadratureRule norm_rule{spec.norm_quad_order, spec.graded_quadrature};
  NormOptions opt;
  opt.sampling = spec.sampling;
  opt.quad = norm_rule;

  const AssembledSystem sys = assemble(
      mesh, coeffs, stab, [&](double x, double y) { return problem.f(x, y); }, FormKind::Sdfem, assembly_rule);
  const LinearSolver solver(sys);
  const DiscreteField U = DiscreteField::from_interior(mesh, solver.solve(sys.rhs));
  const DiscreteField uI = interpolate(mesh, problem, Part::U);

  StudyRow row;
  row.epsilon = epsilon;
  row.n = n;
  const auto interp = interp_error_table(problem, mesh, opt);
  row.metrics[0] = interp[0].value;
  row.metrics[1] = interp[1].value;
  row.metrics[2] = energy_norm(mesh, coeffs, stab, uI - U, norm_rule);
  row.metrics[3] = nodal_error_smooth_and_layer(U, problem);

  for (const ProbeSpec& p : spec.probes) {
    GreenConfig gc;
    gc.node = nearest_interior_node(mesh, p.x, p.y);
    gc.k = p.k;
    gc.K = p.K;
    const GreenField g = solve_green(mesh, coeffs, sys, solver, gc);
    ProbeReport rep;
    rep.node = gc.node;
    rep.x = mesh.x(gc.node.i);
    rep.y = mesh.y(gc.node.j);
    rep.convection = convection_case(mesh, g);
    const double ge = energy_norm(mesh, coeffs, stab, g.G, norm_rule);
    rep.green_energy_sq = ge * ge;
    rep.residual = g.residual;
    rep.split = error_split_terms(problem, mesh, stab, U, g, norm_rule);
    rep.envelopes = predicted_envelopes(mesh, coeffs, stab, g, ge);
    row.probes.push_back(rep);
  }
  row.metrics[4] = row.probes.front().green_energy_sq;
  row.metrics[5] = row.probes.front().split.term1;
  row.metrics[6] = row.probes.front().split.term2;
  return row;
}

namespace {

template <class E>
[[noreturn]] void rethrow_with_context(const E& e, double eps, int n) {
  throw E("eps=" + format_number(eps) + " N=" + std::to_string(n) + ": " + e.what());
}

std::optional<double> rate_between(const std::vector<std::pair<double, double>>& pts, double ln_power) {
  std::vector<std::pair<double, double>> clean;
  for (const auto& [n, v] : pts) {
    if (!(std::fabs(v) > 0.0) || !std::isfinite(v)) return std::nullopt;
    clean.emplace_back(n, std::fabs(v));
  }
  if (clean.size() < 2) return std::nullopt;
  return fit_rate(clean, ln_power);
}

}  // namespace

ConvergenceTable run_study(const StudySpec& spec) {
  spec.validate();
  ConvergenceTable table;
  for (const double eps : spec.epsilons) {
    const std::size_t first = table.rows.size();
    for (const int n : spec.n_list) {
      try {
        table.rows.push_back(run_case(spec, eps, n));
      } catch (const SolverError& e) {
        rethrow_with_context(e, eps, n);
      } catch (const DomainError& e) {
        rethrow_with_context(e, eps, n);
      } catch (const ConfigError& e) {
        rethrow_with_context(e, eps, n);
      }
    }
    RateRow rr;
    rr.epsilon = eps;
    for (std::size_t m = 0; m < kMetricNames.size(); ++m) {
      std::vector<std::pair<double, double>> all;
      for (std::size_t r = first; r < table.rows.size(); ++r) {
        all.emplace_back(table.rows[r].n, table.rows[r].metrics[m]);
        if (r > first) {
          const std::vector<std::pair<double, double>> pair{{table.rows[r - 1].n, table.rows[r - 1].metrics[m]},
                                                            {table.rows[r].n, table.rows[r].metrics[m]}};
          table.rows[r].pair_rates[m] = table.rows[r - 1].n == table.rows[r].n
                                            ? std::nullopt
                                            : rate_between(pair, kMetricLnPowers[m]);
        }
      }
      try {
        rr.rates[m] = rate_between(all, kMetricLnPowers[m]);
      } catch (const ConfigError&) {
        rr.rates[m] = std::nullopt;  // repeated N values
      }
    }
    table.rate_rows.push_back(rr);
  }
  return table;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 9);
  return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string> header() {
  std::vector<std::string> h{"eps", "N"};
  for (const auto name : kMetricNames) h.emplace_back(name);
  for (const auto name : kMetricNames) h.push_back("rate_" + std::string(name));
  return h;
}

std::vector<std::vector<std::string>> cells(const ConvergenceTable& table) {
  std::vector<std::vector<std::string>> out;
  auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
  std::size_t r = 0;
  for (const RateRow& rr : table.rate_rows) {
    for (; r < table.rows.size() && table.rows[r].epsilon == rr.epsilon; ++r) {
      const StudyRow& row = table.rows[r];
      std::vector<std::string> line{format_number(row.epsilon), std::to_string(row.n)};
      for (const double m : row.metrics) line.push_back(format_number(m));
      for (const auto& pr : row.pair_rates) line.push_back(opt(pr));
      out.push_back(std::move(line));
    }
    std::vector<std::string> line{format_number(rr.epsilon), "rate"};
    for (std::size_t m = 0; m < kMetricNames.size(); ++m) line.emplace_back();
    for (const auto& v : rr.rates) line.push_back(opt(v));
    out.push_back(std::move(line));
  }
  return out;
}

std::string join(const std::vector<std::string>& v, std::string_view sep) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) s += sep;
    s += v[k];
  }
  return s;
}

}  // namespace

std::string emit(const ConvergenceTable& table, std::string_view format) {
  if (table.rows.empty()) throw ConfigError("emit: table is empty");
  const auto h = header();
  const auto body = cells(table);
  std::string out;
  if (format == "csv") {
    out += join(h, ",") + "\n";
    for (const auto& line : body) out += join(line, ",") + "\n";
  } else if (format == "markdown") {
    out += "| " + join(h, " | ") + " |\n";
    out += "|" + std::string();
    for (std::size_t k = 0; k < h.size(); ++k) out += "---|";
    out += "\n";
    for (const auto& line : body) out += "| " + join(line, " | ") + " |\n";
  } else {
    throw ConfigError("emit: unknown format '" + std::string(format) + "'");
  }
  return out;
}

std::string emit_probes(const ConvergenceTable& table) {
  std::string out =
      "eps,N,probe,node_i,node_j,x,y,case,green_energy_sq,green_residual,term1,term2,sum,direct,mismatch,"
      "bound_green_energy_sq,bound_term2,bound_term1\n";
  for (const StudyRow& row : table.rows) {
    for (std::size_t p = 0; p < row.probes.size(); ++p) {
      const ProbeReport& r = row.probes[p];
      const std::vector<std::string> line{format_number(row.epsilon),
                                          std::to_string(row.n),
                                          std::to_string(p),
                                          std::to_string(r.node.i),
                                          std::to_string(r.node.j),
                                          format_number(r.x),
                                          format_number(r.y),
                                          std::string(to_string(r.convection)),
                                          format_number(r.green_energy_sq),
                                          format_number(r.residual),
                                          format_number(r.split.term1),
                                          format_number(r.split.term2),
                                          format_number(r.split.sum),
                                          format_number(r.split.direct),
                                          format_number(r.split.mismatch()),
                                          format_number(r.envelopes.green_energy_sq),
                                          format_number(r.envelopes.bilinear),
                                          format_number(r.envelopes.convection)};
      out += join(line, ",") + "\n";
    }
  }
  return out;
}

}  // namespace sdfem
