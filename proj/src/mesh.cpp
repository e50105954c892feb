#include "sdfem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sdfem/error.hpp"

namespace sdfem {

void MeshConfig::validate() const {
  if (n < 6 || n % 6 != 0) {
    throw ConfigError("mesh: N must be a positive multiple of 6, got " + std::to_string(n));
  }
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(epsilon)) throw ConfigError("mesh: epsilon must be finite and > 0");
  if (!positive(beta)) throw ConfigError("mesh: beta must be finite and > 0");
  if (!positive(rho)) throw ConfigError("mesh: rho must be finite and > 0");
}

TransitionParams compute_transition_params(const MeshConfig& config) {
  // The closed forms only need N >= 2; divisibility matters for the nodes.
  if (config.n < 2) throw ConfigError("mesh: N must be >= 2, got " + std::to_string(config.n));
  MeshConfig probe = config;
  probe.n = 6;
  probe.validate();
  const double ln_n = std::log(static_cast<double>(config.n));
  const double candidate_x = config.rho * config.epsilon / config.beta * ln_n;
  const double candidate_y = config.rho * std::sqrt(config.epsilon) * ln_n;

  TransitionParams p;
  p.saturated_x = candidate_x >= 0.5;
  p.saturated_y = candidate_y >= 0.25;
  p.lambda_x = p.saturated_x ? 0.5 : candidate_x;
  p.lambda_y = p.saturated_y ? 0.25 : candidate_y;
  return p;
}

std::string_view to_string(Subdomain s) {
  switch (s) {
    case Subdomain::OmegaS: return "Omega_s";
    case Subdomain::Omega1: return "Omega_1";
    case Subdomain::Omega2: return "Omega_2";
    case Subdomain::Omega12: return "Omega_12";
  }
  return "?";
}

namespace {

Subdomain tag(const TransitionParams& p, double x, double y) {
  const bool x_layer = x >= 1.0 - p.lambda_x;
  const bool y_layer = y <= p.lambda_y || y >= 1.0 - p.lambda_y;
  if (x_layer && y_layer) return Subdomain::Omega12;
  if (y_layer) return Subdomain::Omega2;
  if (x_layer) return Subdomain::Omega1;
  return Subdomain::OmegaS;
}

}  // namespace

ShishkinMesh::ShishkinMesh(const MeshConfig& config)
    : config_(config), params_((config.validate(), compute_transition_params(config))) {
  const int n = config_.n;
  const double nd = static_cast<double>(n);
  const double lx = params_.lambda_x;
  const double ly = params_.lambda_y;

  xs_.resize(static_cast<std::size_t>(n) + 1);
  ys_.resize(static_cast<std::size_t>(n) + 1);

  const int half = n / 2;
  for (int i = 0; i <= n; ++i) {
    double v;
    if (i < half) {
      v = 2.0 * i * (1.0 - lx) / nd;
    } else if (i == half) {
      v = 1.0 - lx;
    } else if (i < n) {
      v = 1.0 - 2.0 * (n - i) * lx / nd;
    } else {
      v = 1.0;
    }
    xs_[static_cast<std::size_t>(i)] = v;
  }

  const int third = n / 3;
  for (int j = 0; j <= n; ++j) {
    double v;
    if (j < third) {
      v = 3.0 * j * ly / nd;
    } else if (j == third) {
      v = ly;
    } else if (j < 2 * third) {
      v = (3.0 * j / nd - 1.0) - 3.0 * (2.0 * j - nd) * ly / nd;
    } else if (j == 2 * third) {
      v = 1.0 - ly;
    } else if (j < n) {
      v = 1.0 - 3.0 * (n - j) * ly / nd;
    } else {
      v = 1.0;
    }
    ys_[static_cast<std::size_t>(j)] = v;
  }

  for (std::size_t k = 1; k < xs_.size(); ++k) {
    if (!(xs_[k] > xs_[k - 1]) || !(ys_[k] > ys_[k - 1])) {
      throw ConfigError("mesh: nodes are not strictly increasing (epsilon too small for double precision?)");
    }
  }

  coarse_hx_ = (1.0 - lx) / (nd / 2.0);
  fine_hx_ = lx / (nd / 2.0);
  coarse_hy_ = (1.0 - 2.0 * ly) / (nd / 3.0);
  fine_hy_ = ly / (nd / 3.0);

  cell_tags_.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    for (int i = 1; i <= n; ++i) {
      const CellIndex c{i, j};
      const CellRect r = cell(c);
      cell_tags_[cell_offset(c)] = tag(params_, r.xc(), r.yc());
    }
  }
}

bool ShishkinMesh::valid(CellIndex c) const {
  return c.i >= 1 && c.i <= config_.n && c.j >= 1 && c.j <= config_.n;
}

bool ShishkinMesh::valid(NodeIndex v) const {
  return v.i >= 0 && v.i <= config_.n && v.j >= 0 && v.j <= config_.n;
}

bool ShishkinMesh::on_boundary(NodeIndex v) const {
  return v.i == 0 || v.j == 0 || v.i == config_.n || v.j == config_.n;
}

CellRect ShishkinMesh::cell(CellIndex c) const {
  return CellRect{x(c.i - 1), x(c.i), y(c.j - 1), y(c.j)};
}

Subdomain ShishkinMesh::subdomain(CellIndex c) const {
  if (!valid(c)) {
    throw DomainError("mesh: cell index (" + std::to_string(c.i) + ", " + std::to_string(c.j) +
                      ") outside 1.." + std::to_string(config_.n));
  }
  return cell_tags_[cell_offset(c)];
}

Subdomain ShishkinMesh::subdomain(double x, double y) const {
  if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0)) {
    throw DomainError("mesh: point outside the closed unit square");
  }
  return tag(params_, x, y);
}

CellIndex ShishkinMesh::locate(double x, double y) const {
  if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0)) {
    throw DomainError("mesh: point outside the closed unit square");
  }
  auto index = [n = config_.n](std::span<const double> nodes, double v) {
    const auto it = std::upper_bound(nodes.begin(), nodes.end(), v);
    const int k = static_cast<int>(it - nodes.begin());
    return std::clamp(k, 1, n);
  };
  return CellIndex{index(xs_, x), index(ys_, y)};
}

NodeIndex ShishkinMesh::nearest_node(double x, double y) const {
  auto nearest = [](std::span<const double> nodes, double v) {
    const auto it = std::lower_bound(nodes.begin(), nodes.end(), v);
    if (it == nodes.begin()) return 0;
    if (it == nodes.end()) return static_cast<int>(nodes.size()) - 1;
    const int k = static_cast<int>(it - nodes.begin());
    return (v - nodes[static_cast<std::size_t>(k - 1)] <= nodes[static_cast<std::size_t>(k)] - v) ? k - 1 : k;
  };
  return NodeIndex{nearest(xs_, x), nearest(ys_, y)};
}

ShishkinMesh build_mesh(const MeshConfig& config) { return ShishkinMesh(config); }

Subdomain classify_point(const ShishkinMesh& mesh, double x, double y) { return mesh.subdomain(x, y); }

Subdomain classify_cell(const ShishkinMesh& mesh, CellIndex cell) { return mesh.subdomain(cell); }

}  // namespace sdfem
