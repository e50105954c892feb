#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace sdfem {

struct MeshConfig {
  int n = 0;             // intervals per direction, multiple of 6
  double epsilon = 0.0;  // perturbation parameter
  double beta = 1.0;     // lower bound of the convection coefficient
  double rho = 2.5;      // transition constant

  /// Throws ConfigError unless n >= 6, n % 6 == 0 and epsilon, beta, rho
  /// are finite and positive.
  void validate() const;
};

struct TransitionParams {
  double lambda_x = 0.5;
  double lambda_y = 0.25;
  bool saturated_x = true;  // lambda_x == 1/2: x-direction mesh is uniform
  bool saturated_y = true;  // lambda_y == 1/4
};

/// lambda_x = min(1/2, rho eps/beta ln N), lambda_y = min(1/4, rho sqrt(eps) ln N).
/// Accepts any N >= 2; building a mesh additionally needs N % 6 == 0.
TransitionParams compute_transition_params(const MeshConfig& config);

enum class Subdomain { OmegaS, Omega1, Omega2, Omega12 };

std::string_view to_string(Subdomain s);

/// Cell tau_ij = [x_{i-1}, x_i] x [y_{j-1}, y_j], 1 <= i, j <= N.
struct CellIndex {
  int i = 1;
  int j = 1;
  friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

/// Mesh node (x_i, y_j), 0 <= i, j <= N.
struct NodeIndex {
  int i = 0;
  int j = 0;
  friend bool operator==(const NodeIndex&, const NodeIndex&) = default;
};

struct CellRect {
  double x0, x1, y0, y1;
  double xc() const { return 0.5 * (x0 + x1); }
  double yc() const { return 0.5 * (y0 + y1); }
  double hx() const { return x1 - x0; }
  double hy() const { return y1 - y0; }
  double area() const { return hx() * hy(); }
};

/// Piecewise-uniform layer-adapted tensor mesh on the unit square. Immutable
/// after construction.
///
/// x: N/2 uniform cells on [0, 1 - lambda_x], N/2 on [1 - lambda_x, 1].
/// y: N/3 uniform cells on each of [0, lambda_y], [lambda_y, 1 - lambda_y],
///    [1 - lambda_y, 1].
/// The transition nodes are assigned directly so subdomain boundaries
/// coincide bit-exactly with cell edges.
class ShishkinMesh {
 public:
  explicit ShishkinMesh(const MeshConfig& config);

  const MeshConfig& config() const { return config_; }
  const TransitionParams& params() const { return params_; }
  int n() const { return config_.n; }

  std::span<const double> xs() const { return xs_; }
  std::span<const double> ys() const { return ys_; }
  double x(int i) const { return xs_[static_cast<std::size_t>(i)]; }
  double y(int j) const { return ys_[static_cast<std::size_t>(j)]; }

  // Coarse and fine step sizes H_x, h_x, H_y, h_y.
  double coarse_hx() const { return coarse_hx_; }
  double fine_hx() const { return fine_hx_; }
  double coarse_hy() const { return coarse_hy_; }
  double fine_hy() const { return fine_hy_; }

  bool valid(CellIndex c) const;
  bool valid(NodeIndex v) const;
  bool on_boundary(NodeIndex v) const;

  CellRect cell(CellIndex c) const;
  Subdomain subdomain(CellIndex c) const;
  Subdomain subdomain(double x, double y) const;

  /// Cell containing (x, y); points on shared edges go to the cell with the
  /// larger index, except on the outer boundary.
  CellIndex locate(double x, double y) const;
  NodeIndex nearest_node(double x, double y) const;

  std::size_t cell_count() const { return cell_tags_.size(); }
  std::size_t cell_offset(CellIndex c) const {
    return static_cast<std::size_t>(c.j - 1) * static_cast<std::size_t>(config_.n) +
           static_cast<std::size_t>(c.i - 1);
  }

 private:
  MeshConfig config_;
  TransitionParams params_;
  std::vector<double> xs_, ys_;
  double coarse_hx_ = 0, fine_hx_ = 0, coarse_hy_ = 0, fine_hy_ = 0;
  std::vector<Subdomain> cell_tags_;
};

ShishkinMesh build_mesh(const MeshConfig& config);

/// Region whose closed definition contains (x, y). Ties on shared edges go
/// to the higher priority region: Omega12 > Omega2 > Omega1 > OmegaS.
/// Throws DomainError outside the closed unit square.
Subdomain classify_point(const ShishkinMesh& mesh, double x, double y);

/// Classification of the cell center. Throws DomainError on bad indices.
Subdomain classify_cell(const ShishkinMesh& mesh, CellIndex cell);

}  // namespace sdfem
