#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "sdfem/mesh.hpp"
#include "sdfem/problem.hpp"

namespace sdfem {

/// Value and first derivatives at a point.
struct Jet {
  double v = 0.0;
  double dx = 0.0;
  double dy = 0.0;
};

/// Piecewise-smooth function evaluated cell by cell. The cell argument lets
/// discrete fields return the one-sided gradient of that cell.
using CellFunction = std::function<Jet(CellIndex cell, double x, double y)>;

/// Interior-node numbering: dof = (j - 1)(N - 1) + (i - 1) for 1 <= i, j <= N - 1.
class DofMap {
 public:
  explicit DofMap(int n);

  int n() const { return n_; }
  std::size_t size() const { return static_cast<std::size_t>(n_ - 1) * static_cast<std::size_t>(n_ - 1); }
  bool dirichlet(NodeIndex v) const { return v.i == 0 || v.j == 0 || v.i == n_ || v.j == n_; }
  /// -1 for boundary nodes.
  std::ptrdiff_t dof(NodeIndex v) const;
  NodeIndex node(std::size_t dof) const;

 private:
  int n_;
};

/// Bilinear finite element function given by its values at all (N+1)^2 mesh
/// nodes (index j(N+1) + i). Members of V^N have zero boundary values;
/// interpolants of general functions may not. The mesh must outlive the field.
class DiscreteField {
 public:
  explicit DiscreteField(const ShishkinMesh& mesh);

  /// Field with the given interior dof values and zero boundary values.
  static DiscreteField from_interior(const ShishkinMesh& mesh, std::span<const double> interior);

  const ShishkinMesh& mesh() const { return *mesh_; }

  double at(NodeIndex v) const { return nodal_[index(v)]; }
  void set(NodeIndex v, double value) { nodal_[index(v)] = value; }
  std::span<const double> nodal() const { return nodal_; }

  std::vector<double> interior() const;
  bool boundary_is_zero() const;

  /// Value and gradient of the bilinear restriction to `cell` at (x, y).
  Jet eval(CellIndex cell, double x, double y) const;
  /// Value at an arbitrary point of the closed unit square.
  double value(double x, double y) const;

  DiscreteField& operator+=(const DiscreteField& other);
  DiscreteField& operator-=(const DiscreteField& other);
  DiscreteField& operator*=(double s);

 private:
  std::size_t index(NodeIndex v) const;

  const ShishkinMesh* mesh_;
  std::vector<double> nodal_;
};

DiscreteField operator-(DiscreteField a, const DiscreteField& b);

/// Nodal interpolant g^I. Boundary nodes receive g's boundary values.
DiscreteField interpolate(const ShishkinMesh& mesh, const std::function<double(double, double)>& g);
DiscreteField interpolate(const ShishkinMesh& mesh, const ManufacturedProblem& problem, Part which);

CellFunction as_cell_function(const DiscreteField& field);
CellFunction as_cell_function(const ManufacturedProblem& problem, Part which);
/// a - b pointwise.
CellFunction difference(CellFunction a, CellFunction b);
/// g - g^I for one part of the problem.
CellFunction interpolation_error(const ShishkinMesh& mesh, const ManufacturedProblem& problem, Part which);

}  // namespace sdfem
