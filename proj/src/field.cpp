#include "sdfem/field.hpp"

#include <memory>
#include <string>

#include "sdfem/error.hpp"

namespace sdfem {

DofMap::DofMap(int n) : n_(n) {
  if (n < 2) throw ConfigError("dofmap: need at least two intervals");
}

std::ptrdiff_t DofMap::dof(NodeIndex v) const {
  if (v.i < 0 || v.j < 0 || v.i > n_ || v.j > n_) throw DomainError("dofmap: node out of range");
  if (dirichlet(v)) return -1;
  return static_cast<std::ptrdiff_t>(v.j - 1) * (n_ - 1) + (v.i - 1);
}

NodeIndex DofMap::node(std::size_t dof) const {
  if (dof >= size()) throw DomainError("dofmap: dof out of range");
  const auto m = static_cast<std::size_t>(n_ - 1);
  return NodeIndex{static_cast<int>(dof % m) + 1, static_cast<int>(dof / m) + 1};
}

DiscreteField::DiscreteField(const ShishkinMesh& mesh)
    : mesh_(&mesh),
      nodal_(static_cast<std::size_t>(mesh.n() + 1) * static_cast<std::size_t>(mesh.n() + 1), 0.0) {}

std::size_t DiscreteField::index(NodeIndex v) const {
  if (!mesh_->valid(v)) {
    throw DomainError("field: node (" + std::to_string(v.i) + ", " + std::to_string(v.j) + ") out of range");
  }
  return static_cast<std::size_t>(v.j) * static_cast<std::size_t>(mesh_->n() + 1) + static_cast<std::size_t>(v.i);
}

DiscreteField DiscreteField::from_interior(const ShishkinMesh& mesh, std::span<const double> interior) {
  const DofMap dofs(mesh.n());
  if (interior.size() != dofs.size()) throw ConfigError("field: interior vector has wrong size");
  DiscreteField f(mesh);
  for (std::size_t k = 0; k < interior.size(); ++k) f.set(dofs.node(k), interior[k]);
  return f;
}

std::vector<double> DiscreteField::interior() const {
  const DofMap dofs(mesh_->n());
  std::vector<double> out(dofs.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = at(dofs.node(k));
  return out;
}

bool DiscreteField::boundary_is_zero() const {
  const int n = mesh_->n();
  for (int k = 0; k <= n; ++k) {
    if (at({k, 0}) != 0.0 || at({k, n}) != 0.0 || at({0, k}) != 0.0 || at({n, k}) != 0.0) return false;
  }
  return true;
}

Jet DiscreteField::eval(CellIndex cell, double x, double y) const {
  const CellRect r = mesh_->cell(cell);
  const double u00 = at({cell.i - 1, cell.j - 1});
  const double u10 = at({cell.i, cell.j - 1});
  const double u01 = at({cell.i - 1, cell.j});
  const double u11 = at({cell.i, cell.j});
  const double hx = r.hx(), hy = r.hy();
  const double s = (x - r.x0) / hx;
  const double t = (y - r.y0) / hy;
  Jet j;
  j.v = (1 - s) * (1 - t) * u00 + s * (1 - t) * u10 + (1 - s) * t * u01 + s * t * u11;
  j.dx = ((1 - t) * (u10 - u00) + t * (u11 - u01)) / hx;
  j.dy = ((1 - s) * (u01 - u00) + s * (u11 - u10)) / hy;
  return j;
}

double DiscreteField::value(double x, double y) const { return eval(mesh_->locate(x, y), x, y).v; }

DiscreteField& DiscreteField::operator+=(const DiscreteField& other) {
  if (other.mesh_ != mesh_) throw ConfigError("field: fields live on different meshes");
  for (std::size_t k = 0; k < nodal_.size(); ++k) nodal_[k] += other.nodal_[k];
  return *this;
}

DiscreteField& DiscreteField::operator-=(const DiscreteField& other) {
  if (other.mesh_ != mesh_) throw ConfigError("field: fields live on different meshes");
  for (std::size_t k = 0; k < nodal_.size(); ++k) nodal_[k] -= other.nodal_[k];
  return *this;
}

DiscreteField& DiscreteField::operator*=(double s) {
  for (double& v : nodal_) v *= s;
  return *this;
}

DiscreteField operator-(DiscreteField a, const DiscreteField& b) {
  a -= b;
  return a;
}

DiscreteField interpolate(const ShishkinMesh& mesh, const std::function<double(double, double)>& g) {
  DiscreteField f(mesh);
  for (int j = 0; j <= mesh.n(); ++j) {
    for (int i = 0; i <= mesh.n(); ++i) f.set({i, j}, g(mesh.x(i), mesh.y(j)));
  }
  return f;
}

DiscreteField interpolate(const ShishkinMesh& mesh, const ManufacturedProblem& problem, Part which) {
  return interpolate(mesh, [&](double x, double y) { return problem.eval(which, x, y); });
}

CellFunction as_cell_function(const DiscreteField& field) {
  return [&field](CellIndex c, double x, double y) { return field.eval(c, x, y); };
}

CellFunction as_cell_function(const ManufacturedProblem& problem, Part which) {
  return [&problem, which](CellIndex, double x, double y) {
    return Jet{problem.eval(which, x, y), problem.eval(which, x, y, 1, 0), problem.eval(which, x, y, 0, 1)};
  };
}

CellFunction difference(CellFunction a, CellFunction b) {
  return [a = std::move(a), b = std::move(b)](CellIndex c, double x, double y) {
    const Jet p = a(c, x, y);
    const Jet q = b(c, x, y);
    return Jet{p.v - q.v, p.dx - q.dx, p.dy - q.dy};
  };
}

CellFunction interpolation_error(const ShishkinMesh& mesh, const ManufacturedProblem& problem, Part which) {
  auto gi = std::make_shared<DiscreteField>(interpolate(mesh, problem, which));
  CellFunction exact = as_cell_function(problem, which);
  return [gi, exact = std::move(exact)](CellIndex c, double x, double y) {
    const Jet p = exact(c, x, y);
    const Jet q = gi->eval(c, x, y);
    return Jet{p.v - q.v, p.dx - q.dx, p.dy - q.dy};
  };
}

}  // namespace sdfem
