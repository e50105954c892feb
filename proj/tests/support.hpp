#pragma once

#include <random>

#include "sdfem/field.hpp"
#include "sdfem/mesh.hpp"
#include "sdfem/problem.hpp"

namespace sdfem::test {

inline MeshConfig mesh_config(int n, double eps, double beta = 1.0) {
  MeshConfig c;
  c.n = n;
  c.epsilon = eps;
  c.beta = beta;
  return c;
}

inline CoefficientSet coeffs(double eps, double b = 1.0, double c = 1.0) {
  CoefficientSet k;
  k.epsilon = eps;
  k.b = b;
  k.c = c;
  k.beta = b;
  return k;
}

/// Member of V^N with uniform random interior values in [-1, 1].
inline DiscreteField random_field(const ShishkinMesh& mesh, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> v(DofMap(mesh.n()).size());
  for (double& x : v) x = d(rng);
  return DiscreteField::from_interior(mesh, v);
}

/// Nodal basis function of an interior node.
inline DiscreteField hat(const ShishkinMesh& mesh, NodeIndex v) {
  DiscreteField f(mesh);
  f.set(v, 1.0);
  return f;
}

}  // namespace sdfem::test
