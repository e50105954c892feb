#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sdfem/mesh.hpp"

namespace sdfem {

/// Union of whole mesh cells. Every norm and decay report is restricted to
/// one of these, so non-aligned regions cannot reach the evaluators.
class CellRegion {
 public:
  static CellRegion none(const ShishkinMesh& mesh, std::string label = "empty");
  static CellRegion all(const ShishkinMesh& mesh);
  static CellRegion of(const ShishkinMesh& mesh, Subdomain s);
  /// Cells of [x0, x1] x [y0, y1]; throws DomainError unless all four
  /// bounds are mesh lines.
  static CellRegion from_rectangle(const ShishkinMesh& mesh, double x0, double x1, double y0, double y1);
  static CellRegion where(const ShishkinMesh& mesh, const std::function<bool(CellIndex)>& keep,
                          std::string label);

  bool contains(CellIndex c) const { return mask_[offset(c)] != 0; }
  std::vector<CellIndex> cells() const;
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  double measure() const;
  const std::string& label() const { return label_; }
  int n() const { return n_; }

  CellRegion operator|(const CellRegion& o) const;
  CellRegion operator&(const CellRegion& o) const;
  CellRegion operator-(const CellRegion& o) const;
  /// Cells of the mesh not in this region.
  CellRegion complement() const;

 private:
  CellRegion(const ShishkinMesh& mesh, std::string label);
  std::size_t offset(CellIndex c) const {
    return static_cast<std::size_t>(c.j - 1) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(c.i - 1);
  }
  void check_same(const CellRegion& o) const;

  const ShishkinMesh* mesh_;
  int n_;
  std::string label_;
  std::vector<unsigned char> mask_;
};

}  // namespace sdfem
