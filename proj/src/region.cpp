#include "sdfem/region.hpp"

#include <algorithm>

#include "sdfem/error.hpp"

namespace sdfem {

CellRegion::CellRegion(const ShishkinMesh& mesh, std::string label)
    : mesh_(&mesh), n_(mesh.n()), label_(std::move(label)), mask_(mesh.cell_count(), 0) {}

CellRegion CellRegion::none(const ShishkinMesh& mesh, std::string label) { return CellRegion(mesh, std::move(label)); }

CellRegion CellRegion::all(const ShishkinMesh& mesh) {
  CellRegion r(mesh, "Omega");
  std::fill(r.mask_.begin(), r.mask_.end(), 1);
  return r;
}

CellRegion CellRegion::of(const ShishkinMesh& mesh, Subdomain s) {
  return where(mesh, [&](CellIndex c) { return mesh.subdomain(c) == s; }, std::string(to_string(s)));
}

CellRegion CellRegion::where(const ShishkinMesh& mesh, const std::function<bool(CellIndex)>& keep,
                             std::string label) {
  CellRegion r(mesh, std::move(label));
  for (int j = 1; j <= mesh.n(); ++j) {
    for (int i = 1; i <= mesh.n(); ++i) {
      if (keep({i, j})) r.mask_[r.offset({i, j})] = 1;
    }
  }
  return r;
}

namespace {

int mesh_line(std::span<const double> lines, double v, const char* axis) {
  const auto it = std::find(lines.begin(), lines.end(), v);
  if (it == lines.end()) {
    throw DomainError(std::string("region: ") + axis + " bound is not a mesh line, region not cell-aligned");
  }
  return static_cast<int>(it - lines.begin());
}

}  // namespace

CellRegion CellRegion::from_rectangle(const ShishkinMesh& mesh, double x0, double x1, double y0, double y1) {
  if (!(x0 < x1) || !(y0 < y1)) throw DomainError("region: empty rectangle");
  const int i0 = mesh_line(mesh.xs(), x0, "x");
  const int i1 = mesh_line(mesh.xs(), x1, "x");
  const int j0 = mesh_line(mesh.ys(), y0, "y");
  const int j1 = mesh_line(mesh.ys(), y1, "y");
  return where(
      mesh, [&](CellIndex c) { return c.i > i0 && c.i <= i1 && c.j > j0 && c.j <= j1; }, "rectangle");
}

std::vector<CellIndex> CellRegion::cells() const {
  std::vector<CellIndex> out;
  for (int j = 1; j <= n_; ++j) {
    for (int i = 1; i <= n_; ++i) {
      if (contains({i, j})) out.push_back({i, j});
    }
  }
  return out;
}

std::size_t CellRegion::count() const {
  return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), 1));
}

double CellRegion::measure() const {
  double m = 0.0;
  for (const CellIndex c : cells()) m += mesh_->cell(c).area();
  return m;
}

void CellRegion::check_same(const CellRegion& o) const {
  if (o.mesh_ != mesh_) throw ConfigError("region: regions belong to different meshes");
}

CellRegion CellRegion::operator|(const CellRegion& o) const {
  check_same(o);
  CellRegion r(*mesh_, label_ + "|" + o.label_);
  for (std::size_t k = 0; k < mask_.size(); ++k) r.mask_[k] = mask_[k] | o.mask_[k];
  return r;
}

CellRegion CellRegion::operator&(const CellRegion& o) const {
  check_same(o);
  CellRegion r(*mesh_, label_ + "&" + o.label_);
  for (std::size_t k = 0; k < mask_.size(); ++k) r.mask_[k] = mask_[k] & o.mask_[k];
  return r;
}

CellRegion CellRegion::operator-(const CellRegion& o) const {
  check_same(o);
  CellRegion r(*mesh_, label_ + "\\" + o.label_);
  for (std::size_t k = 0; k < mask_.size(); ++k) r.mask_[k] = mask_[k] & static_cast<unsigned char>(!o.mask_[k]);
  return r;
}

CellRegion CellRegion::complement() const { return all(*mesh_) - *this; }

}  // namespace sdfem
