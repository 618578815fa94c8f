#include "widthbright/gauss_boundary.hpp"

#include "widthbright/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <utility>

namespace wb {
namespace {

// phi at an arbitrary direction from the Cartesian gradient of the
// extension: d h~(u) = h(u) u + grad h(u).
Vec3 phi_at(const SupportFunction& h, const HarmonicBasis& basis,
            const Vec3& u) {
  std::vector<CartesianJet> jets(basis.size());
  basis.extension_jets(u, jets);
  Vec3 g = Vec3::Zero();
  for (std::size_t k = 0; k < h.coeffs().size(); ++k) {
    g += h.coeffs()[k] * jets[k].grad;
  }
  return g;
}

}  // namespace

BoundaryField inverse_gauss(const SupportFunction& h, const GridBasis& gb) {
  const JetField jets = sample_jets(h, gb);
  const SphericalGrid& g = gb.grid();
  BoundaryField field;
  field.phi.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const TangentFrame& f = g.frame(i);
    field.phi[i] = jets.value[i] * g.node(i) + jets.g1[i] * f.e1 + jets.g2[i] * f.e2;
  }
  field.detfield = curvature_det(jets);
  field.north_pole = phi_at(h, gb.basis(), Vec3::UnitZ());
  field.south_pole = phi_at(h, gb.basis(), -Vec3::UnitZ());
  return field;
}

double even_phi_check(const SupportFunction& p, const GridBasis& gb) {
  if (!p.is_odd()) {
    throw InputError("even_phi_check: input has even-degree coefficients");
  }
  const BoundaryField field = inverse_gauss(p, gb);
  const SphericalGrid& g = gb.grid();
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    worst = std::max(worst, (field.phi[i] - field.phi[g.antipode(i)]).norm());
  }
  return worst;
}

std::vector<Vec3> mesh_generators(const SphericalGrid& grid) {
  std::vector<Vec3> out(grid.nodes().begin(), grid.nodes().end());
  out.push_back(Vec3::UnitZ());
  out.push_back(-Vec3::UnitZ());
  return out;
}

BodyMesh export_mesh(const BoundaryField& field, const SphericalGrid& grid,
                     std::string label) {
  if (field.phi.size() != grid.size()) {
    throw InputError("export_mesh: boundary field does not match the grid");
  }
  BodyMesh mesh;
  mesh.source_label = std::move(label);
  mesh.vertices = field.phi;
  const int north = static_cast<int>(grid.size());
  const int south = north + 1;
  mesh.vertices.push_back(field.north_pole);
  mesh.vertices.push_back(field.south_pole);

  const int nt = grid.n_theta();
  const int np = grid.n_phi();
  auto id = [&](int ring, int az) {
    return static_cast<int>(grid.index(ring, (az + np) % np));
  };
  // Rings run north to south and azimuth increases eastward, so (south,
  // east) is counter-clockwise seen from outside.
  for (int j = 0; j < np; ++j) {
    mesh.triangles.push_back({north, id(0, j), id(0, j + 1)});
  }
  for (int k = 0; k + 1 < nt; ++k) {
    for (int j = 0; j < np; ++j) {
      const int a = id(k, j), b = id(k + 1, j), c = id(k + 1, j + 1),
                d = id(k, j + 1);
      mesh.triangles.push_back({a, b, c});
      mesh.triangles.push_back({a, c, d});
    }
  }
  for (int j = 0; j < np; ++j) {
    mesh.triangles.push_back({south, id(nt - 1, j + 1), id(nt - 1, j)});
  }

  double scale = 0.0;
  for (const Vec3& v : mesh.vertices) scale = std::max(scale, v.norm());
  const double min_area = 1e-14 * std::max(scale * scale, 1e-300);
  std::size_t degenerate = 0;
  for (const auto& t : mesh.triangles) {
    const Vec3 n = (mesh.vertices[t[1]] - mesh.vertices[t[0]])
                       .cross(mesh.vertices[t[2]] - mesh.vertices[t[0]]);
    if (0.5 * n.norm() < min_area) ++degenerate;
  }
  if (degenerate > 0) {
    throw NumericalError("export_mesh: " + std::to_string(degenerate) +
                         " degenerate triangles (collapsed boundary points)");
  }
  return mesh;
}

double mesh_volume(const BodyMesh& mesh) {
  double v = 0.0;
  for (const auto& t : mesh.triangles) {
    v += mesh.vertices[t[0]].dot(mesh.vertices[t[1]].cross(mesh.vertices[t[2]]));
  }
  return v / 6.0;
}

std::size_t open_edge_count(const BodyMesh& mesh) {
  std::map<std::pair<int, int>, int> uses;
  for (const auto& t : mesh.triangles) {
    for (int e = 0; e < 3; ++e) {
      const int a = t[e], b = t[(e + 1) % 3];
      ++uses[{std::min(a, b), std::max(a, b)}];
    }
  }
  return static_cast<std::size_t>(std::count_if(
      uses.begin(), uses.end(), [](const auto& kv) { return kv.second != 2; }));
}

std::string to_obj(const BodyMesh& mesh) {
  std::string out;
  if (!mesh.source_label.empty()) out += "# " + mesh.source_label + "\n";
  char buf[128];
  for (const Vec3& v : mesh.vertices) {
    std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v.x(), v.y(), v.z());
    out += buf;
  }
  for (const auto& t : mesh.triangles) {
    std::snprintf(buf, sizeof buf, "f %d %d %d\n", t[0] + 1, t[1] + 1, t[2] + 1);
    out += buf;
  }
  return out;
}

}  // namespace wb
