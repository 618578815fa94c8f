#pragma once

#include "widthbright/support_body.hpp"

#include <array>
#include <string>
#include <vector>

namespace wb {

// Inverse Gauss map phi(u) = h(u) u + grad h(u) sampled on a grid, with the
// curvature determinant det(h I + hess h) at each node. The two poles are
// not grid nodes; phi there is evaluated directly for meshing.
struct BoundaryField {
  std::vector<Vec3> phi;
  std::vector<double> detfield;
  Vec3 north_pole = Vec3::Zero();  // phi(+e3)
  Vec3 south_pole = Vec3::Zero();  // phi(-e3)
};

BoundaryField inverse_gauss(const SupportFunction& h, const GridBasis& gb);

// max_i |phi_p(u_i) - phi_p(-u_i)| for an odd p, whose inverse Gauss map is
// even. Throws InputError when p has nonzero even-degree coefficients.
double even_phi_check(const SupportFunction& p, const GridBasis& gb);

struct BodyMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::string source_label;
};

// Triangulates the phi-image over the grid lattice: quads between
// neighbouring rings plus a fan to a pole vertex at each end. Vertex i is
// phi(node i); the north and south pole vertices come last. Faces are wound
// counter-clockwise seen from outside. Throws NumericalError when a triangle
// collapses (area below 1e-14 relative to the mesh scale).
BodyMesh export_mesh(const BoundaryField& field, const SphericalGrid& grid,
                     std::string label = {});

// Unit direction that generated each mesh vertex (node directions, then
// +e3 and -e3).
std::vector<Vec3> mesh_generators(const SphericalGrid& grid);

// Enclosed volume by the divergence theorem.
double mesh_volume(const BodyMesh& mesh);

// Number of edges not shared by exactly two triangles (0 for a closed mesh).
std::size_t open_edge_count(const BodyMesh& mesh);

// Wavefront OBJ: "v x y z" lines then 1-based "f i j k" lines.
std::string to_obj(const BodyMesh& mesh);

}  // namespace wb
