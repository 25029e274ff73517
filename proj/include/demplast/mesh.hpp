#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "demplast/tensor.hpp"

namespace demplast {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

enum class ElementKind { Hex8, Tet4 };

constexpr int node_count(ElementKind k) { return k == ElementKind::Hex8 ? 8 : 4; }
constexpr int face_count(ElementKind k) { return k == ElementKind::Hex8 ? 6 : 4; }

/// Hex8 follows the VTK hexahedron ordering (bottom face 0-3
/// counter-clockwise, top face 4-7 above it). Tet4 must have positive
/// orientation: (x1-x0) x (x2-x0) . (x3-x0) > 0.
struct Element {
  ElementKind kind = ElementKind::Hex8;
  std::array<std::size_t, 8> nodes{};

  int num_nodes() const { return node_count(kind); }
  std::span<const std::size_t> node_span() const {
    return {nodes.data(), static_cast<std::size_t>(num_nodes())};
  }
};

/// Element face on the boundary; `face` is the local face id.
struct Facet {
  std::size_t element = 0;
  int face = 0;

  friend bool operator==(const Facet&, const Facet&) = default;
};

struct Mesh {
  std::vector<Vec3> nodes;
  std::vector<Element> elements;
  std::vector<int> material;  ///< per-element material id, defaults to 0
  std::map<std::string, std::vector<std::size_t>> node_sets;
  std::map<std::string, std::vector<std::size_t>> elem_sets;
  std::map<std::string, std::vector<Facet>> side_sets;

  std::size_t num_nodes() const { return nodes.size(); }
  std::size_t num_elements() const { return elements.size(); }

  /// Index ranges and positive Jacobians. Throws MeshError.
  void validate() const;
};

/// One-point quadrature data for a single element.
struct GradOperator {
  std::array<std::size_t, 8> nodes{};
  std::array<Vec3, 8> dphi{};  ///< dN_a/dX at the quadrature point
  int num_nodes = 0;
  double measure = 0.0;        ///< element volume; weight * |det J| when J is constant
  int material = 0;
};

std::vector<GradOperator> build_grad_operators(const Mesh& mesh);

Vec3 element_centroid(const Mesh& mesh, const Element& e);

/// Exact volume of the (trilinear) element.
double element_volume(const Mesh& mesh, const Element& e);

/// G_ij = du_i/dX_j at the quadrature point.
Mat3 displacement_gradient(const GradOperator& op, std::span<const Vec3> nodal_u);

SymTensor2 strain_at_qp(const GradOperator& op, std::span<const Vec3> nodal_u);

/// Hex8 grid on [0,ex]x[0,ey]x[0,ez] with node and side sets x_min, x_max,
/// y_min, y_max, z_min, z_max.
Mesh generate_structured_box(const Vec3& extents, const std::array<int, 3>& divisions);

/// Quarter of a plate [0,w]x[0,w]x[0,t] with a hole of radius r centred on
/// the z axis, meshed as a mapped Hex8 grid (n_arc elements along the arc,
/// n_radial from hole to outer edge, n_thick through the thickness).
/// Node/side sets: x_sym (x=0), y_sym (y=0), z_sym (z=0), top (y=w),
/// right (x=w), front (z=t), hole.
Mesh generate_plate_with_hole(double width, double thickness, double radius, int n_arc,
                              int n_radial, int n_thick);

/// Splits every Hex8 into six Tet4 sharing the 0-6 diagonal. Sets are
/// carried over; side sets are re-extracted from node sets of the same name.
Mesh split_hex_to_tets(const Mesh& mesh);

/// Local node ids of an element face, ordered so that the right-hand
/// normal points out of the element.
std::span<const int> face_local_nodes(ElementKind kind, int face);

struct FacetGeometry {
  double area = 0.0;
  Vec3 normal{};    ///< unit outward normal
  Vec3 centroid{};
};

FacetGeometry facet_geometry(const Mesh& mesh, const Facet& facet);

/// All boundary faces whose nodes all lie in the named node set.
std::vector<Facet> extract_boundary_facets(const Mesh& mesh, const std::string& node_set);

Mesh parse_mesh(std::istream& in);
Mesh read_mesh(const std::string& path);
void write_mesh(std::ostream& out, const Mesh& mesh);
void write_mesh(const std::string& path, const Mesh& mesh);

}  // namespace demplast
