#include "demplast/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

#include "demplast/errors.hpp"

namespace demplast {

namespace {

// Reference coordinates of the Hex8 corners.
constexpr std::array<std::array<double, 3>, 8> kHexCorners{{
    {-1, -1, -1}, {1, -1, -1}, {1, 1, -1}, {-1, 1, -1},
    {-1, -1, 1},  {1, -1, 1},  {1, 1, 1},  {-1, 1, 1},
}};

constexpr std::array<std::array<int, 4>, 6> kHexFaces{{
    {0, 3, 2, 1},  // z-
    {4, 5, 6, 7},  // z+
    {0, 1, 5, 4},  // y-
    {1, 2, 6, 5},  // x+
    {2, 3, 7, 6},  // y+
    {3, 0, 4, 7},  // x-
}};

constexpr std::array<std::array<int, 3>, 4> kTetFaces{{
    {0, 2, 1},
    {0, 1, 3},
    {1, 2, 3},
    {0, 3, 2},
}};

// dN/dxi at the quadrature point (hex centre / tet anywhere).
constexpr std::array<std::array<double, 3>, 4> kTetDphi{{
    {-1, -1, -1}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1},
}};

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double det3(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Mat3 inverse3(const Mat3& m, double det) {
  Mat3 r{};
  r[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / det;
  r[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det;
  r[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
  r[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / det;
  r[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
  r[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
  r[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / det;
  r[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det;
  r[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;
  return r;
}

struct QuadraturePoint {
  std::array<Vec3, 8> dphi_ref{};
  double weight = 0.0;
};

QuadraturePoint reference_point(ElementKind kind) {
  QuadraturePoint qp;
  if (kind == ElementKind::Hex8) {
    for (int a = 0; a < 8; ++a)
      for (int k = 0; k < 3; ++k) qp.dphi_ref[a][k] = kHexCorners[a][k] / 8.0;
    qp.weight = 8.0;
  } else {
    for (int a = 0; a < 4; ++a)
      for (int k = 0; k < 3; ++k) qp.dphi_ref[a][k] = kTetDphi[a][k];
    qp.weight = 1.0 / 6.0;
  }
  return qp;
}

// J_ij = sum_a x_a,i dN_a/dxi_j
Mat3 jacobian(const Mesh& mesh, const Element& e, const QuadraturePoint& qp) {
  Mat3 J{};
  for (int a = 0; a < e.num_nodes(); ++a) {
    const Vec3& x = mesh.nodes[e.nodes[a]];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) J[i][j] += x[i] * qp.dphi_ref[a][j];
  }
  return J;
}


std::vector<std::size_t> face_key(const Element& e, ElementKind kind, int face) {
  std::vector<std::size_t> key;
  for (int l : face_local_nodes(kind, face)) key.push_back(e.nodes[l]);
  std::sort(key.begin(), key.end());
  return key;
}

std::vector<std::size_t> nodes_where(const Mesh& m, auto&& pred) {
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n < m.nodes.size(); ++n)
    if (pred(m.nodes[n])) out.push_back(n);
  return out;
}

void rebuild_side_sets(Mesh& m) {
  m.side_sets.clear();
  for (const auto& [name, _] : m.node_sets) m.side_sets[name] = extract_boundary_facets(m, name);
}

}  // namespace

std::span<const int> face_local_nodes(ElementKind kind, int face) {
  if (kind == ElementKind::Hex8) return kHexFaces.at(static_cast<std::size_t>(face));
  return kTetFaces.at(static_cast<std::size_t>(face));
}

void Mesh::validate() const {
  if (!material.empty() && material.size() != elements.size())
    throw MeshError("material assignment has " + std::to_string(material.size()) +
                    " entries for " + std::to_string(elements.size()) + " elements");
  for (std::size_t e = 0; e < elements.size(); ++e) {
    for (auto n : elements[e].node_span())
      if (n >= nodes.size())
        throw MeshError("element " + std::to_string(e) + " references node " + std::to_string(n) +
                        " but the mesh has " + std::to_string(nodes.size()) + " nodes");
  }
  for (const auto& [name, set] : node_sets)
    for (auto n : set)
      if (n >= nodes.size())
        throw MeshError("node set '" + name + "' references node " + std::to_string(n));
  for (const auto& [name, set] : elem_sets)
    for (auto e : set)
      if (e >= elements.size())
        throw MeshError("element set '" + name + "' references element " + std::to_string(e));
  for (const auto& [name, set] : side_sets)
    for (const auto& f : set) {
      if (f.element >= elements.size())
        throw MeshError("side set '" + name + "' references element " + std::to_string(f.element));
      if (f.face < 0 || f.face >= face_count(elements[f.element].kind))
        throw MeshError("side set '" + name + "' references face " + std::to_string(f.face) +
                        " of element " + std::to_string(f.element));
    }
  for (std::size_t e = 0; e < elements.size(); ++e) {
    const auto qp = reference_point(elements[e].kind);
    const double det = det3(jacobian(*this, elements[e], qp));
    if (!(det > 0.0))
      throw MeshError("inverted element " + std::to_string(e) +
                      ": non-positive Jacobian determinant " + std::to_string(det));
  }
}

double element_volume(const Mesh& mesh, const Element& e) {
  if (e.kind == ElementKind::Tet4) return std::abs(det3(jacobian(mesh, e, reference_point(e.kind)))) / 6.0;
  // det J of a trilinear map is at most quadratic in each coordinate, so the
  // 2x2x2 Gauss rule is exact.
  const double g = 1.0 / std::sqrt(3.0);
  double v = 0.0;
  for (int p = 0; p < 8; ++p) {
    const Vec3 xi{kHexCorners[p][0] * g, kHexCorners[p][1] * g, kHexCorners[p][2] * g};
    QuadraturePoint qp;
    for (int a = 0; a < 8; ++a) {
      const auto& c = kHexCorners[a];
      qp.dphi_ref[a][0] = c[0] * (1.0 + c[1] * xi[1]) * (1.0 + c[2] * xi[2]) / 8.0;
      qp.dphi_ref[a][1] = c[1] * (1.0 + c[0] * xi[0]) * (1.0 + c[2] * xi[2]) / 8.0;
      qp.dphi_ref[a][2] = c[2] * (1.0 + c[0] * xi[0]) * (1.0 + c[1] * xi[1]) / 8.0;
    }
    v += std::abs(det3(jacobian(mesh, e, qp)));
  }
  return v;
}

std::vector<GradOperator> build_grad_operators(const Mesh& mesh) {
  std::vector<GradOperator> ops(mesh.elements.size());
  const QuadraturePoint hex = reference_point(ElementKind::Hex8);
  const QuadraturePoint tet = reference_point(ElementKind::Tet4);
  for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
    const Element& el = mesh.elements[e];
    const QuadraturePoint& qp = el.kind == ElementKind::Hex8 ? hex : tet;
    const Mat3 J = jacobian(mesh, el, qp);
    const double det = det3(J);
    if (!(det > 0.0))
      throw MeshError("inverted element " + std::to_string(e) +
                      ": non-positive Jacobian determinant " + std::to_string(det));
    const Mat3 Jinv = inverse3(J, det);
    GradOperator& op = ops[e];
    op.num_nodes = el.num_nodes();
    op.measure = el.kind == ElementKind::Hex8 ? element_volume(mesh, el) : qp.weight * det;
    op.material = mesh.material.empty() ? 0 : mesh.material[e];
    for (int a = 0; a < op.num_nodes; ++a) {
      op.nodes[a] = el.nodes[a];
      // dN/dX_j = sum_k dN/dxi_k (J^-1)_kj
      for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) s += qp.dphi_ref[a][k] * Jinv[k][j];
        op.dphi[a][j] = s;
      }
    }
  }
  return ops;
}

Mat3 displacement_gradient(const GradOperator& op, std::span<const Vec3> nodal_u) {
  Mat3 g{};
  for (int a = 0; a < op.num_nodes; ++a) {
    const Vec3& u = nodal_u[op.nodes[a]];
    const Vec3& d = op.dphi[a];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) g[i][j] += u[i] * d[j];
  }
  return g;
}

SymTensor2 strain_at_qp(const GradOperator& op, std::span<const Vec3> nodal_u) {
  return SymTensor2::sym(displacement_gradient(op, nodal_u));
}

Mesh generate_structured_box(const Vec3& extents, const std::array<int, 3>& divisions) {
  for (int k = 0; k < 3; ++k) {
    if (!(extents[k] > 0.0)) throw ConfigError("box extents must be positive");
    if (divisions[k] < 1) throw ConfigError("box divisions must be >= 1");
  }
  const auto [nx, ny, nz] = divisions;
  Mesh m;
  auto id = [&](int i, int j, int k) {
    return static_cast<std::size_t>((k * (ny + 1) + j) * (nx + 1) + i);
  };
  m.nodes.reserve(static_cast<std::size_t>((nx + 1) * (ny + 1) * (nz + 1)));
  for (int k = 0; k <= nz; ++k)
    for (int j = 0; j <= ny; ++j)
      for (int i = 0; i <= nx; ++i)
        m.nodes.push_back({extents[0] * i / nx, extents[1] * j / ny, extents[2] * k / nz});
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        Element e;
        e.kind = ElementKind::Hex8;
        e.nodes = {id(i, j, k),         id(i + 1, j, k),     id(i + 1, j + 1, k),
                   id(i, j + 1, k),     id(i, j, k + 1),     id(i + 1, j, k + 1),
                   id(i + 1, j + 1, k + 1), id(i, j + 1, k + 1)};
        m.elements.push_back(e);
      }
  m.material.assign(m.elements.size(), 0);

  const char* names[3][2] = {{"x_min", "x_max"}, {"y_min", "y_max"}, {"z_min", "z_max"}};
  const int counts[3] = {nx, ny, nz};
  for (int axis = 0; axis < 3; ++axis)
    for (int side = 0; side < 2; ++side) {
      std::vector<std::size_t> set;
      for (int k = 0; k <= nz; ++k)
        for (int j = 0; j <= ny; ++j)
          for (int i = 0; i <= nx; ++i) {
            const int idx[3] = {i, j, k};
            if (idx[axis] == side * counts[axis]) set.push_back(id(i, j, k));
          }
      m.node_sets[names[axis][side]] = std::move(set);
    }
  rebuild_side_sets(m);
  return m;
}

Mesh generate_plate_with_hole(double width, double thickness, double radius, int n_arc,
                              int n_radial, int n_thick) {
  if (!(radius > 0.0 && radius < width && thickness > 0.0))
    throw ConfigError("plate-with-hole requires 0 < radius < width and positive thickness");
  if (n_arc < 2 || n_arc % 2 != 0 || n_radial < 1 || n_thick < 1)
    throw ConfigError("plate-with-hole divisions: n_arc must be even and >= 2, others >= 1");
  Mesh m;
  auto id = [&](int j, int i, int k) {
    return static_cast<std::size_t>((k * (n_arc + 1) + i) * (n_radial + 1) + j);
  };
  for (int k = 0; k <= n_thick; ++k)
    for (int i = 0; i <= n_arc; ++i) {
      const double theta = (std::numbers::pi / 2.0) * i / n_arc;
      const double c = std::cos(theta), s = std::sin(theta);
      Vec3 inner{radius * c, radius * s, 0.0};
      Vec3 outer = 2 * i <= n_arc ? Vec3{width, width * s / c, 0.0} : Vec3{width * c / s, width, 0.0};
      if (i == 0) outer = {width, 0.0, 0.0};
      if (i == n_arc) inner = {0.0, radius, 0.0}, outer = {0.0, width, 0.0};
      if (2 * i == n_arc) outer = {width, width, 0.0};
      for (int j = 0; j <= n_radial; ++j) {
        const double t = static_cast<double>(j) / n_radial;
        m.nodes.push_back({inner[0] + t * (outer[0] - inner[0]), inner[1] + t * (outer[1] - inner[1]),
                           thickness * k / n_thick});
      }
    }
  for (int k = 0; k < n_thick; ++k)
    for (int i = 0; i < n_arc; ++i)
      for (int j = 0; j < n_radial; ++j) {
        Element e;
        e.kind = ElementKind::Hex8;
        e.nodes = {id(j, i, k),         id(j + 1, i, k),         id(j + 1, i + 1, k),
                   id(j, i + 1, k),     id(j, i, k + 1),         id(j + 1, i, k + 1),
                   id(j + 1, i + 1, k + 1), id(j, i + 1, k + 1)};
        m.elements.push_back(e);
      }
  m.material.assign(m.elements.size(), 0);

  const double tol = 1e-9 * width;
  m.node_sets["x_sym"] = nodes_where(m, [&](const Vec3& p) { return std::abs(p[0]) < tol; });
  m.node_sets["y_sym"] = nodes_where(m, [&](const Vec3& p) { return std::abs(p[1]) < tol; });
  m.node_sets["z_sym"] = nodes_where(m, [&](const Vec3& p) { return std::abs(p[2]) < tol; });
  m.node_sets["front"] =
      nodes_where(m, [&](const Vec3& p) { return std::abs(p[2] - thickness) < tol; });
  m.node_sets["top"] = nodes_where(m, [&](const Vec3& p) { return std::abs(p[1] - width) < tol; });
  m.node_sets["right"] = nodes_where(m, [&](const Vec3& p) { return std::abs(p[0] - width) < tol; });
  m.node_sets["hole"] = nodes_where(
      m, [&](const Vec3& p) { return std::abs(std::hypot(p[0], p[1]) - radius) < tol; });
  rebuild_side_sets(m);
  return m;
}

Mesh split_hex_to_tets(const Mesh& mesh) {
  static constexpr std::array<std::array<int, 4>, 6> kSplit{{
      {0, 1, 2, 6}, {0, 2, 3, 6}, {0, 3, 7, 6}, {0, 7, 4, 6}, {0, 4, 5, 6}, {0, 5, 1, 6},
  }};
  Mesh out;
  out.nodes = mesh.nodes;
  out.node_sets = mesh.node_sets;
  std::vector<std::vector<std::size_t>> children(mesh.elements.size());
  for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
    const Element& src = mesh.elements[e];
    const int mat = mesh.material.empty() ? 0 : mesh.material[e];
    if (src.kind == ElementKind::Tet4) {
      children[e].push_back(out.elements.size());
      out.elements.push_back(src);
      out.material.push_back(mat);
      continue;
    }
    for (const auto& t : kSplit) {
      Element te;
      te.kind = ElementKind::Tet4;
      for (int a = 0; a < 4; ++a) te.nodes[a] = src.nodes[t[a]];
      children[e].push_back(out.elements.size());
      out.elements.push_back(te);
      out.material.push_back(mat);
    }
  }
  for (const auto& [name, set] : mesh.elem_sets) {
    auto& dst = out.elem_sets[name];
    for (auto e : set) dst.insert(dst.end(), children[e].begin(), children[e].end());
  }
  rebuild_side_sets(out);
  return out;
}

FacetGeometry facet_geometry(const Mesh& mesh, const Facet& facet) {
  const Element& e = mesh.elements.at(facet.element);
  const auto local = face_local_nodes(e.kind, facet.face);
  std::array<Vec3, 4> p{};
  for (std::size_t a = 0; a < local.size(); ++a) p[a] = mesh.nodes[e.nodes[local[a]]];
  Vec3 area_vec;
  if (local.size() == 3) {
    area_vec = cross(sub(p[1], p[0]), sub(p[2], p[0]));
  } else {
    area_vec = cross(sub(p[2], p[0]), sub(p[3], p[1]));
  }
  FacetGeometry g;
  const double twice = std::sqrt(dot(area_vec, area_vec));
  g.area = 0.5 * twice;
  for (int k = 0; k < 3; ++k) g.normal[k] = area_vec[k] / twice;
  for (std::size_t a = 0; a < local.size(); ++a)
    for (int k = 0; k < 3; ++k) g.centroid[k] += p[a][k] / static_cast<double>(local.size());
  return g;
}

std::vector<Facet> extract_boundary_facets(const Mesh& mesh, const std::string& node_set) {
  auto it = mesh.node_sets.find(node_set);
  if (it == mesh.node_sets.end()) throw ConfigError("unknown node set '" + node_set + "'");
  std::vector<char> in_set(mesh.nodes.size(), 0);
  for (auto n : it->second) in_set.at(n) = 1;

  std::map<std::vector<std::size_t>, int> face_uses;
  std::vector<Facet> candidates;
  for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
    const Element& el = mesh.elements[e];
    for (int f = 0; f < face_count(el.kind); ++f) {
      ++face_uses[face_key(el, el.kind, f)];
      const auto local = face_local_nodes(el.kind, f);
      if (std::all_of(local.begin(), local.end(), [&](int l) { return in_set[el.nodes[l]] != 0; }))
        candidates.push_back({e, f});
    }
  }
  std::vector<Facet> out;
  for (const auto& c : candidates) {
    const Element& el = mesh.elements[c.element];
    if (face_uses[face_key(el, el.kind, c.face)] == 1) out.push_back(c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// ASCII mesh format

namespace {

class Tokenizer {
public:
  explicit Tokenizer(std::istream& in) : in_(in) {}

  bool next(std::string& tok) {
    while (true) {
      std::string t;
      if (ls_ >> t) {
        tok = t;
        return true;
      }
      std::string raw;
      if (!std::getline(in_, raw)) return false;
      ++line_;
      if (auto pos = raw.find('#'); pos != std::string::npos) raw.erase(pos);
      ls_.clear();
      ls_.str(raw);
    }
  }

  std::string expect(const char* what) {
    std::string t;
    if (!next(t)) throw ParseError(std::string("unexpected end of file, expected ") + what, line_);
    return t;
  }

  double real(const char* what) {
    const std::string t = expect(what);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != t.size()) throw ParseError(std::string("expected ") + what + ", got '" + t + "'", line_);
    return v;
  }

  std::size_t index(const char* what) {
    const std::string t = expect(what);
    if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw ParseError(std::string("expected ") + what + ", got '" + t + "'", line_);
    return static_cast<std::size_t>(std::stoull(t));
  }

  std::size_t line() const { return line_; }

private:
  std::istream& in_;
  std::istringstream ls_;
  std::size_t line_ = 0;
};

}  // namespace

Mesh parse_mesh(std::istream& in) {
  Tokenizer tk(in);
  Mesh m;
  bool have_nodes = false, have_elements = false;
  std::string kw;
  while (tk.next(kw)) {
    if (kw == "nodes") {
      const std::size_t n = tk.index("node count");
      m.nodes.resize(n);
      for (auto& p : m.nodes)
        for (auto& c : p) c = tk.real("node coordinate");
      have_nodes = true;
    } else if (kw == "elements") {
      const std::size_t n = tk.index("element count");
      m.elements.resize(n);
      for (auto& e : m.elements) {
        const std::string kind = tk.expect("element kind");
        if (kind == "hex8") {
          e.kind = ElementKind::Hex8;
        } else if (kind == "tet4") {
          e.kind = ElementKind::Tet4;
        } else {
          throw ParseError("unknown element kind '" + kind + "'", tk.line());
        }
        for (int a = 0; a < e.num_nodes(); ++a) e.nodes[a] = tk.index("node index");
      }
      have_elements = true;
    } else if (kw == "nodeset" || kw == "elemset" || kw == "sideset") {
      const std::string name = tk.expect("set name");
      const std::size_t k = tk.index("set size");
      const std::size_t line = tk.line();
      bool dup = false;
      if (kw == "nodeset") {
        dup = m.node_sets.count(name) != 0;
        auto& s = m.node_sets[name];
        for (std::size_t i = 0; i < k; ++i) s.push_back(tk.index("node index"));
      } else if (kw == "elemset") {
        dup = m.elem_sets.count(name) != 0;
        auto& s = m.elem_sets[name];
        for (std::size_t i = 0; i < k; ++i) s.push_back(tk.index("element index"));
      } else {
        dup = m.side_sets.count(name) != 0;
        auto& s = m.side_sets[name];
        for (std::size_t i = 0; i < k; ++i) {
          Facet f;
          f.element = tk.index("element index");
          f.face = static_cast<int>(tk.index("face id"));
          s.push_back(f);
        }
      }
      if (dup) throw ParseError("duplicate " + kw + " '" + name + "'", line);
    } else {
      throw ParseError("unknown keyword '" + kw + "'", tk.line());
    }
  }
  if (!have_nodes) throw ParseError("mesh has no 'nodes' block");
  if (!have_elements) throw ParseError("mesh has no 'elements' block");
  m.material.assign(m.elements.size(), 0);
  m.validate();
  return m;
}

Mesh read_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open mesh file '" + path + "'");
  try {
    return parse_mesh(in);
  } catch (const ParseError& e) {
    throw MeshError(path + ": " + e.what());
  }
}

void write_mesh(std::ostream& out, const Mesh& mesh) {
  out.precision(17);
  out << "nodes " << mesh.nodes.size() << "\n";
  for (const auto& p : mesh.nodes) out << p[0] << ' ' << p[1] << ' ' << p[2] << "\n";
  out << "elements " << mesh.elements.size() << "\n";
  for (const auto& e : mesh.elements) {
    out << (e.kind == ElementKind::Hex8 ? "hex8" : "tet4");
    for (auto n : e.node_span()) out << ' ' << n;
    out << "\n";
  }
  auto write_list = [&](const std::vector<std::size_t>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) out << v[i] << ((i + 1) % 12 == 0 || i + 1 == v.size() ? "\n" : " ");
  };
  for (const auto& [name, set] : mesh.node_sets) {
    out << "nodeset " << name << ' ' << set.size() << "\n";
    write_list(set);
  }
  for (const auto& [name, set] : mesh.elem_sets) {
    out << "elemset " << name << ' ' << set.size() << "\n";
    write_list(set);
  }
  for (const auto& [name, set] : mesh.side_sets) {
    out << "sideset " << name << ' ' << set.size() << "\n";
    for (const auto& f : set) out << f.element << ' ' << f.face << "\n";
  }
}

void write_mesh(const std::string& path, const Mesh& mesh) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write mesh file '" + path + "'");
  write_mesh(out, mesh);
}

Vec3 element_centroid(const Mesh& mesh, const Element& e) {
  Vec3 c{};
  for (auto n : e.node_span())
    for (int k = 0; k < 3; ++k) c[k] += mesh.nodes[n][k];
  for (auto& v : c) v /= e.num_nodes();
  return c;
}

}  // namespace demplast
