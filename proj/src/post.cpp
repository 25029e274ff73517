#include "demplast/post.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "demplast/errors.hpp"

namespace demplast {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

void write_tensor(std::ostream& out, const SymTensor2& t) {
  for (int i = 0; i < 3; ++i) {
    out << format_double(t(i, 0)) << ' ' << format_double(t(i, 1)) << ' ' << format_double(t(i, 2))
        << '\n';
  }
}

double parse_double(const std::string& tok, const char* ctx) {
  double v = 0.0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
    throw ParseError(std::string("bad number '") + tok + "' in " + ctx);
  return v;
}

std::size_t parse_count(const std::string& tok, const char* ctx) {
  std::size_t v = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
    throw ParseError(std::string("bad integer '") + tok + "' in " + ctx);
  return v;
}

}  // namespace

void write_vtk(std::ostream& out, const Mesh& mesh, const StepRecord& record, bool tensors) {
  const std::size_t nn = mesh.num_nodes(), ne = mesh.num_elements();
  if (record.u.size() != nn || record.mises.size() != ne || record.peeq.size() != ne)
    throw ConfigError("solution record does not match the mesh");
  out << "# vtk DataFile Version 2.0\n";
  out << "demplast step " << record.step << " factor " << format_double(record.factor) << "\n";
  out << "ASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << nn << " double\n";
  for (const auto& p : mesh.nodes)
    out << format_double(p[0]) << ' ' << format_double(p[1]) << ' ' << format_double(p[2]) << '\n';
  std::size_t size = 0;
  for (const auto& e : mesh.elements) size += static_cast<std::size_t>(e.num_nodes()) + 1;
  out << "CELLS " << ne << ' ' << size << '\n';
  for (const auto& e : mesh.elements) {
    out << e.num_nodes();
    for (auto n : e.node_span()) out << ' ' << n;
    out << '\n';
  }
  out << "CELL_TYPES " << ne << '\n';
  for (const auto& e : mesh.elements)
    out << (e.kind == ElementKind::Hex8 ? kVtkHexahedron : kVtkTetra) << '\n';

  out << "POINT_DATA " << nn << '\n';
  out << "VECTORS displacement double\n";
  for (const auto& u : record.u)
    out << format_double(u[0]) << ' ' << format_double(u[1]) << ' ' << format_double(u[2]) << '\n';

  out << "CELL_DATA " << ne << '\n';
  auto scalars = [&](const char* name, const std::vector<double>& v) {
    out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (double x : v) out << format_double(x) << '\n';
  };
  scalars("mises", record.mises);
  scalars("peeq", record.peeq);
  if (!record.material.empty()) {
    std::vector<double> mat(record.material.begin(), record.material.end());
    scalars("material", mat);
  }
  if (tensors) {
    out << "TENSORS stress double\n";
    for (const auto& s : record.stress) write_tensor(out, s);
    out << "TENSORS strain double\n";
    for (const auto& s : record.strain) write_tensor(out, s);
  }
}

void write_vtk(const std::string& path, const Mesh& mesh, const StepRecord& record, bool tensors) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write VTK file '" + path + "'");
  write_vtk(out, mesh, record, tensors);
  if (!out) throw IoError("failed writing VTK file '" + path + "'");
}

VtkData read_vtk(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# vtk DataFile", 0) != 0)
    throw ParseError("not a legacy VTK file");
  std::getline(in, line);  // title
  std::string tok;
  auto next = [&](const char* ctx) {
    if (!(in >> tok)) throw ParseError(std::string("unexpected end of VTK file in ") + ctx);
    return tok;
  };
  if (next("header") != "ASCII") throw ParseError("only ASCII VTK files are supported");

  VtkData d;
  enum class Section { None, Point, Cell } section = Section::None;
  std::size_t n_points = 0, n_cells = 0;
  while (in >> tok) {
    if (tok == "DATASET") {
      if (next("DATASET") != "UNSTRUCTURED_GRID") throw ParseError("expected UNSTRUCTURED_GRID");
    } else if (tok == "POINTS") {
      n_points = parse_count(next("POINTS"), "POINTS");
      next("POINTS");
      d.points.resize(n_points);
      for (auto& p : d.points)
        for (auto& c : p) c = parse_double(next("POINTS"), "POINTS");
    } else if (tok == "CELLS") {
      n_cells = parse_count(next("CELLS"), "CELLS");
      next("CELLS");
      d.cells.resize(n_cells);
      for (auto& c : d.cells) {
        c.resize(parse_count(next("CELLS"), "CELLS"));
        for (auto& n : c) n = parse_count(next("CELLS"), "CELLS");
      }
    } else if (tok == "CELL_TYPES") {
      d.cell_types.resize(parse_count(next("CELL_TYPES"), "CELL_TYPES"));
      for (auto& t : d.cell_types) t = static_cast<int>(parse_count(next("CELL_TYPES"), "CELL_TYPES"));
    } else if (tok == "POINT_DATA") {
      if (parse_count(next("POINT_DATA"), "POINT_DATA") != n_points)
        throw ParseError("POINT_DATA count does not match POINTS");
      section = Section::Point;
    } else if (tok == "CELL_DATA") {
      if (parse_count(next("CELL_DATA"), "CELL_DATA") != n_cells)
        throw ParseError("CELL_DATA count does not match CELLS");
      section = Section::Cell;
    } else if (tok == "VECTORS") {
      const std::string name = next("VECTORS");
      next("VECTORS");
      if (section != Section::Point) throw ParseError("VECTORS outside POINT_DATA");
      auto& v = d.point_vectors[name];
      v.resize(n_points);
      for (auto& p : v)
        for (auto& c : p) c = parse_double(next("VECTORS"), "VECTORS");
    } else if (tok == "SCALARS") {
      const std::string name = next("SCALARS");
      next("SCALARS");
      // optional component count, then LOOKUP_TABLE
      std::string t = next("SCALARS");
      if (t != "LOOKUP_TABLE") t = next("SCALARS");
      if (t != "LOOKUP_TABLE") throw ParseError("expected LOOKUP_TABLE");
      next("LOOKUP_TABLE");
      if (section != Section::Cell) throw ParseError("SCALARS outside CELL_DATA");
      auto& v = d.cell_scalars[name];
      v.resize(n_cells);
      for (auto& x : v) x = parse_double(next("SCALARS"), "SCALARS");
    } else if (tok == "TENSORS") {
      const std::string name = next("TENSORS");
      next("TENSORS");
      if (section != Section::Cell) throw ParseError("TENSORS outside CELL_DATA");
      auto& v = d.cell_tensors[name];
      v.resize(n_cells);
      for (auto& t : v)
        for (auto& x : t) x = parse_double(next("TENSORS"), "TENSORS");
    } else {
      throw ParseError("unsupported VTK keyword '" + tok + "'");
    }
  }
  return d;
}

VtkData read_vtk(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open VTK file '" + path + "'");
  return read_vtk(in);
}

double weighted_mean(std::span<const double> values, std::span<const double> weights) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    num += weights[i] * values[i];
    den += weights[i];
  }
  return num / den;
}

std::vector<CurveRow> shear_curve(std::span<const StepRecord> records) {
  std::vector<CurveRow> rows;
  for (const auto& r : records) {
    std::vector<double> gamma(r.strain.size()), tau(r.stress.size());
    for (std::size_t e = 0; e < gamma.size(); ++e) {
      gamma[e] = 2.0 * r.strain[e](0, 1);
      tau[e] = r.stress[e](0, 1);
    }
    CurveRow row;
    row.step = r.step;
    row.factor = r.factor;
    row.strain = weighted_mean(gamma, r.measure);
    row.stress = weighted_mean(tau, r.measure);
    row.peeq = weighted_mean(r.peeq, r.measure);
    rows.push_back(row);
  }
  return rows;
}

void write_curve_csv(std::ostream& out, std::span<const CurveRow> rows) {
  out << "step,factor,shear_strain,shear_stress,peeq\n";
  for (const auto& r : rows)
    out << r.step << ',' << format_double(r.factor) << ',' << format_double(r.strain) << ','
        << format_double(r.stress) << ',' << format_double(r.peeq) << '\n';
}

Metrics metrics(std::span<const Vec3> u_test, std::span<const Vec3> u_ref,
                const std::map<std::string, std::vector<double>>& fields_test,
                const std::map<std::string, std::vector<double>>& fields_ref) {
  if (u_test.size() != u_ref.size())
    throw ConfigError("displacement fields have different sizes");
  Metrics m;
  const char* names[3] = {"ux", "uy", "uz"};
  double diff2 = 0.0, ref2 = 0.0;
  for (int k = 0; k < 3; ++k) {
    double ad = 0.0;
    for (std::size_t n = 0; n < u_test.size(); ++n) {
      const double d = u_test[n][k] - u_ref[n][k];
      ad += std::abs(d);
      diff2 += d * d;
      ref2 += u_ref[n][k] * u_ref[n][k];
    }
    m.ad[names[k]] = u_test.empty() ? 0.0 : ad / static_cast<double>(u_test.size());
  }
  if (ref2 > 0.0) m.l2_percent = std::sqrt(diff2) / std::sqrt(ref2) * 100.0;
  for (const auto& [name, test] : fields_test) {
    auto it = fields_ref.find(name);
    if (it == fields_ref.end()) continue;
    if (it->second.size() != test.size())
      throw ConfigError("field '" + name + "' has different sizes in test and reference");
    double ad = 0.0;
    for (std::size_t i = 0; i < test.size(); ++i) ad += std::abs(test[i] - it->second[i]);
    m.ad[name] = test.empty() ? 0.0 : ad / static_cast<double>(test.size());
  }
  return m;
}

ReferenceField read_reference_csv(std::istream& in) {
  ReferenceField ref;
  enum class Section { None, Node, Elem } section = Section::None;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("node,", 0) == 0) {
      section = Section::Node;
      continue;
    }
    if (line.rfind("elem,", 0) == 0) {
      section = Section::Elem;
      continue;
    }
    std::vector<std::string> cols;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
    try {
      if (section == Section::Node) {
        if (cols.size() != 4) throw ParseError("node rows need 4 columns", lineno);
        const std::size_t id = parse_count(cols[0], "reference node id");
        if (id >= ref.u.size()) ref.u.resize(id + 1);
        for (int k = 0; k < 3; ++k) ref.u[id][k] = parse_double(cols[k + 1], "reference node row");
      } else if (section == Section::Elem) {
        if (cols.size() != 3) throw ParseError("elem rows need 3 columns", lineno);
        const std::size_t id = parse_count(cols[0], "reference element id");
        if (id >= ref.mises.size()) {
          ref.mises.resize(id + 1);
          ref.peeq.resize(id + 1);
        }
        ref.mises[id] = parse_double(cols[1], "reference elem row");
        ref.peeq[id] = parse_double(cols[2], "reference elem row");
      } else {
        throw ParseError("data before a 'node,' or 'elem,' header", lineno);
      }
    } catch (const ParseError& e) {
      if (e.line() != 0) throw;
      throw ParseError(e.what(), lineno);
    }
  }
  return ref;
}

ReferenceField read_reference_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open reference file '" + path + "'");
  return read_reference_csv(in);
}

void write_reference_csv(std::ostream& out, const StepRecord& record) {
  out << "# reference field, step " << record.step << "\n";
  out << "node,ux,uy,uz\n";
  for (std::size_t n = 0; n < record.u.size(); ++n)
    out << n << ',' << format_double(record.u[n][0]) << ',' << format_double(record.u[n][1]) << ','
        << format_double(record.u[n][2]) << '\n';
  out << "elem,mises,peeq\n";
  for (std::size_t e = 0; e < record.mises.size(); ++e)
    out << e << ',' << format_double(record.mises[e]) << ',' << format_double(record.peeq[e]) << '\n';
}

Metrics compare_to_reference(const StepRecord& record, const ReferenceField& ref) {
  if (ref.u.size() != record.u.size())
    throw ConfigError("reference has " + std::to_string(ref.u.size()) + " nodes, solution has " +
                      std::to_string(record.u.size()));
  if (ref.mises.size() != record.mises.size())
    throw ConfigError("reference has " + std::to_string(ref.mises.size()) + " elements, solution has " +
                      std::to_string(record.mises.size()));
  return metrics(record.u, ref.u, {{"mises", record.mises}, {"peeq", record.peeq}},
                 {{"mises", ref.mises}, {"peeq", ref.peeq}});
}

}  // namespace demplast
