#include "demplast/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "demplast/errors.hpp"
#include "demplast/parallel.hpp"
#include "demplast/post.hpp"

namespace demplast {

namespace {

struct Entry {
  std::string value;
  std::size_t line = 0;
  bool used = false;
};

struct Section {
  std::string name;
  std::size_t line = 0;
  std::map<std::string, Entry> keys;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_words(const std::string& s) {
  std::vector<std::string> out;
  std::string cleaned = s;
  for (char& c : cleaned)
    if (c == ',' || c == '[' || c == ']') c = ' ';
  std::istringstream ss(cleaned);
  for (std::string w; ss >> w;) out.push_back(w);
  return out;
}

class Reader {
public:
  Reader(Section& sec, const std::string& source) : sec_(sec), source_(source) {}

  bool has(const std::string& key) const { return sec_.keys.count(key) != 0; }

  std::size_t line_of(const std::string& key) const {
    auto it = sec_.keys.find(key);
    return it == sec_.keys.end() ? sec_.line : it->second.line;
  }

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
    throw ParseError(source_ + ": [" + sec_.name + "] " + key + ": " + msg, line_of(key));
  }

  const std::string* raw(const std::string& key) {
    auto it = sec_.keys.find(key);
    if (it == sec_.keys.end()) return nullptr;
    it->second.used = true;
    return &it->second.value;
  }

  std::string require(const std::string& key) {
    const std::string* v = raw(key);
    if (!v) throw ParseError(source_ + ": [" + sec_.name + "] is missing required key '" + key + "'", sec_.line);
    return *v;
  }

  double to_double(const std::string& key, const std::string& tok) const {
    double v = 0.0;
    const char* b = tok.data();
    const char* e = tok.data() + tok.size();
    if (!tok.empty() && tok[0] == '+') ++b;
    const auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc() || res.ptr != e) fail(key, "expected a number, got '" + tok + "'");
    return v;
  }

  long long to_int(const std::string& key, const std::string& tok) const {
    long long v = 0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
      fail(key, "expected an integer, got '" + tok + "'");
    return v;
  }

  void number(const std::string& key, double& out) {
    if (const auto* v = raw(key)) out = to_double(key, trim(*v));
  }

  void integer(const std::string& key, int& out, long long lo) {
    if (const auto* v = raw(key)) {
      const long long x = to_int(key, trim(*v));
      if (x < lo || x > 1000000000) fail(key, "value " + std::to_string(x) + " out of range");
      out = static_cast<int>(x);
    }
  }

  void boolean(const std::string& key, bool& out) {
    if (const auto* v = raw(key)) {
      const std::string s = trim(*v);
      if (s == "true" || s == "yes" || s == "1") out = true;
      else if (s == "false" || s == "no" || s == "0") out = false;
      else fail(key, "expected true or false, got '" + s + "'");
    }
  }

  std::vector<double> numbers(const std::string& key, const std::string& text) const {
    std::vector<double> out;
    for (const auto& w : split_words(text)) out.push_back(to_double(key, w));
    return out;
  }

  template <std::size_t N>
  void vec(const std::string& key, std::array<double, N>& out) {
    if (const auto* v = raw(key)) {
      const auto xs = numbers(key, *v);
      if (xs.size() != N) fail(key, "expected " + std::to_string(N) + " numbers");
      std::copy(xs.begin(), xs.end(), out.begin());
    }
  }

  void word(const std::string& key, std::string& out) {
    if (const auto* v = raw(key)) out = trim(*v);
  }

  void finish() const {
    for (const auto& [k, e] : sec_.keys)
      if (!e.used) throw ParseError(source_ + ": unknown key '" + k + "' in [" + sec_.name + "]", e.line);
  }

private:
  Section& sec_;
  const std::string& source_;
};

int parse_axis(Reader& r, const std::string& key, const std::string& s) {
  if (s == "x" || s == "0") return 0;
  if (s == "y" || s == "1") return 1;
  if (s == "z" || s == "2") return 2;
  r.fail(key, "axis must be x, y or z, got '" + s + "'");
}

const char* axis_name(int a) { return a == 0 ? "x" : a == 1 ? "y" : "z"; }

void read_material(Reader& r, Material& m) {
  r.number("mu", m.elastic.mu);
  r.number("kappa", m.elastic.kappa);
  r.number("sigma_y0", m.hardening.sigma_y0);
  r.number("H", m.hardening.H);
  r.number("C", m.hardening.C);
  if (const auto* v = r.raw("mode")) {
    const std::string s = trim(*v);
    if (s == "isotropic") m.hardening.mode = HardeningMode::Isotropic;
    else if (s == "kinematic") m.hardening.mode = HardeningMode::Kinematic;
    else r.fail("mode", "expected isotropic or kinematic, got '" + s + "'");
  }
}

std::string join(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ", ";
    s += format_double(xs[i]);
  }
  return s;
}

void interpret(std::vector<Section>& sections, Config& c, const std::string& source) {
  // The default material is read first so that region materials inherit it.
  c.materials.clear();
  MaterialConfig base{"", default_material()};
  for (auto& sec : sections)
    if (sec.name == "material") {
      Reader r(sec, source);
      read_material(r, base.material);
      r.finish();
    }
  c.materials.push_back(base);

  for (auto& sec : sections) {
    Reader r(sec, source);
    const std::string& name = sec.name;
    const auto dot = name.find('.');
    const std::string kind = name.substr(0, dot);
    const std::string sub = dot == std::string::npos ? "" : name.substr(dot + 1);
    if (dot != std::string::npos && sub.empty())
      throw ParseError(source + ": empty section suffix in [" + name + "]", sec.line);

    if (name == "mesh") {
      auto& m = c.mesh;
      if (const auto* v = r.raw("type")) {
        const std::string s = trim(*v);
        if (s == "box") m.source = MeshSource::Box;
        else if (s == "plate_hole") m.source = MeshSource::PlateHole;
        else if (s == "file") m.source = MeshSource::File;
        else r.fail("type", "expected box, plate_hole or file, got '" + s + "'");
      }
      if (const auto* v = r.raw("element")) {
        const std::string s = trim(*v);
        if (s == "hex8") m.element = ElementKind::Hex8;
        else if (s == "tet4") m.element = ElementKind::Tet4;
        else r.fail("element", "expected hex8 or tet4, got '" + s + "'");
      }
      r.vec("extents", m.extents);
      if (const auto* v = r.raw("divisions")) {
        const auto xs = split_words(*v);
        if (xs.size() != 3) r.fail("divisions", "expected 3 integers");
        for (int k = 0; k < 3; ++k) {
          const long long d = r.to_int("divisions", xs[static_cast<std::size_t>(k)]);
          if (d < 1 || d > 100000) r.fail("divisions", "must be between 1 and 100000");
          m.divisions[static_cast<std::size_t>(k)] = static_cast<int>(d);
        }
      }
      r.number("width", m.width);
      r.number("thickness", m.thickness);
      r.number("radius", m.radius);
      r.integer("n_arc", m.n_arc, 2);
      r.integer("n_radial", m.n_radial, 1);
      r.integer("n_thick", m.n_thick, 1);
      r.word("file", m.file);
    } else if (kind == "elemset" && !sub.empty()) {
      ElemSetConfig es;
      es.name = sub;
      std::array<double, 6> box{};
      if (!r.has("box")) r.fail("box", "missing required key");
      r.vec("box", box);
      es.lo = {box[0], box[1], box[2]};
      es.hi = {box[3], box[4], box[5]};
      c.elemsets.push_back(es);
    } else if (name == "material") {
      continue;  // already read
    } else if (kind == "material" && !sub.empty()) {
      MaterialConfig mc{sub, base.material};
      read_material(r, mc.material);
      c.materials.push_back(mc);
    } else if (name == "network") {
      auto& n = c.network;
      if (const auto* v = r.raw("widths")) {
        n.widths.clear();
        for (const auto& w : split_words(*v)) {
          const long long x = r.to_int("widths", w);
          if (x < 1 || x > 100000) r.fail("widths", "layer width out of range");
          n.widths.push_back(static_cast<int>(x));
        }
      }
      if (const auto* v = r.raw("seed")) {
        const std::string s = trim(*v);
        std::uint64_t x = 0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
        if (res.ec != std::errc() || res.ptr != s.data() + s.size()) r.fail("seed", "expected an unsigned integer");
        n.seed = x;
      }
      r.boolean("normalize_inputs", n.normalize_inputs);
      r.boolean("zero_output_init", n.zero_output_init);
    } else if (name == "optimizer") {
      auto& o = c.optimizer;
      r.number("lr", o.lr);
      r.integer("lbfgs_memory", o.lbfgs_memory, 1);
      r.integer("patience", o.patience, 1);
      r.number("tol", o.tol);
      r.integer("max_iters_per_step", o.max_iters, 1);
    } else if (kind == "dirichlet" && !sub.empty()) {
      DirichletConfig d;
      d.name = sub;
      for (const auto& w : split_words(r.require("nodeset"))) d.node_sets.push_back(w);
      if (d.node_sets.empty()) r.fail("nodeset", "no node set given");
      d.axis = parse_axis(r, "axis", trim(r.require("axis")));
      const auto words = split_words(r.require("value"));
      if (words.empty()) r.fail("value", "expected 'const <v>' or 'affine <a> <b> <c> <d>'");
      std::vector<double> xs;
      for (std::size_t i = 1; i < words.size(); ++i) xs.push_back(r.to_double("value", words[i]));
      if (words[0] == "const" && xs.size() == 1) d.value = ValuePattern::constant(xs[0]);
      else if (words[0] == "affine" && xs.size() == 4) d.value = ValuePattern::affine(xs[0], xs[1], xs[2], xs[3]);
      else r.fail("value", "expected 'const <v>' or 'affine <a> <b> <c> <d>'");
      c.dirichlet.push_back(d);
    } else if (kind == "traction" && !sub.empty()) {
      TractionEntry t;
      t.name = sub;
      t.side_set = trim(r.require("sideset"));
      if (!r.has("vector")) r.fail("vector", "missing required key");
      r.vec("vector", t.vector);
      c.tractions.entries.push_back(t);
    } else if (name == "loadsteps") {
      const bool f = r.has("factors"), t = r.has("triangle");
      if (f == t) r.fail("factors", "give exactly one of 'factors' or 'triangle'");
      if (f) {
        c.program.factors = r.numbers("factors", *r.raw("factors"));
      } else {
        const auto xs = split_words(*r.raw("triangle"));
        if (xs.size() != 3) r.fail("triangle", "expected <peak> <steps_per_quarter> <steps>");
        const double peak = r.to_double("triangle", xs[0]);
        const long long spq = r.to_int("triangle", xs[1]);
        const long long steps = r.to_int("triangle", xs[2]);
        if (spq < 1 || steps < 1 || steps > 1000000) r.fail("triangle", "step counts must be positive");
        c.program = LoadProgram::triangle_wave(peak, static_cast<int>(spq), static_cast<int>(steps));
      }
    } else if (name == "output") {
      r.word("dir", c.output.dir);
      r.boolean("vtk", c.output.vtk);
    } else if (name == "run") {
      int t = static_cast<int>(c.threads);
      r.integer("threads", t, 0);
      c.threads = static_cast<unsigned>(t);
    } else {
      throw ParseError(source + ": unknown section [" + name + "]", sec.line);
    }
    r.finish();
  }
}

void validate(const Config& c, const std::string& source) {
  auto bad = [&](const std::string& msg) { throw ConfigError(source + ": " + msg); };
  for (const auto& m : c.materials) {
    try {
      m.material.validate();
    } catch (const ConfigError& e) {
      bad(std::string("[") + (m.elemset.empty() ? "material" : "material." + m.elemset) + "] " + e.what());
    }
  }
  const auto& m = c.mesh;
  if (m.source == MeshSource::Box)
    for (double e : m.extents)
      if (!(e > 0.0)) bad("[mesh] extents must be positive");
  if (m.source == MeshSource::PlateHole) {
    if (!(m.radius > 0.0) || !(m.width > m.radius) || !(m.thickness > 0.0))
      bad("[mesh] plate_hole needs 0 < radius < width and thickness > 0");
    if (m.n_arc % 2 != 0) bad("[mesh] n_arc must be even");
  }
  if (m.source == MeshSource::File && m.file.empty()) bad("[mesh] type = file needs 'file'");
  const auto& w = c.network.widths;
  if (w.size() < 2 || w.front() != 3 || w.back() != 3) bad("[network] widths must start and end with 3");
  const auto& o = c.optimizer;
  if (!(o.lr > 0.0)) bad("[optimizer] lr must be positive");
  if (!(o.tol >= 0.0)) bad("[optimizer] tol must be >= 0");
  for (const auto& es : c.elemsets)
    for (int k = 0; k < 3; ++k)
      if (es.lo[static_cast<std::size_t>(k)] > es.hi[static_cast<std::size_t>(k)])
        bad("[elemset." + es.name + "] box has lo > hi");
}

}  // namespace

Material default_material() {
  Material m;
  m.elastic = {384.62, 833.33};
  m.hardening.sigma_y0 = 50.0;
  m.hardening.H = 500.0;
  m.hardening.C = 0.0;
  m.hardening.mode = HardeningMode::Isotropic;
  return m;
}

Config parse_config(std::istream& in, const std::string& source) {
  std::vector<Section> sections;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    const std::string s = trim(hash == std::string::npos ? line : line.substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') throw ParseError(source + ": unterminated section header", lineno);
      const std::string name = trim(s.substr(1, s.size() - 2));
      if (name.empty()) throw ParseError(source + ": empty section name", lineno);
      for (const auto& sec : sections)
        if (sec.name == name) throw ParseError(source + ": duplicate section [" + name + "]", lineno);
      sections.push_back({name, lineno, {}});
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError(source + ": expected 'key = value'", lineno);
    if (sections.empty()) throw ParseError(source + ": key outside of any section", lineno);
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty()) throw ParseError(source + ": empty key", lineno);
    auto& keys = sections.back().keys;
    if (keys.count(key)) throw ParseError(source + ": duplicate key '" + key + "'", lineno);
    keys[key] = {value, lineno, false};
  }
  Config c;
  interpret(sections, c, source);
  validate(c, source);
  return c;
}

Config read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  return parse_config(in, path);
}

void write_config(std::ostream& out, const Config& c) {
  const auto& m = c.mesh;
  out << "[mesh]\n";
  out << "type = " << (m.source == MeshSource::Box ? "box" : m.source == MeshSource::PlateHole ? "plate_hole" : "file")
      << "\n";
  out << "element = " << (m.element == ElementKind::Hex8 ? "hex8" : "tet4") << "\n";
  out << "extents = " << join({m.extents.begin(), m.extents.end()}) << "\n";
  out << "divisions = " << m.divisions[0] << ", " << m.divisions[1] << ", " << m.divisions[2] << "\n";
  out << "width = " << format_double(m.width) << "\n";
  out << "thickness = " << format_double(m.thickness) << "\n";
  out << "radius = " << format_double(m.radius) << "\n";
  out << "n_arc = " << m.n_arc << "\nn_radial = " << m.n_radial << "\nn_thick = " << m.n_thick << "\n";
  if (!m.file.empty()) out << "file = " << m.file << "\n";

  for (const auto& es : c.elemsets)
    out << "\n[elemset." << es.name << "]\nbox = "
        << join({es.lo[0], es.lo[1], es.lo[2], es.hi[0], es.hi[1], es.hi[2]}) << "\n";

  for (const auto& mc : c.materials) {
    const auto& mat = mc.material;
    out << "\n[" << (mc.elemset.empty() ? "material" : "material." + mc.elemset) << "]\n";
    out << "mu = " << format_double(mat.elastic.mu) << "\n";
    out << "kappa = " << format_double(mat.elastic.kappa) << "\n";
    out << "sigma_y0 = " << format_double(mat.hardening.sigma_y0) << "\n";
    out << "H = " << format_double(mat.hardening.H) << "\n";
    out << "C = " << format_double(mat.hardening.C) << "\n";
    out << "mode = " << (mat.hardening.mode == HardeningMode::Isotropic ? "isotropic" : "kinematic") << "\n";
  }

  out << "\n[network]\nwidths = ";
  for (std::size_t i = 0; i < c.network.widths.size(); ++i) out << (i ? ", " : "") << c.network.widths[i];
  out << "\nseed = " << c.network.seed << "\n";
  out << "normalize_inputs = " << (c.network.normalize_inputs ? "true" : "false") << "\n";
  out << "zero_output_init = " << (c.network.zero_output_init ? "true" : "false") << "\n";

  const auto& o = c.optimizer;
  out << "\n[optimizer]\nlr = " << format_double(o.lr) << "\nlbfgs_memory = " << o.lbfgs_memory
      << "\npatience = " << o.patience << "\ntol = " << format_double(o.tol)
      << "\nmax_iters_per_step = " << o.max_iters << "\n";

  for (const auto& d : c.dirichlet) {
    out << "\n[dirichlet." << d.name << "]\nnodeset =";
    for (const auto& s : d.node_sets) out << ' ' << s;
    out << "\naxis = " << axis_name(d.axis) << "\nvalue = ";
    const auto& v = d.value;
    if (v.a == 0.0 && v.b == 0.0 && v.c == 0.0) out << "const " << format_double(v.d) << "\n";
    else
      out << "affine " << format_double(v.a) << ' ' << format_double(v.b) << ' ' << format_double(v.c) << ' '
          << format_double(v.d) << "\n";
  }
  for (const auto& t : c.tractions.entries)
    out << "\n[traction." << t.name << "]\nsideset = " << t.side_set
        << "\nvector = " << join({t.vector.begin(), t.vector.end()}) << "\n";

  out << "\n[loadsteps]\nfactors = [" << join(c.program.factors) << "]\n";
  out << "\n[output]\ndir = " << c.output.dir << "\nvtk = " << (c.output.vtk ? "true" : "false") << "\n";
  out << "\n[run]\nthreads = " << c.threads << "\n";
}

Mesh build_mesh(const Config& c) {
  const auto& m = c.mesh;
  Mesh mesh;
  switch (m.source) {
    case MeshSource::Box:
      mesh = generate_structured_box(m.extents, m.divisions);
      break;
    case MeshSource::PlateHole:
      mesh = generate_plate_with_hole(m.width, m.thickness, m.radius, m.n_arc, m.n_radial, m.n_thick);
      break;
    case MeshSource::File:
      mesh = read_mesh(m.file);
      break;
  }
  if (m.source != MeshSource::File && m.element == ElementKind::Tet4) mesh = split_hex_to_tets(mesh);

  for (const auto& es : c.elemsets) {
    if (mesh.elem_sets.count(es.name)) throw ConfigError("element set '" + es.name + "' already defined by the mesh");
    std::vector<std::size_t> ids;
    for (std::size_t e = 0; e < mesh.num_elements(); ++e) {
      const Vec3 x = element_centroid(mesh, mesh.elements[e]);
      bool inside = true;
      for (int k = 0; k < 3; ++k)
        inside = inside && x[static_cast<std::size_t>(k)] >= es.lo[static_cast<std::size_t>(k)] &&
                 x[static_cast<std::size_t>(k)] <= es.hi[static_cast<std::size_t>(k)];
      if (inside) ids.push_back(e);
    }
    if (ids.empty()) throw ConfigError("element set '" + es.name + "' selects no elements");
    mesh.elem_sets[es.name] = std::move(ids);
  }

  mesh.material.assign(mesh.num_elements(), 0);
  for (std::size_t i = 1; i < c.materials.size(); ++i) {
    const auto it = mesh.elem_sets.find(c.materials[i].elemset);
    if (it == mesh.elem_sets.end())
      throw ConfigError("[material." + c.materials[i].elemset + "] references an unknown element set");
    for (auto e : it->second) mesh.material[e] = static_cast<int>(i);
  }
  return mesh;
}

Problem build_problem(const Config& c) {
  Problem p;
  if (c.program.factors.empty()) throw ConfigError("no load steps: add a [loadsteps] section");
  p.mesh = build_mesh(c);
  for (const auto& m : c.materials) {
    p.materials.push_back(m.material);
    p.material_names.push_back(m.elemset.empty() ? "default" : m.elemset);
  }
  for (const auto& d : c.dirichlet)
    for (const auto& set : d.node_sets)
      p.dirichlet.entries.push_back({d.node_sets.size() == 1 ? d.name : d.name + "/" + set, set, d.axis, d.value});
  p.tractions = c.tractions;
  p.program = c.program;
  p.optimizer = c.optimizer;
  p.network = c.network;
  p.threads = c.threads == 0 ? default_thread_count() : c.threads;
  p.validate();
  validate_dirichlet(p.mesh, p.dirichlet);
  return p;
}

namespace {

const char* const kShearCommon = R"(
[mesh]
type = box
extents = 4, 4, 1
divisions = 4, 4, 1

[network]
widths = 3, 16, 16, 3
seed = 1
normalize_inputs = true
zero_output_init = true

# Loss changes stall early on a 16-element mesh; 1e-6 stops about
# 0.02 MPa short of the uniform solution.
[optimizer]
lr = 0.5
lbfgs_memory = 20
patience = 10
tol = 1e-9
max_iters_per_step = 5000

# u_x = (y / 4) f on the four lateral faces, u_y = 0 there, u_z = 0 on
# front and back.
[dirichlet.shear_x]
nodeset = x_min x_max y_min y_max
axis = x
value = affine 0 0.25 0 0

[dirichlet.shear_y]
nodeset = x_min x_max y_min y_max
axis = y
value = const 0

[dirichlet.plane_strain]
nodeset = z_min z_max
axis = z
value = const 0
)";

std::string shear_preset(const char* material, const char* loadsteps, const char* extra) {
  return std::string(kShearCommon) + material + loadsteps + extra;
}

}  // namespace

std::vector<std::string> preset_names() { return {"shear-iso", "shear-kin", "bimat", "plate-hole"}; }

std::string preset_text(const std::string& name) {
  if (name == "shear-iso")
    return "# Cyclic simple shear, linear isotropic hardening.\n" +
           shear_preset("\n[material]\nmode = isotropic\nH = 500\nC = 0\n",
                        "\n[loadsteps]\ntriangle = 0.5 3 12\n", "\n[output]\ndir = out/shear-iso\n");
  if (name == "shear-kin")
    return "# Cyclic simple shear, linear kinematic hardening.\n" +
           shear_preset("\n[material]\nmode = kinematic\nH = 0\nC = 500\n",
                        "\n[loadsteps]\ntriangle = 0.5 3 12\n", "\n[output]\ndir = out/shear-kin\n");
  if (name == "bimat")
    return R"(# Simple shear of a two-material plate in one load step.
[mesh]
type = box
extents = 4, 4, 1
divisions = 20, 20, 1

# material 2: central square inclusion
[elemset.inclusion]
box = 1, 1, -1, 3, 3, 2

[material]
mode = isotropic
sigma_y0 = 50
H = 500

[material.inclusion]
sigma_y0 = 60

[network]
widths = 3, 32, 32, 32, 3
seed = 1
normalize_inputs = true
zero_output_init = true

[optimizer]
lr = 0.5
lbfgs_memory = 20
patience = 10
tol = 1e-6
max_iters_per_step = 4000

[dirichlet.shear_x]
nodeset = x_min x_max y_min y_max
axis = x
value = affine 0 0.25 0 0

[dirichlet.shear_y]
nodeset = x_min x_max y_min y_max
axis = y
value = const 0

[dirichlet.plane_strain]
nodeset = z_min z_max
axis = z
value = const 0

[loadsteps]
factors = [0.5]

[output]
dir = out/bimat
)";
  if (name == "plate-hole")
    return R"(# One eighth of a plate with a central hole, tetrahedral mesh,
# cyclic displacement of the top face.
[mesh]
type = plate_hole
element = tet4
width = 4
thickness = 1
radius = 1.5
n_arc = 8
n_radial = 6
n_thick = 1

[material]
mode = isotropic
sigma_y0 = 50
H = 500

[network]
widths = 3, 32, 32, 32, 3
seed = 1
normalize_inputs = true
zero_output_init = true

[optimizer]
lr = 0.5
lbfgs_memory = 20
patience = 10
tol = 2e-5
max_iters_per_step = 2000

[dirichlet.sym_x]
nodeset = x_sym
axis = x
value = const 0

[dirichlet.sym_y]
nodeset = y_sym
axis = y
value = const 0

[dirichlet.sym_z]
nodeset = z_sym
axis = z
value = const 0

[dirichlet.pull]
nodeset = top
axis = y
value = const 0.1

[loadsteps]
factors = [1, 2, 1, 0]

[output]
dir = out/plate-hole
)";
  throw ConfigError("unknown preset '" + name + "'");
}

Config preset(const std::string& name) {
  std::istringstream in(preset_text(name));
  return parse_config(in, "preset:" + name);
}

}  // namespace demplast
