#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "demplast/bc.hpp"
#include "demplast/material.hpp"
#include "demplast/mesh.hpp"
#include "demplast/optim.hpp"
#include "demplast/solver.hpp"

namespace demplast {

enum class MeshSource { Box, PlateHole, File };

struct MeshConfig {
  MeshSource source = MeshSource::Box;
  ElementKind element = ElementKind::Hex8;
  // box
  Vec3 extents{4.0, 4.0, 1.0};
  std::array<int, 3> divisions{4, 4, 1};
  // plate_hole
  double width = 4.0;
  double thickness = 1.0;
  double radius = 1.5;
  int n_arc = 8;
  int n_radial = 6;
  int n_thick = 1;
  // file
  std::string file;
};

/// Element set selected by element centroid inside an axis-aligned box.
struct ElemSetConfig {
  std::string name;
  Vec3 lo{};
  Vec3 hi{};
};

struct MaterialConfig {
  std::string elemset;  ///< empty for the default material
  Material material;
};

/// One [dirichlet.<name>] section; expands to one DirichletEntry per node set.
struct DirichletConfig {
  std::string name;
  std::vector<std::string> node_sets;
  int axis = 0;
  ValuePattern value;
};

struct OutputConfig {
  std::string dir = "out";
  bool vtk = true;
};

struct Config {
  MeshConfig mesh;
  std::vector<ElemSetConfig> elemsets;
  std::vector<MaterialConfig> materials;  ///< [0] is the default material
  NetworkConfig network;
  MinimizeOptions optimizer;
  std::vector<DirichletConfig> dirichlet;
  TractionSpec tractions;
  LoadProgram program;
  OutputConfig output;
  unsigned threads = 0;  ///< 0: DEMPLAST_THREADS or 1
};

/// Default material: mu = 384.62, kappa = 833.33, sigma_y0 = 50, H = 500,
/// isotropic.
Material default_material();

/// Parses the sectioned key = value format. `source` names the input in
/// error messages. Unknown sections or keys, duplicates and malformed
/// values throw ParseError with the line number; semantic problems throw
/// ConfigError.
Config parse_config(std::istream& in, const std::string& source = "<config>");
Config read_config(const std::string& path);

/// Writes every setting explicitly; parse_config reads it back unchanged.
void write_config(std::ostream& out, const Config& config);

Mesh build_mesh(const Config& config);
Problem build_problem(const Config& config);

/// Shear strain amplitude of the uniform-shear presets at unit load factor.
inline constexpr double kShearGammaPerFactor = 0.25;

std::vector<std::string> preset_names();
/// Config text of a built-in preset. Throws ConfigError for unknown names.
std::string preset_text(const std::string& name);
Config preset(const std::string& name);

}  // namespace demplast
