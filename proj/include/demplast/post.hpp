#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "demplast/mesh.hpp"
#include "demplast/solver.hpp"

namespace demplast {

constexpr int kVtkHexahedron = 12;
constexpr int kVtkTetra = 10;

/// Legacy ASCII VTK unstructured grid: displacement as point vectors, mises
/// and peeq as cell scalars, stress and strain as cell tensors.
void write_vtk(std::ostream& out, const Mesh& mesh, const StepRecord& record, bool tensors = true);
void write_vtk(const std::string& path, const Mesh& mesh, const StepRecord& record, bool tensors = true);

/// Minimal reader for the files written by write_vtk.
struct VtkData {
  std::vector<Vec3> points;
  std::vector<std::vector<std::size_t>> cells;
  std::vector<int> cell_types;
  std::map<std::string, std::vector<Vec3>> point_vectors;
  std::map<std::string, std::vector<double>> cell_scalars;
  std::map<std::string, std::vector<std::array<double, 9>>> cell_tensors;
};

VtkData read_vtk(std::istream& in);
VtkData read_vtk(const std::string& path);

double weighted_mean(std::span<const double> values, std::span<const double> weights);

/// Volume-weighted element means of one load step.
struct CurveRow {
  int step = 0;
  double factor = 0.0;
  double strain = 0.0;  ///< engineering shear strain 2*eps_12
  double stress = 0.0;  ///< sigma_12 [MPa]
  double peeq = 0.0;
};

std::vector<CurveRow> shear_curve(std::span<const StepRecord> records);
void write_curve_csv(std::ostream& out, std::span<const CurveRow> rows);

/// Mean absolute difference per field and relative L2 displacement error in
/// percent (nullopt when the reference norm is zero).
struct Metrics {
  std::map<std::string, double> ad;
  std::optional<double> l2_percent;
};

Metrics metrics(std::span<const Vec3> u_test, std::span<const Vec3> u_ref,
                const std::map<std::string, std::vector<double>>& fields_test,
                const std::map<std::string, std::vector<double>>& fields_ref);

/// Reference solution read from CSV: a `node,ux,uy,uz` section followed by
/// an `elem,mises,peeq` section, rows indexed by 0-based ids.
struct ReferenceField {
  std::vector<Vec3> u;
  std::vector<double> mises;
  std::vector<double> peeq;
};

ReferenceField read_reference_csv(std::istream& in);
ReferenceField read_reference_csv(const std::string& path);
void write_reference_csv(std::ostream& out, const StepRecord& record);

Metrics compare_to_reference(const StepRecord& record, const ReferenceField& ref);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

}  // namespace demplast
