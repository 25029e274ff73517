#pragma once

#include <span>
#include <string>
#include <vector>

#include "demplast/mesh.hpp"

namespace demplast {

/// u = a*x + b*y + c*z + d, before load scaling.
struct ValuePattern {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;

  static ValuePattern constant(double v) { return {0.0, 0.0, 0.0, v}; }
  static ValuePattern affine(double a, double b, double c, double d) { return {a, b, c, d}; }
  double at(const Vec3& x) const { return a * x[0] + b * x[1] + c * x[2] + d; }
};

struct DirichletEntry {
  std::string name;
  std::string node_set;
  int axis = 0;  ///< 0 = x, 1 = y, 2 = z
  ValuePattern value;
};

struct DirichletSpec {
  std::vector<DirichletEntry> entries;
};

struct TractionEntry {
  std::string name;
  std::string side_set;
  Vec3 vector{};  ///< traction at unit load factor [MPa]
};

struct TractionSpec {
  std::vector<TractionEntry> entries;
};

/// Load factors f(t), one per load step.
struct LoadProgram {
  std::vector<double> factors;

  void validate() const;
  std::size_t size() const { return factors.size(); }

  /// Symmetric triangular wave: `steps` equal increments covering
  /// 0 -> +peak -> 0 -> -peak -> 0 -> ... with `steps_per_quarter` steps per
  /// quarter period.
  static LoadProgram triangle_wave(double peak, int steps_per_quarter, int steps);
};

/// Nodal mask m and offset u0 for u = m o u_raw + u0.
struct MaskOffset {
  std::vector<Vec3> mask;
  std::vector<Vec3> offset;
};

/// Checks that every referenced set exists and that no node-DOF receives two
/// different prescribed values. Throws ConfigError.
void validate_dirichlet(const Mesh& mesh, const DirichletSpec& spec);

MaskOffset build_mask_offset(const Mesh& mesh, const DirichletSpec& spec, double factor);

std::vector<Vec3> apply(const MaskOffset& mo, std::span<const Vec3> raw_u);

}  // namespace demplast
