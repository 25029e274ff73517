#include "demplast/bc.hpp"

#include <cmath>
#include <optional>

#include "demplast/errors.hpp"

namespace demplast {

void LoadProgram::validate() const {
  if (factors.empty()) throw ConfigError("load program needs at least one step");
  for (std::size_t i = 0; i < factors.size(); ++i)
    if (!std::isfinite(factors[i]))
      throw ConfigError("load factor of step " + std::to_string(i + 1) + " is not finite");
}

LoadProgram LoadProgram::triangle_wave(double peak, int steps_per_quarter, int steps) {
  LoadProgram p;
  for (int k = 1; k <= steps; ++k) {
    // position within the period, in quarters
    const double t = static_cast<double>(k) / steps_per_quarter;
    const double phase = std::fmod(t, 4.0);
    double v = 0.0;
    if (phase <= 1.0) {
      v = phase;
    } else if (phase <= 3.0) {
      v = 2.0 - phase;
    } else {
      v = phase - 4.0;
    }
    p.factors.push_back(peak * v);
  }
  return p;
}

namespace {

const std::vector<std::size_t>& find_set(const Mesh& mesh, const DirichletEntry& e) {
  auto it = mesh.node_sets.find(e.node_set);
  if (it == mesh.node_sets.end())
    throw ConfigError("dirichlet '" + e.name + "' references unknown node set '" + e.node_set + "'");
  return it->second;
}

}  // namespace

void validate_dirichlet(const Mesh& mesh, const DirichletSpec& spec) {
  std::vector<std::array<std::optional<std::pair<double, const DirichletEntry*>>, 3>> seen(
      mesh.num_nodes());
  for (const auto& e : spec.entries) {
    if (e.axis < 0 || e.axis > 2) throw ConfigError("dirichlet '" + e.name + "' has invalid axis");
    for (auto n : find_set(mesh, e)) {
      const double v = e.value.at(mesh.nodes[n]);
      auto& slot = seen[n][static_cast<std::size_t>(e.axis)];
      if (slot && std::abs(slot->first - v) > 1e-12 * (1.0 + std::abs(v)))
        throw ConfigError("conflicting Dirichlet values at node " + std::to_string(n) + " axis " +
                          std::to_string(e.axis) + ": '" + slot->second->name + "' and '" + e.name + "'");
      slot = std::make_pair(v, &e);
    }
  }
}

MaskOffset build_mask_offset(const Mesh& mesh, const DirichletSpec& spec, double factor) {
  validate_dirichlet(mesh, spec);
  MaskOffset mo;
  mo.mask.assign(mesh.num_nodes(), Vec3{1.0, 1.0, 1.0});
  mo.offset.assign(mesh.num_nodes(), Vec3{0.0, 0.0, 0.0});
  for (const auto& e : spec.entries) {
    const auto axis = static_cast<std::size_t>(e.axis);
    for (auto n : find_set(mesh, e)) {
      mo.mask[n][axis] = 0.0;
      mo.offset[n][axis] = factor * e.value.at(mesh.nodes[n]);
    }
  }
  return mo;
}

std::vector<Vec3> apply(const MaskOffset& mo, std::span<const Vec3> raw_u) {
  if (raw_u.size() != mo.mask.size())
    throw ConfigError("displacement field size does not match the mask");
  std::vector<Vec3> u(raw_u.size());
  for (std::size_t n = 0; n < raw_u.size(); ++n)
    for (int k = 0; k < 3; ++k) u[n][k] = mo.mask[n][k] * raw_u[n][k] + mo.offset[n][k];
  return u;
}

}  // namespace demplast
