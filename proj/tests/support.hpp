#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "demplast/bc.hpp"
#include "demplast/material.hpp"
#include "demplast/mesh.hpp"
#include "demplast/network.hpp"
#include "demplast/solver.hpp"

namespace demplast::testing {

inline Material steel_like(HardeningMode mode = HardeningMode::Isotropic) {
  Material m;
  m.elastic = {384.62, 833.33};
  m.hardening.sigma_y0 = 50.0;
  if (mode == HardeningMode::Isotropic) {
    m.hardening.H = 500.0;
  } else {
    m.hardening.C = 500.0;
  }
  m.hardening.mode = mode;
  return m;
}

/// u_x = g*y on the lateral faces, u_y = 0 there, u_z = 0 on the z faces.
inline DirichletSpec lateral_shear(double gamma_per_factor) {
  DirichletSpec spec;
  for (const char* s : {"x_min", "x_max", "y_min", "y_max"}) {
    spec.entries.push_back({"shear_x", s, 0, ValuePattern::affine(0.0, gamma_per_factor, 0.0, 0.0)});
    spec.entries.push_back({"shear_y", s, 1, ValuePattern::constant(0.0)});
  }
  for (const char* s : {"z_min", "z_max"}) spec.entries.push_back({"plane", s, 2, ValuePattern::constant(0.0)});
  return spec;
}

/// Every DOF on the x faces prescribed from u = g x; for a single layer of
/// elements along x this fixes every node.
inline DirichletSpec full_linear(const Mat3& g) {
  DirichletSpec spec;
  for (const char* s : {"x_min", "x_max"})
    for (int i = 0; i < 3; ++i)
      spec.entries.push_back({"lin", s, i, ValuePattern::affine(g[i][0], g[i][1], g[i][2], 0.0)});
  return spec;
}

inline std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(std::min(n, k));
  return idx;
}

/// Glorot network with a damped output layer so that the predicted field
/// stays a small perturbation of the boundary data.
inline Network small_network(const Mesh& mesh, std::vector<int> widths, std::uint64_t seed,
                             double output_scale = 1e-3) {
  Network net = Network::init(std::move(widths), seed);
  net.set_input_transform(InputTransform::unit_box(mesh.nodes));
  net.scale_output_layer(output_scale);
  // Non-zero biases exercise the bias gradient.
  std::mt19937_64 rng(seed + 1);
  std::uniform_real_distribution<double> d(-0.1, 0.1);
  auto p = net.params();
  for (auto& v : p) v += 1e-3 * d(rng);
  return net;
}

/// Uniform simple shear on a box: every lateral node follows u_x = 0.25 f y.
inline Problem shear_box(const std::array<int, 3>& divisions, const Material& mat, LoadProgram program,
                         std::vector<int> widths = {3, 16, 16, 3}) {
  Problem p;
  p.mesh = generate_structured_box({4.0, 4.0, 1.0}, divisions);
  p.materials = {mat};
  p.material_names = {"default"};
  p.dirichlet = lateral_shear(0.25);
  p.program = std::move(program);
  p.network.widths = std::move(widths);
  p.network.seed = 1;
  p.network.normalize_inputs = true;
  p.network.zero_output_init = true;
  p.optimizer.max_iters = 2000;
  return p;
}

/// Pure shear driven by tractions tau*f on the four lateral faces. Rigid
/// modes are removed with u_y = 0 on the x faces, u_x = 0 on y_min and
/// u_z = 0 on the z faces, so the exact solution is u_x = (tau f / mu) y.
/// A linear (3 -> 3) network can represent it exactly.
inline Problem traction_shear(const std::array<int, 3>& divisions, const Material& mat, double tau,
                              LoadProgram program) {
  Problem p;
  p.mesh = generate_structured_box({4.0, 4.0, 1.0}, divisions);
  p.materials = {mat};
  p.material_names = {"default"};
  for (const char* s : {"x_min", "x_max"}) p.dirichlet.entries.push_back({"no_uy", s, 1, ValuePattern::constant(0.0)});
  p.dirichlet.entries.push_back({"no_ux", "y_min", 0, ValuePattern::constant(0.0)});
  for (const char* s : {"z_min", "z_max"}) p.dirichlet.entries.push_back({"plane", s, 2, ValuePattern::constant(0.0)});
  p.tractions.entries = {{"right", "x_max", {0.0, tau, 0.0}},
                         {"left", "x_min", {0.0, -tau, 0.0}},
                         {"top", "y_max", {tau, 0.0, 0.0}},
                         {"bottom", "y_min", {-tau, 0.0, 0.0}}};
  p.program = std::move(program);
  p.network.widths = {3, 3};
  p.network.seed = 2;
  p.network.normalize_inputs = true;
  p.network.zero_output_init = true;
  p.optimizer.lr = 1.0;
  p.optimizer.tol = 1e-12;
  p.optimizer.max_iters = 500;
  return p;
}

}  // namespace demplast::testing
