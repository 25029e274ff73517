#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "demplast/bc.hpp"
#include "demplast/energy.hpp"
#include "demplast/material.hpp"
#include "demplast/mesh.hpp"
#include "demplast/network.hpp"
#include "demplast/optim.hpp"

namespace demplast {

struct NetworkConfig {
  std::vector<int> widths{3, 100, 200, 400, 200, 100, 3};
  std::uint64_t seed = 0;
  bool normalize_inputs = false;  ///< map the mesh bounding box to [-1,1]^3
  bool zero_output_init = false;  ///< start from u_raw = 0
};

/// Everything needed to run the load-stepping solver.
struct Problem {
  Mesh mesh;
  std::vector<Material> materials;           ///< indexed by Mesh::material
  std::vector<std::string> material_names;
  DirichletSpec dirichlet;
  TractionSpec tractions;
  LoadProgram program;
  MinimizeOptions optimizer;
  NetworkConfig network;
  unsigned threads = 1;

  void validate() const;
};

/// Converged solution of one load step.
struct StepRecord {
  int step = 0;  ///< 1-based
  double factor = 0.0;
  double loss = 0.0;
  int iterations = 0;
  bool converged = false;
  double seconds = 0.0;
  std::vector<Vec3> u;
  std::vector<SymTensor2> strain;
  std::vector<SymTensor2> stress;
  std::vector<SymTensor2> eps_p;
  std::vector<SymTensor2> back_stress;
  std::vector<double> peeq;
  std::vector<double> mises;
  std::vector<double> measure;
  std::vector<int> material;
};

/// Builds a record from the last evaluation held by `ws`.
StepRecord make_record(const EnergyWorkspace& ws, int step, double loss);

struct RunOptions {
  std::string checkpoint_dir;  ///< empty: no checkpoints
  std::function<void(const StepRecord&)> on_step;
  std::ostream* log = nullptr;
};

struct RunResult {
  std::vector<StepRecord> records;
  Network network;
};

EnergyWorkspace make_workspace(const Problem& problem);
Network make_network(const Problem& problem);

/// Trains through every load step, reusing the parameters of the previous
/// step as the starting point. Writes step_<k>.ckpt and state_<k>.dat per
/// step when a checkpoint directory is given.
RunResult run(const Problem& problem, const RunOptions& options = {});
RunResult run(const Problem& problem, Network initial, const RunOptions& options = {});

/// Replays saved per-step parameters on `problem.mesh` without training.
std::vector<StepRecord> infer(const Problem& problem, const std::string& checkpoint_dir,
                              const RunOptions& options = {});

std::string checkpoint_path(const std::string& dir, int step);
std::string state_path(const std::string& dir, int step);

/// Per point: sigma(6), eps_p(6), ebar_p, q(6) as little-endian float64,
/// tensor components ordered 11, 22, 33, 12, 13, 23.
void save_states(const std::string& path, const std::vector<PlasticState>& states);
std::vector<PlasticState> load_states(const std::string& path);

}  // namespace demplast
