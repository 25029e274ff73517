#include "demplast/solver.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "demplast/errors.hpp"

namespace demplast {

namespace {

constexpr std::size_t kStateDoubles = 19;

void write_le(std::ostream& out, double v) {
  unsigned char buf[8];
  std::memcpy(buf, &v, 8);
  if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + 8);
  out.write(reinterpret_cast<const char*>(buf), 8);
}

double read_le(const unsigned char* p) {
  unsigned char buf[8];
  std::memcpy(buf, p, 8);
  if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + 8);
  double v;
  std::memcpy(&v, buf, 8);
  return v;
}

void write_outputs(const RunOptions& options, int step, const Network& net,
                   const EnergyWorkspace& ws) {
  if (options.checkpoint_dir.empty()) return;
  std::filesystem::create_directories(options.checkpoint_dir);
  save_checkpoint(checkpoint_path(options.checkpoint_dir, step), net);
  save_states(state_path(options.checkpoint_dir, step), ws.committed_states());
}

}  // namespace

void Problem::validate() const {
  mesh.validate();
  if (materials.empty()) throw ConfigError("no material defined");
  for (const auto& m : materials) m.validate();
  program.validate();
  if (optimizer.lr <= 0.0) throw ConfigError("optimizer lr must be positive");
  if (optimizer.lbfgs_memory < 1) throw ConfigError("lbfgs_memory must be >= 1");
  if (optimizer.patience < 1) throw ConfigError("patience must be >= 1");
  if (optimizer.tol < 0.0) throw ConfigError("tol must be >= 0");
  if (optimizer.max_iters < 1) throw ConfigError("max_iters_per_step must be >= 1");
}

std::string checkpoint_path(const std::string& dir, int step) {
  return (std::filesystem::path(dir) / ("step_" + std::to_string(step) + ".ckpt")).string();
}

std::string state_path(const std::string& dir, int step) {
  return (std::filesystem::path(dir) / ("state_" + std::to_string(step) + ".dat")).string();
}

void save_states(const std::string& path, const std::vector<PlasticState>& states) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write state file '" + path + "'");
  for (const auto& s : states) {
    for (double v : s.sigma.data()) write_le(out, v);
    for (double v : s.eps_p.data()) write_le(out, v);
    write_le(out, s.ebar_p);
    for (double v : s.q.data()) write_le(out, v);
  }
  if (!out) throw IoError("failed writing state file '" + path + "'");
}

std::vector<PlasticState> load_states(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open state file '" + path + "'");
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const std::size_t record = kStateDoubles * 8;
  if (bytes.size() % record != 0)
    throw IoError("state file '" + path + "' size is not a multiple of " + std::to_string(record));
  std::vector<PlasticState> states(bytes.size() / record);
  const unsigned char* p = bytes.data();
  for (auto& s : states) {
    for (std::size_t k = 0; k < 6; ++k, p += 8) s.sigma[k] = read_le(p);
    for (std::size_t k = 0; k < 6; ++k, p += 8) s.eps_p[k] = read_le(p);
    s.ebar_p = read_le(p);
    p += 8;
    for (std::size_t k = 0; k < 6; ++k, p += 8) s.q[k] = read_le(p);
  }
  return states;
}

StepRecord make_record(const EnergyWorkspace& ws, int step, double loss) {
  StepRecord r;
  r.step = step;
  r.factor = ws.load_factor();
  r.loss = loss;
  r.u = ws.displacement();
  const auto& results = ws.trial_results();
  const auto& ops = ws.operators();
  const std::size_t ne = results.size();
  r.strain = ws.trial_strains();
  r.stress.resize(ne);
  r.eps_p.resize(ne);
  r.back_stress.resize(ne);
  r.peeq.resize(ne);
  r.mises.resize(ne);
  r.measure.resize(ne);
  r.material.resize(ne);
  for (std::size_t e = 0; e < ne; ++e) {
    const PlasticState& s = results[e].state;
    r.stress[e] = s.sigma;
    r.eps_p[e] = s.eps_p;
    r.back_stress[e] = s.q;
    r.peeq[e] = s.ebar_p;
    r.mises[e] = von_mises(s.sigma);
    r.measure[e] = ops[e].measure;
    r.material[e] = ops[e].material;
  }
  return r;
}

EnergyWorkspace make_workspace(const Problem& problem) {
  EnergyWorkspace ws(problem.mesh, problem.materials, problem.dirichlet, problem.tractions);
  ws.set_threads(problem.threads);
  return ws;
}

Network make_network(const Problem& problem) {
  Network net = Network::init(problem.network.widths, problem.network.seed);
  if (problem.network.normalize_inputs)
    net.set_input_transform(InputTransform::unit_box(problem.mesh.nodes));
  if (problem.network.zero_output_init) net.zero_output_layer();
  return net;
}

RunResult run(const Problem& problem, const RunOptions& options) {
  return run(problem, make_network(problem), options);
}

RunResult run(const Problem& problem, Network net, const RunOptions& options) {
  problem.validate();
  EnergyWorkspace ws = make_workspace(problem);
  RunResult result;
  ParamVector params = net.flatten();
  const Objective objective = [&](std::span<const double> p, ParamVector& grad) {
    net.unflatten(p);
    return ws.loss_and_grad(net, grad);
  };

  for (std::size_t k = 0; k < problem.program.size(); ++k) {
    const int step = static_cast<int>(k) + 1;
    const auto t0 = std::chrono::steady_clock::now();
    ws.set_load_factor(problem.program.factors[k]);
    MinimizeResult mr;
    try {
      mr = minimize(objective, params, problem.optimizer);
    } catch (const DivergenceError& e) {
      throw DivergenceError("load step " + std::to_string(step) + ": " + e.what());
    }
    net.unflatten(params);
    const double loss = ws.loss(net);
    ws.commit();

    StepRecord rec = make_record(ws, step, loss);
    rec.iterations = mr.iterations;
    rec.converged = mr.converged;
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_outputs(options, step, net, ws);
    if (options.log)
      *options.log << "step " << step << "/" << problem.program.size() << "  factor " << rec.factor
                   << "  loss " << loss << "  iters " << mr.iterations
                   << (mr.converged ? "  converged" : "  (iteration cap)") << "  " << rec.seconds
                   << " s\n";
    if (options.on_step) options.on_step(rec);
    result.records.push_back(std::move(rec));
  }
  result.network = std::move(net);
  return result;
}

std::vector<StepRecord> infer(const Problem& problem, const std::string& checkpoint_dir,
                              const RunOptions& options) {
  problem.validate();
  EnergyWorkspace ws = make_workspace(problem);
  std::vector<StepRecord> records;
  for (std::size_t k = 0; k < problem.program.size(); ++k) {
    const int step = static_cast<int>(k) + 1;
    const std::string path = checkpoint_path(checkpoint_dir, step);
    if (!std::filesystem::exists(path))
      throw IoError("missing checkpoint for load step " + std::to_string(step) + ": '" + path + "'");
    const auto t0 = std::chrono::steady_clock::now();
    const Network net = load_checkpoint(path);
    if (net.widths() != problem.network.widths)
      throw ConfigError("checkpoint '" + path + "' architecture does not match the configured widths");
    ws.set_load_factor(problem.program.factors[k]);
    const double loss = ws.loss(net);
    ws.commit();
    StepRecord rec = make_record(ws, step, loss);
    rec.converged = true;
    rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (options.log)
      *options.log << "infer step " << step << "/" << problem.program.size() << "  factor "
                   << rec.factor << "  loss " << loss << "\n";
    if (options.on_step) options.on_step(rec);
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace demplast
