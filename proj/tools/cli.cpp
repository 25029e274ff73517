#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "demplast/config.hpp"
#include "demplast/errors.hpp"
#include "demplast/oracle.hpp"
#include "demplast/post.hpp"
#include "demplast/solver.hpp"

namespace demplast::cli {

namespace {

namespace fs = std::filesystem;

struct Overrides {
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::optional<double> tol;
  std::optional<int> steps;
  std::optional<int> max_iters;
  std::string mesh;
  int refine = 1;
};

Config load_config(const std::string& arg) {
  if (fs::exists(arg)) return read_config(arg);
  const auto names = preset_names();
  if (std::find(names.begin(), names.end(), arg) != names.end()) return preset(arg);
  throw IoError("config file '" + arg + "' not found and not a preset name (see 'presets list')");
}

void apply(const Overrides& o, Config& c) {
  if (!o.out.empty()) c.output.dir = o.out;
  if (o.seed) c.network.seed = *o.seed;
  if (o.threads) c.threads = *o.threads;
  if (o.tol) c.optimizer.tol = *o.tol;
  if (o.max_iters) c.optimizer.max_iters = *o.max_iters;
  if (o.steps) {
    if (*o.steps < 1 || static_cast<std::size_t>(*o.steps) > c.program.size())
      throw ConfigError("--steps must be between 1 and " + std::to_string(c.program.size()));
    c.program.factors.resize(static_cast<std::size_t>(*o.steps));
  }
  if (!o.mesh.empty()) {
    c.mesh.source = MeshSource::File;
    c.mesh.file = o.mesh;
  }
  if (o.refine != 1) {
    if (c.mesh.source == MeshSource::Box) {
      c.mesh.divisions[0] *= o.refine;
      c.mesh.divisions[1] *= o.refine;
    } else if (c.mesh.source == MeshSource::PlateHole) {
      c.mesh.n_arc *= o.refine;
      c.mesh.n_radial *= o.refine;
      c.mesh.n_thick *= o.refine;
    } else {
      throw ConfigError("--refine does not apply to file meshes");
    }
  }
}

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--out", o.out, "Output directory");
  cmd->add_option("--threads", o.threads, "Worker threads for energy assembly");
  cmd->add_option("--mesh", o.mesh, "Mesh file replacing the configured mesh");
  cmd->add_option("--refine", o.refine, "Multiply the generated mesh resolution")->check(CLI::Range(1, 100));
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write '" + path.string() + "'");
  return f;
}

void write_step_files(const fs::path& dir, const Mesh& mesh, const StepRecord& r, bool vtk) {
  const std::string k = std::to_string(r.step);
  if (vtk) write_vtk((dir / ("step_" + k + ".vtk")).string(), mesh, r);
  auto f = open_out(dir / ("field_" + k + ".csv"));
  write_reference_csv(f, r);
}

void write_summary(const fs::path& dir, const std::vector<StepRecord>& records) {
  auto f = open_out(dir / "summary.csv");
  f << "step,factor,loss,iterations,converged,seconds\n";
  for (const auto& r : records)
    f << r.step << ',' << format_double(r.factor) << ',' << format_double(r.loss) << ',' << r.iterations << ','
      << (r.converged ? 1 : 0) << ',' << format_double(r.seconds) << '\n';
  auto c = open_out(dir / "curve.csv");
  write_curve_csv(c, shear_curve(records));
}

void report_metrics(const fs::path& dir, const std::string& reference, const StepRecord& last, std::ostream& out) {
  const Metrics m = compare_to_reference(last, read_reference_csv(reference));
  auto f = open_out(dir / "metrics.csv");
  f << "metric,value\n";
  for (const auto& [name, v] : m.ad) {
    f << "ad_" << name << ',' << format_double(v) << '\n';
    out << "AD " << name << " = " << format_double(v) << '\n';
  }
  if (m.l2_percent) {
    f << "l2_percent," << format_double(*m.l2_percent) << '\n';
    out << "L2 displacement error = " << format_double(*m.l2_percent) << " %\n";
  } else {
    out << "L2 displacement error undefined (zero reference displacement)\n";
  }
}

fs::path prepare_output(const Config& c) {
  const fs::path dir = c.output.dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
  auto f = open_out(dir / "config.ini");
  f << "# resolved configuration\n";
  write_config(f, c);
  return dir;
}

int cmd_train(const std::string& cfg_arg, const Overrides& o, const std::string& reference, std::ostream& out) {
  Config c = load_config(cfg_arg);
  apply(o, c);
  const Problem p = build_problem(c);
  const fs::path dir = prepare_output(c);
  out << "training: " << p.mesh.num_elements() << " elements, " << p.mesh.num_nodes() << " nodes, "
      << p.program.size() << " load steps, output in " << dir.string() << "\n";
  RunOptions ro;
  ro.checkpoint_dir = (dir / "checkpoints").string();
  ro.log = &out;
  ro.on_step = [&](const StepRecord& r) { write_step_files(dir, p.mesh, r, c.output.vtk); };
  const RunResult result = run(p, ro);
  write_summary(dir, result.records);
  if (!reference.empty()) report_metrics(dir, reference, result.records.back(), out);
  return kOk;
}

int cmd_infer(const std::string& cfg_arg, const Overrides& o, const std::string& ckpt, const std::string& reference,
              std::ostream& out) {
  Config c = load_config(cfg_arg);
  apply(o, c);
  const Problem p = build_problem(c);
  if (!fs::is_directory(ckpt)) throw IoError("checkpoint directory '" + ckpt + "' does not exist");
  const fs::path dir = prepare_output(c);
  RunOptions ro;
  ro.log = &out;
  ro.on_step = [&](const StepRecord& r) { write_step_files(dir, p.mesh, r, c.output.vtk); };
  const auto records = infer(p, ckpt, ro);
  write_summary(dir, records);
  if (!reference.empty()) report_metrics(dir, reference, records.back(), out);
  return kOk;
}

int cmd_oracle(const std::string& cfg_arg, std::optional<double> ramp, int points, bool analytic,
               const std::string& out_file, std::ostream& out, std::ostream& err) {
  const Config c = load_config(cfg_arg);
  const Material& m = c.materials.front().material;
  std::vector<double> gamma;
  if (ramp) {
    if (points < 2) throw ConfigError("--points must be at least 2");
    for (int k = 1; k <= points; ++k) gamma.push_back(*ramp * k / points);
  } else {
    if (c.program.factors.empty()) throw ConfigError("no [loadsteps] in config and no --ramp given");
    gamma = shear_path_from_factors(c.program.factors, kShearGammaPerFactor);
  }
  const auto curve =
      analytic ? analytic_shear_curve(m.elastic, m.hardening, gamma) : drive_shear_curve(m.elastic, m.hardening, gamma);
  if (out_file.empty()) {
    write_shear_csv(out, curve);
  } else {
    auto f = open_out(out_file);
    write_shear_csv(f, curve);
  }
  err << "yield shear stress " << format_double(yield_shear_stress(m.hardening)) << " MPa, plastic slope "
      << format_double(plastic_shear_slope(m.elastic, m.hardening)) << " MPa\n";
  return kOk;
}

int cmd_gradcheck(const std::string& cfg_arg, const Overrides& o, int samples, double h, double rtol,
                  std::optional<double> factor, double output_scale, std::ostream& out) {
  Config c = load_config(cfg_arg);
  apply(o, c);
  c.network.zero_output_init = false;
  const Problem p = build_problem(c);
  Network net = make_network(p);
  net.scale_output_layer(output_scale);
  EnergyWorkspace ws = make_workspace(p);
  double f = 0.0;
  if (factor) {
    f = *factor;
  } else {
    for (double x : p.program.factors)
      if (std::abs(x) > std::abs(f)) f = x;
  }
  ws.set_load_factor(f);
  ParamVector grad;
  const double loss = ws.loss_and_grad(net, grad);
  int yielded = 0;
  for (const auto& r : ws.trial_results()) yielded += r.yielded ? 1 : 0;

  std::mt19937_64 rng(p.network.seed);
  std::vector<std::size_t> idx(net.param_count());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(std::min<std::size_t>(idx.size(), static_cast<std::size_t>(samples)));
  std::sort(idx.begin(), idx.end());

  const auto fd = fd_loss_gradient(ws, net, idx, h);
  std::vector<double> an;
  for (auto i : idx) an.push_back(grad[i]);
  out << "factor " << format_double(f) << ", loss " << format_double(loss) << ", " << yielded << " of "
      << ws.trial_results().size() << " points yielding\n";
  out << "index,analytic,finite_difference\n";
  for (std::size_t k = 0; k < idx.size(); ++k)
    out << idx[k] << ',' << format_double(an[k]) << ',' << format_double(fd[k]) << '\n';
  const double err = relative_error(an, fd);
  out << "max relative error " << format_double(err) << " (tolerance " << format_double(rtol) << ")\n";
  return err <= rtol ? kOk : kCheckFailed;
}

int cmd_mesh(const std::string& cfg_arg, const Overrides& o, const std::string& file, std::ostream& out) {
  Config c = load_config(cfg_arg);
  apply(o, c);
  const Mesh mesh = build_mesh(c);
  write_mesh(file, mesh);
  out << "wrote " << mesh.num_nodes() << " nodes, " << mesh.num_elements() << " elements to " << file << "\n";
  return kOk;
}

}  // namespace

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Deep energy method solver for small-strain J2 elastoplasticity", "demplast"};
  app.require_subcommand(1);

  Overrides o;
  std::string cfg, ckpt, reference, out_file, preset_name;
  std::optional<double> ramp, factor;
  int points = 200, samples = 50;
  double h = 1e-6, rtol = 1e-5, output_scale = 1e-3;
  bool analytic = false;

  auto* train = app.add_subcommand("train", "Train through all load steps");
  train->add_option("config", cfg, "Config file or preset name")->required();
  add_common(train, o);
  train->add_option("--seed", o.seed, "Network initialization seed");
  train->add_option("--tol", o.tol, "Convergence tolerance");
  train->add_option("--steps", o.steps, "Run only the first n load steps");
  train->add_option("--max-iters", o.max_iters, "Iteration cap per load step");
  train->add_option("--reference", reference, "Reference field CSV for error metrics");

  auto* inf = app.add_subcommand("infer", "Evaluate saved checkpoints on a (new) mesh without training");
  inf->add_option("config", cfg, "Config file or preset name")->required();
  inf->add_option("--checkpoint-dir", ckpt, "Directory holding step_<k>.ckpt")->required();
  add_common(inf, o);
  inf->add_option("--steps", o.steps, "Replay only the first n load steps");
  inf->add_option("--reference", reference, "Reference field CSV for error metrics");

  auto* orc = app.add_subcommand("oracle", "Single-point simple-shear stress-strain CSV");
  orc->add_option("config", cfg, "Config file or preset name ([material] is used)")->required();
  orc->add_option("--ramp", ramp, "Monotonic ramp to this engineering shear strain");
  orc->add_option("--points", points, "Points on the ramp");
  orc->add_flag("--analytic", analytic, "Use the closed form instead of the return mapping");
  orc->add_option("--out", out_file, "CSV file (default: stdout)");

  auto* gc = app.add_subcommand("gradcheck", "Compare the loss gradient with central differences");
  gc->add_option("config", cfg, "Config file or preset name")->required();
  add_common(gc, o);
  gc->add_option("--seed", o.seed, "Network initialization and sampling seed");
  gc->add_option("--samples", samples, "Number of parameters to check")->check(CLI::PositiveNumber);
  gc->add_option("--fd-step", h, "Finite-difference step")->check(CLI::PositiveNumber);
  gc->add_option("--rtol", rtol, "Relative error tolerance");
  gc->add_option("--factor", factor, "Load factor (default: largest in the program)");
  gc->add_option("--output-scale", output_scale, "Scale of the output layer at initialization");

  auto* pre = app.add_subcommand("presets", "Built-in example configurations");
  pre->require_subcommand(1);
  auto* pre_list = pre->add_subcommand("list", "Print preset names");
  auto* pre_show = pre->add_subcommand("show", "Print a preset config");
  pre_show->add_option("name", preset_name)->required();

  auto* msh = app.add_subcommand("mesh", "Write the configured mesh to a file");
  msh->add_option("config", cfg, "Config file or preset name")->required();
  msh->add_option("--out", out_file, "Mesh file")->required();
  msh->add_option("--refine", o.refine, "Multiply the generated mesh resolution")->check(CLI::Range(1, 100));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*train) return cmd_train(cfg, o, reference, out);
    if (*inf) return cmd_infer(cfg, o, ckpt, reference, out);
    if (*orc) return cmd_oracle(cfg, ramp, points, analytic, out_file, out, err);
    if (*gc) return cmd_gradcheck(cfg, o, samples, h, rtol, factor, output_scale, out);
    if (*msh) return cmd_mesh(cfg, o, out_file, out);
    if (*pre_list) {
      for (const auto& n : preset_names()) out << n << "\n";
      return kOk;
    }
    if (*pre_show) {
      out << preset_text(preset_name);
      return kOk;
    }
  } catch (const ParseError& e) {
    err << "invalid config: " << e.what() << "\n";
    return kInvalidConfig;
  } catch (const ConfigError& e) {
    err << "invalid config: " << e.what() << "\n";
    return kInvalidConfig;
  } catch (const IoError& e) {
    err << "file error: " << e.what() << "\n";
    return kMissingFile;
  } catch (const MeshError& e) {
    err << "mesh error: " << e.what() << "\n";
    return kMeshError;
  } catch (const DivergenceError& e) {
    err << "training diverged: " << e.what() << "\n";
    return kDiverged;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kUnexpected;
  }
  err << "usage error: no subcommand\n";
  return kUsage;
}

}  // namespace demplast::cli
