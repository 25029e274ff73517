// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "demplast/config.hpp"
#include "demplast/energy.hpp"
#include "demplast/oracle.hpp"
#include "demplast/post.hpp"
#include "demplast/solver.hpp"
#include "support.hpp"

using namespace demplast;
using namespace demplast::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const std::function<Verdict()>& body) {
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  if (!v.pass) ++failures;
  std::printf("[%d] %s  %s: %s\n", id, v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// ---------------------------------------------------------------------------

Verdict radial_return_suite() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto random_tensor = [&](double scale) {
    SymTensor2 t;
    for (std::size_t k = 0; k < 6; ++k) t[k] = scale * u(rng);
    return t;
  };

  const int n = 100000;
  int plastic = 0;
  double worst_consistency = 0.0, worst_trace = 0.0, worst_elastic = 0.0;
  bool negative = false, branch_mismatch = false;
  for (int i = 0; i < n; ++i) {
    const Material m = steel_like(i % 2 == 0 ? HardeningMode::Isotropic : HardeningMode::Kinematic);
    const auto& el = m.elastic;
    const auto& law = m.hardening;
    // Committed state from a random (possibly plastic) history.
    PlasticState old;
    for (int k = 0; k < 1 + i % 3; ++k) old = radial_return(el, law, old, random_tensor(0.08)).state;
    const SymTensor2 d = random_tensor(i % 4 == 0 ? 0.002 : 0.06);

    const double f_trial = yield_value(law, old.sigma + elastic_stress(el, d), old.q, old.ebar_p);
    const ReturnResult r = radial_return(el, law, old, d);
    const PlasticState& s = r.state;

    if (r.delta_gamma < 0.0) negative = true;
    if (r.yielded != (f_trial > 0.0)) branch_mismatch = true;
    const double f_new = yield_value(law, s.sigma, s.q, s.ebar_p);
    worst_consistency = std::max(worst_consistency, std::abs(r.delta_gamma * f_new));
    worst_trace = std::max(worst_trace, std::abs(trace(s.eps_p)));
    if (r.yielded) {
      ++plastic;
    } else {
      const SymTensor2 expect = old.sigma + elastic_stress(el, d);
      double diff = 0.0;
      for (std::size_t k = 0; k < 6; ++k) diff = std::max(diff, std::abs(s.sigma[k] - expect[k]));
      const bool frozen = s.eps_p == old.eps_p && s.q == old.q && s.ebar_p == old.ebar_p && r.delta_gamma == 0.0;
      worst_elastic = std::max(worst_elastic, frozen ? diff / (1.0 + norm(expect)) : 1.0);
    }
  }
  const double secs = seconds_since(t0);
  const double frac = static_cast<double>(plastic) / n;
  const double sigma_y0 = 50.0;
  const bool pass = !negative && !branch_mismatch && worst_consistency <= 1e-8 * sigma_y0 && worst_trace <= 1e-12 &&
                    worst_elastic <= 1e-14 && frac > 0.1 && frac < 0.9 && secs < 10.0;
  std::ostringstream os;
  os << n << " updates (" << fmt("%.0f", 100 * frac) << "% plastic), max|dgamma*f_new| = " << worst_consistency
     << ", max|tr eps_p| = " << worst_trace << ", elastic-branch rel. err = " << worst_elastic
     << (negative ? ", NEGATIVE dgamma" : "") << (branch_mismatch ? ", BRANCH MISMATCH" : "") << ", "
     << fmt("%.2f", secs) << " s";
  return {pass, os.str()};
}

// Intersection of the least-squares lines through two branches.
double line_intersection_tau(const std::vector<ShearPoint>& a, const std::vector<ShearPoint>& b) {
  auto fit = [](const std::vector<ShearPoint>& p) {
    const double k = fitted_slope(p);
    double mg = 0.0, mt = 0.0;
    for (const auto& q : p) {
      mg += q.gamma;
      mt += q.tau;
    }
    mg /= static_cast<double>(p.size());
    mt /= static_cast<double>(p.size());
    return std::pair{k, mt - k * mg};
  };
  const auto [ka, ca] = fit(a);
  const auto [kb, cb] = fit(b);
  const double g = (cb - ca) / (ka - kb);
  return ka * g + ca;
}

Verdict analytic_agreement() {
  const auto t0 = Clock::now();
  const Material iso = steel_like(HardeningMode::Isotropic);
  const Material kin = steel_like(HardeningMode::Kinematic);

  // Monotonic ramp to gamma = 0.5.
  std::vector<double> up(400);
  for (std::size_t k = 0; k < up.size(); ++k) up[k] = 0.5 * static_cast<double>(k + 1) / up.size();
  const auto d_iso = drive_shear_curve(iso.elastic, iso.hardening, up);
  const auto a_iso = analytic_shear_curve(iso.elastic, iso.hardening, up);
  std::vector<ShearPoint> elastic, plastic;
  for (const auto& p : d_iso) (p.peeq > 0.0 ? plastic : elastic).push_back(p);
  const double tau_y = line_intersection_tau(elastic, plastic);
  const double slope = fitted_slope(plastic);

  // Load to gamma = 0.3, reverse to -0.3.
  std::vector<double> cyc;
  for (int k = 1; k <= 300; ++k) cyc.push_back(0.3 * k / 300.0);
  for (int k = 1; k <= 600; ++k) cyc.push_back(0.3 - 0.6 * k / 600.0);
  const auto d_kin = drive_shear_curve(kin.elastic, kin.hardening, cyc);
  const auto a_kin = analytic_shear_curve(kin.elastic, kin.hardening, cyc);
  const double peeq_peak = d_kin[299].peeq;
  std::vector<ShearPoint> unload, reverse;
  for (std::size_t k = 300; k < d_kin.size(); ++k) (d_kin[k].peeq > peeq_peak ? reverse : unload).push_back(d_kin[k]);
  const double window = d_kin[299].tau - line_intersection_tau(unload, reverse);

  double curve_gap = 0.0;
  for (std::size_t k = 0; k < up.size(); ++k) curve_gap = std::max(curve_gap, std::abs(d_iso[k].tau - a_iso[k].tau));
  for (std::size_t k = 0; k < cyc.size(); ++k) curve_gap = std::max(curve_gap, std::abs(d_kin[k].tau - a_kin[k].tau));

  const double secs = seconds_since(t0);
  const double e1 = std::abs(tau_y / 28.8675 - 1.0);
  const double e2 = std::abs(slope / 116.28 - 1.0);
  const double e3 = std::abs(window / 57.735 - 1.0);
  const double e1a = std::abs(tau_y / yield_shear_stress(iso.hardening) - 1.0);
  const double e2a = std::abs(slope / plastic_shear_slope(iso.elastic, iso.hardening) - 1.0);
  const double e3a = std::abs(window / reverse_yield_window(kin.hardening) - 1.0);
  const bool pass = std::max({e1, e2, e3, e1a, e2a, e3a}) <= 1e-3 && curve_gap <= 1e-9 && secs < 1.0;
  std::ostringstream os;
  os.precision(8);
  os << "tau_y = " << tau_y << " (28.8675), slope = " << slope << " (116.28), window = " << window
     << " (57.735), max rel. dev. " << std::max({e1, e2, e3, e1a, e2a, e3a}) << ", max |drive - analytic| = "
     << curve_gap << " MPa, " << fmt("%.3f", secs) << " s";
  return {pass, os.str()};
}

struct ShearRun {
  std::string name;
  Problem problem;
  std::vector<StepRecord> records;
};

ShearRun run_preset(const std::string& name) {
  ShearRun s{name, build_problem(preset(name)), {}};
  s.records = run(s.problem).records;
  return s;
}

Verdict dem_vs_oracle(std::vector<ShearRun>& runs) {
  const auto t0 = Clock::now();
  std::ostringstream os;
  bool pass = true;
  for (const char* name : {"shear-iso", "shear-kin"}) {
    runs.push_back(run_preset(name));
    const auto& r = runs.back();
    const auto& mat = r.problem.materials[0];
    const auto gammas = shear_path_from_factors(r.problem.program.factors, kShearGammaPerFactor);
    const auto oracle = drive_shear_curve(mat.elastic, mat.hardening, gammas);
    double sum_tau = 0.0, sum_peeq = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 0; k < r.records.size(); ++k) {
      const auto& rec = r.records[k];
      for (std::size_t e = 0; e < rec.stress.size(); ++e) {
        sum_tau += std::abs(rec.stress[e](0, 1) - oracle[k].tau);
        sum_peeq += std::abs(rec.peeq[e] - oracle[k].peeq);
        ++count;
      }
    }
    const double mt = sum_tau / static_cast<double>(count);
    const double mp = sum_peeq / static_cast<double>(count);
    const bool ok = r.records.size() == 12 && r.problem.mesh.num_elements() == 16 && mt <= 1e-2 && mp <= 1e-4;
    pass = pass && ok;
    os << name << ": mean|dsigma12| = " << mt << " MPa, mean|dpeeq| = " << mp << "; ";
  }
  const double secs = seconds_since(t0);
  pass = pass && secs < 300.0;
  os << fmt("%.2f", secs) << " s";
  return {pass, os.str()};
}

Verdict gradient_audit() {
  const auto t0 = Clock::now();
  std::ostringstream os;
  bool pass = true;
  for (auto mode : {HardeningMode::Isotropic, HardeningMode::Kinematic}) {
    for (double factor : {0.04, 0.5}) {
      EnergyWorkspace ws(generate_structured_box({2.0, 2.0, 1.0}, {2, 2, 1}), {steel_like(mode)}, lateral_shear(0.25), {});
      ws.set_load_factor(factor);
      const Network net = small_network(ws.mesh(), {3, 16, 16, 3}, 31);
      ParamVector grad;
      ws.loss_and_grad(net, grad);
      std::size_t yielded = 0;
      for (const auto& r : ws.trial_results()) yielded += r.yielded ? 1 : 0;
      const bool plastic = factor > 0.1;
      const auto idx = sample_indices(net.param_count(), 50, 77);
      const auto fd = fd_loss_gradient(ws, net, idx, 1e-6);
      std::vector<double> an;
      for (auto i : idx) an.push_back(grad[i]);
      const double err = relative_error(an, fd);
      const double tol = plastic ? 1e-5 : 1e-6;
      const bool regime_ok = plastic ? yielded == ws.trial_results().size() : yielded == 0;
      pass = pass && regime_ok && err <= tol && idx.size() >= 50;
      os << (mode == HardeningMode::Isotropic ? "iso" : "kin") << (plastic ? " plastic " : " elastic ") << err
         << " (tol " << tol << "); ";
    }
  }
  const double secs = seconds_since(t0);
  pass = pass && secs < 60.0;
  os << "50 params each, " << fmt("%.2f", secs) << " s";
  return {pass, os.str()};
}

Verdict patch_test() {
  Mesh m = generate_structured_box({3.0, 3.0, 3.0}, {3, 3, 3});
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(-0.25, 0.25);
  for (auto& p : m.nodes) {
    bool interior = true;
    for (double c : p) interior = interior && c > 1e-9 && c < 3.0 - 1e-9;
    if (interior)
      for (auto& c : p) c += d(rng);
  }
  const auto ops = build_grad_operators(m);
  Mat3 g;
  for (auto& row : g)
    for (auto& c : row) c = 0.05 * d(rng);
  std::vector<Vec3> u(m.num_nodes());
  for (std::size_t n = 0; n < m.num_nodes(); ++n)
    for (int i = 0; i < 3; ++i) u[n][i] = 0.1 + g[i][0] * m.nodes[n][0] + g[i][1] * m.nodes[n][1] + g[i][2] * m.nodes[n][2];

  const SymTensor2 exact = SymTensor2::sym(g);
  double spread = 0.0, vs_exact = 0.0, volume = 0.0;
  const SymTensor2 first = strain_at_qp(ops[0], u);
  for (const auto& op : ops) {
    const SymTensor2 e = strain_at_qp(op, u);
    for (std::size_t k = 0; k < 6; ++k) {
      spread = std::max(spread, std::abs(e[k] - first[k]));
      vs_exact = std::max(vs_exact, std::abs(e[k] - exact[k]));
    }
    volume += op.measure;
  }
  const double vol_err = std::abs(volume - 27.0) / 27.0;
  std::ostringstream os;
  os << ops.size() << " elements, strain spread " << spread << ", vs exact " << vs_exact << ", volume rel. err "
     << vol_err;
  return {spread <= 1e-12 && vs_exact <= 1e-12 && vol_err <= 1e-10, os.str()};
}

Verdict monitor_examples() {
  ConvergenceMonitor a(10, 1e-6), b(10, 1e-6), c(10, 1e-6);
  for (int k = 0; k < 20; ++k) a.record(7.0);
  for (int k = 0; k < 20; ++k) b.record(100.0 - k);
  for (int k = 0; k < 15; ++k) c.record(1.0);
  const bool ok = a.converged() && a.relative_change() == 0.0 && !b.converged() &&
                  std::abs(b.relative_change() - 10.0 / 85.5) < 1e-15 && !c.converged();
  std::ostringstream os;
  os << "identical: " << (a.converged() ? "converged" : "not converged") << "; 100..81: change "
     << b.relative_change() << (b.converged() ? " converged" : " not converged") << "; 15 samples: "
     << (c.converged() ? "converged" : "not converged");
  return {ok, os.str()};
}

Verdict inference_replay() {
  const auto dir = std::filesystem::temp_directory_path() / "demplast_acceptance_replay";
  std::filesystem::remove_all(dir);
  const Problem coarse = traction_shear({1, 1, 1}, steel_like(), 10.0, LoadProgram{{1.0, 2.0, 3.0}});
  RunOptions opts;
  opts.checkpoint_dir = dir.string();
  const RunResult trained = run(coarse, opts);

  Problem fine = coarse;
  fine.mesh = generate_structured_box({4.0, 4.0, 1.0}, {4, 4, 1});
  const auto replay = infer(fine, dir.string());

  double spread = 0.0, offset = 0.0;
  for (std::size_t k = 0; k < replay.size(); ++k) {
    const double ref = trained.records[k].stress[0](0, 1);
    double lo = 1e300, hi = -1e300;
    for (const auto& s : replay[k].stress) {
      lo = std::min(lo, s(0, 1));
      hi = std::max(hi, s(0, 1));
      offset = std::max(offset, std::abs(s(0, 1) - ref));
    }
    spread = std::max(spread, hi - lo);
  }
  const bool plastic = trained.records.back().peeq[0] > 0.0;

  // Bit-exact checkpoint round trip.
  const Network loaded = load_checkpoint(checkpoint_path(dir.string(), 3));
  const auto again = (dir / "again.ckpt").string();
  save_checkpoint(again, loaded);
  const Network reloaded = load_checkpoint(again);
  const bool exact = loaded.flatten() == trained.network.flatten() && reloaded.flatten() == loaded.flatten() &&
                     loaded.input_transform() == trained.network.input_transform();
  std::filesystem::remove_all(dir);

  std::ostringstream os;
  os << "1 -> " << fine.mesh.num_elements() << " elements, 3 steps (last plastic: " << (plastic ? "yes" : "no")
     << "), sigma12 spread " << spread << " MPa, max |fine - coarse| " << offset << " MPa, checkpoint "
     << (exact ? "bit-exact" : "MISMATCH");
  return {replay.size() == 3 && spread <= 1e-6 && offset <= 1e-6 && exact && plastic, os.str()};
}

Verdict bimat_sanity(std::vector<ShearRun>& runs) {
  const auto t0 = Clock::now();
  runs.push_back(run_preset("bimat"));
  const auto& r = runs.back();
  const StepRecord& last = r.records.back();
  double sum[2] = {0, 0}, vol[2] = {0, 0};
  for (std::size_t e = 0; e < last.peeq.size(); ++e) {
    const auto m = static_cast<std::size_t>(last.material[e]);
    sum[m] += last.peeq[e] * last.measure[e];
    vol[m] += last.measure[e];
  }
  const double mean1 = sum[0] / vol[0], mean2 = sum[1] / vol[1];

  // Single load step from the virgin state.
  const std::vector<PlasticState> old(last.stress.size());
  const std::vector<SymTensor2> old_strain(last.stress.size());
  const double ref = reevaluate_loss(r.problem.mesh, r.problem.materials, old, old_strain, r.problem.tractions,
                                     last.factor, last.u);
  const double rel = std::abs(last.loss - ref) / std::abs(ref);
  const bool ok = r.problem.mesh.num_elements() == 400 && r.records.size() == 1 && last.factor == 0.5 &&
                  r.problem.materials[0].hardening.sigma_y0 == 50.0 && r.problem.materials[1].hardening.sigma_y0 == 60.0 &&
                  mean1 > mean2 && rel <= 1e-10;
  std::ostringstream os;
  os << "mean peeq material 1 = " << mean1 << ", material 2 = " << mean2 << ", loss " << last.loss
     << " vs re-evaluation " << ref << " (rel. " << rel << "), " << last.iterations << " iterations, "
     << fmt("%.2f", seconds_since(t0)) << " s";
  return {ok, os.str()};
}

Verdict vtk_round_trip(std::vector<ShearRun>& runs) {
  for (const auto& name : preset_names())
    if (std::none_of(runs.begin(), runs.end(), [&](const ShearRun& r) { return r.name == name; }))
      runs.push_back(run_preset(name));
  std::ostringstream os;
  bool pass = true;
  for (const auto& r : runs) {
    const Mesh& m = r.problem.mesh;
    bool same = true;
    for (const auto& rec : r.records) {
      std::stringstream ss;
      write_vtk(ss, m, rec);
      const VtkData d = read_vtk(ss);
      same = same && d.points == m.nodes && d.cells.size() == m.num_elements() &&
             d.point_vectors.at("displacement") == rec.u && d.cell_scalars.at("mises") == rec.mises &&
             d.cell_scalars.at("peeq") == rec.peeq;
      for (std::size_t e = 0; same && e < m.num_elements(); ++e) {
        const auto& el = m.elements[e];
        const int want = el.kind == ElementKind::Hex8 ? kVtkHexahedron : kVtkTetra;
        same = d.cell_types[e] == want &&
               std::equal(d.cells[e].begin(), d.cells[e].end(), el.node_span().begin(), el.node_span().end());
        for (int i = 0; same && i < 3; ++i)
          for (int j = 0; j < 3; ++j) {
            same = same && d.cell_tensors.at("stress")[e][static_cast<std::size_t>(3 * i + j)] == rec.stress[e](i, j) &&
                   d.cell_tensors.at("strain")[e][static_cast<std::size_t>(3 * i + j)] == rec.strain[e](i, j);
          }
      }
    }
    pass = pass && same;
    const bool tets = m.elements.front().kind == ElementKind::Tet4;
    os << r.name << ": " << r.records.size() << " step(s) on " << m.num_elements() << (tets ? " tet4" : " hex8")
       << (same ? " identical" : " DIFFERENT") << "; ";
  }
  pass = pass && runs.size() == preset_names().size();
  os << runs.size() << " presets";
  return {pass, os.str()};
}

}  // namespace

int main() {
  std::vector<ShearRun> runs;
  report(1, "radial-return consistency", radial_return_suite);
  report(2, "single-point analytic agreement", analytic_agreement);
  report(3, "uniform shear vs oracle", [&] { return dem_vs_oracle(runs); });
  report(4, "gradient audit", gradient_audit);
  report(5, "patch test", patch_test);
  report(6, "convergence monitor", monitor_examples);
  report(7, "inference replay", inference_replay);
  report(8, "bi-material sanity", [&] { return bimat_sanity(runs); });
  report(9, "VTK round trip", [&] { return vtk_round_trip(runs); });
  std::printf("%d of 9 criteria passed\n", 9 - failures);
  return failures == 0 ? 0 : 1;
}
