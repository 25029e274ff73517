#include "demplast/oracle.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <ostream>

#include "demplast/errors.hpp"
#include "demplast/post.hpp"

namespace demplast {

namespace {

Eigen::Matrix3d full(const SymTensor2& t) {
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = t(i, j);
  return m;
}

double ddot(const Eigen::Matrix3d& a, const Eigen::Matrix3d& b) { return a.cwiseProduct(b).sum(); }

// Reference-element shape derivatives at the single quadrature point.
Eigen::MatrixXd reference_gradients(ElementKind kind, double& weight) {
  if (kind == ElementKind::Hex8) {
    static const int corner[8][3] = {{-1, -1, -1}, {1, -1, -1}, {1, 1, -1}, {-1, 1, -1},
                                     {-1, -1, 1},  {1, -1, 1},  {1, 1, 1},  {-1, 1, 1}};
    Eigen::MatrixXd d(8, 3);
    for (int a = 0; a < 8; ++a)
      for (int j = 0; j < 3; ++j) d(a, j) = corner[a][j] / 8.0;
    weight = 8.0;
    return d;
  }
  Eigen::MatrixXd d(4, 3);
  d << -1, -1, -1, 1, 0, 0, 0, 1, 0, 0, 0, 1;
  weight = 1.0 / 6.0;
  return d;
}

// Volume by 2x2x2 Gauss on the trilinear map.
double hex_volume(const Eigen::MatrixXd& x) {
  static const int corner[8][3] = {{-1, -1, -1}, {1, -1, -1}, {1, 1, -1}, {-1, 1, -1},
                                   {-1, -1, 1},  {1, -1, 1},  {1, 1, 1},  {-1, 1, 1}};
  const double g = 1.0 / std::sqrt(3.0);
  double v = 0.0;
  for (const auto& p : corner) {
    Eigen::MatrixXd d(8, 3);
    for (int a = 0; a < 8; ++a) {
      double n[3];
      for (int k = 0; k < 3; ++k) n[k] = 1.0 + corner[a][k] * p[k] * g;
      d(a, 0) = corner[a][0] * n[1] * n[2] / 8.0;
      d(a, 1) = corner[a][1] * n[0] * n[2] / 8.0;
      d(a, 2) = corner[a][2] * n[0] * n[1] / 8.0;
    }
    v += std::abs((x * d).determinant());
  }
  return v;
}

}  // namespace

std::vector<ShearPoint> analytic_shear_curve(const ElasticConstants& consts, const HardeningLaw& law,
                                             std::span<const double> gamma_path) {
  const double mu = consts.mu;
  const double h = (law.H + law.C) / 3.0;
  const double sqrt3 = std::sqrt(3.0);
  double gamma = 0.0, tau = 0.0, q = 0.0, ebar = 0.0;
  std::vector<ShearPoint> out;
  out.reserve(gamma_path.size());
  for (double target : gamma_path) {
    const double delta = target - gamma;
    const double s = delta >= 0.0 ? 1.0 : -1.0;
    const double radius = (law.sigma_y0 + law.H * ebar) / sqrt3;
    // Strain needed to reach the yield surface in the loading direction.
    const double to_yield = (radius - s * (tau - q)) / mu;
    const double mag = std::abs(delta);
    if (mag <= to_yield) {
      tau += mu * delta;
    } else {
      tau += s * mu * to_yield;
      const double plastic = mag - to_yield;
      const double gp = mu * plastic / (mu + h);
      tau += s * (mu * plastic - mu * gp);
      q += s * law.C * gp / 3.0;
      ebar += gp / sqrt3;
    }
    gamma = target;
    out.push_back({gamma, tau, ebar, q});
  }
  return out;
}

std::vector<SymTensor2> shear_strain_path(std::span<const double> gamma_path) {
  std::vector<SymTensor2> path;
  path.reserve(gamma_path.size());
  for (double g : gamma_path) path.emplace_back(0.0, 0.0, 0.0, 0.5 * g, 0.0, 0.0);
  return path;
}

std::vector<ShearPoint> drive_shear_curve(const ElasticConstants& consts, const HardeningLaw& law,
                                          std::span<const double> gamma_path) {
  const auto strains = shear_strain_path(gamma_path);
  const auto states = drive_point(consts, law, strains);
  std::vector<ShearPoint> out(states.size());
  for (std::size_t k = 0; k < states.size(); ++k)
    out[k] = {gamma_path[k], states[k].sigma(0, 1), states[k].ebar_p, states[k].q(0, 1)};
  return out;
}

std::vector<double> shear_path_from_factors(std::span<const double> factors, double peak_gamma) {
  std::vector<double> g(factors.size());
  for (std::size_t k = 0; k < g.size(); ++k) g[k] = peak_gamma * factors[k];
  return g;
}

double yield_shear_stress(const HardeningLaw& law) { return law.sigma_y0 / std::sqrt(3.0); }

double plastic_shear_slope(const ElasticConstants& consts, const HardeningLaw& law) {
  const double h = (law.H + law.C) / 3.0;
  return consts.mu * h / (consts.mu + h);
}

double reverse_yield_window(const HardeningLaw& law, double ebar_p) {
  return 2.0 * law.yield_stress(ebar_p) / std::sqrt(3.0);
}

double fitted_slope(std::span<const ShearPoint> points) {
  if (points.size() < 2) throw ConfigError("slope fit needs at least two points");
  double mx = 0.0, my = 0.0;
  for (const auto& p : points) {
    mx += p.gamma;
    my += p.tau;
  }
  mx /= static_cast<double>(points.size());
  my /= static_cast<double>(points.size());
  double sxy = 0.0, sxx = 0.0;
  for (const auto& p : points) {
    sxy += (p.gamma - mx) * (p.tau - my);
    sxx += (p.gamma - mx) * (p.gamma - mx);
  }
  return sxy / sxx;
}

void write_shear_csv(std::ostream& out, std::span<const ShearPoint> points) {
  out << "step,gamma,tau,peeq\n";
  for (std::size_t k = 0; k < points.size(); ++k)
    out << k + 1 << ',' << format_double(points[k].gamma) << ',' << format_double(points[k].tau) << ','
        << format_double(points[k].peeq) << '\n';
}

FreeEnergyTerms free_energy_terms(const HardeningLaw& law, const PlasticState& state_new,
                                  const PlasticState& state_old, const SymTensor2& eps_total) {
  const Eigen::Matrix3d sigma = full(state_new.sigma);
  const Eigen::Matrix3d eps = full(eps_total);
  const Eigen::Matrix3d ep = full(state_new.eps_p);
  const Eigen::Matrix3d ep_old = full(state_old.eps_p);
  FreeEnergyTerms t;
  t.elastic = 0.5 * ddot(sigma, eps - ep);
  t.dissipation = ddot(ep - ep_old, sigma);
  if (law.mode == HardeningMode::Isotropic) {
    const double e = state_new.ebar_p;
    t.hardening = 0.5 * law.H * e * e;
    t.correction = -law.H * e * (e - state_old.ebar_p);
  } else {
    if (law.C <= 0.0) throw ConfigError("kinematic hardening requires C > 0");
    const Eigen::Matrix3d q = full(state_new.q);
    const Eigen::Matrix3d q_old = full(state_old.q);
    t.hardening = ddot(q, q) / (2.0 * law.C);
    t.correction = -ddot(q, q - q_old) / law.C;
  }
  return t;
}

double reevaluate_loss(const Mesh& mesh, std::span<const Material> materials,
                       std::span<const PlasticState> old_states, std::span<const SymTensor2> old_strains,
                       const TractionSpec& tractions, double factor, std::span<const Vec3> nodal_u) {
  const std::size_t ne = mesh.num_elements();
  if (old_states.size() != ne || old_strains.size() != ne || nodal_u.size() != mesh.num_nodes())
    throw ConfigError("re-evaluation inputs do not match the mesh");
  double total = 0.0;
  for (std::size_t e = 0; e < ne; ++e) {
    const Element& el = mesh.elements[e];
    double weight = 0.0;
    const Eigen::MatrixXd dref = reference_gradients(el.kind, weight);
    const int n = el.num_nodes();
    Eigen::MatrixXd x(3, n), u(3, n);
    for (int a = 0; a < n; ++a)
      for (int i = 0; i < 3; ++i) {
        x(i, a) = mesh.nodes[el.nodes[a]][i];
        u(i, a) = nodal_u[el.nodes[a]][i];
      }
    const Eigen::Matrix3d J = x * dref;
    const double det = J.determinant();
    const Eigen::Matrix3d grad_u = u * dref * J.inverse();
    const Eigen::Matrix3d eps_full = 0.5 * (grad_u + grad_u.transpose());
    const SymTensor2 eps(eps_full(0, 0), eps_full(1, 1), eps_full(2, 2), eps_full(0, 1), eps_full(0, 2),
                         eps_full(1, 2));
    const std::size_t mid = mesh.material.empty() ? 0 : static_cast<std::size_t>(mesh.material[e]);
    const Material& mat = materials[mid];
    const ReturnResult ret = radial_return(mat.elastic, mat.hardening, old_states[e], eps - old_strains[e]);
    const double volume = el.kind == ElementKind::Hex8 ? hex_volume(x) : weight * std::abs(det);
    total += volume * free_energy_terms(mat.hardening, ret.state, old_states[e], eps).total();
  }
  for (const auto& t : tractions.entries) {
    const auto it = mesh.side_sets.find(t.side_set);
    if (it == mesh.side_sets.end()) throw ConfigError("unknown side set '" + t.side_set + "'");
    for (const Facet& f : it->second) {
      const Element& el = mesh.elements[f.element];
      const auto local = face_local_nodes(el.kind, f.face);
      Eigen::Vector3d mean = Eigen::Vector3d::Zero();
      std::vector<Eigen::Vector3d> p;
      for (int l : local) {
        const std::size_t node = el.nodes[l];
        mean += Eigen::Vector3d(nodal_u[node][0], nodal_u[node][1], nodal_u[node][2]);
        p.emplace_back(mesh.nodes[node][0], mesh.nodes[node][1], mesh.nodes[node][2]);
      }
      mean /= static_cast<double>(local.size());
      // Area as the sum of fan triangles about the first vertex.
      double area = 0.0;
      for (std::size_t k = 1; k + 1 < p.size(); ++k) area += 0.5 * (p[k] - p[0]).cross(p[k + 1] - p[0]).norm();
      const Eigen::Vector3d tv(t.vector[0], t.vector[1], t.vector[2]);
      total -= factor * tv.dot(mean) * area;
    }
  }
  return total;
}

std::vector<double> central_difference(const std::function<double(std::span<const double>)>& f,
                                       std::span<const double> x, std::span<const std::size_t> indices,
                                       double h) {
  if (!(h > 0.0)) throw ConfigError("finite-difference step must be positive");
  std::vector<double> p(x.begin(), x.end());
  std::vector<double> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= p.size()) throw ConfigError("parameter index out of range");
    p[i] = x[i] + h;
    const double fp = f(p);
    p[i] = x[i] - h;
    const double fm = f(p);
    p[i] = x[i];
    out.push_back((fp - fm) / (2.0 * h));
  }
  return out;
}

std::vector<double> fd_loss_gradient(const EnergyWorkspace& proto, const Network& net,
                                     std::span<const std::size_t> indices, double h) {
  if (!(h > 0.0)) throw ConfigError("finite-difference step must be positive");
  std::vector<double> out;
  out.reserve(indices.size());
  Network probe = net;
  for (std::size_t i : indices) {
    if (i >= probe.param_count()) throw ConfigError("parameter index out of range");
    const double p0 = net.params()[i];
    probe.params()[i] = p0 + h;
    EnergyWorkspace plus = proto;
    const double lp = plus.loss(probe);
    probe.params()[i] = p0 - h;
    EnergyWorkspace minus = proto;
    const double lm = minus.loss(probe);
    probe.params()[i] = p0;
    out.push_back((lp - lm) / (2.0 * h));
  }
  return out;
}

double relative_error(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ConfigError("relative_error: size mismatch");
  double diff = 0.0, ref = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff = std::max(diff, std::abs(a[i] - b[i]));
    ref = std::max(ref, std::abs(b[i]));
  }
  return ref > 0.0 ? diff / ref : diff;
}

}  // namespace demplast
