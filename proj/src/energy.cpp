#include "demplast/energy.hpp"

#include "demplast/errors.hpp"
#include "demplast/parallel.hpp"

namespace demplast {

namespace {

constexpr std::size_t kBlock = 64;

}  // namespace

EnergyWorkspace::EnergyWorkspace(Mesh mesh, std::vector<Material> materials,
                                 DirichletSpec dirichlet, TractionSpec tractions)
    : mesh_(std::make_shared<const Mesh>(std::move(mesh))),
      materials_(std::move(materials)),
      dirichlet_(std::move(dirichlet)),
      threads_(default_thread_count()) {
  mesh_->validate();
  if (materials_.empty()) throw ConfigError("at least one material is required");
  for (const auto& m : materials_) m.validate();
  ops_ = build_grad_operators(*mesh_);
  for (std::size_t e = 0; e < ops_.size(); ++e)
    if (ops_[e].material < 0 || static_cast<std::size_t>(ops_[e].material) >= materials_.size())
      throw ConfigError("element " + std::to_string(e) + " has undefined material id " +
                        std::to_string(ops_[e].material));
  validate_dirichlet(*mesh_, dirichlet_);

  for (const auto& t : tractions.entries) {
    auto it = mesh_->side_sets.find(t.side_set);
    if (it == mesh_->side_sets.end())
      throw ConfigError("traction '" + t.name + "' references unknown side set '" + t.side_set + "'");
    for (const auto& f : it->second) {
      ResolvedTraction r;
      const Element& el = mesh_->elements.at(f.element);
      for (int l : face_local_nodes(el.kind, f.face)) r.nodes.push_back(el.nodes[l]);
      r.area = facet_geometry(*mesh_, f).area;
      r.vector = t.vector;
      tractions_.push_back(std::move(r));
    }
  }

  coords_ = coords_matrix(mesh_->nodes);
  const std::size_t ne = ops_.size();
  committed_.assign(ne, PlasticState{});
  committed_strain_.assign(ne, SymTensor2{});
  trial_.assign(ne, ReturnResult{});
  trial_strain_.assign(ne, SymTensor2{});
  element_grad_.assign(ne, SymTensor2{});
  u_.assign(mesh_->num_nodes(), Vec3{});
  set_load_factor(0.0);
}

void EnergyWorkspace::set_load_factor(double factor) {
  factor_ = factor;
  mask_offset_ = build_mask_offset(*mesh_, dirichlet_, factor);
}

std::vector<Vec3> EnergyWorkspace::displacement_from(const Network& net) const {
  const Eigen::MatrixXd raw = net.forward(coords_);
  std::vector<Vec3> u(mesh_->num_nodes());
  for (std::size_t n = 0; n < u.size(); ++n)
    for (int k = 0; k < 3; ++k)
      u[n][k] = mask_offset_.mask[n][k] * raw(k, static_cast<Eigen::Index>(n)) +
                mask_offset_.offset[n][k];
  return u;
}

double EnergyWorkspace::external_potential(std::span<const Vec3> nodal_u) const {
  double p = 0.0;
  for (const auto& t : tractions_) {
    Vec3 mean{};
    for (auto n : t.nodes)
      for (int k = 0; k < 3; ++k) mean[k] += nodal_u[n][k];
    const double inv = 1.0 / static_cast<double>(t.nodes.size());
    double work = 0.0;
    for (int k = 0; k < 3; ++k) work += factor_ * t.vector[k] * mean[k] * inv;
    p -= work * t.area;
  }
  return p;
}

double EnergyWorkspace::assemble(bool with_gradient) {
  const std::size_t ne = ops_.size();
  const std::size_t blocks = (ne + kBlock - 1) / kBlock;
  std::vector<double> partial(blocks, 0.0);
  for_each_block(ne, kBlock, threads_, [&](std::size_t b, std::size_t begin, std::size_t end) {
    double sum = 0.0;
    for (std::size_t e = begin; e < end; ++e) {
      const GradOperator& op = ops_[e];
      const Material& mat = materials_[static_cast<std::size_t>(op.material)];
      const SymTensor2 eps = strain_at_qp(op, u_);
      const ReturnResult ret =
          radial_return(mat.elastic, mat.hardening, committed_[e], eps - committed_strain_[e]);
      sum += op.measure * free_energy_density(mat.elastic, mat.hardening, ret.state, committed_[e], eps);
      if (with_gradient)
        element_grad_[e] =
            op.measure * free_energy_strain_gradient(mat.elastic, mat.hardening, ret, committed_[e], eps);
      trial_strain_[e] = eps;
      trial_[e] = ret;
    }
    partial[b] = sum;
  });
  double total = 0.0;
  for (double p : partial) total += p;
  total += external_potential(u_);

  if (with_gradient) {
    dloss_du_.assign(mesh_->num_nodes(), Vec3{});
    for (std::size_t e = 0; e < ne; ++e) {
      const GradOperator& op = ops_[e];
      const SymTensor2& g = element_grad_[e];
      for (int a = 0; a < op.num_nodes; ++a) {
        Vec3& out = dloss_du_[op.nodes[a]];
        const Vec3& d = op.dphi[a];
        for (int i = 0; i < 3; ++i) out[i] += g(i, 0) * d[0] + g(i, 1) * d[1] + g(i, 2) * d[2];
      }
    }
    for (const auto& t : tractions_) {
      const double w = -factor_ * t.area / static_cast<double>(t.nodes.size());
      for (auto n : t.nodes)
        for (int k = 0; k < 3; ++k) dloss_du_[n][k] += w * t.vector[k];
    }
  }
  return total;
}

double EnergyWorkspace::loss_for_displacement(std::span<const Vec3> nodal_u) {
  if (nodal_u.size() != mesh_->num_nodes())
    throw ConfigError("displacement field size does not match the mesh");
  u_.assign(nodal_u.begin(), nodal_u.end());
  return assemble(false);
}

double EnergyWorkspace::loss(const Network& net) {
  u_ = displacement_from(net);
  return assemble(false);
}

double EnergyWorkspace::loss_and_grad(const Network& net, ParamVector& grad) {
  Network::Tape tape;
  const Eigen::MatrixXd raw = net.forward(coords_, tape);
  const std::size_t nn = mesh_->num_nodes();
  for (std::size_t n = 0; n < nn; ++n)
    for (int k = 0; k < 3; ++k)
      u_[n][k] = mask_offset_.mask[n][k] * raw(k, static_cast<Eigen::Index>(n)) +
                 mask_offset_.offset[n][k];
  const double total = assemble(true);

  Eigen::MatrixXd upstream(3, static_cast<Eigen::Index>(nn));
  for (std::size_t n = 0; n < nn; ++n)
    for (int k = 0; k < 3; ++k)
      upstream(k, static_cast<Eigen::Index>(n)) = mask_offset_.mask[n][k] * dloss_du_[n][k];
  grad = net.backward(tape, upstream);
  return total;
}

void EnergyWorkspace::commit() {
  for (std::size_t e = 0; e < ops_.size(); ++e) {
    committed_[e] = trial_[e].state;
    committed_strain_[e] = trial_strain_[e];
  }
}

void EnergyWorkspace::set_committed(std::vector<PlasticState> states) {
  if (states.size() != ops_.size())
    throw ConfigError("state count " + std::to_string(states.size()) + " does not match " +
                      std::to_string(ops_.size()) + " quadrature points");
  committed_ = std::move(states);
  for (std::size_t e = 0; e < ops_.size(); ++e) {
    const Material& mat = materials_[static_cast<std::size_t>(ops_[e].material)];
    committed_strain_[e] = committed_[e].eps_p + elastic_strain(mat.elastic, committed_[e].sigma);
  }
}

}  // namespace demplast
