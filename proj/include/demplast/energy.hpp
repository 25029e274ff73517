#pragma once

#include <memory>
#include <span>
#include <vector>

#include "demplast/bc.hpp"
#include "demplast/material.hpp"
#include "demplast/mesh.hpp"
#include "demplast/network.hpp"

namespace demplast {

/// Discrete free-energy loss over a mesh for one load step.
///
/// Holds the committed quadrature states of the last converged step and a
/// scratch copy that every loss evaluation overwrites. Committed states only
/// change through commit() / set_committed(). Copies are independent apart
/// from the shared immutable mesh.
class EnergyWorkspace {
public:
  EnergyWorkspace(Mesh mesh, std::vector<Material> materials, DirichletSpec dirichlet,
                  TractionSpec tractions);

  /// Rebuilds mask/offset and traction scaling for load factor `factor`.
  void set_load_factor(double factor);
  double load_factor() const { return factor_; }

  void set_threads(unsigned threads) { threads_ = threads == 0 ? 1 : threads; }

  double loss(const Network& net);
  double loss_and_grad(const Network& net, ParamVector& grad);

  /// Loss for a given nodal displacement field (already satisfying BCs).
  double loss_for_displacement(std::span<const Vec3> nodal_u);

  /// -sum over traction facets of (t . u_centroid) * area, one-point rule.
  double external_potential(std::span<const Vec3> nodal_u) const;

  /// Promotes the scratch states of the last evaluation to committed.
  void commit();

  /// Replaces committed states, e.g. loaded from disk; total strains are
  /// recovered as eps_p + C^-1 sigma.
  void set_committed(std::vector<PlasticState> states);

  const Mesh& mesh() const { return *mesh_; }
  const std::vector<Material>& materials() const { return materials_; }
  const std::vector<GradOperator>& operators() const { return ops_; }
  const MaskOffset& mask_offset() const { return mask_offset_; }
  const Eigen::MatrixXd& coords() const { return coords_; }

  const std::vector<PlasticState>& committed_states() const { return committed_; }
  const std::vector<SymTensor2>& committed_strains() const { return committed_strain_; }

  /// Results of the last loss evaluation.
  const std::vector<ReturnResult>& trial_results() const { return trial_; }
  const std::vector<SymTensor2>& trial_strains() const { return trial_strain_; }
  const std::vector<Vec3>& displacement() const { return u_; }

  /// Displacement field produced by the network with BCs applied.
  std::vector<Vec3> displacement_from(const Network& net) const;

private:
  struct ResolvedTraction {
    std::vector<std::size_t> nodes;  ///< facet nodes
    double area = 0.0;
    Vec3 vector{};
  };

  double assemble(bool with_gradient);

  std::shared_ptr<const Mesh> mesh_;
  std::vector<Material> materials_;
  DirichletSpec dirichlet_;
  std::vector<GradOperator> ops_;
  std::vector<ResolvedTraction> tractions_;
  Eigen::MatrixXd coords_;
  MaskOffset mask_offset_;
  double factor_ = 0.0;
  unsigned threads_ = 1;

  std::vector<PlasticState> committed_;
  std::vector<SymTensor2> committed_strain_;
  std::vector<ReturnResult> trial_;
  std::vector<SymTensor2> trial_strain_;
  std::vector<SymTensor2> element_grad_;
  std::vector<Vec3> u_;
  std::vector<Vec3> dloss_du_;
};

}  // namespace demplast
