#pragma once

#include <span>
#include <vector>

#include "demplast/tensor.hpp"

namespace demplast {

struct ElasticConstants {
  double mu = 0.0;     ///< shear modulus [MPa]
  double kappa = 0.0;  ///< bulk modulus [MPa]

  void validate() const;
};

enum class HardeningMode { Isotropic, Kinematic };

/// Linear hardening. Only one of H (isotropic) and C (kinematic, Ziegler)
/// may be active, selected by `mode`.
struct HardeningLaw {
  double sigma_y0 = 0.0;
  double H = 0.0;
  double C = 0.0;
  HardeningMode mode = HardeningMode::Isotropic;

  void validate() const;
  double yield_stress(double ebar_p) const { return sigma_y0 + H * ebar_p; }
};

struct Material {
  ElasticConstants elastic;
  HardeningLaw hardening;

  void validate() const {
    elastic.validate();
    hardening.validate();
  }
};

/// Converged (or trial) state at one quadrature point.
struct PlasticState {
  SymTensor2 sigma;
  SymTensor2 eps_p;
  double ebar_p = 0.0;
  SymTensor2 q;

  friend bool operator==(const PlasticState&, const PlasticState&) = default;
};

struct ReturnResult {
  PlasticState state;
  double delta_gamma = 0.0;
  bool yielded = false;
  SymTensor2 flow_dir;     ///< unit normal N, valid only when yielded
  double trial_norm = 0.0; ///< |eta_trial|
};

/// sigma = 2 mu dev(eps_e) + kappa tr(eps_e) I
SymTensor2 elastic_stress(const ElasticConstants& consts, const SymTensor2& eps_e);

/// Inverse of elastic_stress.
SymTensor2 elastic_strain(const ElasticConstants& consts, const SymTensor2& sigma);

/// Von Mises yield function with shifted stress eta = dev(sigma) - dev(q).
double yield_value(const HardeningLaw& law, const SymTensor2& sigma, const SymTensor2& q,
                   double ebar_p);

/// Radial-return update for a total strain increment `d_eps` starting from
/// the committed state `state_i`.
///
/// The plastic corrector applies N, eps_p, ebar_p, sigma, Z, q in that order.
/// Z is formed from the deviatoric parts of (sigma_{i+1} - q_i) so that the
/// back stress stays deviatoric and the updated state lies on the yield
/// surface for any hydrostatic loading.
ReturnResult radial_return(const ElasticConstants& consts, const HardeningLaw& law,
                           const PlasticState& state_i, const SymTensor2& d_eps);

/// Incremental free-energy density for the active hardening specialization.
///
/// Isotropic: W + H/2 ebar^2 + (eps_p - eps_p_old):sigma - H ebar (ebar - ebar_old)
/// Kinematic: W + q:q/(2C) + (eps_p - eps_p_old):sigma - q:(q - q_old)/C
/// with W = 1/2 sigma:(eps - eps_p). Throws ConfigError for Kinematic with C = 0.
double free_energy_density(const ElasticConstants& consts, const HardeningLaw& law,
                           const PlasticState& state_new, const PlasticState& state_old,
                           const SymTensor2& eps_total);

/// Derivative of free_energy_density with respect to the total strain,
/// treating the new state as the radial-return image of `eps_total` and the
/// branch (elastic/plastic) as fixed at `ret.yielded`. Returned as G with
/// d(psi) = G : d(eps).
SymTensor2 free_energy_strain_gradient(const ElasticConstants& consts, const HardeningLaw& law,
                                       const ReturnResult& ret, const PlasticState& state_old,
                                       const SymTensor2& eps_total);

/// Folds radial_return over a total-strain path that starts from the
/// virgin state. One output state per path entry.
std::vector<PlasticState> drive_point(const ElasticConstants& consts, const HardeningLaw& law,
                                      std::span<const SymTensor2> strain_path);

}  // namespace demplast
