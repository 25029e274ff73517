#include "demplast/material.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "demplast/errors.hpp"

namespace demplast {

namespace {

const double kSqrt2Over3 = std::sqrt(2.0 / 3.0);

}  // namespace

void ElasticConstants::validate() const {
  if (!(mu > 0.0)) throw ConfigError("shear modulus mu must be positive, got " + std::to_string(mu));
  if (!(kappa > 0.0))
    throw ConfigError("bulk modulus kappa must be positive, got " + std::to_string(kappa));
}

void HardeningLaw::validate() const {
  if (!(sigma_y0 > 0.0))
    throw ConfigError("initial yield stress sigma_y0 must be positive, got " +
                      std::to_string(sigma_y0));
  if (!(H >= 0.0)) throw ConfigError("isotropic hardening modulus H must be >= 0");
  if (!(C >= 0.0)) throw ConfigError("kinematic hardening modulus C must be >= 0");
  if (mode == HardeningMode::Isotropic && C != 0.0)
    throw ConfigError("isotropic hardening mode requires C = 0");
  if (mode == HardeningMode::Kinematic) {
    if (H != 0.0) throw ConfigError("kinematic hardening mode requires H = 0");
    if (!(C > 0.0)) throw ConfigError("kinematic hardening mode requires C > 0");
  }
}

SymTensor2 elastic_stress(const ElasticConstants& consts, const SymTensor2& eps_e) {
  SymTensor2 s = 2.0 * consts.mu * deviator(eps_e);
  const double vol = consts.kappa * trace(eps_e);
  s[0] += vol;
  s[1] += vol;
  s[2] += vol;
  return s;
}

SymTensor2 elastic_strain(const ElasticConstants& consts, const SymTensor2& sigma) {
  SymTensor2 e = deviator(sigma) / (2.0 * consts.mu);
  const double vol = trace(sigma) / (9.0 * consts.kappa);
  e[0] += vol;
  e[1] += vol;
  e[2] += vol;
  return e;
}

double yield_value(const HardeningLaw& law, const SymTensor2& sigma, const SymTensor2& q,
                   double ebar_p) {
  return norm(deviator(sigma) - deviator(q)) - kSqrt2Over3 * law.yield_stress(ebar_p);
}

ReturnResult radial_return(const ElasticConstants& consts, const HardeningLaw& law,
                           const PlasticState& state_i, const SymTensor2& d_eps) {
  const double mu = consts.mu;
  const SymTensor2 dev_trial = deviator(state_i.sigma) + 2.0 * mu * deviator(d_eps);
  const SymTensor2 eta = dev_trial - deviator(state_i.q);
  const double eta_norm = norm(eta);
  const double f_trial = eta_norm - kSqrt2Over3 * law.yield_stress(state_i.ebar_p);

  // Hydrostatic part carried over from the committed stress plus the new
  // volumetric increment.
  const double pressure = trace(state_i.sigma) / 3.0 + consts.kappa * trace(d_eps);
  SymTensor2 sigma_trial = dev_trial;
  sigma_trial[0] += pressure;
  sigma_trial[1] += pressure;
  sigma_trial[2] += pressure;

  ReturnResult out;
  out.trial_norm = eta_norm;
  if (!(f_trial > 0.0)) {
    out.state = state_i;
    out.state.sigma = sigma_trial;
    return out;
  }

  if (!(eta_norm > 0.0))
    throw std::logic_error("radial_return: zero flow direction with positive trial yield value");

  const double dgamma = f_trial / (2.0 * (mu + (law.H + law.C) / 3.0));
  const SymTensor2 N = eta / eta_norm;

  PlasticState& s = out.state;
  s.eps_p = state_i.eps_p + dgamma * N;
  s.ebar_p = state_i.ebar_p + kSqrt2Over3 * dgamma;
  s.sigma = sigma_trial - 2.0 * mu * dgamma * N;
  s.q = state_i.q;
  if (law.C != 0.0) {
    const SymTensor2 shifted = deviator(s.sigma) - deviator(state_i.q);
    const SymTensor2 Z = shifted / norm(shifted);
    s.q += (2.0 / 3.0) * dgamma * law.C * Z;
  }

  out.delta_gamma = dgamma;
  out.yielded = true;
  out.flow_dir = N;
  return out;
}

double free_energy_density(const ElasticConstants& consts, const HardeningLaw& law,
                           const PlasticState& state_new, const PlasticState& state_old,
                           const SymTensor2& eps_total) {
  (void)consts;
  const double w = 0.5 * contract(state_new.sigma, eps_total - state_new.eps_p);
  const double dissipation = contract(state_new.eps_p - state_old.eps_p, state_new.sigma);
  if (law.mode == HardeningMode::Isotropic) {
    const double e = state_new.ebar_p;
    return w + 0.5 * law.H * e * e + dissipation - law.H * e * (e - state_old.ebar_p);
  }
  if (!(law.C > 0.0)) throw ConfigError("kinematic free energy requires C > 0");
  const SymTensor2& q = state_new.q;
  return w + contract(q, q) / (2.0 * law.C) + dissipation -
         contract(q, q - state_old.q) / law.C;
}

SymTensor2 free_energy_strain_gradient(const ElasticConstants& consts, const HardeningLaw& law,
                                       const ReturnResult& ret, const PlasticState& state_old,
                                       const SymTensor2& eps_total) {
  const PlasticState& s = ret.state;
  if (!ret.yielded) return s.sigma;

  const double mu = consts.mu;
  const double a = 2.0 * (mu + (law.H + law.C) / 3.0);
  const SymTensor2& N = ret.flow_dir;

  // Partial derivatives of the density with respect to sigma, eps_p and the
  // hardening variables, then pulled back through the return map.
  const SymTensor2 g_sigma = 0.5 * (eps_total - s.eps_p) + (s.eps_p - state_old.eps_p);
  SymTensor2 grad = elastic_stress(consts, g_sigma) + 0.5 * s.sigma;
  SymTensor2 w_eps_p = -2.0 * mu * g_sigma + 0.5 * s.sigma;
  double w_dgamma = 0.0;

  if (law.mode == HardeningMode::Isotropic) {
    w_dgamma += -law.H * (s.ebar_p - state_old.ebar_p) * kSqrt2Over3;
  } else {
    // dq = 2/3 C d(eps_p) because Z coincides with N on the plastic branch.
    axpy(-2.0 / 3.0, s.q - state_old.q, w_eps_p);
  }

  // d(eps_p) = d(dgamma) N + dgamma dN
  const double wn = contract(w_eps_p, N);
  w_dgamma += wn;
  const double c_dn = ret.delta_gamma * 2.0 * mu / ret.trial_norm;
  grad += c_dn * (deviator(w_eps_p) - wn * N);
  grad += (w_dgamma * 2.0 * mu / a) * N;
  return grad;
}

std::vector<PlasticState> drive_point(const ElasticConstants& consts, const HardeningLaw& law,
                                      std::span<const SymTensor2> strain_path) {
  std::vector<PlasticState> out;
  out.reserve(strain_path.size());
  PlasticState state;
  SymTensor2 prev;
  for (const auto& eps : strain_path) {
    state = radial_return(consts, law, state, eps - prev).state;
    prev = eps;
    out.push_back(state);
  }
  return out;
}

}  // namespace demplast
