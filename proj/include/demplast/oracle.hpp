#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "demplast/bc.hpp"
#include "demplast/energy.hpp"
#include "demplast/material.hpp"
#include "demplast/mesh.hpp"
#include "demplast/network.hpp"

namespace demplast {

/// One point of a proportional simple-shear curve. gamma is the engineering
/// shear strain 2*eps_12, tau = sigma_12.
struct ShearPoint {
  double gamma = 0.0;
  double tau = 0.0;
  double peeq = 0.0;
  double back_stress = 0.0;  ///< q_12
};

/// Closed-form simple-shear response along `gamma_path`, starting from the
/// virgin state at gamma = 0. Each increment is split at the yield event
/// into an elastic part (slope mu) and a plastic part with slope
/// mu*h/(mu+h), h = (H + C)/3.
std::vector<ShearPoint> analytic_shear_curve(const ElasticConstants& consts, const HardeningLaw& law,
                                             std::span<const double> gamma_path);

/// Strain tensors with eps_12 = gamma/2 and all other components zero.
std::vector<SymTensor2> shear_strain_path(std::span<const double> gamma_path);

/// drive_point along the same shear path, reduced to ShearPoint rows.
std::vector<ShearPoint> drive_shear_curve(const ElasticConstants& consts, const HardeningLaw& law,
                                          std::span<const double> gamma_path);

/// gamma_k = peak * f_k for a load program.
std::vector<double> shear_path_from_factors(std::span<const double> factors, double peak_gamma);

double yield_shear_stress(const HardeningLaw& law);
double plastic_shear_slope(const ElasticConstants& consts, const HardeningLaw& law);
/// Width of the elastic range on shear reversal, 2 (sigma_y0 + H ebar)/sqrt(3).
double reverse_yield_window(const HardeningLaw& law, double ebar_p = 0.0);

/// Least-squares slope of tau over gamma.
double fitted_slope(std::span<const ShearPoint> points);

/// Writes step, gamma, tau, peeq rows.
void write_shear_csv(std::ostream& out, std::span<const ShearPoint> points);

/// The four free-energy terms evaluated with full 3x3 matrices.
struct FreeEnergyTerms {
  double elastic = 0.0;      ///< 1/2 sigma : (eps - eps_p)
  double hardening = 0.0;    ///< H/2 ebar^2 or q:q/(2C)
  double dissipation = 0.0;  ///< (eps_p - eps_p_old) : sigma
  double correction = 0.0;   ///< -H ebar (ebar - ebar_old) or -q:(q - q_old)/C
  double total() const { return elastic + hardening + dissipation + correction; }
};

FreeEnergyTerms free_energy_terms(const HardeningLaw& law, const PlasticState& state_new,
                                  const PlasticState& state_old, const SymTensor2& eps_total);

/// Recomputes the loss for a nodal displacement field from scratch: strains
/// from the element geometry, return mapping from the given old states and
/// strains, free energy term by term, and the centroid-rule traction work.
double reevaluate_loss(const Mesh& mesh, std::span<const Material> materials,
                       std::span<const PlasticState> old_states, std::span<const SymTensor2> old_strains,
                       const TractionSpec& tractions, double factor, std::span<const Vec3> nodal_u);

/// Central differences of an arbitrary scalar function at `x`.
std::vector<double> central_difference(const std::function<double(std::span<const double>)>& f,
                                       std::span<const double> x, std::span<const std::size_t> indices,
                                       double h);

/// Central differences (L(p + h e_i) - L(p - h e_i)) / 2h on a fresh copy of
/// `proto` per evaluation.
std::vector<double> fd_loss_gradient(const EnergyWorkspace& proto, const Network& net,
                                     std::span<const std::size_t> indices, double h);

/// max_i |a_i - b_i| / max_i |b_i|, or the absolute error when b vanishes.
double relative_error(std::span<const double> a, std::span<const double> b);

}  // namespace demplast
