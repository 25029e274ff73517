#include <doctest.h>

#include <cmath>
#include <random>

#include "demplast/errors.hpp"
#include "demplast/material.hpp"
#include "demplast/oracle.hpp"

using namespace demplast;
using doctest::Approx;

namespace {

const ElasticConstants kSteel{384.62, 833.33};

HardeningLaw iso(double H = 500.0) { return {50.0, H, 0.0, HardeningMode::Isotropic}; }
HardeningLaw kin(double C = 500.0) { return {50.0, 0.0, C, HardeningMode::Kinematic}; }

SymTensor2 shear(double e12) {
  SymTensor2 e;
  e(0, 1) = e12;
  return e;
}

}  // namespace

TEST_CASE("elastic law") {
  CHECK(elastic_stress(kSteel, SymTensor2{}) == SymTensor2{});

  const SymTensor2 s = elastic_stress(kSteel, shear(0.02));
  CHECK(s(0, 1) == Approx(15.3848));
  for (std::size_t k : {0u, 1u, 2u, 4u, 5u}) CHECK(s[k] == 0.0);

  const SymTensor2 v = elastic_stress(kSteel, 0.01 * SymTensor2::identity());
  for (int i = 0; i < 3; ++i) CHECK(v(i, i) == Approx(25.0).epsilon(1e-4));

  const SymTensor2 e(0.01, -0.02, 0.003, 0.004, -0.001, 0.002);
  const SymTensor2 back = elastic_strain(kSteel, elastic_stress(kSteel, e));
  for (std::size_t k = 0; k < 6; ++k) CHECK(back[k] == Approx(e[k]).epsilon(1e-13));
}

TEST_CASE("yield function") {
  CHECK(yield_value(iso(), SymTensor2{}, SymTensor2{}, 0.0) == Approx(-40.8248290463863));
  CHECK(yield_value(iso(), shear(50.0 / std::sqrt(3.0)), SymTensor2{}, 0.0) == Approx(0.0).scale(50.0));
  CHECK(yield_value(iso(), shear(38.462), SymTensor2{}, 0.0) == Approx(13.568653).epsilon(1e-7));
  // hydrostatic stress does not change f
  CHECK(yield_value(iso(), 100.0 * SymTensor2::identity(), SymTensor2{}, 0.0) ==
        Approx(-40.8248290463863));
}

TEST_CASE("radial return examples") {
  SUBCASE("elastic increment") {
    const ReturnResult r = radial_return(kSteel, iso(), PlasticState{}, shear(0.02));
    CHECK_FALSE(r.yielded);
    CHECK(r.delta_gamma == 0.0);
    CHECK(r.state.sigma(0, 1) == Approx(15.3848));
    CHECK(r.state.eps_p == SymTensor2{});
  }
  SUBCASE("plastic increment, isotropic") {
    const ReturnResult r = radial_return(kSteel, iso(), PlasticState{}, shear(0.05));
    CHECK(r.yielded);
    CHECK(r.delta_gamma == Approx(0.01230634968160034).epsilon(1e-12));
    CHECK(r.state.ebar_p == Approx(0.010048092438727688).epsilon(1e-12));
    CHECK(r.state.sigma(0, 1) == Approx(31.76814789665212).epsilon(1e-12));
    CHECK(norm(deviator(r.state.sigma)) ==
          Approx(std::sqrt(2.0 / 3.0) * (50.0 + 500.0 * r.state.ebar_p)).epsilon(1e-12));
    CHECK(yield_value(iso(), r.state.sigma, r.state.q, r.state.ebar_p) == Approx(0.0).scale(50.0));
  }
  SUBCASE("plastic increment, kinematic") {
    const ReturnResult r = radial_return(kSteel, kin(), PlasticState{}, shear(0.05));
    CHECK(r.delta_gamma == Approx(0.01230634968160034).epsilon(1e-12));
    CHECK(r.state.sigma(0, 1) == Approx(31.76814789665212).epsilon(1e-12));
    CHECK(r.state.q(0, 1) == Approx(2.900634437170836).epsilon(1e-12));
    CHECK(std::abs(yield_value(kin(), r.state.sigma, r.state.q, r.state.ebar_p)) < 1e-10);
  }
}

TEST_CASE("radial return keeps the pressure of the committed state") {
  PlasticState s;
  s.sigma = SymTensor2(30.0, 30.0, 30.0, 0.0, 0.0, 0.0);
  const ReturnResult r = radial_return(kSteel, iso(), s, shear(0.001));
  CHECK_FALSE(r.yielded);
  CHECK(trace(r.state.sigma) == Approx(90.0));
}

TEST_CASE("radial return under hydrostatic plus shear loading stays on the surface") {
  for (const auto& law : {iso(), kin()}) {
    PlasticState s;
    const SymTensor2 d = shear(0.04) + 0.01 * SymTensor2::identity();
    for (int k = 0; k < 5; ++k) {
      const ReturnResult r = radial_return(kSteel, law, s, d);
      s = r.state;
      if (r.yielded) CHECK(std::abs(yield_value(law, s.sigma, s.q, s.ebar_p)) < 1e-9);
      CHECK(std::abs(trace(s.eps_p)) < 1e-14);
      CHECK(std::abs(trace(s.q)) < 1e-12);
    }
  }
}

TEST_CASE("free energy density") {
  CHECK(free_energy_density(kSteel, iso(), PlasticState{}, PlasticState{}, SymTensor2{}) == 0.0);

  const ReturnResult el = radial_return(kSteel, iso(), PlasticState{}, shear(0.02));
  CHECK(free_energy_density(kSteel, iso(), el.state, PlasticState{}, shear(0.02)) == Approx(0.307696));

  const ReturnResult pl = radial_return(kSteel, iso(), PlasticState{}, shear(0.05));
  const double psi = free_energy_density(kSteel, iso(), pl.state, PlasticState{}, shear(0.05));
  CHECK(psi == Approx(free_energy_terms(iso(), pl.state, PlasticState{}, shear(0.05)).total()).epsilon(1e-14));
  // hand evaluation of the four terms
  CHECK(psi == Approx(1.8396097058007983).epsilon(1e-12));

  const ReturnResult pk = radial_return(kSteel, kin(), PlasticState{}, shear(0.05));
  CHECK(free_energy_density(kSteel, kin(), pk.state, PlasticState{}, shear(0.05)) ==
        Approx(free_energy_terms(kin(), pk.state, PlasticState{}, shear(0.05)).total()).epsilon(1e-14));

  HardeningLaw bad = kin();
  bad.C = 0.0;
  CHECK_THROWS_AS(free_energy_density(kSteel, bad, pk.state, PlasticState{}, shear(0.05)), ConfigError);
}

TEST_CASE("strain gradient of the free energy matches finite differences") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (const auto& law : {iso(), kin()}) {
    for (int n = 0; n < 50; ++n) {
      // committed state from a random plastic pre-load
      PlasticState old;
      SymTensor2 e0;
      for (std::size_t k = 0; k < 6; ++k) e0[k] = 0.06 * U(rng);
      old = radial_return(kSteel, law, PlasticState{}, e0).state;
      SymTensor2 eps;
      for (std::size_t k = 0; k < 6; ++k) eps[k] = e0[k] + 0.06 * U(rng);
      const ReturnResult ret = radial_return(kSteel, law, old, eps - e0);
      const SymTensor2 g = free_energy_strain_gradient(kSteel, law, ret, old, eps);
      const double h = 1e-7;
      for (std::size_t k = 0; k < 6; ++k) {
        SymTensor2 ep = eps, em = eps;
        ep[k] += h;
        em[k] -= h;
        const auto rp = radial_return(kSteel, law, old, ep - e0);
        const auto rm = radial_return(kSteel, law, old, em - e0);
        if (rp.yielded != ret.yielded || rm.yielded != ret.yielded) continue;
        const double fd = (free_energy_density(kSteel, law, rp.state, old, ep) -
                           free_energy_density(kSteel, law, rm.state, old, em)) /
                          (2.0 * h);
        // slot k of a symmetric tensor carries both (i,j) and (j,i) for shear
        const double an = k < 3 ? g[k] : 2.0 * g[k];
        CHECK(an == Approx(fd).epsilon(1e-6).scale(1.0));
      }
    }
  }
}

TEST_CASE("drive_point") {
  const std::vector<SymTensor2> constant(5, shear(0.05));
  const auto states = drive_point(kSteel, iso(), constant);
  for (std::size_t k = 1; k < states.size(); ++k) CHECK(states[k] == states[0]);

  std::vector<double> ramp;
  for (int k = 1; k <= 200; ++k) ramp.push_back(0.5 * k / 200.0);
  const auto curve = drive_shear_curve(kSteel, iso(), ramp);
  std::vector<ShearPoint> plastic;
  for (const auto& p : curve)
    if (p.gamma > 0.1) plastic.push_back(p);
  CHECK(fitted_slope(plastic) == Approx(116.27949161355858).epsilon(1e-9));
}

TEST_CASE("Bauschinger window for kinematic hardening") {
  std::vector<double> path;
  for (int k = 1; k <= 100; ++k) path.push_back(0.2 * k / 100.0);
  for (int k = 1; k <= 2000; ++k) path.push_back(0.2 - 0.4 * k / 2000.0);
  const auto c = drive_shear_curve(kSteel, kin(), path);
  const double tau_peak = c[99].tau;
  bool reverse_yield = false;
  for (std::size_t k = 101; k < c.size() && !reverse_yield; ++k)
    if (c[k].peeq > c[k - 1].peeq) {
      // the yield event lies between the last elastic and first plastic point
      CHECK(tau_peak - c[k - 1].tau <= 57.73502691896258 + 1e-9);
      CHECK(tau_peak - c[k].tau >= 57.73502691896258 - 1e-9);
      reverse_yield = true;
    }
  CHECK(reverse_yield);
}

TEST_CASE("material validation") {
  CHECK_THROWS_AS((ElasticConstants{-1.0, 833.33}.validate()), ConfigError);
  CHECK_THROWS_AS((ElasticConstants{384.62, 0.0}.validate()), ConfigError);
  CHECK_THROWS_AS((HardeningLaw{0.0, 500.0, 0.0, HardeningMode::Isotropic}.validate()), ConfigError);
  CHECK_THROWS_AS((HardeningLaw{50.0, 500.0, 10.0, HardeningMode::Isotropic}.validate()), ConfigError);
  CHECK_THROWS_AS((HardeningLaw{50.0, 0.0, 0.0, HardeningMode::Kinematic}.validate()), ConfigError);
  CHECK_THROWS_AS((HardeningLaw{50.0, 5.0, 500.0, HardeningMode::Kinematic}.validate()), ConfigError);
  CHECK_NOTHROW(iso().validate());
  CHECK_NOTHROW(kin().validate());
  CHECK_NOTHROW(iso(0.0).validate());
}
