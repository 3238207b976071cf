#include <doctest.h>

#include "biphoton/gvm_design.hpp"
#include "biphoton/schmidt.hpp"
#include "biphoton/units.hpp"
#include "support.hpp"

using namespace biphoton;
using biphoton::test::db;
using biphoton::test::error_code_of;
using biphoton::test::rel;

namespace {

TaylorCoefficients taus(double ts, double ti) {
  TaylorCoefficients t;
  t.tau_s = ts;
  t.tau_i = ti;
  return t;
}

CrystalConfig ppktp(double length_um) {
  const auto& ktp = db().get(Material::KTP);
  return make_crystal_auto(ktp, ktp.default_scheme, 1.568, length_um);
}

// A state meeting the intensity condition with sizeable quadratic phases.
struct SyntheticState {
  TaylorCoefficients coeffs;
  PumpConfig pump;
};

SyntheticState synthetic(double beta_t) {
  SyntheticState s;
  s.coeffs = taus(1.2, -2.0);
  s.coeffs.beta_s = 0.06;
  s.coeffs.beta_i = -0.03;
  s.coeffs.beta_p = 0.05;
  s.pump.omega_p0 = 2000.0;
  s.pump.sigma = *solve_pump_bandwidth(s.coeffs);
  s.pump.beta_t = beta_t;
  return s;
}

FrequencyGrid grid_for(const SyntheticState& s, int n = 256) {
  const auto [ws, wi] = marginal_widths(s.pump, s.coeffs);
  return {1000.0, 6.0 * std::max(ws, wi), n};
}

}  // namespace

TEST_SUITE("gvm_design") {
  TEST_CASE("factorizability report on model coefficients") {
    const PumpConfig pump{2000.0, 10.0, 0.0};
    const auto sym = factorizability_report(pump, taus(0.3, -0.3));
    CHECK(sym.aspect_ratio_r == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(sym.gvm_residual == 0.0);
    CHECK(sym.theta_II == doctest::Approx(45.0));

    const auto same = factorizability_report(pump, taus(0.3, 0.3));
    CHECK(same.theta_II == doctest::Approx(-45.0));
    CHECK_FALSE(same.required_sigma.has_value());

    const auto matched = factorizability_report(pump, taus(0.0, -1.0));
    CHECK(matched.sigma_s == doctest::Approx(pump.sigma).epsilon(1e-14));
    CHECK(matched.aspect_ratio_r >= 1.0);

    auto chirp = taus(0.3, -0.2);
    chirp.beta_p = 0.02;
    CHECK(factorizability_report(pump, chirp).beta_t_star == doctest::Approx(-0.005));
  }

  TEST_CASE("required pump bandwidth") {
    const auto c = ppktp(1000.0);
    const auto sigma = solve_pump_bandwidth(c);
    REQUIRE(sigma.has_value());
    const auto t = taylor_coefficients(c);
    const auto rep = factorizability_report({2 * c.omega0, *sigma, 0.0}, t);
    CHECK(std::abs(rep.cond1_residual) < 1e-10);
    CHECK(rel(*sigma, 2.0 / std::sqrt(-kSincGaussGamma * t.tau_s * t.tau_i)) < 1e-14);

    const auto s2 = solve_pump_bandwidth(ppktp(2000.0));
    REQUIRE(s2.has_value());
    CHECK(rel(*s2, *sigma / 2) < 1e-9);

    PumpConfig pump{2 * c.omega0, *sigma, 0.0};
    const auto f = gaussian_model_grid(pump, t, default_grid(pump, c));
    CHECK(cooperativity(schmidt_decompose(f)) < 1.05);

    const auto& bbo = db().get(Material::BBO);
    CHECK_FALSE(solve_pump_bandwidth(make_crystal(bbo, bbo.default_scheme, 0.8, 1000.0)).has_value());
  }

  TEST_CASE("contour angle does not depend on length") {
    const auto& kdp = db().get(Material::KDP);
    const PumpConfig pump = make_pump(415.0, 5.0);
    const auto a = factorizability_report(pump, taylor_coefficients(make_crystal(kdp, kdp.default_scheme, 0.83, 5000)));
    const auto b = factorizability_report(pump, taylor_coefficients(make_crystal(kdp, kdp.default_scheme, 0.83, 10000)));
    CHECK(std::abs(a.theta_II - b.theta_II) < 1e-12);
  }

  TEST_CASE("cond1 plus chirp compensation gives a rank-one model state") {
    for (const auto& s0 : {synthetic(0.0)}) {
      auto s = s0;
      s.pump.beta_t = -s.coeffs.beta_p / 4;
      const auto f = gaussian_model_grid(s.pump, s.coeffs, grid_for(s));
      CHECK(cooperativity(schmidt_decompose(f)) - 1.0 < 1e-6);
    }
    const auto c = ppktp(10000.0);
    const auto t = taylor_coefficients(c);
    const PumpConfig pump{2 * c.omega0, *solve_pump_bandwidth(t), -t.beta_p / 4};
    const auto f = gaussian_model_grid(pump, t, default_grid(pump, c));
    CHECK(cooperativity(schmidt_decompose(f)) - 1.0 < 1e-6);
  }

  TEST_CASE("wavelength searches") {
    const auto& ktp = db().get(Material::KTP);
    const auto& bbo = db().get(Material::BBO);
    const auto gk = gvm_wavelength_search(ktp, ktp.default_scheme);
    const auto gb = gvm_wavelength_search(bbo, bbo.default_scheme);
    REQUIRE(gk.has_value());
    REQUIRE(gb.has_value());
    CHECK(rel(*gk, 1.568) < 0.01);
    CHECK(rel(*gb, 1.514) < 0.01);
    const auto at = taylor_coefficients(make_crystal_auto(bbo, bbo.default_scheme, *gb, 1.0));
    CHECK(std::abs(at.tau_s + at.tau_i) / std::max(std::abs(at.tau_s), std::abs(at.tau_i)) < 1e-8);

    const auto rk = decorrelation_range(ktp, ktp.default_scheme);
    const auto rb = decorrelation_range(bbo, bbo.default_scheme);
    REQUIRE(rk.has_value());
    REQUIRE(rb.has_value());
    CHECK(rel(rk->lo, 1.207) < 0.02);
    CHECK(rel(rk->hi, 2.364) < 0.02);
    CHECK(rel(rb->lo, 1.169) < 0.02);
    CHECK(rel(rb->hi, 1.949) < 0.02);
    CHECK(rk->lo < *gk);
    CHECK(*gk < rk->hi);
    for (double edge : {rb->lo, rb->hi}) {
      const auto e = taylor_coefficients(make_crystal_auto(bbo, bbo.default_scheme, edge, 1.0));
      CHECK(std::min(std::abs(e.tau_s), std::abs(e.tau_i)) / std::max(std::abs(e.tau_s), std::abs(e.tau_i)) < 1e-8);
    }

    // Pump slower than both daughters everywhere: no crossing.
    auto slow = test::constant_model(1.52, 1.50);
    const PhasematchScheme s{Polarization::Extraordinary, Polarization::Ordinary, Polarization::Ordinary, kPi / 2};
    slow.ordinary = FrequencyPolynomialLaw{{1.52, 1e-5}};
    CHECK_FALSE(gvm_wavelength_search(slow, s).has_value());
    CHECK_FALSE(decorrelation_range(slow, s).has_value());
  }

  TEST_CASE("asymmetric KDP design") {
    const auto& kdp = db().get(Material::KDP);
    const auto pump = make_pump(415.0, 5.0);
    const auto d = asymmetric_design(kdp, kdp.default_scheme, 0.83, mm_to_um(20.0), pump);
    CHECK(d.matched_photon == 'i');
    CHECK(d.walkoff_ratio < 0.05);
    CHECK(d.long_crystal_regime);

    const auto grid = default_grid(pump, d.crystal);
    const double k_full = cooperativity(schmidt_decompose(jsa_grid(pump, d.crystal, grid, JsaModel::FullSinc)));
    CHECK(k_full < 1.1);

    // Bandwidth independence in the quadratic model.
    const auto wide = make_pump(415.0, 10.0);
    const double k5 = cooperativity(schmidt_decompose(gaussian_model_grid(pump, d.coeffs, grid)));
    const double k10 = cooperativity(
        schmidt_decompose(gaussian_model_grid(wide, d.coeffs, default_grid(wide, d.crystal))));
    CHECK(rel(k10, k5) < 0.02);

    const auto& bbo = db().get(Material::BBO);
    CHECK(error_code_of([&] { asymmetric_design(bbo, bbo.default_scheme, 0.8, 20000.0, pump); }) ==
          ErrorCode::NotAsymmetric);
  }

  TEST_CASE("temporal closed forms") {
    const PumpConfig pump{2000.0, 5.0, 0.0};
    auto t = taus(0.0, -3.0);
    const auto rep = factorizability_report(pump, t);
    const auto flat = temporal_report(pump, t, rep);
    CHECK(flat.sigma_M_sq == 0.0);
    CHECK(flat.dt_s == doctest::Approx(2.0 / rep.sigma_s).epsilon(1e-14));
    CHECK(flat.dt_i == doctest::Approx(2.0 / rep.sigma_i).epsilon(1e-14));

    t.beta_s = 0.01;
    t.beta_i = 0.02;
    t.beta_p = 0.04;
    const PumpConfig chirped{2000.0, 5.0, -t.beta_p / 4};
    CHECK(temporal_report(chirped, t, factorizability_report(chirped, t)).sigma_M_sq == 0.0);
  }

  TEST_CASE("closed forms agree with the transformed model state") {
    for (double beta_t : {0.0, 0.01}) {
      const auto s = synthetic(beta_t);
      const auto rep = factorizability_report(s.pump, s.coeffs);
      REQUIRE(std::abs(rep.cond1_residual) < 1e-10);
      const auto tr = temporal_report(s.pump, s.coeffs, rep);
      const auto f = gaussian_model_grid(s.pump, s.coeffs, grid_for(s, 512));
      const auto m = measure_temporal(joint_temporal_intensity(f));
      CHECK(rel(m.dt_s, tr.dt_s_exact) < 1e-4);
      CHECK(rel(m.dt_i, tr.dt_i_exact) < 1e-4);
      CHECK(rel(m.sigma_M_sq, tr.sigma_M_sq_exact) < 1e-4);
      CHECK(rel(m.dt_s, tr.dt_s) < 0.02);
      CHECK(rel(m.dt_i, tr.dt_i) < 0.02);
      CHECK(rel(m.sigma_M_sq, tr.sigma_M_sq) < 0.02);
    }
  }

  TEST_CASE("mixed temporal coefficient falls with length") {
    const auto& kdp = db().get(Material::KDP);
    const auto pump = make_pump(415.0, 5.0);
    auto sm = [&](double mm) {
      const auto d = asymmetric_design(kdp, kdp.default_scheme, 0.83, mm_to_um(mm), pump);
      return temporal_report(pump, d.coeffs, d.report);
    };
    const double r1 = sm(40).sigma_M_sq / sm(20).sigma_M_sq;
    const double r2 = sm(80).sigma_M_sq / sm(40).sigma_M_sq;
    const double r3 = sm(200).sigma_M_sq / sm(100).sigma_M_sq;
    CHECK(r1 > r2);
    CHECK(r2 > r3);
    CHECK(r3 > 0.25);
    CHECK(rel(r3, 0.25) < 0.1);
    // The asymptote tracks the closed form in the long-crystal regime.
    CHECK(rel(sm(200).sigma_M_sq_asymptotic, sm(200).sigma_M_sq) < 0.1);
  }
}
