#include "biphoton_tools/scenarios.hpp"

#include <cmath>
#include <random>

#include "biphoton/units.hpp"

namespace biphoton::scenarios {

namespace {

GvmScenario gvm_of(const DispersionModel& m) {
  return {gvm_wavelength_search(m, m.default_scheme), decorrelation_range(m, m.default_scheme)};
}

JointAmplitude random_gaussian(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> width(0.5, 2.0);
  std::uniform_real_distribution<double> corr(-0.8, 0.8);
  std::uniform_real_distribution<double> phase(-0.5, 0.5);
  const double ws = width(rng), wi = width(rng), rho = corr(rng);
  // Covariance-style construction keeps the quadratic form positive definite.
  Eigen::Matrix2d cov;
  cov << ws * ws, rho * ws * wi, rho * ws * wi, wi * wi;
  const Eigen::Matrix2d a = cov.inverse();
  const double bss = phase(rng), bii = phase(rng), bsi = phase(rng);
  FrequencyGrid g{100.0, 5.0 * std::max(ws, wi), n};
  JointAmplitude f;
  f.grid = g;
  f.values.resize(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const double x = g.nu(j), y = g.nu(k);
      const double q = a(0, 0) * x * x + 2 * a(0, 1) * x * y + a(1, 1) * y * y;
      f.values(j, k) = std::exp(-q / 2.0) * std::polar(1.0, bss * x * x + bii * y * y + bsi * x * y);
    }
  }
  normalize(f);
  return f;
}

}  // namespace

GvmScenario ktp_gvm(const MaterialDatabase& db) { return gvm_of(db.get(Material::KTP)); }
GvmScenario bbo_gvm(const MaterialDatabase& db) { return gvm_of(db.get(Material::BBO)); }

AssemblyDesign bbo_calcite_design(const MaterialDatabase& db) {
  const auto& bbo = db.get(Material::BBO);
  const auto& cal = db.get(Material::Calcite);
  return design_assembly(bbo, bbo.default_scheme, cal, cal.default_scheme, 0.8, 10, 10);
}

KdpScenario kdp_source(const MaterialDatabase& db, int n, double pump_fwhm_nm, JsaModel model) {
  const auto& kdp = db.get(Material::KDP);
  KdpScenario s;
  s.pump = make_pump(415.0, pump_fwhm_nm);
  s.design = asymmetric_design(kdp, kdp.default_scheme, 0.83, mm_to_um(20.0), s.pump);
  s.theta_deg = radians_to_degrees(s.design.crystal.theta);
  s.tau_e = s.design.coeffs.tau_s;
  s.tau_o = s.design.coeffs.tau_i;
  const auto grid = default_grid(s.pump, s.design.crystal, n);
  s.jsa = jsa_grid(s.pump, s.design.crystal, grid, model);
  s.jti = joint_temporal_intensity(s.jsa);
  s.metrics = herald_metrics(s.jsa, SpectralFilter::unit());
  s.jti_correlation = moments(s.jti).correlation;
  s.temporal = temporal_report(s.pump, s.design.coeffs, s.design.report);
  return s;
}

AssemblyPipeline assembly_pipeline(const MaterialDatabase& db, int n) {
  AssemblyPipeline p;
  p.design = bbo_calcite_design(db);
  p.window_half_width = p.design.central_window();
  const FrequencyGrid grid{p.design.config.crystal.omega0, p.window_half_width, n};
  p.jsa = assembly_jsa(p.design.pump(), p.design.config, grid);
  p.windowed = window(p.jsa, p.window_half_width);
  const auto m = herald_metrics(p.windowed, SpectralFilter::unit());
  p.cooperativity = m.cooperativity_K;
  p.purity = m.purity;
  p.ridge_slope = measure_ridge_slope(p.design.config, p.window_half_width);
  return p;
}

JointAmplitude correlated_gaussian(double a, double b, int n) {
  const FrequencyGrid g{100.0, 3.0 * std::sqrt(a * a + b * b), n};
  JointAmplitude f;
  f.grid = g;
  f.values.resize(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const double u = g.nu(j) + g.nu(k), v = g.nu(j) - g.nu(k);
      f.values(j, k) = std::exp(-u * u / (4 * a * a) - v * v / (4 * b * b));
    }
  }
  normalize(f);
  return f;
}

std::vector<double> mehler_lambdas(double a, double b, int count) {
  const double mu = std::pow((a - b) / (a + b), 2);
  std::vector<double> out(count);
  for (int j = 0; j < count; ++j) out[j] = (1.0 - mu) * std::pow(mu, j);
  return out;
}

PropertySuite property_suite(const MaterialDatabase& db, unsigned seed) {
  PropertySuite r;
  std::mt19937 rng(seed);
  for (int t = 0; t < 10; ++t) {
    const auto f = random_gaussian(rng, 256);
    const auto s = schmidt_decompose(f);
    double sum = 0.0;
    for (double l : s.lambdas) sum += l;
    const double p = purity(heralded_state(f, SpectralFilter::unit()).rho);
    r.max_lambda_sum_error = std::max(r.max_lambda_sum_error, std::abs(sum - 1.0));
    r.max_pk_error = std::max(r.max_pk_error, std::abs(p * cooperativity(s) - 1.0));
    const auto jt = joint_temporal_intensity(f);
    r.max_parseval_error = std::max(r.max_parseval_error, std::abs(jt.norm() - f.norm()));
  }

  for (double ratio : {1.5, 2.0, 3.0, 4.0, 6.0}) {
    const auto f = correlated_gaussian(ratio, 1.0, 256);
    const auto s = schmidt_decompose(f);
    const auto exact = mehler_lambdas(ratio, 1.0, static_cast<int>(s.lambdas.size()));
    for (size_t j = 0; j < s.lambdas.size(); ++j) {
      r.max_mehler_error = std::max(r.max_mehler_error, std::abs(s.lambdas[j] - exact[j]));
    }
  }

  const auto& kdp = db.get(Material::KDP);
  const auto pump = make_pump(415.0, 5.0);
  auto sigma_m = [&](double length_mm) {
    const auto d = asymmetric_design(kdp, kdp.default_scheme, 0.83, mm_to_um(length_mm), pump);
    return temporal_report(pump, d.coeffs, d.report).sigma_M_sq;
  };
  r.sigma_m_ratio = sigma_m(200.0) / sigma_m(100.0);

  const auto d = asymmetric_design(kdp, kdp.default_scheme, 0.83, mm_to_um(20.0), pump);
  const auto grid = default_grid(pump, d.crystal);
  auto chirped = pump;
  chirped.beta_t = -d.coeffs.beta_p / 4.0;
  const auto f0 = gaussian_model_grid(pump, d.coeffs, grid);
  const auto f1 = gaussian_model_grid(chirped, d.coeffs, grid);
  r.unchirped_bilinear = mixed_phase_coefficient(f0);
  r.chirped_bilinear = mixed_phase_coefficient(f1);
  r.unchirped_jti_correlation = moments(joint_temporal_intensity(f0)).correlation;
  r.chirped_jti_correlation = moments(joint_temporal_intensity(f1)).correlation;

  for (int n = 1; n <= 20; ++n) {
    for (int k = -6; k <= 6; ++k) {
      const double expect = ((static_cast<long>(n - 1) * std::abs(k)) % 2 == 0) ? 1.0 : -1.0;
      r.max_upsilon_error = std::max(r.max_upsilon_error, std::abs(upsilon(n, k * kPi) - expect));
    }
  }
  return r;
}

}  // namespace biphoton::scenarios
