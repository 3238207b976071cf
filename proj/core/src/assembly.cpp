#include "biphoton/assembly.hpp"

#include <cmath>
#include <vector>

#include "biphoton/error.hpp"
#include "biphoton/units.hpp"

namespace biphoton {

namespace {

using cd = std::complex<double>;

double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

double nm_from_omega_width(double lambda0_um, double domega) {
  return um_to_nm(wavelength_width(lambda0_um, domega));
}

// Parabolic refinement of a sampled maximum at index j.
double refine(const std::vector<double>& y, int j) {
  if (j <= 0 || j + 1 >= static_cast<int>(y.size())) return j;
  const double a = y[j - 1], b = y[j], c = y[j + 1];
  const double den = a - 2 * b + c;
  if (den == 0.0) return j;
  return j + 0.5 * (a - c) / den;
}

}  // namespace

double upsilon(int n, double x) {
  if (n < 1) raise(ErrorCode::InvalidArgument, "Upsilon needs N >= 1");
  const double s = std::sin(x);
  if (std::abs(s) < 1e-7) {
    // Removable singularity at x = k pi: the limit is cos(N x) / cos(x),
    // which is exactly (-1)^((N-1) k) there.
    const double k = std::round(x / kPi);
    if (x == k * kPi) {
      const long long e = static_cast<long long>(n - 1) * static_cast<long long>(std::abs(k));
      return (e % 2 == 0) ? 1.0 : -1.0;
    }
    return std::cos(n * x) / std::cos(x);
  }
  return std::sin(n * x) / (n * s);
}

double AssemblyConfig::spacer_theta() const { return spacer_scheme.fixed_theta.value_or(kPi / 2); }

void AssemblyConfig::validate() const {
  if (n_crystals < 1) raise(ErrorCode::InvalidArgument, "assembly needs at least one crystal");
  if (!(crystal.length > 0.0)) raise(ErrorCode::InvalidArgument, "crystal length must be positive");
  if (n_crystals > 1 && !(spacer_h > 0.0)) raise(ErrorCode::InvalidArgument, "spacer thickness must be positive");
}

double assembly_phase(double nu_s, double nu_i, const AssemblyConfig& cfg) {
  const double ws = cfg.crystal.omega0 + nu_s;
  const double wi = cfg.crystal.omega0 + nu_i;
  const double dk = effective_mismatch(cfg.crystal, ws, wi);
  const double dkappa =
      phase_mismatch(cfg.spacer, make_propagation(cfg.spacer_scheme, cfg.spacer_theta()), ws, wi);
  return cfg.crystal.length * dk + cfg.spacer_h * dkappa;
}

std::complex<double> assembly_phasematching(double nu_s, double nu_i, const AssemblyConfig& cfg) {
  const double x = cfg.crystal.length *
                   effective_mismatch(cfg.crystal, cfg.crystal.omega0 + nu_s, cfg.crystal.omega0 + nu_i) / 2.0;
  const cd single = sinc(x) * std::polar(1.0, x);
  if (cfg.n_crystals == 1) return single;
  const double phi = assembly_phase(nu_s, nu_i, cfg);
  const int n = cfg.n_crystals;
  const cd sum = std::polar(1.0, (n - 1) * phi / 2.0) * (n * upsilon(n, phi / 2.0));
  return single * sum;
}

double mismatch_sum(const DispersionModel& m, const Propagation& prop, double lambda_pdc_um) {
  const double w0 = omega_from_wavelength(lambda_pdc_um);
  return 2.0 * inverse_group_velocity(m, prop.pump, 2.0 * w0) - inverse_group_velocity(m, prop.signal, w0) -
         inverse_group_velocity(m, prop.idler, w0);
}

namespace {

Propagation crystal_propagation(const DispersionModel& m, const PhasematchScheme& s, double lambda) {
  return make_propagation(s, make_crystal_auto(m, s, lambda, 1.0).theta);
}

Propagation spacer_propagation(const PhasematchScheme& s) {
  return make_propagation(s, s.fixed_theta.value_or(kPi / 2));
}

}  // namespace

std::optional<double> generalized_gvm_ratio(const DispersionModel& crystal_material,
                                            const PhasematchScheme& crystal_scheme,
                                            const DispersionModel& spacer_material,
                                            const PhasematchScheme& spacer_scheme, double lambda_pdc_um) {
  const double a = mismatch_sum(crystal_material, crystal_propagation(crystal_material, crystal_scheme, lambda_pdc_um),
                                lambda_pdc_um);
  const double b = mismatch_sum(spacer_material, spacer_propagation(spacer_scheme), lambda_pdc_um);
  if (!(a * b < 0.0)) return std::nullopt;
  return std::abs(a) / std::abs(b);
}

SpacerQuantization quantize_spacer(const DispersionModel& spacer_material,
                                   const PhasematchScheme& spacer_scheme, double lambda_pdc_um, int m) {
  if (m < 1) raise(ErrorCode::InvalidArgument, "spacer multiple m must be >= 1");
  SpacerQuantization q;
  q.dkappa0 = degenerate_mismatch(spacer_material, spacer_propagation(spacer_scheme), lambda_pdc_um);
  if (std::abs(q.dkappa0) < 1e-12) raise(ErrorCode::ZeroMismatch, spacer_material.name + ": spacer mismatch vanishes");
  q.h_min = 2.0 * kPi / std::abs(q.dkappa0);
  q.h = m * q.h_min;
  return q;
}

PumpConfig AssemblyDesign::pump() const {
  PumpConfig p;
  p.omega_p0 = 2.0 * config.crystal.omega0;
  p.sigma = sigma_pump;
  return p;
}

double AssemblyDesign::central_window() const {
  return frequency_width(lambda0, nm_to_um(delta_lambda_ridge_spacing)) / (2.0 * std::sqrt(2.0));
}

AssemblyDesign design_assembly(const DispersionModel& crystal_material,
                               const PhasematchScheme& crystal_scheme,
                               const DispersionModel& spacer_material,
                               const PhasematchScheme& spacer_scheme, double lambda_pdc_um,
                               int n_crystals, int m) {
  if (n_crystals < 1) raise(ErrorCode::InvalidArgument, "assembly needs at least one crystal");
  AssemblyDesign d;
  d.lambda0 = lambda_pdc_um;
  const auto cprop = crystal_propagation(crystal_material, crystal_scheme, lambda_pdc_um);
  const auto sprop = spacer_propagation(spacer_scheme);
  d.crystal_mismatch_sum = mismatch_sum(crystal_material, cprop, lambda_pdc_um);
  d.spacer_mismatch_sum = mismatch_sum(spacer_material, sprop, lambda_pdc_um);
  const auto ratio =
      generalized_gvm_ratio(crystal_material, crystal_scheme, spacer_material, spacer_scheme, lambda_pdc_um);
  if (!ratio) {
    raise(ErrorCode::NoOppositeSign, crystal_material.name + " and " + spacer_material.name +
                                         " have group-velocity mismatch of the same sign");
  }
  d.ratio_h_over_L = *ratio;
  const auto q = quantize_spacer(spacer_material, spacer_scheme, lambda_pdc_um, m);
  d.h_min = q.h_min;
  d.h = q.h;
  d.L = d.h / d.ratio_h_over_L;

  auto& cfg = d.config;
  cfg.crystal = make_crystal_auto(crystal_material, crystal_scheme, lambda_pdc_um, d.L);
  cfg.spacer = spacer_material;
  cfg.spacer_scheme = spacer_scheme;
  cfg.spacer_scheme.fixed_theta = cfg.spacer_theta();
  cfg.spacer_h = d.h;
  cfg.n_crystals = n_crystals;
  cfg.m_integer = m;

  const double w0 = cfg.crystal.omega0;
  const double kp = inverse_group_velocity(crystal_material, cprop.pump, 2 * w0);
  const double ks = inverse_group_velocity(crystal_material, cprop.signal, w0);
  const double ki = inverse_group_velocity(crystal_material, cprop.idler, w0);
  const double qp = inverse_group_velocity(spacer_material, sprop.pump, 2 * w0);
  const double qs = inverse_group_velocity(spacer_material, sprop.signal, w0);
  const double qi = inverse_group_velocity(spacer_material, sprop.idler, w0);
  d.T_s = (kp - ks) * d.L + (qp - qs) * d.h;
  d.T_i = (kp - ki) * d.L + (qp - qi) * d.h;
  d.T_minus = 0.5 * ((ks - ki) * d.L + (qs - qi) * d.h);
  d.genGVM_residual = (ks + ki - 2 * kp) * d.L + (qs + qi - 2 * qp) * d.h;
  d.contour_slope = -d.T_s / d.T_i;

  const double tm = std::abs(d.T_minus);
  const double c = kSpeedOfLight;
  const double l2 = lambda_pdc_um * lambda_pdc_um;
  d.delta_lambda_ridge_spacing = um_to_nm(l2 / (std::sqrt(2.0) * c * tm));
  d.per_axis_ridge_spacing = d.delta_lambda_ridge_spacing / std::sqrt(2.0);
  d.delta_lambda_ridge_fwhm = um_to_nm(std::sqrt(2.0) * l2 * kUpsilonWidth / (kPi * c * n_crystals * tm));
  d.sigma_pump = 2.0 * std::sqrt(2.0) / std::sqrt(std::log(2.0)) * kUpsilonWidth / (n_crystals * tm);
  const double lp = lambda_pdc_um / 2.0;
  d.pump_fwhm_nm = nm_from_omega_width(lp, d.sigma_pump * std::sqrt(2.0 * std::log(2.0)));
  d.pump_fwhm_diagonal_nm = nm_from_omega_width(lp, d.sigma_pump * std::sqrt(std::log(2.0)));
  return d;
}

JointAmplitude assembly_jsa(const PumpConfig& pump, const AssemblyConfig& cfg, const FrequencyGrid& grid) {
  grid.validate();
  cfg.validate();
  if (grid.omega0 - grid.half_span <= 0.0) raise(ErrorCode::OutOfRange, "grid reaches non-positive frequency");
  JointAmplitude f;
  f.grid = grid;
  f.values.resize(grid.n, grid.n);
  const double offset = 2.0 * grid.omega0 - pump.omega_p0;
  const double shift = grid.omega0 - cfg.crystal.omega0;
  for (int j = 0; j < grid.n; ++j) {
    for (int k = 0; k < grid.n; ++k) {
      f.values(j, k) = pump_envelope(grid.nu(j) + grid.nu(k) + offset, pump) *
                       assembly_phasematching(grid.nu(j) + shift, grid.nu(k) + shift, cfg);
    }
  }
  normalize(f);
  return f;
}

JointAmplitude window(const JointAmplitude& f, double half_width) {
  if (f.domain != Domain::Spectral) raise(ErrorCode::BadDomain, "spectral window needs a spectral amplitude");
  JointAmplitude out = f;
  const int n = static_cast<int>(f.values.rows());
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (std::abs(f.grid.nu(j)) > half_width || std::abs(f.grid.nu(k)) > half_width) out.values(j, k) = 0.0;
    }
  }
  normalize(out);
  return out;
}

double phase_model_discrepancy(const AssemblyDesign& d, double half_width, int n) {
  const double phi0 = assembly_phase(0.0, 0.0, d.config);
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    const double ns = -half_width + 2.0 * half_width * j / (n - 1);
    for (int k = 0; k < n; ++k) {
      const double ni = -half_width + 2.0 * half_width * k / (n - 1);
      const double first = phi0 + d.T_s * ns + d.T_i * ni;
      worst = std::max(worst, std::abs(assembly_phase(ns, ni, d.config) - first));
    }
  }
  return worst;
}

double measure_ridge_slope(const AssemblyConfig& cfg, double half_width, int n) {
  const double step = 2.0 * half_width / (n - 1);
  auto nu = [&](int j) { return -half_width + step * j; };
  std::vector<double> xs, ys;
  // Track the ridge outwards from the degenerate row in both directions; the
  // search on each row is limited to a quarter window around the last peak.
  const int centre = n / 2;
  const int reach = n / 8;
  for (int dir : {+1, -1}) {
    double last = 0.0;
    for (int j = (dir > 0 ? centre : centre - 1); j >= n / 4 && j < 3 * n / 4; j += dir) {
      const double ns = nu(j);
      std::vector<double> row(n, 0.0);
      int best = -1;
      const int lastk = static_cast<int>(std::lround((last + half_width) / step));
      for (int k = std::max(0, lastk - reach); k <= std::min(n - 1, lastk + reach); ++k) {
        row[k] = std::norm(assembly_phasematching(ns, nu(k), cfg));
        if (best < 0 || row[k] > row[best]) best = k;
      }
      const double peak = -half_width + step * refine(row, best);
      xs.push_back(ns);
      ys.push_back(peak);
      last = peak;
    }
  }
  double mx = 0, my = 0;
  for (size_t j = 0; j < xs.size(); ++j) {
    mx += xs[j];
    my += ys[j];
  }
  mx /= xs.size();
  my /= ys.size();
  double sxy = 0, sxx = 0;
  for (size_t j = 0; j < xs.size(); ++j) {
    sxy += (xs[j] - mx) * (ys[j] - my);
    sxx += (xs[j] - mx) * (xs[j] - mx);
  }
  return sxy / sxx;
}

namespace {

std::vector<double> diagonal_profile(const AssemblyConfig& cfg, double half_width, int n) {
  std::vector<double> y(n);
  for (int j = 0; j < n; ++j) {
    const double u = -half_width + 2.0 * half_width * j / (n - 1);
    y[j] = std::abs(assembly_phasematching(u, -u, cfg));
  }
  return y;
}

std::vector<double> maxima(const std::vector<double>& y, double half_width) {
  const int n = static_cast<int>(y.size());
  double peak = 0.0;
  for (double v : y) peak = std::max(peak, v);
  std::vector<double> out;
  for (int j = 1; j + 1 < n; ++j) {
    if (y[j] >= y[j - 1] && y[j] > y[j + 1] && y[j] > 0.5 * peak) {
      out.push_back(-half_width + 2.0 * half_width * refine(y, j) / (n - 1));
    }
  }
  return out;
}

}  // namespace

double measure_ridge_spacing(const AssemblyConfig& cfg, double lambda0_um, double search_half_width, int n) {
  const auto peaks = maxima(diagonal_profile(cfg, search_half_width, n), search_half_width);
  if (peaks.size() < 2) raise(ErrorCode::NumericalFailure, "fewer than two ridges inside the search range");
  double sum = 0.0;
  for (size_t j = 0; j + 1 < peaks.size(); ++j) sum += peaks[j + 1] - peaks[j];
  const double du = sum / (peaks.size() - 1);
  return um_to_nm(wavelength_width(lambda0_um, std::sqrt(2.0) * du));
}

double central_peak_offset(const AssemblyConfig& cfg, double search_half_width, int n) {
  const auto peaks = maxima(diagonal_profile(cfg, search_half_width, n), search_half_width);
  if (peaks.empty()) raise(ErrorCode::NumericalFailure, "no ridge inside the search range");
  double best = peaks.front();
  for (double p : peaks) {
    if (std::abs(p) < std::abs(best)) best = p;
  }
  return best;
}

}  // namespace biphoton
