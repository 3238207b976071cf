#include "biphoton/jsa.hpp"

#include <cmath>
#include <mutex>
#include <vector>

#include <fftw3.h>

#include "biphoton/error.hpp"
#include "biphoton/units.hpp"

namespace biphoton {

namespace {

using cd = std::complex<double>;

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

// FFTW's planner is not reentrant; execution on distinct buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// Forward 2-D DFT of a row-major n x n buffer in place.
void fft2(std::vector<cd>& buf, int n) {
  auto* data = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_2d(n, n, data, data, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  if (plan == nullptr) raise(ErrorCode::NumericalFailure, "FFT plan creation failed");
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(plan);
}

// Centred transform with the time origin at (t0_s, t0_i):
//   F(t_j, t_k) = dnu^2 / (2 pi) sum f(nu_m, nu_l) exp(-i (nu_m t_j + nu_l t_k)).
Eigen::MatrixXcd centred_transform(const JointAmplitude& f, double t0_s, double t0_i) {
  const int n = f.grid.n;
  const double dnu = f.grid.spacing();
  std::vector<cd> ps(n), pi(n);
  for (int m = 0; m < n; ++m) {
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    ps[m] = sign * std::polar(1.0, -f.grid.nu(m) * t0_s);
    pi[m] = sign * std::polar(1.0, -f.grid.nu(m) * t0_i);
  }
  std::vector<cd> buf(static_cast<size_t>(n) * n);
  for (int m = 0; m < n; ++m) {
    for (int l = 0; l < n; ++l) buf[static_cast<size_t>(m) * n + l] = f.values(m, l) * ps[m] * pi[l];
  }
  fft2(buf, n);
  const double scale = dnu * dnu / (2.0 * kPi);
  Eigen::MatrixXcd out(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const double sign = ((j + k) % 2 == 0) ? 1.0 : -1.0;
      out(j, k) = scale * sign * buf[static_cast<size_t>(j) * n + k];
    }
  }
  return out;
}

// Circular centroid offset of a periodic marginal, in grid cells from n/2.
double circular_offset(const Eigen::VectorXd& p) {
  const int n = static_cast<int>(p.size());
  cd acc = 0.0;
  for (int j = 0; j < n; ++j) acc += p(j) * std::polar(1.0, 2.0 * kPi * (j - n / 2) / n);
  if (std::abs(acc) == 0.0) return 0.0;
  return std::arg(acc) * n / (2.0 * kPi);
}

}  // namespace

PumpConfig make_pump(double center_nm, double fwhm_nm, double beta_t) {
  PumpConfig p;
  p.omega_p0 = omega_from_wavelength(nm_to_um(center_nm));
  p.sigma = sigma_from_fwhm_nm(center_nm, fwhm_nm);
  p.beta_t = beta_t;
  return p;
}

CrystalConfig make_crystal(const DispersionModel& material, const PhasematchScheme& scheme,
                           double lambda_pdc_um, double length_um, bool quasi_phasematch) {
  if (!(length_um > 0.0)) raise(ErrorCode::InvalidArgument, "crystal length must be positive");
  CrystalConfig c;
  c.material = material;
  c.scheme = scheme;
  c.length = length_um;
  c.omega0 = omega_from_wavelength(lambda_pdc_um);
  if (quasi_phasematch) {
    c.theta = scheme.fixed_theta.value_or(kPi / 2);
    const double dk0 = degenerate_mismatch(material, c.propagation(), lambda_pdc_um);
    c.qpm_period = qpm_period(material, scheme, lambda_pdc_um);
    c.qpm_sign = dk0 < 0 ? -1 : 1;
    c.scheme.fixed_theta = c.theta;
  } else {
    c.theta = cut_angle(material, scheme, lambda_pdc_um);
  }
  const double residual = effective_mismatch(c, c.omega0, c.omega0);
  if (std::abs(residual) > 1e-9) {
    raise(ErrorCode::NoPhasematch, material.name + ": crystal not phasematched at the degenerate point");
  }
  return c;
}

CrystalConfig make_crystal_auto(const DispersionModel& material, const PhasematchScheme& scheme,
                                double lambda_pdc_um, double length_um) {
  if (scheme.fixed_theta) {
    const double dk0 =
        degenerate_mismatch(material, make_propagation(scheme, *scheme.fixed_theta), lambda_pdc_um);
    if (std::abs(dk0) > 1e-9) return make_crystal(material, scheme, lambda_pdc_um, length_um, true);
  }
  return make_crystal(material, scheme, lambda_pdc_um, length_um, false);
}

double effective_mismatch(const CrystalConfig& crystal, double omega_s, double omega_i) {
  double dk = phase_mismatch(crystal.material, crystal.propagation(), omega_s, omega_i);
  if (crystal.qpm_period) dk -= crystal.qpm_sign * 2.0 * kPi / *crystal.qpm_period;
  return dk;
}

TaylorCoefficients taylor_coefficients(const CrystalConfig& crystal) {
  const auto prop = crystal.propagation();
  const auto& m = crystal.material;
  const double w0 = crystal.omega0;
  const double L = crystal.length;
  const double kp1 = inverse_group_velocity(m, prop.pump, 2 * w0);
  const double kp2 = gvd(m, prop.pump, 2 * w0);
  TaylorCoefficients t;
  t.tau_s = L * (inverse_group_velocity(m, prop.signal, w0) - kp1);
  t.tau_i = L * (inverse_group_velocity(m, prop.idler, w0) - kp1);
  t.beta_s = L / 2 * (gvd(m, prop.signal, w0) - kp2);
  t.beta_i = L / 2 * (gvd(m, prop.idler, w0) - kp2);
  t.beta_p = L * kp2;
  t.residual_dk0 = L * effective_mismatch(crystal, w0, w0);
  return t;
}

void FrequencyGrid::validate() const {
  if (n < 32 || !is_power_of_two(n)) {
    raise(ErrorCode::InvalidArgument, "grid size must be a power of two >= 32");
  }
  if (!(half_span > 0.0) || !std::isfinite(half_span)) {
    raise(ErrorCode::InvalidArgument, "grid half-span must be positive");
  }
}

double JointAmplitude::cell_area() const {
  const double d = domain == Domain::Spectral ? grid.spacing() : time.dt;
  return d * d;
}

double JointAmplitude::norm() const { return values.squaredNorm() * cell_area(); }

double JointAmplitude::coordinate_s(int j) const {
  return domain == Domain::Spectral ? grid.nu(j) : time.t_s(j);
}

double JointAmplitude::coordinate_i(int k) const {
  return domain == Domain::Spectral ? grid.nu(k) : time.t_i(k);
}

std::complex<double> pump_envelope(double nu_sum, const PumpConfig& pump) {
  const double x = nu_sum / pump.sigma;
  return std::exp(-x * x) * std::polar(1.0, pump.beta_t * nu_sum * nu_sum);
}

std::complex<double> phasematching_sinc(double nu_s, double nu_i, const CrystalConfig& crystal) {
  const double x = crystal.length *
                   effective_mismatch(crystal, crystal.omega0 + nu_s, crystal.omega0 + nu_i) / 2.0;
  return sinc(x) * std::polar(1.0, x);
}

std::complex<double> gaussian_model_jsa(double nu_s, double nu_i, const PumpConfig& pump,
                                        const TaylorCoefficients& c) {
  const double u = c.tau_s * nu_s + c.tau_i * nu_i;
  const double phase =
      (u + c.beta_s * nu_s * nu_s + c.beta_i * nu_i * nu_i + c.beta_p * nu_s * nu_i) / 2.0;
  return pump_envelope(nu_s + nu_i, pump) * std::exp(-kSincGaussGamma * u * u / 4.0) *
         std::polar(1.0, phase);
}

std::pair<double, double> marginal_widths(const PumpConfig& pump, const TaylorCoefficients& c) {
  // |f|^2 = exp(-2 nu^T A nu); the marginal amplitude width on each axis is
  // sqrt of the corresponding diagonal element of A^-1.
  const double s2 = 1.0 / (pump.sigma * pump.sigma);
  const double g = kSincGaussGamma / 4.0;
  const double a = s2 + g * c.tau_s * c.tau_s;
  const double b = s2 + g * c.tau_s * c.tau_i;
  const double d = s2 + g * c.tau_i * c.tau_i;
  const double det = a * d - b * b;
  if (!(det > 1e-14 * (a + d) * (a + d))) {
    raise(ErrorCode::DegenerateGrid, "joint spectrum unbounded in the quadratic model");
  }
  return {std::sqrt(d / det), std::sqrt(a / det)};
}

FrequencyGrid default_grid(const PumpConfig& pump, const CrystalConfig& crystal, int n) {
  const auto [ws, wi] = marginal_widths(pump, taylor_coefficients(crystal));
  FrequencyGrid g{crystal.omega0, 4.0 * std::max(ws, wi), n};
  g.validate();
  return g;
}

void normalize(JointAmplitude& f) {
  const double nrm = f.norm();
  if (!(nrm > 0.0) || !std::isfinite(nrm)) {
    raise(ErrorCode::DegenerateGrid, "joint amplitude vanishes on the grid");
  }
  f.values /= std::sqrt(nrm);
}

JointAmplitude gaussian_model_grid(const PumpConfig& pump, const TaylorCoefficients& coeffs,
                                   const FrequencyGrid& grid) {
  grid.validate();
  JointAmplitude f;
  f.grid = grid;
  f.values.resize(grid.n, grid.n);
  for (int j = 0; j < grid.n; ++j) {
    for (int k = 0; k < grid.n; ++k) f.values(j, k) = gaussian_model_jsa(grid.nu(j), grid.nu(k), pump, coeffs);
  }
  normalize(f);
  return f;
}

JointAmplitude jsa_grid(const PumpConfig& pump, const CrystalConfig& crystal,
                        const FrequencyGrid& grid, JsaModel model) {
  grid.validate();
  const auto coeffs = taylor_coefficients(crystal);
  // Widths at fixed partner detuning, 1/sqrt(1/sigma^2 + gamma tau^2 / 4);
  // finite even when the marginals are not.
  const double s2 = 1.0 / (pump.sigma * pump.sigma);
  const double ws = 1.0 / std::sqrt(s2 + kSincGaussGamma * coeffs.tau_s * coeffs.tau_s / 4.0);
  const double wi = 1.0 / std::sqrt(s2 + kSincGaussGamma * coeffs.tau_i * coeffs.tau_i / 4.0);
  if (grid.half_span < 0.1 * std::min(ws, wi)) {
    raise(ErrorCode::DegenerateGrid, "grid half-span is below a tenth of the narrowest spectral width");
  }
  if (model == JsaModel::Gaussian) return gaussian_model_grid(pump, coeffs, grid);

  if (grid.omega0 - grid.half_span <= 0.0) raise(ErrorCode::OutOfRange, "grid reaches non-positive frequency");
  JointAmplitude f;
  f.grid = grid;
  f.values.resize(grid.n, grid.n);
  const double offset = 2.0 * grid.omega0 - pump.omega_p0;
  for (int j = 0; j < grid.n; ++j) {
    const double ns = grid.nu(j) + grid.omega0 - crystal.omega0;
    for (int k = 0; k < grid.n; ++k) {
      const double ni = grid.nu(k) + grid.omega0 - crystal.omega0;
      f.values(j, k) = pump_envelope(grid.nu(j) + grid.nu(k) + offset, pump) *
                       phasematching_sinc(ns, ni, crystal);
    }
  }
  normalize(f);
  return f;
}

JointAmplitude joint_temporal_intensity(const JointAmplitude& jsa) {
  if (jsa.domain != Domain::Spectral) raise(ErrorCode::BadDomain, "input is not a spectral amplitude");
  jsa.grid.validate();
  if (jsa.values.rows() != jsa.grid.n || jsa.values.cols() != jsa.grid.n) {
    raise(ErrorCode::BadDomain, "amplitude shape does not match its grid");
  }
  const int n = jsa.grid.n;
  const double dt = 2.0 * kPi / (n * jsa.grid.spacing());

  // First pass locates the emission-time centroids; the second transform is
  // centred on them so the wavepacket does not wrap around the periodic grid.
  const Eigen::MatrixXcd first = centred_transform(jsa, 0.0, 0.0);
  const Eigen::MatrixXd inten = first.cwiseAbs2();
  const double t0_s = circular_offset(inten.rowwise().sum()) * dt;
  const double t0_i = circular_offset(inten.colwise().sum().transpose()) * dt;

  JointAmplitude out;
  out.domain = Domain::Temporal;
  out.grid = jsa.grid;
  out.time = {n, dt, t0_s, t0_i};
  out.values = centred_transform(jsa, t0_s, t0_i);
  return out;
}

JointMoments moments(const JointAmplitude& f) {
  const int n = static_cast<int>(f.values.rows());
  const Eigen::MatrixXd p = f.values.cwiseAbs2();
  const double total = p.sum();
  if (!(total > 0.0)) raise(ErrorCode::DegenerateGrid, "joint amplitude vanishes on the grid");
  JointMoments m;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      m.mean_s += p(j, k) * f.coordinate_s(j);
      m.mean_i += p(j, k) * f.coordinate_i(k);
    }
  }
  m.mean_s /= total;
  m.mean_i /= total;
  for (int j = 0; j < n; ++j) {
    const double xs = f.coordinate_s(j) - m.mean_s;
    for (int k = 0; k < n; ++k) {
      const double xi = f.coordinate_i(k) - m.mean_i;
      m.var_s += p(j, k) * xs * xs;
      m.var_i += p(j, k) * xi * xi;
      m.covariance += p(j, k) * xs * xi;
    }
  }
  m.var_s /= total;
  m.var_i /= total;
  m.covariance /= total;
  m.correlation = m.covariance / std::sqrt(m.var_s * m.var_i);
  return m;
}

double mixed_phase_coefficient(const JointAmplitude& f) {
  const int n = static_cast<int>(f.values.rows());
  const double h = f.domain == Domain::Spectral ? f.grid.spacing() : f.time.dt;
  const double peak = f.values.cwiseAbs().maxCoeff();
  double acc = 0.0;
  double weight = 0.0;
  for (int j = 1; j + 1 < n; ++j) {
    for (int k = 1; k + 1 < n; ++k) {
      const double w = std::norm(f.values(j, k));
      if (std::sqrt(w) < 1e-3 * peak) continue;
      const cd r = f.values(j + 1, k + 1) * f.values(j - 1, k - 1) *
                   std::conj(f.values(j + 1, k - 1)) * std::conj(f.values(j - 1, k + 1));
      if (std::abs(r) == 0.0) continue;
      acc += w * std::arg(r) / (4.0 * h * h);
      weight += w;
    }
  }
  if (weight == 0.0) raise(ErrorCode::DegenerateGrid, "joint amplitude vanishes on the grid");
  return acc / weight;
}

double intensity_distance(const JointAmplitude& a, const JointAmplitude& b) {
  if (a.values.rows() != b.values.rows() || a.values.cols() != b.values.cols()) {
    raise(ErrorCode::InvalidArgument, "intensity comparison needs equal grids");
  }
  Eigen::MatrixXd ia = a.values.cwiseAbs2();
  Eigen::MatrixXd ib = b.values.cwiseAbs2();
  ia /= ia.sum();
  ib /= ib.sum();
  return (ia - ib).norm() / ib.norm();
}

}  // namespace biphoton
