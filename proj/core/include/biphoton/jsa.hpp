#pragma once

#include <complex>
#include <optional>

#include <Eigen/Dense>

#include "biphoton/materials.hpp"

namespace biphoton {

/// Width parameter of the Gaussian that replaces sinc(x) in the quadratic
/// model: sinc(b x) ~ exp(-gamma b^2 x^2) with equal FWHM.
inline constexpr double kSincGaussGamma = 0.193;

struct PumpConfig {
  double omega_p0 = 0.0;  // rad/ps, pump centre (2 omega0)
  double sigma = 0.0;     // rad/ps, 1/e amplitude half-width
  double beta_t = 0.0;    // ps^2, quadratic spectral phase
};

PumpConfig make_pump(double center_nm, double fwhm_nm, double beta_t = 0.0);

struct CrystalConfig {
  DispersionModel material;
  PhasematchScheme scheme;
  double theta = 0.0;   // rad
  double length = 0.0;  // um
  std::optional<double> qpm_period;  // um
  int qpm_sign = 1;     // grating vector sign, equals sign of the bare dk0
  double omega0 = 0.0;  // rad/ps, degenerate centre

  Propagation propagation() const { return make_propagation(scheme, theta); }
};

/// Builds a phasematched degenerate crystal. Without fixed_theta in the
/// scheme the cut angle is solved; with quasi_phasematch the poling period is
/// solved instead. Throws NoPhasematch if the residual mismatch exceeds 1e-9.
CrystalConfig make_crystal(const DispersionModel& material, const PhasematchScheme& scheme,
                           double lambda_pdc_um, double length_um, bool quasi_phasematch = false);

/// Angle-tuned crystals are cut to phasematch; crystals with a fixed angle
/// are poled when their bare mismatch does not vanish.
CrystalConfig make_crystal_auto(const DispersionModel& material, const PhasematchScheme& scheme,
                                double lambda_pdc_um, double length_um);

/// Phase mismatch including the poling grating, rad/um.
double effective_mismatch(const CrystalConfig& crystal, double omega_s, double omega_i);

struct TaylorCoefficients {
  double tau_s = 0.0;   // ps
  double tau_i = 0.0;   // ps
  double beta_s = 0.0;  // ps^2
  double beta_i = 0.0;  // ps^2
  double beta_p = 0.0;  // ps^2
  double residual_dk0 = 0.0;  // L dk0
};

TaylorCoefficients taylor_coefficients(const CrystalConfig& crystal);

/// Uniform detuning grid nu_j = (j - n/2) * (2 half_span / n) around omega0
/// on both axes.
struct FrequencyGrid {
  double omega0 = 0.0;
  double half_span = 0.0;
  int n = 256;

  double spacing() const { return 2.0 * half_span / n; }
  double nu(int j) const { return (j - n / 2) * spacing(); }
  void validate() const;
};

/// Conjugate time grid of a FrequencyGrid; t_j = t0 + (j - n/2) dt.
struct TimeGrid {
  int n = 0;
  double dt = 0.0;
  double t0_s = 0.0;
  double t0_i = 0.0;

  double t_s(int j) const { return t0_s + (j - n / 2) * dt; }
  double t_i(int j) const { return t0_i + (j - n / 2) * dt; }
};

enum class Domain { Spectral, Temporal };

/// Sampled joint amplitude. Rows index the signal axis, columns the idler.
struct JointAmplitude {
  Domain domain = Domain::Spectral;
  FrequencyGrid grid;
  TimeGrid time;  // meaningful for the temporal domain only
  Eigen::MatrixXcd values;

  double cell_area() const;
  double norm() const;  // sum |f|^2 times cell area
  double coordinate_s(int j) const;
  double coordinate_i(int k) const;
};

enum class JsaModel { FullSinc, Gaussian };

std::complex<double> pump_envelope(double nu_sum, const PumpConfig& pump);

/// sinc(L dk / 2) exp(i L dk / 2) with dk from the full dispersion.
std::complex<double> phasematching_sinc(double nu_s, double nu_i, const CrystalConfig& crystal);

/// Quadratic-model joint amplitude (unnormalized, unit magnitude at origin).
std::complex<double> gaussian_model_jsa(double nu_s, double nu_i, const PumpConfig& pump,
                                        const TaylorCoefficients& coeffs);

/// Marginal amplitude widths (rad/ps) of the quadratic-model |f|^2 including
/// the correlation term. Throws DegenerateGrid when the form is singular.
std::pair<double, double> marginal_widths(const PumpConfig& pump, const TaylorCoefficients& coeffs);

/// n = 256, half-span = 4 times the larger marginal width.
FrequencyGrid default_grid(const PumpConfig& pump, const CrystalConfig& crystal, int n = 256);

JointAmplitude jsa_grid(const PumpConfig& pump, const CrystalConfig& crystal,
                        const FrequencyGrid& grid, JsaModel model);

/// Gaussian-model amplitude on a grid from bare coefficients.
JointAmplitude gaussian_model_grid(const PumpConfig& pump, const TaylorCoefficients& coeffs,
                                   const FrequencyGrid& grid);

/// Scales values so that sum |f|^2 dA = 1. Throws DegenerateGrid on zero.
void normalize(JointAmplitude& f);

/// Unitary 2-D Fourier transform to (t_s, t_i), with each axis recentred on
/// the circular centroid of its marginal. Throws BadDomain for temporal input.
JointAmplitude joint_temporal_intensity(const JointAmplitude& jsa);

struct JointMoments {
  double mean_s = 0.0;
  double mean_i = 0.0;
  double var_s = 0.0;
  double var_i = 0.0;
  double covariance = 0.0;
  double correlation = 0.0;  // Pearson coefficient of |f|^2
};

JointMoments moments(const JointAmplitude& f);

/// Intensity-weighted estimate of the bilinear phase coefficient c in
/// arg f ~ c nu_s nu_i, from the complex mixed second difference.
double mixed_phase_coefficient(const JointAmplitude& f);

/// ||I_a - I_b|| / ||I_b|| for sum-normalized intensities on equal grids.
double intensity_distance(const JointAmplitude& a, const JointAmplitude& b);

}  // namespace biphoton
