#pragma once

#include <optional>
#include <utility>

#include "biphoton/jsa.hpp"

namespace biphoton {

struct FactorizabilityReport {
  double cond1_residual = 0.0;        // (4/sigma^2 + gamma tau_s tau_i) / (4/sigma^2)
  std::optional<double> required_sigma;  // rad/ps
  double beta_t_star = 0.0;           // ps^2, chirp that cancels the mixed phase
  double sigma_s = 0.0;               // rad/ps
  double sigma_i = 0.0;               // rad/ps
  double aspect_ratio_r = 1.0;        // max/min of the two widths
  double theta_II = 0.0;              // degrees, phasematching contour angle
  double gvm_residual = 0.0;          // ps, tau_s + tau_i
};

FactorizabilityReport factorizability_report(const PumpConfig& pump, const TaylorCoefficients& coeffs);

/// Pump width that removes the intensity correlation, or none when
/// tau_s tau_i >= 0.
std::optional<double> solve_pump_bandwidth(const TaylorCoefficients& coeffs);
std::optional<double> solve_pump_bandwidth(const CrystalConfig& crystal);

/// Wavelength window (um) scanned by the searches below.
struct WavelengthWindow {
  double lo = 0.0;
  double hi = 0.0;
};

/// Largest window on which both the PDC and the pump wavelength, including
/// the derivative stencil, stay inside the model's validity range.
WavelengthWindow search_window(const DispersionModel& material);

/// Degenerate wavelength where tau_s + tau_i = 0; none without a sign change.
/// Angle-tuned schemes are re-phasematched at every wavelength.
std::optional<double> gvm_wavelength_search(const DispersionModel& material,
                                            const PhasematchScheme& scheme,
                                            std::optional<WavelengthWindow> window = std::nullopt);

struct DecorrelationRange {
  double lo = 0.0;  // um
  double hi = 0.0;  // um
  bool lo_bounded = true;  // false when the interval runs into the window edge
  bool hi_bounded = true;
};

/// Interval where tau_s tau_i < 0, picking the one that contains the GVM
/// point when several exist.
std::optional<DecorrelationRange> decorrelation_range(const DispersionModel& material,
                                                      const PhasematchScheme& scheme,
                                                      std::optional<WavelengthWindow> window = std::nullopt);

struct AsymmetricDesign {
  CrystalConfig crystal;
  TaylorCoefficients coeffs;
  FactorizabilityReport report;
  char matched_photon = 'i';  // 's' or 'i': the photon group-velocity matched to the pump
  double walkoff_ratio = 0.0;  // min |tau| / max |tau|
  bool long_crystal_regime = false;  // sigma * max|tau| > 10
};

/// Throws NotAsymmetric unless one tau vanishes to within 5% of the other.
AsymmetricDesign asymmetric_design(const DispersionModel& material, const PhasematchScheme& scheme,
                                   double lambda_pdc_um, double length_um, const PumpConfig& pump);

struct TemporalReport {
  double dt_s = 0.0;  // ps
  double dt_i = 0.0;  // ps
  double sigma_M_sq = 0.0;  // ps^-2, JTI ~ exp[-2 sigma_M^2 t_s t_i]
  double sigma_M_sq_asymptotic = 0.0;
  // Same quantities without dropping the fourth-order term of the
  // transform's common denominator.
  double dt_s_exact = 0.0;
  double dt_i_exact = 0.0;
  double sigma_M_sq_exact = 0.0;
};

/// Temporal widths and mixed coefficient of the factorable-intensity state
/// exp[-nu_s^2/sigma_s^2 - nu_i^2/sigma_i^2 + i(b_s nu_s^2 + b_i nu_i^2 + b_p nu_s nu_i)],
/// with b_mu = beta_t + beta_mu / 2 and b_p = 2 beta_t + beta_p / 2.
TemporalReport temporal_report(const PumpConfig& pump, const TaylorCoefficients& coeffs,
                               const FactorizabilityReport& report);

/// Temporal quantities recovered from a sampled JTI via its covariance.
struct MeasuredTemporal {
  double dt_s = 0.0;
  double dt_i = 0.0;
  double sigma_M_sq = 0.0;
};

MeasuredTemporal measure_temporal(const JointAmplitude& jti);

}  // namespace biphoton
