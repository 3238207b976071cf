#pragma once

#include <optional>
#include <utility>

#include "biphoton/jsa.hpp"

namespace biphoton {

/// Half-maximum point of |Upsilon_N|^2 in units of N x for large N.
inline constexpr double kUpsilonWidth = 1.39156;

/// sin(N x) / (N sin x), continuous through x = k pi.
double upsilon(int n, double x);

/// N identical crystals separated by N - 1 identical birefringent spacers.
struct AssemblyConfig {
  CrystalConfig crystal;
  DispersionModel spacer;
  PhasematchScheme spacer_scheme;  // photon roles in the spacer; fixed_theta is its cut
  double spacer_h = 0.0;           // um
  int n_crystals = 1;
  int m_integer = 1;

  double spacer_theta() const;
  void validate() const;
};

/// Single-crystal sinc times the exact geometric sum over crystals,
///   sum_{m<N} exp(i m Phi) = exp(i (N-1) Phi / 2) N Upsilon_N(Phi / 2),
/// with Phi = L dk + h dkappa from the full dispersion of both materials.
std::complex<double> assembly_phasematching(double nu_s, double nu_i, const AssemblyConfig& cfg);

/// Accumulated crystal-plus-spacer phase Phi at the given detunings.
double assembly_phase(double nu_s, double nu_i, const AssemblyConfig& cfg);

/// 2 k_p' - k_s' - k_i' at the degenerate point, ps/um.
double mismatch_sum(const DispersionModel& material, const Propagation& prop, double lambda_pdc_um);

/// h/L that satisfies generalized group-velocity matching, or none when the
/// two materials' mismatch sums share a sign.
std::optional<double> generalized_gvm_ratio(const DispersionModel& crystal_material,
                                            const PhasematchScheme& crystal_scheme,
                                            const DispersionModel& spacer_material,
                                            const PhasematchScheme& spacer_scheme, double lambda_pdc_um);

struct SpacerQuantization {
  double h_min = 0.0;  // um, 2 pi / |dkappa0|
  double h = 0.0;      // um, m h_min
  double dkappa0 = 0.0;  // rad/um
};

/// Throws ZeroMismatch when the spacer's degenerate mismatch vanishes.
SpacerQuantization quantize_spacer(const DispersionModel& spacer_material,
                                   const PhasematchScheme& spacer_scheme, double lambda_pdc_um, int m);

struct AssemblyDesign {
  AssemblyConfig config;
  double lambda0 = 0.0;  // um
  double crystal_mismatch_sum = 0.0;  // ps/um
  double spacer_mismatch_sum = 0.0;   // ps/um
  double ratio_h_over_L = 0.0;
  double h_min = 0.0;  // um
  double h = 0.0;      // um
  double L = 0.0;      // um
  double T_s = 0.0;    // ps
  double T_i = 0.0;    // ps
  double T_minus = 0.0;  // ps
  double delta_lambda_ridge_spacing = 0.0;  // nm, perpendicular to the ridges
  double per_axis_ridge_spacing = 0.0;      // nm, projection on each axis
  double delta_lambda_ridge_fwhm = 0.0;     // nm
  double sigma_pump = 0.0;  // rad/ps
  double pump_fwhm_nm = 0.0;           // intensity FWHM of the pump spectrum
  double pump_fwhm_diagonal_nm = 0.0;  // pump envelope width across the nu_s + nu_i diagonal
  double genGVM_residual = 0.0;  // ps
  double contour_slope = 0.0;    // -T_s / T_i

  PumpConfig pump() const;
  /// Half-width (rad/ps) of the per-axis window that isolates the central ridge.
  double central_window() const;
};

/// Throws NoOppositeSign or ZeroMismatch.
AssemblyDesign design_assembly(const DispersionModel& crystal_material,
                               const PhasematchScheme& crystal_scheme,
                               const DispersionModel& spacer_material,
                               const PhasematchScheme& spacer_scheme, double lambda_pdc_um,
                               int n_crystals, int m);

JointAmplitude assembly_jsa(const PumpConfig& pump, const AssemblyConfig& cfg, const FrequencyGrid& grid);

/// Zeroes the amplitude outside |nu_s|, |nu_i| <= half_width and renormalizes.
JointAmplitude window(const JointAmplitude& f, double half_width);

/// Largest |Phi_full - Phi_first_order| over an n x n sample of the square
/// |nu| <= half_width, rad.
double phase_model_discrepancy(const AssemblyDesign& d, double half_width, int n = 64);

/// Slope d nu_i / d nu_s of the central phasematching ridge, tracked row by
/// row on an n x n sample of |phi_N|^2 within |nu| <= half_width.
double measure_ridge_slope(const AssemblyConfig& cfg, double half_width, int n = 256);

/// Ridge spacing (nm) measured as the distance between adjacent maxima of
/// |phi_N| along the nu_s = -nu_i diagonal.
double measure_ridge_spacing(const AssemblyConfig& cfg, double lambda0_um, double search_half_width,
                             int n = 4096);

/// Location (rad/ps, along nu_s = -nu_i) of the |phi_N| maximum closest to
/// degeneracy.
double central_peak_offset(const AssemblyConfig& cfg, double search_half_width, int n = 4096);

}  // namespace biphoton
