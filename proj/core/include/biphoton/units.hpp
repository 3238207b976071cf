#pragma once

// Canonical units inside the library: micrometres, picoseconds, rad/ps.
// Human units (nm, mm, degrees, nm-FWHM bandwidths) are converted here and
// nowhere else.

#include <numbers>

namespace biphoton {

/// Speed of light in vacuum, um/ps.
inline constexpr double kSpeedOfLight = 299.792458;

inline constexpr double kPi = std::numbers::pi;

double omega_from_wavelength(double lambda_um);
double wavelength_from_omega(double omega);

double nm_to_um(double nm);
double um_to_nm(double um);
double mm_to_um(double mm);
double degrees_to_radians(double deg);
double radians_to_degrees(double rad);

/// Width in rad/ps of a wavelength interval `delta_lambda_um` around
/// `lambda_um` (first-order conversion 2 pi c dlambda / lambda^2).
double frequency_width(double lambda_um, double delta_lambda_um);
double wavelength_width(double lambda_um, double delta_omega);

/// Pump bandwidth conversion. Config files give the intensity FWHM in nm;
/// internally sigma is the 1/e half-width of the amplitude exp[-(nu/sigma)^2]:
///   sigma = (2 pi c / lambda^2) * FWHM / sqrt(2 ln 2).
double sigma_from_fwhm_nm(double center_nm, double fwhm_nm);
double fwhm_nm_from_sigma(double center_nm, double sigma);

}  // namespace biphoton
