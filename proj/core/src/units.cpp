#include "biphoton/units.hpp"

#include <cmath>

#include "biphoton/error.hpp"

namespace biphoton {

namespace {
const double kFwhmToHalfWidth = std::sqrt(2.0 * std::log(2.0));
}

double omega_from_wavelength(double lambda_um) {
  if (!(lambda_um > 0.0)) {
    raise(ErrorCode::InvalidArgument, "wavelength must be positive");
  }
  return 2.0 * kPi * kSpeedOfLight / lambda_um;
}

double wavelength_from_omega(double omega) {
  if (!(omega > 0.0)) {
    raise(ErrorCode::InvalidArgument, "frequency must be positive");
  }
  return 2.0 * kPi * kSpeedOfLight / omega;
}

double nm_to_um(double nm) { return nm * 1e-3; }
double um_to_nm(double um) { return um * 1e3; }
double mm_to_um(double mm) { return mm * 1e3; }
double degrees_to_radians(double deg) { return deg * kPi / 180.0; }
double radians_to_degrees(double rad) { return rad * 180.0 / kPi; }

double frequency_width(double lambda_um, double delta_lambda_um) {
  return 2.0 * kPi * kSpeedOfLight * delta_lambda_um / (lambda_um * lambda_um);
}

double wavelength_width(double lambda_um, double delta_omega) {
  return lambda_um * lambda_um * delta_omega / (2.0 * kPi * kSpeedOfLight);
}

double sigma_from_fwhm_nm(double center_nm, double fwhm_nm) {
  if (!(fwhm_nm > 0.0)) {
    raise(ErrorCode::InvalidArgument, "bandwidth FWHM must be positive");
  }
  return frequency_width(nm_to_um(center_nm), nm_to_um(fwhm_nm)) / kFwhmToHalfWidth;
}

double fwhm_nm_from_sigma(double center_nm, double sigma) {
  return um_to_nm(wavelength_width(nm_to_um(center_nm), sigma * kFwhmToHalfWidth));
}

}  // namespace biphoton
