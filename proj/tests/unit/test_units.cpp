#include <doctest.h>

#include "biphoton/units.hpp"
#include "support.hpp"

using namespace biphoton;
using biphoton::test::rel;

TEST_SUITE("units") {
  TEST_CASE("wavelength and frequency round trip") {
    for (double nm : {200.0, 415.0, 800.0, 1568.0, 3400.0}) {
      const double w = omega_from_wavelength(nm_to_um(nm));
      CHECK(rel(um_to_nm(wavelength_from_omega(w)), nm) < 1e-12);
    }
    CHECK(omega_from_wavelength(2 * kPi * kSpeedOfLight) == doctest::Approx(1.0).epsilon(1e-15));
  }

  TEST_CASE("human unit conversions") {
    CHECK(mm_to_um(20.0) == 20000.0);
    CHECK(radians_to_degrees(degrees_to_radians(67.77)) == doctest::Approx(67.77).epsilon(1e-14));
    CHECK(nm_to_um(um_to_nm(1.234)) == doctest::Approx(1.234).epsilon(1e-15));
  }

  TEST_CASE("bandwidth conversions") {
    const double dw = frequency_width(0.8, 0.01);
    CHECK(dw == doctest::Approx(2 * kPi * kSpeedOfLight * 0.01 / 0.64).epsilon(1e-14));
    CHECK(rel(wavelength_width(0.8, dw), 0.01) < 1e-12);

    // sigma is the 1/e amplitude half-width; intensity FWHM = sigma sqrt(2 ln 2).
    const double s = sigma_from_fwhm_nm(415.0, 5.0);
    CHECK(rel(s * std::sqrt(2 * std::log(2.0)), frequency_width(0.415, 0.005)) < 1e-12);
    for (double fwhm : {0.1, 1.48, 5.0, 12.0}) {
      CHECK(rel(fwhm_nm_from_sigma(400.0, sigma_from_fwhm_nm(400.0, fwhm)), fwhm) < 1e-9);
    }
  }
}
