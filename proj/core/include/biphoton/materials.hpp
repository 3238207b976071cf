#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace biphoton {

enum class Material { KDP, BBO, KTP, Calcite, Custom };

std::string to_string(Material m);
Material material_from_string(const std::string& s);

enum class Polarization { Ordinary, Extraordinary };

std::string to_string(Polarization p);
Polarization polarization_from_string(const std::string& s);

/// A ray inside a uniaxial crystal. theta is the angle to the optic axis and
/// is ignored for the ordinary ray.
struct RaySpec {
  Polarization polarization = Polarization::Ordinary;
  double theta = 0.0;
};

/// One additive Sellmeier term, lambda in um:
///   Resonance  B lambda^2 / (lambda^2 - C)
///   Pole       B / (lambda^2 - C)
///   Power      B lambda^C
struct SellmeierTerm {
  enum class Kind { Resonance, Pole, Power };
  Kind kind = Kind::Resonance;
  double b = 0.0;
  double c = 0.0;
};

/// n^2(lambda) = A + sum of terms.
struct SellmeierLaw {
  double a = 1.0;
  std::vector<SellmeierTerm> terms;
};

/// n(omega) = sum_j coefficients[j] omega^j, omega in rad/ps. Used for
/// synthetic dispersion in tests and for hand-built models.
struct FrequencyPolynomialLaw {
  std::vector<double> coefficients;
};

using IndexLaw = std::variant<SellmeierLaw, FrequencyPolynomialLaw>;

/// Collinear, frequency-degenerate type-II scheme. Which principal ray each
/// photon travels as is explicit; fixed_theta is set for crystals that are
/// not angle tuned (x-cut KTP, the spacer material).
struct PhasematchScheme {
  Polarization pump = Polarization::Extraordinary;
  Polarization signal = Polarization::Extraordinary;
  Polarization idler = Polarization::Ordinary;
  std::optional<double> fixed_theta;
};

struct DispersionModel {
  Material id = Material::Custom;
  std::string name;
  IndexLaw ordinary;
  IndexLaw extraordinary;
  double lambda_min = 0.0;  // um
  double lambda_max = 0.0;  // um
  std::string source;
  PhasematchScheme default_scheme;
};

/// Rays of pump, signal and idler for a scheme at a given cut angle.
struct Propagation {
  RaySpec pump;
  RaySpec signal;
  RaySpec idler;
};

Propagation make_propagation(const PhasematchScheme& scheme, double theta);

/// Throws OutOfRange when lambda lies outside the model's validity window.
double refractive_index(const DispersionModel& model, const RaySpec& ray, double lambda_um);

/// k = n omega / c in rad/um.
double wavenumber(const DispersionModel& model, const RaySpec& ray, double omega);

/// Stencil half-width of the numerical derivatives, relative to omega.
inline constexpr double kDerivativeStep = 1e-4;

/// dk/domega in ps/um (central difference, one Richardson level).
double inverse_group_velocity(const DispersionModel& model, const RaySpec& ray, double omega,
                              double relative_step = kDerivativeStep);

/// d^2k/domega^2 in ps^2/um.
double gvd(const DispersionModel& model, const RaySpec& ray, double omega,
           double relative_step = kDerivativeStep);

/// Magnitude of the extraordinary Poynting walkoff, degrees.
double walkoff_angle(const DispersionModel& model, double theta, double lambda_um);

/// dk = k_p(omega_s + omega_i) - k_s(omega_s) - k_i(omega_i), rad/um.
double phase_mismatch(const DispersionModel& model, const Propagation& prop,
                      double omega_s, double omega_i);

/// dk at the degenerate point omega_s = omega_i = 2 pi c / lambda_pdc.
double degenerate_mismatch(const DispersionModel& model, const Propagation& prop,
                           double lambda_pdc_um);

/// Cut angle that zeroes the degenerate mismatch. Throws NoPhasematch if no
/// sign change exists on (0, pi/2).
double phasematching_angle(const DispersionModel& model, const PhasematchScheme& scheme,
                           double lambda_pdc_um);

/// Cut angle of the scheme: fixed_theta if set, else the phasematching angle.
double cut_angle(const DispersionModel& model, const PhasematchScheme& scheme,
                 double lambda_pdc_um);

/// Poling period 2 pi / |dk0| in um. Throws AlreadyMatched when |dk0| < 1e-12.
double qpm_period(const DispersionModel& model, const PhasematchScheme& scheme,
                  double lambda_pdc_um);

}  // namespace biphoton
