#include "biphoton/materials.hpp"

#include <cctype>
#include <cmath>
#include <quadmath.h>
#include <sstream>

#include "biphoton/error.hpp"
#include "biphoton/units.hpp"

namespace biphoton {

namespace {

using real = long double;
// Derivative stencils run in binary128 so that the second difference is
// truncation limited rather than roundoff limited.
__extension__ typedef __float128 quad;


template <typename R>
constexpr R two_pi_c() {
  return static_cast<R>(2) * static_cast<R>(3.141592653589793238462643383279502884L) * static_cast<R>(kSpeedOfLight);
}

inline real sqrt_(real x) { return std::sqrt(x); }
inline real pow_(real x, real y) { return std::pow(x, y); }
inline real sin_(real x) { return std::sin(x); }
inline real cos_(real x) { return std::cos(x); }
inline quad sqrt_(quad x) { return sqrtq(x); }
inline quad pow_(quad x, quad y) { return powq(x, y); }
inline quad sin_(quad x) { return sinq(x); }
inline quad cos_(quad x) { return cosq(x); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

template <typename R>
R evaluate(const SellmeierLaw& law, R lambda) {
  const R l2 = lambda * lambda;
  R n2 = law.a;
  for (const auto& t : law.terms) {
    const R b = t.b, c = t.c;
    switch (t.kind) {
      case SellmeierTerm::Kind::Resonance: n2 += b * l2 / (l2 - c); break;
      case SellmeierTerm::Kind::Pole: n2 += b / (l2 - c); break;
      case SellmeierTerm::Kind::Power: n2 += b * pow_(lambda, c); break;
    }
  }
  return sqrt_(n2);
}

template <typename R>
R evaluate(const FrequencyPolynomialLaw& law, R lambda) {
  const R omega = two_pi_c<R>() / lambda;
  R n = 0;
  for (auto it = law.coefficients.rbegin(); it != law.coefficients.rend(); ++it) {
    n = n * omega + static_cast<R>(*it);
  }
  return n;
}

template <typename R>
R principal_index(const IndexLaw& law, R lambda) {
  return std::visit([lambda](const auto& l) { return evaluate(l, lambda); }, law);
}

void check_range(const DispersionModel& model, real lambda) {
  // Tiny slack so that grid points computed as 2 pi c / omega at the window
  // boundary are not rejected for roundoff.
  const real slack = 1e-12L * model.lambda_max;
  if (!(lambda >= model.lambda_min - slack && lambda <= model.lambda_max + slack)) {
    raise(ErrorCode::OutOfRange, model.name + ": wavelength " + fmt(static_cast<double>(lambda)) +
                                     " um outside [" + fmt(model.lambda_min) + ", " +
                                     fmt(model.lambda_max) + "] um");
  }
}

template <typename R>
R index_t(const DispersionModel& model, const RaySpec& ray, R lambda) {
  check_range(model, static_cast<real>(lambda));
  const R no = principal_index(model.ordinary, lambda);
  R n = no;
  if (ray.polarization == Polarization::Extraordinary) {
    const R ne = principal_index(model.extraordinary, lambda);
    const R c = cos_(static_cast<R>(ray.theta));
    const R s = sin_(static_cast<R>(ray.theta));
    n = static_cast<R>(1) / sqrt_(c * c / (no * no) + s * s / (ne * ne));
  }
  const double nd = static_cast<double>(n);
  if (!std::isfinite(nd) || nd <= 1.0) {
    raise(ErrorCode::NumericalFailure, model.name + ": unphysical index " + fmt(nd) + " at " +
                                           fmt(static_cast<double>(lambda)) + " um");
  }
  return n;
}

real index_l(const DispersionModel& model, const RaySpec& ray, real lambda) { return index_t(model, ray, lambda); }

template <typename R>
R k_t(const DispersionModel& model, const RaySpec& ray, R omega) {
  if (!(omega > 0)) raise(ErrorCode::InvalidArgument, "frequency must be positive");
  return index_t(model, ray, two_pi_c<R>() / omega) * omega / static_cast<R>(kSpeedOfLight);
}

real k_l(const DispersionModel& model, const RaySpec& ray, real omega) { return k_t(model, ray, omega); }

quad first_difference(const DispersionModel& model, const RaySpec& ray, quad omega, quad h) {
  return (k_t(model, ray, omega + h) - k_t(model, ray, omega - h)) / (2 * h);
}

quad second_difference(const DispersionModel& model, const RaySpec& ray, quad omega, quad h) {
  return (k_t(model, ray, omega + h) - 2 * k_t(model, ray, omega) + k_t(model, ray, omega - h)) / (h * h);
}

}  // namespace

std::string to_string(Material m) {
  switch (m) {
    case Material::KDP: return "KDP";
    case Material::BBO: return "BBO";
    case Material::KTP: return "KTP";
    case Material::Calcite: return "CALCITE";
    case Material::Custom: return "CUSTOM";
  }
  return "CUSTOM";
}

Material material_from_string(const std::string& s) {
  std::string u;
  for (char ch : s) u += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  if (u == "KDP") return Material::KDP;
  if (u == "BBO") return Material::BBO;
  if (u == "KTP" || u == "PPKTP") return Material::KTP;
  if (u == "CALCITE") return Material::Calcite;
  if (u == "CUSTOM") return Material::Custom;
  raise(ErrorCode::InvalidArgument, "unknown material '" + s + "'");
}

std::string to_string(Polarization p) { return p == Polarization::Ordinary ? "o" : "e"; }

Polarization polarization_from_string(const std::string& s) {
  if (s == "o" || s == "ordinary") return Polarization::Ordinary;
  if (s == "e" || s == "extraordinary") return Polarization::Extraordinary;
  raise(ErrorCode::InvalidArgument, "unknown polarization '" + s + "'");
}

Propagation make_propagation(const PhasematchScheme& scheme, double theta) {
  return {{scheme.pump, theta}, {scheme.signal, theta}, {scheme.idler, theta}};
}

double refractive_index(const DispersionModel& model, const RaySpec& ray, double lambda_um) {
  if (!std::isfinite(ray.theta)) raise(ErrorCode::InvalidArgument, "ray angle must be finite");
  return static_cast<double>(index_l(model, ray, lambda_um));
}

double wavenumber(const DispersionModel& model, const RaySpec& ray, double omega) {
  return static_cast<double>(k_l(model, ray, omega));
}

double inverse_group_velocity(const DispersionModel& model, const RaySpec& ray, double omega,
                              double relative_step) {
  const quad w = omega;
  const quad h = relative_step * w;
  const quad d = (4 * first_difference(model, ray, w, h / 2) - first_difference(model, ray, w, h)) / 3;
  return static_cast<double>(d);
}

double gvd(const DispersionModel& model, const RaySpec& ray, double omega, double relative_step) {
  const quad w = omega;
  const quad h = relative_step * w;
  const quad d = (4 * second_difference(model, ray, w, h / 2) - second_difference(model, ray, w, h)) / 3;
  return static_cast<double>(d);
}

double walkoff_angle(const DispersionModel& model, double theta, double lambda_um) {
  const RaySpec o{Polarization::Ordinary, 0.0};
  const RaySpec e{Polarization::Extraordinary, theta};
  const real no = index_l(model, o, lambda_um);
  const real ne = index_l(model, {Polarization::Extraordinary, kPi / 2}, lambda_um);
  const real nt = index_l(model, e, lambda_um);
  const real arg = nt * nt / 2.0L * (1.0L / (ne * ne) - 1.0L / (no * no)) *
                   std::sin(2.0L * static_cast<real>(theta));
  return radians_to_degrees(std::abs(static_cast<double>(std::atan(arg))));
}

double phase_mismatch(const DispersionModel& model, const Propagation& prop, double omega_s,
                      double omega_i) {
  const real ws = omega_s;
  const real wi = omega_i;
  return static_cast<double>(k_l(model, prop.pump, ws + wi) - k_l(model, prop.signal, ws) -
                             k_l(model, prop.idler, wi));
}

double degenerate_mismatch(const DispersionModel& model, const Propagation& prop,
                           double lambda_pdc_um) {
  const double w0 = omega_from_wavelength(lambda_pdc_um);
  return phase_mismatch(model, prop, w0, w0);
}

double phasematching_angle(const DispersionModel& model, const PhasematchScheme& scheme,
                           double lambda_pdc_um) {
  auto f = [&](double th) {
    return degenerate_mismatch(model, make_propagation(scheme, th), lambda_pdc_um);
  };
  constexpr int kScan = 400;
  const double lo = 1e-6;
  const double hi = kPi / 2;
  double a = lo;
  double fa = f(a);
  for (int j = 1; j <= kScan; ++j) {
    const double b = lo + (hi - lo) * j / kScan;
    const double fb = f(b);
    if (fb == 0.0) return b;
    if ((fa < 0) != (fb < 0)) {
      double x0 = a, x1 = b, f0 = fa;
      double mid = 0.5 * (x0 + x1);
      for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (x0 + x1);
        const double fm = f(mid);
        if (std::abs(fm) < 1e-12 || x1 - x0 < 1e-16) break;
        if ((fm < 0) == (f0 < 0)) {
          x0 = mid;
          f0 = fm;
        } else {
          x1 = mid;
        }
      }
      return mid;
    }
    a = b;
    fa = fb;
  }
  raise(ErrorCode::NoPhasematch, model.name + ": no type-II phasematching angle at " +
                                     fmt(lambda_pdc_um) + " um");
}

double cut_angle(const DispersionModel& model, const PhasematchScheme& scheme,
                 double lambda_pdc_um) {
  if (scheme.fixed_theta) return *scheme.fixed_theta;
  return phasematching_angle(model, scheme, lambda_pdc_um);
}

double qpm_period(const DispersionModel& model, const PhasematchScheme& scheme,
                  double lambda_pdc_um) {
  const double theta = scheme.fixed_theta.value_or(kPi / 2);
  const double dk0 = degenerate_mismatch(model, make_propagation(scheme, theta), lambda_pdc_um);
  if (std::abs(dk0) < 1e-12) {
    raise(ErrorCode::AlreadyMatched, model.name + ": already phasematched at " +
                                         fmt(lambda_pdc_um) + " um");
  }
  return 2.0 * kPi / std::abs(dk0);
}

}  // namespace biphoton
