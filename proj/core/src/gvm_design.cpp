#include "biphoton/gvm_design.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "biphoton/error.hpp"
#include "biphoton/units.hpp"

namespace biphoton {

namespace {

constexpr int kScanPoints = 200;

struct TauSample {
  double lambda = 0.0;
  double tau_s = 0.0;  // per unit length, ps/um
  double tau_i = 0.0;
  bool valid = false;
};

TauSample sample(const DispersionModel& m, const PhasematchScheme& scheme, double lambda) {
  TauSample t{lambda};
  try {
    const auto c = make_crystal_auto(m, scheme, lambda, 1.0);
    const auto k = taylor_coefficients(c);
    t.tau_s = k.tau_s;
    t.tau_i = k.tau_i;
    t.valid = true;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoPhasematch && e.code() != ErrorCode::OutOfRange) throw;
  }
  return t;
}

std::vector<TauSample> scan(const DispersionModel& m, const PhasematchScheme& scheme,
                            const WavelengthWindow& w) {
  std::vector<TauSample> out;
  out.reserve(kScanPoints);
  for (int j = 0; j < kScanPoints; ++j) {
    out.push_back(sample(m, scheme, w.lo + (w.hi - w.lo) * j / (kScanPoints - 1)));
  }
  return out;
}

// Bisection of a scalar function of the sample between two bracketing
// wavelengths; stops when |value| / scale falls below tol.
template <typename F>
double bisect(const DispersionModel& m, const PhasematchScheme& scheme, double a, double b, F value,
              double tol) {
  double fa = value(sample(m, scheme, a));
  double mid = 0.5 * (a + b);
  for (int it = 0; it < 100; ++it) {
    mid = 0.5 * (a + b);
    const auto s = sample(m, scheme, mid);
    if (!s.valid) raise(ErrorCode::NumericalFailure, "wavelength bisection left the phasematchable region");
    const double fm = value(s);
    const double scale = std::max(std::abs(s.tau_s), std::abs(s.tau_i));
    if (std::abs(fm) <= tol * scale || b - a < 1e-15) break;
    if ((fm < 0) == (fa < 0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return mid;
}

double sum_of(const TauSample& s) { return s.tau_s + s.tau_i; }
double tau_s_of(const TauSample& s) { return s.tau_s; }
double tau_i_of(const TauSample& s) { return s.tau_i; }

bool flips(double a, double b) { return (a < 0) != (b < 0); }

// Boundary between samples a and b where the product changes sign.
double boundary(const DispersionModel& m, const PhasematchScheme& scheme, const TauSample& a,
                const TauSample& b) {
  if (flips(a.tau_s, b.tau_s)) return bisect(m, scheme, a.lambda, b.lambda, tau_s_of, 1e-10);
  return bisect(m, scheme, a.lambda, b.lambda, tau_i_of, 1e-10);
}

}  // namespace

FactorizabilityReport factorizability_report(const PumpConfig& pump, const TaylorCoefficients& c) {
  if (!(pump.sigma > 0.0)) raise(ErrorCode::InvalidArgument, "pump sigma must be positive");
  const double g = kSincGaussGamma;
  const double sig = pump.sigma;
  FactorizabilityReport r;
  const double four_over = 4.0 / (sig * sig);
  r.cond1_residual = (four_over + g * c.tau_s * c.tau_i) / four_over;
  r.required_sigma = solve_pump_bandwidth(c);
  r.beta_t_star = -c.beta_p / 4.0;
  r.sigma_s = 2.0 * sig / std::sqrt(4.0 + g * sig * sig * c.tau_s * c.tau_s);
  r.sigma_i = 2.0 * sig / std::sqrt(4.0 + g * sig * sig * c.tau_i * c.tau_i);
  r.aspect_ratio_r = std::max(r.sigma_s, r.sigma_i) / std::min(r.sigma_s, r.sigma_i);
  r.theta_II = (c.tau_s == 0.0 && c.tau_i == 0.0) ? 0.0 : radians_to_degrees(-std::atan(c.tau_s / c.tau_i));
  r.gvm_residual = c.tau_s + c.tau_i;
  return r;
}

std::optional<double> solve_pump_bandwidth(const TaylorCoefficients& c) {
  const double prod = c.tau_s * c.tau_i;
  if (!(prod < 0.0)) return std::nullopt;
  return 2.0 / std::sqrt(-kSincGaussGamma * prod);
}

std::optional<double> solve_pump_bandwidth(const CrystalConfig& crystal) {
  return solve_pump_bandwidth(taylor_coefficients(crystal));
}

WavelengthWindow search_window(const DispersionModel& m) {
  return {std::max(m.lambda_min, 2.0 * m.lambda_min) * (1.0 + 1e-3), m.lambda_max * (1.0 - 1e-3)};
}

std::optional<double> gvm_wavelength_search(const DispersionModel& m, const PhasematchScheme& scheme,
                                            std::optional<WavelengthWindow> window) {
  const auto w = window.value_or(search_window(m));
  const auto pts = scan(m, scheme, w);
  for (size_t j = 0; j + 1 < pts.size(); ++j) {
    const auto& a = pts[j];
    const auto& b = pts[j + 1];
    if (!a.valid || !b.valid) continue;
    if (sum_of(a) == 0.0) return a.lambda;
    if (flips(sum_of(a), sum_of(b))) return bisect(m, scheme, a.lambda, b.lambda, sum_of, 1e-9);
  }
  return std::nullopt;
}

std::optional<DecorrelationRange> decorrelation_range(const DispersionModel& m,
                                                      const PhasematchScheme& scheme,
                                                      std::optional<WavelengthWindow> window) {
  const auto w = window.value_or(search_window(m));
  const auto pts = scan(m, scheme, w);
  std::vector<DecorrelationRange> found;
  std::optional<DecorrelationRange> open;
  auto inside = [](const TauSample& s) { return s.valid && s.tau_s * s.tau_i < 0.0; };
  for (size_t j = 0; j < pts.size(); ++j) {
    const auto& s = pts[j];
    const bool in = inside(s);
    const bool prev_in = j > 0 && inside(pts[j - 1]);
    const bool prev_valid = j > 0 && pts[j - 1].valid;
    if (in && !prev_in) {
      DecorrelationRange r;
      if (prev_valid && s.valid) {
        r.lo = boundary(m, scheme, pts[j - 1], s);
      } else {
        r.lo = s.lambda;
        r.lo_bounded = false;
      }
      open = r;
    }
    if (!in && prev_in) {
      if (s.valid) {
        open->hi = boundary(m, scheme, pts[j - 1], s);
      } else {
        open->hi = pts[j - 1].lambda;
        open->hi_bounded = false;
      }
      found.push_back(*open);
      open.reset();
    }
  }
  if (open) {
    open->hi = pts.back().lambda;
    open->hi_bounded = false;
    found.push_back(*open);
  }
  if (found.empty()) return std::nullopt;
  if (const auto g = gvm_wavelength_search(m, scheme, w)) {
    for (const auto& r : found) {
      if (*g >= r.lo && *g <= r.hi) return r;
    }
  }
  return found.front();
}

AsymmetricDesign asymmetric_design(const DispersionModel& m, const PhasematchScheme& scheme,
                                   double lambda_pdc_um, double length_um, const PumpConfig& pump) {
  AsymmetricDesign d;
  d.crystal = make_crystal_auto(m, scheme, lambda_pdc_um, length_um);
  d.coeffs = taylor_coefficients(d.crystal);
  const double as = std::abs(d.coeffs.tau_s);
  const double ai = std::abs(d.coeffs.tau_i);
  const double big = std::max(as, ai);
  d.walkoff_ratio = big > 0.0 ? std::min(as, ai) / big : 1.0;
  if (!(d.walkoff_ratio < 0.05)) {
    raise(ErrorCode::NotAsymmetric, m.name + ": neither photon is group-velocity matched to the pump");
  }
  d.matched_photon = as < ai ? 's' : 'i';
  d.report = factorizability_report(pump, d.coeffs);
  d.long_crystal_regime = pump.sigma * big > 10.0;
  return d;
}

TemporalReport temporal_report(const PumpConfig& pump, const TaylorCoefficients& c,
                               const FactorizabilityReport& rep) {
  const double bs = pump.beta_t + c.beta_s / 2.0;
  const double bi = pump.beta_t + c.beta_i / 2.0;
  const double bp = 2.0 * pump.beta_t + c.beta_p / 2.0;
  const double ss = rep.sigma_s;
  const double si = rep.sigma_i;
  const double ss2 = ss * ss, si2 = si * si, ss4 = ss2 * ss2, si4 = si2 * si2;

  const double num = 2.0 + 2.0 * ss4 * bs * bs + ss2 * si2 * bp * bp + 2.0 * si4 * bi * bi;
  const double quartic = ss4 * si4 * std::pow(4.0 * bs * bi - bp * bp, 2);
  const double den_s = ss2 * (4.0 + ss2 * si2 * bp * bp + 4.0 * si4 * bi * bi);
  const double den_i = si2 * (4.0 + ss2 * si2 * bp * bp + 4.0 * ss4 * bs * bs);
  const double mixed = -bp * ss2 * si2 * (bs * ss2 + bi * si2);

  TemporalReport t;
  t.dt_s = std::sqrt(8.0 * num / den_s);
  t.dt_i = std::sqrt(8.0 * num / den_i);
  t.sigma_M_sq = mixed / (2.0 * num);
  t.dt_s_exact = std::sqrt((8.0 * num + quartic) / den_s);
  t.dt_i_exact = std::sqrt((8.0 * num + quartic) / den_i);
  t.sigma_M_sq_exact = 4.0 * mixed / (8.0 * num + quartic);

  // Long-crystal limit: the pump-limited (broader) photon plays the role of
  // the wide axis and s = narrow / wide -> 0.
  const bool signal_wide = ss >= si;
  const double sw = signal_wide ? ss : si;
  const double sn = signal_wide ? si : ss;
  const double bw = signal_wide ? bs : bi;
  const double sw4 = std::pow(sw, 4);
  t.sigma_M_sq_asymptotic = -sw4 * sn * sn * bp * bw / (4.0 * (1.0 + sw4 * bw * bw));
  return t;
}

MeasuredTemporal measure_temporal(const JointAmplitude& jti) {
  const auto mo = moments(jti);
  const double det = mo.var_s * mo.var_i - mo.covariance * mo.covariance;
  if (!(det > 0.0)) raise(ErrorCode::NumericalFailure, "singular temporal covariance");
  const double r_ss = mo.var_i / det;
  const double r_ii = mo.var_s / det;
  const double r_si = -mo.covariance / det;
  return {std::sqrt(4.0 / r_ss), std::sqrt(4.0 / r_ii), r_si / 2.0};
}

}  // namespace biphoton
