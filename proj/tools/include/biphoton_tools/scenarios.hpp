#pragma once

// Reference scenarios shared by the command-line tool and the acceptance
// suite. Each function computes the quantities of one scenario; judging them
// against targets is left to the caller.

#include <optional>
#include <vector>

#include "biphoton/assembly.hpp"
#include "biphoton/gvm_design.hpp"
#include "biphoton/material_database.hpp"
#include "biphoton/schmidt.hpp"

namespace biphoton::scenarios {

struct GvmScenario {
  std::optional<double> gvm_um;
  std::optional<DecorrelationRange> range;
};

GvmScenario ktp_gvm(const MaterialDatabase& db);
GvmScenario bbo_gvm(const MaterialDatabase& db);

/// BBO crystals with calcite spacers, 800 nm, N = 10, m = 10.
AssemblyDesign bbo_calcite_design(const MaterialDatabase& db);

struct KdpScenario {
  AsymmetricDesign design;
  PumpConfig pump;
  double theta_deg = 0.0;
  double tau_e = 0.0;  // ps (signal)
  double tau_o = 0.0;  // ps (idler)
  JointAmplitude jsa;
  JointAmplitude jti;
  HeraldMetrics metrics;
  double jti_correlation = 0.0;
  TemporalReport temporal;
};

/// 2 cm KDP at 830 nm pumped at 415 nm with a 5 nm FWHM, full-sinc model.
KdpScenario kdp_source(const MaterialDatabase& db, int n = 256, double pump_fwhm_nm = 5.0,
                       JsaModel model = JsaModel::FullSinc);

struct AssemblyPipeline {
  AssemblyDesign design;
  JointAmplitude jsa;       // full grid
  JointAmplitude windowed;  // central ridge only
  double window_half_width = 0.0;  // rad/ps
  double cooperativity = 0.0;
  double purity = 0.0;
  double ridge_slope = 0.0;
};

AssemblyPipeline assembly_pipeline(const MaterialDatabase& db, int n = 256);

/// Property checks independent of any material data.
struct PropertySuite {
  double max_lambda_sum_error = 0.0;  // |sum lambda - 1| over random Gaussians
  double max_pk_error = 0.0;          // |p K - 1| with unit filter
  double max_mehler_error = 0.0;      // max |lambda_n - (1 - mu) mu^n|
  double max_parseval_error = 0.0;
  double sigma_m_ratio = 0.0;         // sigma_M^2(2L) / sigma_M^2(L), long crystal
  double chirped_bilinear = 0.0;      // fitted bilinear phase with beta_t = -beta_p/4, ps^2
  double unchirped_bilinear = 0.0;
  double chirped_jti_correlation = 0.0;
  double unchirped_jti_correlation = 0.0;
  double max_upsilon_error = 0.0;     // removable-singularity values vs +-1
};

PropertySuite property_suite(const MaterialDatabase& db, unsigned seed = 20240611);

/// Correlated double Gaussian exp[-(nu_s+nu_i)^2/(4a^2) - (nu_s-nu_i)^2/(4b^2)]
/// on a grid wide enough for both widths.
JointAmplitude correlated_gaussian(double a, double b, int n = 256);

/// Schmidt eigenvalues of the correlated double Gaussian in closed form:
/// lambda_n = (1 - mu) mu^n with mu = ((a - b) / (a + b))^2.
std::vector<double> mehler_lambdas(double a, double b, int count);

}  // namespace biphoton::scenarios
