#include "json_reports.hpp"

#include "biphoton/units.hpp"

namespace biphoton::cli {

json to_json(const TaylorCoefficients& t) {
  return {{"tau_s_ps", t.tau_s},         {"tau_i_ps", t.tau_i},         {"beta_s_ps2", t.beta_s},
          {"beta_i_ps2", t.beta_i},      {"beta_p_ps2", t.beta_p},      {"residual_dk0", t.residual_dk0}};
}

json to_json(const FactorizabilityReport& r) {
  return {{"cond1_residual", r.cond1_residual},
          {"required_sigma_rad_per_ps", optional_json(r.required_sigma)},
          {"beta_t_star_ps2", r.beta_t_star},
          {"sigma_s_rad_per_ps", r.sigma_s},
          {"sigma_i_rad_per_ps", r.sigma_i},
          {"aspect_ratio", r.aspect_ratio_r},
          {"theta_II_deg", r.theta_II},
          {"gvm_residual_ps", r.gvm_residual}};
}

json to_json(const TemporalReport& t) {
  return {{"dt_s_ps", t.dt_s},
          {"dt_i_ps", t.dt_i},
          {"sigma_M_sq_per_ps2", t.sigma_M_sq},
          {"sigma_M_sq_asymptotic_per_ps2", t.sigma_M_sq_asymptotic},
          {"dt_s_exact_ps", t.dt_s_exact},
          {"dt_i_exact_ps", t.dt_i_exact},
          {"sigma_M_sq_exact_per_ps2", t.sigma_M_sq_exact}};
}

json to_json(const DecorrelationRange& r) {
  return {{"lo_nm", um_to_nm(r.lo)},
          {"hi_nm", um_to_nm(r.hi)},
          {"lo_bounded", r.lo_bounded},
          {"hi_bounded", r.hi_bounded}};
}

json to_json(const AssemblyDesign& d) {
  return {{"crystal", d.config.crystal.material.name},
          {"spacer", d.config.spacer.name},
          {"lambda_nm", um_to_nm(d.lambda0)},
          {"n_crystals", d.config.n_crystals},
          {"m", d.config.m_integer},
          {"crystal_theta_deg", radians_to_degrees(d.config.crystal.theta)},
          {"spacer_theta_deg", radians_to_degrees(d.config.spacer_theta())},
          {"crystal_mismatch_sum_ps_per_um", d.crystal_mismatch_sum},
          {"spacer_mismatch_sum_ps_per_um", d.spacer_mismatch_sum},
          {"ratio_h_over_L", d.ratio_h_over_L},
          {"h_min_um", d.h_min},
          {"h_um", d.h},
          {"L_um", d.L},
          {"T_s_ps", d.T_s},
          {"T_i_ps", d.T_i},
          {"T_minus_ps", d.T_minus},
          {"contour_slope", d.contour_slope},
          {"ridge_spacing_nm", d.delta_lambda_ridge_spacing},
          {"per_axis_ridge_spacing_nm", d.per_axis_ridge_spacing},
          {"ridge_fwhm_nm", d.delta_lambda_ridge_fwhm},
          {"sigma_pump_rad_per_ps", d.sigma_pump},
          {"pump_fwhm_nm", d.pump_fwhm_nm},
          {"pump_fwhm_diagonal_nm", d.pump_fwhm_diagonal_nm},
          {"genGVM_residual_ps", d.genGVM_residual}};
}

json to_json(const HeraldMetrics& m) {
  return {{"K", m.cooperativity_K}, {"S_bits", m.entropy_S}, {"purity", m.purity}, {"herald_rate", m.herald_rate}};
}

json to_json(const PumpConfig& p) {
  const double center_nm = um_to_nm(wavelength_from_omega(p.omega_p0));
  return {{"center_nm", center_nm},
          {"fwhm_nm", fwhm_nm_from_sigma(center_nm, p.sigma)},
          {"sigma_rad_per_ps", p.sigma},
          {"beta_t_ps2", p.beta_t}};
}

json to_json(const FrequencyGrid& g) {
  return {{"n", g.n}, {"omega0_rad_per_ps", g.omega0}, {"half_span_rad_per_ps", g.half_span}};
}

json crystal_json(const CrystalConfig& c) {
  return {{"material", c.material.name},
          {"lambda_nm", um_to_nm(wavelength_from_omega(c.omega0))},
          {"length_mm", c.length * 1e-3},
          {"theta_deg", radians_to_degrees(c.theta)},
          {"qpm_period_um", optional_json(c.qpm_period)},
          {"polarizations",
           {{"pump", to_string(c.scheme.pump)}, {"signal", to_string(c.scheme.signal)}, {"idler", to_string(c.scheme.idler)}}}};
}

}  // namespace biphoton::cli
