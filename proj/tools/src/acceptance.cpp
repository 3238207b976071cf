#include "biphoton_tools/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "biphoton/error.hpp"
#include "biphoton/units.hpp"
#include "biphoton_tools/scenarios.hpp"

namespace biphoton::acceptance {

namespace {

Check relative(std::string name, double value, double target, double tol) {
  return {std::move(name), value, target, tol, Comparison::Relative,
          std::isfinite(value) && std::abs(value - target) <= tol * std::abs(target)};
}

Check absolute(std::string name, double value, double target, double tol) {
  return {std::move(name), value, target, tol, Comparison::Absolute,
          std::isfinite(value) && std::abs(value - target) <= tol};
}

Check below(std::string name, double value, double bound) {
  return {std::move(name), value, bound, 0.0, Comparison::Below, std::isfinite(value) && value < bound};
}

Check missing(std::string name, double target) {
  return {std::move(name), std::nan(""), target, 0.0, Comparison::Relative, false};
}

void gvm_checks(std::vector<Check>& out, const scenarios::GvmScenario& s, double gvm, double lo, double hi) {
  out.push_back(s.gvm_um ? relative("gvm_lambda_um", *s.gvm_um, gvm, 0.01) : missing("gvm_lambda_um", gvm));
  if (s.range && s.range->lo_bounded && s.range->hi_bounded) {
    out.push_back(relative("range_lo_um", s.range->lo, lo, 0.02));
    out.push_back(relative("range_hi_um", s.range->hi, hi, 0.02));
  } else {
    out.push_back(missing("range_lo_um", lo));
    out.push_back(missing("range_hi_um", hi));
  }
}

std::vector<Check> criterion1(const MaterialDatabase& db) {
  std::vector<Check> c;
  gvm_checks(c, scenarios::ktp_gvm(db), 1.568, 1.207, 2.364);
  return c;
}

std::vector<Check> criterion2(const MaterialDatabase& db) {
  std::vector<Check> c;
  gvm_checks(c, scenarios::bbo_gvm(db), 1.514, 1.169, 1.949);
  return c;
}

std::vector<Check> criterion3(const MaterialDatabase& db) {
  const auto d = scenarios::bbo_calcite_design(db);
  return {relative("crystal_mismatch_sum_ps_per_um", d.crystal_mismatch_sum, 3.535e-4, 0.02),
          relative("spacer_mismatch_sum_ps_per_um", d.spacer_mismatch_sum, -2.936e-4, 0.02),
          relative("h_over_L", d.ratio_h_over_L, 1.204, 0.02),
          relative("h_min_um", d.h_min, 5.88, 0.02),
          relative("h_um", d.h, 58.83, 0.02),
          relative("L_um", d.L, 48.85, 0.02),
          relative("ridge_spacing_nm", d.delta_lambda_ridge_spacing, 67.05, 0.03),
          relative("per_axis_separation_nm", d.per_axis_ridge_spacing, 47.41, 0.03),
          relative("pump_fwhm_nm", d.pump_fwhm_diagonal_nm, 1.48, 0.05)};
}

std::vector<Check> criterion4(const MaterialDatabase& db) {
  const auto s = scenarios::kdp_source(db, 256);
  return {absolute("theta_c_deg", s.theta_deg, 67.77, 0.5),
          below("K", s.metrics.cooperativity_K, 1.1),
          below("abs_tau_o_over_tau_e", std::abs(s.tau_o) / std::abs(s.tau_e), 0.05)};
}

std::vector<Check> criterion5(const MaterialDatabase& db) {
  const auto p = scenarios::assembly_pipeline(db, 256);
  return {below("K_central_ridge", p.cooperativity, 1.15), relative("ridge_slope", p.ridge_slope, 1.0, 0.02)};
}

std::vector<Check> criterion6(const MaterialDatabase& db) {
  const auto r = scenarios::property_suite(db);
  return {below("a_sum_lambda_error", r.max_lambda_sum_error, 1e-9),
          below("a_pK_error", r.max_pk_error, 1e-6),
          below("b_mehler_error", r.max_mehler_error, 1e-4),
          below("c_parseval_error", r.max_parseval_error, 1e-9),
          relative("d_sigma_M_sq_ratio", r.sigma_m_ratio, 0.25, 0.10),
          below("e_chirped_bilinear_ps2", std::abs(r.chirped_bilinear), 1e-12),
          below("e_chirped_jti_correlation", std::abs(r.chirped_jti_correlation), 0.05),
          below("f_upsilon_error", r.max_upsilon_error, 1e-12)};
}

struct Entry {
  const char* title;
  double limit_s;
  std::vector<Check> (*run)(const MaterialDatabase&);
};

const Entry kEntries[kCriterionCount] = {
    {"KTP group-velocity matching and decorrelation range", 1.0, criterion1},
    {"BBO group-velocity matching and decorrelation range", 1.0, criterion2},
    {"BBO/calcite assembly design numbers", 5.0, criterion3},
    {"KDP asymmetric source, full pipeline", 30.0, criterion4},
    {"BBO/calcite assembly, central ridge", 60.0, criterion5},
    {"Property suite", 120.0, criterion6},
};

const char* comparison_symbol(Comparison c) {
  switch (c) {
    case Comparison::Relative: return "~rel";
    case Comparison::Absolute: return "~abs";
    case Comparison::Below: return "<";
    case Comparison::Above: return ">";
  }
  return "?";
}

}  // namespace

bool CriterionResult::pass() const {
  if (!error.empty() || checks.empty()) return false;
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return runtime_s < runtime_limit_s;
}

CriterionResult evaluate(int id, const MaterialDatabase& db) {
  if (id < 1 || id > kCriterionCount) raise(ErrorCode::InvalidArgument, "criterion must be 1-6");
  const auto& e = kEntries[id - 1];
  CriterionResult r;
  r.id = id;
  r.title = e.title;
  r.runtime_limit_s = e.limit_s;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    r.checks = e.run(db);
  } catch (const std::exception& ex) {
    r.error = ex.what();
  }
  r.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::string format(const CriterionResult& r) {
  std::ostringstream os;
  char buf[256];
  for (const auto& c : r.checks) {
    if (c.comparison == Comparison::Below || c.comparison == Comparison::Above) {
      std::snprintf(buf, sizeof buf, "[%s] %d.%s = %.6g (%s %.6g)", c.pass ? "PASS" : "FAIL", r.id, c.name.c_str(),
                    c.value, comparison_symbol(c.comparison), c.target);
    } else {
      std::snprintf(buf, sizeof buf, "[%s] %d.%s = %.6g (target %.6g %s %.3g)", c.pass ? "PASS" : "FAIL", r.id,
                    c.name.c_str(), c.value, c.target, comparison_symbol(c.comparison), c.tolerance);
    }
    os << buf << "\n";
  }
  if (!r.error.empty()) os << "[FAIL] " << r.id << ".error: " << r.error << "\n";
  std::snprintf(buf, sizeof buf, "[%s] %d.runtime_s = %.3f (< %.0f)", r.runtime_s < r.runtime_limit_s ? "PASS" : "FAIL",
                r.id, r.runtime_s, r.runtime_limit_s);
  os << buf << "\n";
  os << (r.pass() ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.title << "\n";
  return os.str();
}

}  // namespace biphoton::acceptance
