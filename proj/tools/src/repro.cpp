#include "repro.hpp"

#include <fstream>

#include "biphoton/error.hpp"
#include "biphoton/grid_io.hpp"
#include "biphoton/units.hpp"
#include "biphoton_tools/acceptance.hpp"
#include "biphoton_tools/scenarios.hpp"

namespace biphoton::cli {

namespace fs = std::filesystem;

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) raise(ErrorCode::Io, "cannot write " + path.string());
  f << text;
}

json gvm_json(const scenarios::GvmScenario& s) {
  return {{"gvm_lambda_um", optional_json(s.gvm_um)},
          {"decorrelation_range", s.range ? to_json(*s.range) : json(nullptr)}};
}

// Scenario outputs beyond the pass/fail numbers: reports and grids.
void write_artifacts(const MaterialDatabase& db, const fs::path& dir) {
  write_text(dir / "ktp_gvm.json", gvm_json(scenarios::ktp_gvm(db)).dump(2) + "\n");
  write_text(dir / "bbo_gvm.json", gvm_json(scenarios::bbo_gvm(db)).dump(2) + "\n");
  write_text(dir / "bbo_calcite_design.json", to_json(scenarios::bbo_calcite_design(db)).dump(2) + "\n");

  const auto kdp = scenarios::kdp_source(db, 256);
  json k = {{"crystal", crystal_json(kdp.design.crystal)},
            {"pump", to_json(kdp.pump)},
            {"theta_deg", kdp.theta_deg},
            {"taylor", to_json(kdp.design.coeffs)},
            {"factorizability", to_json(kdp.design.report)},
            {"temporal_closed_form", to_json(kdp.temporal)},
            {"schmidt", to_json(kdp.metrics)},
            {"jti_correlation", kdp.jti_correlation}};
  write_text(dir / "kdp_source.json", k.dump(2) + "\n");
  write_bjsa(dir / "kdp_jsa.bjsa", kdp.jsa);
  write_intensity_csv(dir / "kdp_jsi.csv", kdp.jsa);
  write_intensity_csv(dir / "kdp_jti.csv", kdp.jti);

  const auto p = scenarios::assembly_pipeline(db, 256);
  json a = {{"design", to_json(p.design)},
            {"window_half_width_rad_per_ps", p.window_half_width},
            {"K", p.cooperativity},
            {"purity", p.purity},
            {"ridge_slope", p.ridge_slope}};
  write_text(dir / "assembly_pipeline.json", a.dump(2) + "\n");
  write_bjsa(dir / "assembly_central_jsa.bjsa", p.windowed);
  write_intensity_csv(dir / "assembly_central_jsi.csv", p.windowed);
}

}  // namespace

json paper_repro(const MaterialDatabase& db, const fs::path& dir) {
  write_artifacts(db, dir);
  json criteria = json::array();
  std::string table;
  int passed = 0;
  for (int id = 1; id <= acceptance::kCriterionCount; ++id) {
    const auto r = acceptance::evaluate(id, db);
    table += acceptance::format(r);
    json checks = json::array();
    for (const auto& c : r.checks) {
      checks.push_back({{"name", c.name},
                        {"value", std::isfinite(c.value) ? json(c.value) : json(nullptr)},
                        {"target", c.target},
                        {"tolerance", c.tolerance},
                        {"pass", c.pass}});
    }
    criteria.push_back({{"id", id},
                        {"title", r.title},
                        {"pass", r.pass()},
                        {"runtime_s", r.runtime_s},
                        {"runtime_limit_s", r.runtime_limit_s},
                        {"error", r.error.empty() ? json(nullptr) : json(r.error)},
                        {"checks", checks}});
    passed += r.pass() ? 1 : 0;
  }
  write_text(dir / "summary.txt", table);
  json summary = {{"passed", passed}, {"total", acceptance::kCriterionCount}, {"criteria", criteria}};
  write_text(dir / "summary.json", summary.dump(2) + "\n");
  return summary;
}

}  // namespace biphoton::cli
