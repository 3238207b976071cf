#include "biphoton_tools/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "biphoton/error.hpp"
#include "biphoton/grid_io.hpp"
#include "biphoton/material_database.hpp"
#include "biphoton/units.hpp"
#include "json_reports.hpp"
#include "repro.hpp"

namespace biphoton::cli {

namespace fs = std::filesystem;

namespace {

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::NumericalFailure:
    case ErrorCode::DegenerateGrid:
    case ErrorCode::ZeroHeraldRate:
      return kExitNumerical;
    default:
      return kExitConfig;
  }
}

void print_error(std::ostream& err, const std::string& code, const std::string& message) {
  err << json{{"error", code}, {"message", message}}.dump() << "\n";
}

MaterialDatabase load_database() {
  if (const char* path = std::getenv("BIPHOTON_MATERIALS_PATH"); path != nullptr && *path != '\0') {
    return MaterialDatabase::load(path);
  }
  return MaterialDatabase::builtin();
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

void write_json(const fs::path& path, const json& j) {
  std::ofstream f(path);
  if (!f) raise(ErrorCode::Io, "cannot write " + path.string());
  f << j.dump(2) << "\n";
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) raise(ErrorCode::Io, "cannot create directory " + dir.string());
}

json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::Io, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    raise(ErrorCode::InvalidArgument, path.string() + ": " + e.what());
  }
}

PhasematchScheme scheme_from(const json& j, const PhasematchScheme& fallback) {
  PhasematchScheme s = fallback;
  if (j.contains("pump")) s.pump = polarization_from_string(j.at("pump").get<std::string>());
  if (j.contains("signal")) s.signal = polarization_from_string(j.at("signal").get<std::string>());
  if (j.contains("idler")) s.idler = polarization_from_string(j.at("idler").get<std::string>());
  if (j.contains("theta_deg")) {
    if (j.at("theta_deg").is_null()) {
      s.fixed_theta.reset();
    } else {
      s.fixed_theta = degrees_to_radians(j.at("theta_deg").get<double>());
    }
  }
  return s;
}

SpectralFilter filter_from(const std::string& shape, double center_nm, double width_nm) {
  if (shape == "unit") return SpectralFilter::unit();
  if (!(center_nm > 0.0) || !(width_nm > 0.0)) {
    raise(ErrorCode::InvalidArgument, "filter needs positive centre and width in nm");
  }
  const double c = omega_from_wavelength(nm_to_um(center_nm));
  const double w = frequency_width(nm_to_um(center_nm), nm_to_um(width_nm));
  if (shape == "gaussian") return SpectralFilter::gaussian(c, w);
  if (shape == "tophat") return SpectralFilter::tophat(c, w);
  raise(ErrorCode::InvalidArgument, "unknown filter shape '" + shape + "'");
}

json filter_json(const std::string& shape, double center_nm, double width_nm) {
  if (shape == "unit") return {{"shape", "unit"}};
  return {{"shape", shape}, {"center_nm", center_nm}, {"width_nm", width_nm}};
}

json metrics_json(const HeraldMetrics& m, const SchmidtSpectrum& s, size_t head) {
  json j = to_json(m);
  std::vector<double> lambdas(s.lambdas.begin(), s.lambdas.begin() + std::min(head, s.lambdas.size()));
  j["rank"] = s.lambdas.size();
  j["lambdas"] = lambdas;
  return j;
}

// ---------------------------------------------------------------- materials

struct MaterialsArgs {
  std::string material;
  std::string ray = "o";
  double theta_deg = 0.0;
  double lambda_nm = 0.0;
  bool list = false;
  bool dump = false;
};

json cmd_materials(const MaterialsArgs& a) {
  const auto db = load_database();
  if (a.dump) return json::parse(db.to_json());
  if (a.list) {
    json arr = json::array();
    for (const auto& m : db.models()) {
      arr.push_back({{"id", to_string(m.id)},
                     {"name", m.name},
                     {"source", m.source},
                     {"valid_range_um", {m.lambda_min, m.lambda_max}}});
    }
    return {{"format_version", MaterialDatabase::kFormatVersion}, {"materials", arr}};
  }
  if (a.material.empty() || !(a.lambda_nm > 0.0)) {
    raise(ErrorCode::InvalidArgument, "materials needs --material and --lambda-nm (or --list)");
  }
  const auto& m = db.get(a.material);
  const RaySpec ray{polarization_from_string(a.ray), degrees_to_radians(a.theta_deg)};
  const double lambda = nm_to_um(a.lambda_nm);
  const double w = omega_from_wavelength(lambda);
  json j = {{"material", m.name},
            {"source", m.source},
            {"ray", to_string(ray.polarization)},
            {"theta_deg", a.theta_deg},
            {"lambda_nm", a.lambda_nm},
            {"omega_rad_per_ps", w},
            {"n", refractive_index(m, ray, lambda)},
            {"k_rad_per_um", wavenumber(m, ray, w)},
            {"k1_ps_per_um", inverse_group_velocity(m, ray, w)},
            {"k2_ps2_per_um", gvd(m, ray, w)}};
  j["walkoff_deg"] = ray.polarization == Polarization::Extraordinary ? json(walkoff_angle(m, ray.theta, lambda))
                                                                    : json(0.0);
  return j;
}

// ------------------------------------------------------------------ analyze

struct AnalyzeArgs {
  std::string config;
  std::string out_dir;
};

json cmd_analyze(const AnalyzeArgs& a) {
  const auto db = load_database();
  const json cfg = read_json_file(a.config);
  try {
    const auto& m = db.get(cfg.at("material").get<std::string>());
    const double lambda_nm = cfg.at("lambda_nm").get<double>();
    const double length_mm = cfg.at("length_mm").get<double>();
    const auto& pj = cfg.at("pump");
    const double fwhm_nm = pj.at("fwhm_nm").get<double>();
    const double beta_t = pj.value("beta_t_ps2", 0.0);
    const auto scheme = cfg.contains("scheme") ? scheme_from(cfg.at("scheme"), m.default_scheme) : m.default_scheme;
    const std::string model_name = cfg.value("model", "full_sinc");
    if (model_name != "full_sinc" && model_name != "gaussian") {
      raise(ErrorCode::InvalidArgument, "model must be full_sinc or gaussian");
    }
    const JsaModel model = model_name == "gaussian" ? JsaModel::Gaussian : JsaModel::FullSinc;

    const double lambda = nm_to_um(lambda_nm);
    const auto crystal = make_crystal_auto(m, scheme, lambda, mm_to_um(length_mm));
    const auto pump = make_pump(lambda_nm / 2.0, fwhm_nm, beta_t);
    auto grid = default_grid(pump, crystal, 256);
    if (cfg.contains("grid")) {
      const auto& g = cfg.at("grid");
      grid.n = g.value("n", grid.n);
      if (g.contains("half_span_rad_per_ps") && !g.at("half_span_rad_per_ps").is_null()) {
        grid.half_span = g.at("half_span_rad_per_ps").get<double>();
      }
      grid.validate();
    }
    std::string shape = "unit";
    double fc = 0.0, fw = 0.0;
    if (cfg.contains("filter")) {
      const auto& fj = cfg.at("filter");
      shape = fj.value("shape", "unit");
      fc = fj.value("center_nm", 0.0);
      fw = fj.contains("fwhm_nm") ? fj.at("fwhm_nm").get<double>() : fj.value("width_nm", 0.0);
    }
    const auto filter = filter_from(shape, fc, fw);

    const auto coeffs = taylor_coefficients(crystal);
    const auto rep = factorizability_report(pump, coeffs);
    const auto f = jsa_grid(pump, crystal, grid, model);
    const auto s = schmidt_decompose(f);
    const auto h = heralded_state(f, filter);
    const HeraldMetrics metrics{purity(h.rho), cooperativity(s), entropy(s), h.herald_rate};
    const auto jti = joint_temporal_intensity(f);
    const auto jm = moments(jti);
    const auto mt = measure_temporal(jti);

    json out;
    out["crystal"] = crystal_json(crystal);
    out["pump"] = to_json(pump);
    out["model"] = model_name;
    out["grid"] = to_json(grid);
    out["taylor"] = to_json(coeffs);
    out["emission_offsets_ps"] = {{"signal", coeffs.tau_s / 2.0}, {"idler", coeffs.tau_i / 2.0}};
    out["factorizability"] = to_json(rep);
    out["temporal_closed_form"] = to_json(temporal_report(pump, coeffs, rep));
    out["filter"] = filter_json(shape, fc, fw);
    out["schmidt"] = metrics_json(metrics, s, 16);
    out["jsi"] = {{"correlation", moments(f).correlation}};
    out["jti"] = {{"correlation", jm.correlation},
                  {"t0_s_ps", jti.time.t0_s},
                  {"t0_i_ps", jti.time.t0_i},
                  {"dt_ps", jti.time.dt},
                  {"dt_s_ps", mt.dt_s},
                  {"dt_i_ps", mt.dt_i},
                  {"sigma_M_sq_per_ps2", mt.sigma_M_sq}};
    if (!a.out_dir.empty()) {
      const fs::path dir(a.out_dir);
      ensure_dir(dir);
      write_bjsa(dir / "jsa.bjsa", f);
      write_csv(dir / "jsa.csv", f);
      write_intensity_csv(dir / "jsi.csv", f);
      write_intensity_csv(dir / "jti.csv", jti);
      out["outputs"] = {{"jsa_bjsa", "jsa.bjsa"}, {"jsa_csv", "jsa.csv"}, {"jsi_csv", "jsi.csv"}, {"jti_csv", "jti.csv"}};
      write_json(dir / "report.json", out);
    }
    return out;
  } catch (const json::exception& e) {
    raise(ErrorCode::InvalidArgument, a.config + ": " + e.what());
  }
}

// ------------------------------------------------------------------ schmidt

struct SchmidtArgs {
  std::string input;
  std::string filter = "unit";
  double filter_center_nm = 0.0;
  double filter_width_nm = 0.0;
  std::string modes_csv;
  int modes = 4;
};

json cmd_schmidt(const SchmidtArgs& a) {
  const auto f = read_grid(a.input);
  const auto filter = filter_from(a.filter, a.filter_center_nm, a.filter_width_nm);
  const auto s = schmidt_decompose(f);
  const auto h = heralded_state(f, filter);
  const HeraldMetrics m{purity(h.rho), cooperativity(s), entropy(s), h.herald_rate};
  json out = {{"input", fs::path(a.input).filename().string()}, {"grid", to_json(f.grid)}};
  out["filter"] = filter_json(a.filter, a.filter_center_nm, a.filter_width_nm);
  out["lambdas"] = s.lambdas;
  out["K"] = m.cooperativity_K;
  out["S_bits"] = m.entropy_S;
  out["purity"] = m.purity;
  out["herald_rate"] = m.herald_rate;
  if (!a.modes_csv.empty()) {
    std::ofstream csv(a.modes_csv);
    if (!csv) raise(ErrorCode::Io, "cannot write " + a.modes_csv);
    const int r = std::min<int>(a.modes, static_cast<int>(s.lambdas.size()));
    const double root = std::sqrt(f.grid.spacing());
    csv << std::setprecision(17) << "nu";
    for (int q = 0; q < r; ++q) csv << ",psi" << q << "_re,psi" << q << "_im,phi" << q << "_re,phi" << q << "_im";
    csv << "\n";
    for (int j = 0; j < f.grid.n; ++j) {
      csv << f.grid.nu(j);
      for (int q = 0; q < r; ++q) {
        const auto p = s.signal_modes(j, q) / root;
        const auto i = s.idler_modes(j, q) / root;
        csv << ',' << p.real() << ',' << p.imag() << ',' << i.real() << ',' << i.imag();
      }
      csv << "\n";
    }
    out["modes_csv"] = fs::path(a.modes_csv).filename().string();
  }
  return out;
}

// --------------------------------------------------------------- design-gvm

struct GvmArgs {
  std::string material;
  double lambda_nm = 0.0;
  double length_mm = 1.0;
  double pump_fwhm_nm = 0.0;
};

json cmd_design_gvm(const GvmArgs& a) {
  const auto db = load_database();
  const auto& m = db.get(a.material);
  const auto gvm = gvm_wavelength_search(m, m.default_scheme);
  const auto range = decorrelation_range(m, m.default_scheme);
  json out = {{"material", m.name},
              {"gvm_lambda_nm", gvm ? json(um_to_nm(*gvm)) : json(nullptr)},
              {"decorrelation_range", range ? to_json(*range) : json(nullptr)}};
  double lambda = a.lambda_nm > 0.0 ? nm_to_um(a.lambda_nm) : gvm.value_or(0.0);
  if (lambda > 0.0) {
    const auto crystal = make_crystal_auto(m, m.default_scheme, lambda, mm_to_um(a.length_mm));
    const auto coeffs = taylor_coefficients(crystal);
    const auto sigma = solve_pump_bandwidth(coeffs);
    json op = {{"crystal", crystal_json(crystal)}, {"taylor", to_json(coeffs)}};
    op["required_sigma_rad_per_ps"] = optional_json(sigma);
    op["required_pump_fwhm_nm"] = sigma ? json(fwhm_nm_from_sigma(um_to_nm(lambda) / 2, *sigma)) : json(nullptr);
    std::optional<PumpConfig> pump;
    if (a.pump_fwhm_nm > 0.0) {
      pump = make_pump(um_to_nm(lambda) / 2, a.pump_fwhm_nm);
    } else if (sigma) {
      pump = PumpConfig{2.0 * crystal.omega0, *sigma, 0.0};
    }
    if (pump) {
      const auto rep = factorizability_report(*pump, coeffs);
      op["pump"] = to_json(*pump);
      op["factorizability"] = to_json(rep);
    } else {
      op["pump"] = nullptr;
      op["factorizability"] = nullptr;
    }
    out["operating_point"] = op;
  } else {
    out["operating_point"] = nullptr;
  }
  return out;
}

// -------------------------------------------------------- design-asymmetric

struct AsymArgs {
  std::string material;
  double lambda_nm = 0.0;
  double length_mm = 0.0;
  double pump_fwhm_nm = 0.0;
  int grid_n = 256;
  std::string out_dir;
};

json cmd_design_asymmetric(const AsymArgs& a) {
  const auto db = load_database();
  const auto& m = db.get(a.material);
  const double lambda = nm_to_um(a.lambda_nm);
  const auto pump = make_pump(a.lambda_nm / 2.0, a.pump_fwhm_nm);
  const auto d = asymmetric_design(m, m.default_scheme, lambda, mm_to_um(a.length_mm), pump);
  json out = {{"crystal", crystal_json(d.crystal)}, {"pump", to_json(pump)}, {"taylor", to_json(d.coeffs)}};
  out["matched_photon"] = d.matched_photon == 's' ? "signal" : "idler";
  out["walkoff_ratio"] = d.walkoff_ratio;
  out["long_crystal_regime"] = d.long_crystal_regime;
  out["spatial_walkoff_deg"] = walkoff_angle(m, d.crystal.theta, lambda / 2.0);
  out["factorizability"] = to_json(d.report);
  out["temporal_closed_form"] = to_json(temporal_report(pump, d.coeffs, d.report));
  const auto grid = default_grid(pump, d.crystal, a.grid_n);
  const auto f = jsa_grid(pump, d.crystal, grid, JsaModel::FullSinc);
  const auto s = schmidt_decompose(f);
  const HeraldMetrics hm = herald_metrics(f, SpectralFilter::unit());
  out["grid"] = to_json(grid);
  out["schmidt"] = metrics_json(hm, s, 8);
  if (!a.out_dir.empty()) {
    ensure_dir(a.out_dir);
    write_bjsa(fs::path(a.out_dir) / "jsa.bjsa", f);
    write_intensity_csv(fs::path(a.out_dir) / "jsi.csv", f);
    out["outputs"] = {{"jsa_bjsa", "jsa.bjsa"}, {"jsi_csv", "jsi.csv"}};
  }
  return out;
}

// ---------------------------------------------------------- design-assembly

struct AssemblyArgs {
  std::string crystal;
  std::string spacer;
  double lambda_nm = 0.0;
  int n_crystals = 0;
  int m = 0;
  std::string export_dir;
  int grid_n = 256;
};

json cmd_design_assembly(const AssemblyArgs& a) {
  const auto db = load_database();
  const auto& c = db.get(a.crystal);
  const auto& s = db.get(a.spacer);
  const auto d = design_assembly(c, c.default_scheme, s, s.default_scheme, nm_to_um(a.lambda_nm), a.n_crystals, a.m);
  json out = to_json(d);
  out["central_window_half_width_rad_per_ps"] = d.central_window();
  out["phase_model_discrepancy_rad"] = phase_model_discrepancy(d, d.central_window());
  if (!a.export_dir.empty()) {
    ensure_dir(a.export_dir);
    const double w = d.central_window();
    const FrequencyGrid full{d.config.crystal.omega0, 4.0 * w, a.grid_n};
    const FrequencyGrid central{d.config.crystal.omega0, w, a.grid_n};
    const auto f = assembly_jsa(d.pump(), d.config, full);
    const auto fw = window(assembly_jsa(d.pump(), d.config, central), w);
    const fs::path dir(a.export_dir);
    write_bjsa(dir / "jsa.bjsa", f);
    write_intensity_csv(dir / "jsi.csv", f);
    write_bjsa(dir / "jsa_central.bjsa", fw);
    write_intensity_csv(dir / "jsi_central.csv", fw);
    const auto sw = schmidt_decompose(fw);
    out["central_ridge_schmidt"] = metrics_json(herald_metrics(fw, SpectralFilter::unit()), sw, 8);
    out["outputs"] = {{"jsa_bjsa", "jsa.bjsa"},
                      {"jsi_csv", "jsi.csv"},
                      {"jsa_central_bjsa", "jsa_central.bjsa"},
                      {"jsi_central_csv", "jsi_central.csv"}};
  }
  return out;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Design and analysis of spectrally engineered photon-pair sources"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "0.3.0");

  MaterialsArgs ma;
  auto* sm = app.add_subcommand("materials", "Refractive index, k', k'' and walkoff of a material");
  sm->add_option("--material", ma.material, "Material name (KDP, BBO, KTP, CALCITE)");
  sm->add_option("--ray", ma.ray, "Polarization: o or e")->check(CLI::IsMember({"o", "e"}));
  sm->add_option("--theta-deg", ma.theta_deg, "Angle to the optic axis for the e-ray");
  sm->add_option("--lambda-nm", ma.lambda_nm, "Vacuum wavelength in nm");
  sm->add_flag("--list", ma.list, "List the materials in the database");
  sm->add_flag("--dump-database", ma.dump, "Print the full material database document");

  AnalyzeArgs aa;
  auto* sa = app.add_subcommand("analyze", "Joint spectrum, Schmidt metrics and JTI of a single-crystal source");
  sa->add_option("--config", aa.config, "JSON source description")->required();
  sa->add_option("--out", aa.out_dir, "Directory for report.json and grid exports");

  SchmidtArgs sa2;
  auto* ss = app.add_subcommand("schmidt", "Schmidt decomposition of a BJSA or CSV grid");
  ss->add_option("--input", sa2.input, "Grid file")->required()->check(CLI::ExistingFile);
  ss->add_option("--filter", sa2.filter, "Trigger filter shape")->check(CLI::IsMember({"unit", "gaussian", "tophat"}));
  ss->add_option("--filter-center-nm", sa2.filter_center_nm, "Trigger filter centre wavelength");
  ss->add_option("--filter-width-nm", sa2.filter_width_nm, "Intensity FWHM (gaussian) or full width (tophat)");
  ss->add_option("--modes-csv", sa2.modes_csv, "Write the leading Schmidt modes to this CSV");
  ss->add_option("--modes", sa2.modes, "Number of modes in the CSV")->check(CLI::PositiveNumber);

  GvmArgs ga;
  auto* sg = app.add_subcommand("design-gvm", "Group-velocity matched wavelength and pump bandwidth");
  sg->add_option("--material", ga.material, "Material name")->required();
  sg->add_option("--lambda-nm", ga.lambda_nm, "Operating wavelength (defaults to the GVM point)");
  sg->add_option("--length-mm", ga.length_mm, "Crystal length")->check(CLI::PositiveNumber);
  sg->add_option("--pump-fwhm-nm", ga.pump_fwhm_nm, "Evaluate at this pump bandwidth instead of the solved one");

  AsymArgs asy;
  auto* sy = app.add_subcommand("design-asymmetric", "Long crystal with the pump matched to one photon");
  sy->add_option("--material", asy.material, "Material name")->required();
  sy->add_option("--lambda-nm", asy.lambda_nm, "Degenerate PDC wavelength")->required()->check(CLI::PositiveNumber);
  sy->add_option("--length-mm", asy.length_mm, "Crystal length")->required()->check(CLI::PositiveNumber);
  sy->add_option("--pump-fwhm-nm", asy.pump_fwhm_nm, "Pump intensity FWHM")->required()->check(CLI::PositiveNumber);
  sy->add_option("--grid-n", asy.grid_n, "Grid points per axis");
  sy->add_option("--out", asy.out_dir, "Directory for grid exports");

  AssemblyArgs as;
  auto* sb = app.add_subcommand("design-assembly", "Crystal/spacer stack with generalized group-velocity matching");
  sb->add_option("--crystal", as.crystal, "Nonlinear crystal material")->required();
  sb->add_option("--spacer", as.spacer, "Birefringent spacer material")->required();
  sb->add_option("--lambda-nm", as.lambda_nm, "Degenerate PDC wavelength")->required()->check(CLI::PositiveNumber);
  sb->add_option("--n-crystals", as.n_crystals, "Number of crystals")->required()->check(CLI::PositiveNumber);
  sb->add_option("--m", as.m, "Spacer thickness in units of the minimum")->required()->check(CLI::PositiveNumber);
  sb->add_option("--export-grid", as.export_dir, "Directory for JSA grid exports");
  sb->add_option("--grid-n", as.grid_n, "Grid points per axis");

  std::string repro_dir = "paper-repro";
  auto* sp = app.add_subcommand("paper-repro", "Run every reference scenario and write a pass/fail table");
  sp->add_option("--out", repro_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << "0.3.0\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    print_error(err, "InvalidArgument", e.what());
    return kExitConfig;
  }

  try {
    if (*sm) emit(out, cmd_materials(ma));
    if (*sa) emit(out, cmd_analyze(aa));
    if (*ss) emit(out, cmd_schmidt(sa2));
    if (*sg) emit(out, cmd_design_gvm(ga));
    if (*sy) emit(out, cmd_design_asymmetric(asy));
    if (*sb) emit(out, cmd_design_assembly(as));
    if (*sp) {
      ensure_dir(repro_dir);
      emit(out, paper_repro(load_database(), repro_dir));
    }
  } catch (const Error& e) {
    print_error(err, std::string(to_string(e.code())), e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    print_error(err, "InvalidArgument", e.what());
    return kExitConfig;
  }
  return kExitOk;
}

int run(int argc, const char* const* argv) { return run(argc, argv, std::cout, std::cerr); }

}  // namespace biphoton::cli
