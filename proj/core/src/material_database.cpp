#include "biphoton/material_database.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "biphoton/error.hpp"
#include "biphoton/units.hpp"

namespace biphoton {

namespace {

using json = nlohmann::ordered_json;
using Kind = SellmeierTerm::Kind;

SellmeierLaw sellmeier(double a, std::vector<SellmeierTerm> terms) { return {a, std::move(terms)}; }

std::vector<DispersionModel> builtin_models() {
  std::vector<DispersionModel> out;

  DispersionModel kdp;
  kdp.id = Material::KDP;
  kdp.name = "KDP";
  kdp.ordinary = sellmeier(2.259276, {{Kind::Pole, 0.01008956, 0.012942625},
                                      {Kind::Resonance, 13.00522, 400.0}});
  kdp.extraordinary = sellmeier(2.132668, {{Kind::Pole, 0.008637494, 0.012281043},
                                           {Kind::Resonance, 3.2279924, 400.0}});
  kdp.lambda_min = 0.20;
  kdp.lambda_max = 1.60;
  kdp.source = "F. Zernike, J. Opt. Soc. Am. 54, 1215 (1964)";
  out.push_back(kdp);

  DispersionModel bbo;
  bbo.id = Material::BBO;
  bbo.name = "BBO";
  bbo.ordinary = sellmeier(2.7359, {{Kind::Pole, 0.01878, 0.01822}, {Kind::Power, -0.01354, 2.0}});
  bbo.extraordinary =
      sellmeier(2.3753, {{Kind::Pole, 0.01224, 0.01667}, {Kind::Power, -0.01516, 2.0}});
  bbo.lambda_min = 0.20;
  bbo.lambda_max = 2.60;
  bbo.source = "K. Kato, IEEE J. Quantum Electron. 22, 1013 (1986)";
  out.push_back(bbo);

  // x-propagating KTP: "ordinary" is the y axis, "extraordinary" the z axis.
  DispersionModel ktp;
  ktp.id = Material::KTP;
  ktp.name = "KTP";
  ktp.ordinary =
      sellmeier(2.19229, {{Kind::Resonance, 0.83547, 0.04970}, {Kind::Power, -0.01621, 2.0}});
  ktp.extraordinary = sellmeier(2.12725, {{Kind::Resonance, 1.18431, 0.0514852},
                                          {Kind::Resonance, 0.6603, 100.00507},
                                          {Kind::Power, -9.68956e-3, 2.0}});
  ktp.lambda_min = 0.35;
  ktp.lambda_max = 3.50;
  ktp.source =
      "n_y: J. D. Bierlein and H. Vanherzeele, J. Opt. Soc. Am. B 6, 622 (1989); "
      "n_z: K. Fradkin et al., Appl. Phys. Lett. 74, 914 (1999)";
  ktp.default_scheme = {Polarization::Ordinary, Polarization::Ordinary,
                        Polarization::Extraordinary, kPi / 2};
  out.push_back(ktp);

  DispersionModel calcite;
  calcite.id = Material::Calcite;
  calcite.name = "CALCITE";
  calcite.ordinary =
      sellmeier(2.69705, {{Kind::Pole, 0.0192064, 0.01820}, {Kind::Power, -0.0151624, 2.0}});
  calcite.extraordinary =
      sellmeier(2.18438, {{Kind::Pole, 0.0087309, 0.01018}, {Kind::Power, -0.0024411, 2.0}});
  calcite.lambda_min = 0.20;
  calcite.lambda_max = 2.20;
  calcite.source =
      "V. G. Dmitriev, G. G. Gurzadyan, D. N. Nikogosyan, Handbook of Nonlinear Optical "
      "Crystals (Springer, 1999)";
  calcite.default_scheme.fixed_theta = kPi / 2;
  out.push_back(calcite);

  return out;
}

std::string upper(std::string s) {
  for (auto& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return s;
}

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::Resonance: return "resonance";
    case Kind::Pole: return "pole";
    case Kind::Power: return "power";
  }
  return "resonance";
}

Kind kind_from_name(const std::string& s) {
  if (s == "resonance") return Kind::Resonance;
  if (s == "pole") return Kind::Pole;
  if (s == "power") return Kind::Power;
  raise(ErrorCode::InvalidArgument, "unknown Sellmeier term kind '" + s + "'");
}

json law_to_json(const IndexLaw& law) {
  if (const auto* s = std::get_if<SellmeierLaw>(&law)) {
    json terms = json::array();
    for (const auto& t : s->terms) terms.push_back({{"kind", kind_name(t.kind)}, {"B", t.b}, {"C", t.c}});
    return {{"law", "sellmeier"}, {"A", s->a}, {"terms", terms}};
  }
  const auto& p = std::get<FrequencyPolynomialLaw>(law);
  return {{"law", "frequency_polynomial"}, {"coefficients", p.coefficients}};
}

IndexLaw law_from_json(const json& j) {
  const auto law = j.at("law").get<std::string>();
  if (law == "sellmeier") {
    SellmeierLaw s;
    s.a = j.at("A").get<double>();
    for (const auto& t : j.at("terms")) {
      s.terms.push_back({kind_from_name(t.at("kind").get<std::string>()), t.at("B").get<double>(),
                         t.at("C").get<double>()});
    }
    return s;
  }
  if (law == "frequency_polynomial") {
    return FrequencyPolynomialLaw{j.at("coefficients").get<std::vector<double>>()};
  }
  raise(ErrorCode::InvalidArgument, "unknown index law '" + law + "'");
}

json scheme_to_json(const PhasematchScheme& s) {
  json j = {{"pump", to_string(s.pump)}, {"signal", to_string(s.signal)}, {"idler", to_string(s.idler)}};
  if (s.fixed_theta) {
    j["theta_deg"] = radians_to_degrees(*s.fixed_theta);
  } else {
    j["theta_deg"] = nullptr;
  }
  return j;
}

PhasematchScheme scheme_from_json(const json& j) {
  PhasematchScheme s;
  s.pump = polarization_from_string(j.at("pump").get<std::string>());
  s.signal = polarization_from_string(j.at("signal").get<std::string>());
  s.idler = polarization_from_string(j.at("idler").get<std::string>());
  if (j.contains("theta_deg") && !j.at("theta_deg").is_null()) {
    s.fixed_theta = degrees_to_radians(j.at("theta_deg").get<double>());
  }
  return s;
}

void validate(const DispersionModel& m) {
  if (!(m.lambda_min > 0.0 && m.lambda_max > m.lambda_min)) {
    raise(ErrorCode::InvalidArgument, m.name + ": invalid validity window");
  }
}

}  // namespace

MaterialDatabase::MaterialDatabase(std::vector<DispersionModel> models) : models_(std::move(models)) {
  for (const auto& m : models_) validate(m);
}

MaterialDatabase MaterialDatabase::builtin() { return MaterialDatabase(builtin_models()); }

MaterialDatabase MaterialDatabase::from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    raise(ErrorCode::InvalidArgument, std::string("material database: ") + e.what());
  }
  try {
    if (doc.at("format").get<std::string>() != "biphoton-materials") {
      raise(ErrorCode::InvalidArgument, "material database: unexpected format tag");
    }
    const int version = doc.at("version").get<int>();
    if (version != kFormatVersion) {
      raise(ErrorCode::InvalidArgument,
            "material database: unsupported version " + std::to_string(version));
    }
    std::vector<DispersionModel> models;
    for (const auto& jm : doc.at("materials")) {
      DispersionModel m;
      m.id = material_from_string(jm.at("id").get<std::string>());
      m.name = jm.at("name").get<std::string>();
      m.source = jm.at("source").get<std::string>();
      const auto range = jm.at("valid_range_um").get<std::vector<double>>();
      if (range.size() != 2) raise(ErrorCode::InvalidArgument, m.name + ": valid_range_um needs 2 values");
      m.lambda_min = range[0];
      m.lambda_max = range[1];
      m.ordinary = law_from_json(jm.at("ordinary"));
      m.extraordinary = law_from_json(jm.at("extraordinary"));
      m.default_scheme = scheme_from_json(jm.at("default_scheme"));
      models.push_back(std::move(m));
    }
    return MaterialDatabase(std::move(models));
  } catch (const json::exception& e) {
    raise(ErrorCode::InvalidArgument, std::string("material database: ") + e.what());
  }
}

MaterialDatabase MaterialDatabase::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::Io, "cannot open material database " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

std::string MaterialDatabase::to_json() const {
  json doc;
  doc["format"] = "biphoton-materials";
  doc["version"] = kFormatVersion;
  json arr = json::array();
  for (const auto& m : models_) {
    arr.push_back({{"id", to_string(m.id)},
                   {"name", m.name},
                   {"source", m.source},
                   {"valid_range_um", {m.lambda_min, m.lambda_max}},
                   {"ordinary", law_to_json(m.ordinary)},
                   {"extraordinary", law_to_json(m.extraordinary)},
                   {"default_scheme", scheme_to_json(m.default_scheme)}});
  }
  doc["materials"] = arr;
  return doc.dump(2) + "\n";
}

void MaterialDatabase::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) raise(ErrorCode::Io, "cannot write material database " + path.string());
  out << to_json();
}

const DispersionModel& MaterialDatabase::get(Material id) const {
  auto it = std::find_if(models_.begin(), models_.end(), [id](const auto& m) { return m.id == id; });
  if (it == models_.end()) raise(ErrorCode::InvalidArgument, "material " + to_string(id) + " not in database");
  return *it;
}

const DispersionModel& MaterialDatabase::get(const std::string& name) const {
  const auto key = upper(name);
  for (const auto& m : models_) {
    if (upper(m.name) == key || to_string(m.id) == key) return m;
  }
  if (key == "PPKTP") return get(Material::KTP);
  raise(ErrorCode::InvalidArgument, "material '" + name + "' not in database");
}

}  // namespace biphoton
