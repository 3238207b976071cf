#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "biphoton/materials.hpp"

namespace biphoton {

/// Versioned collection of dispersion models. The builtin set is the one
/// shipped as data/materials.json.
class MaterialDatabase {
 public:
  static constexpr int kFormatVersion = 1;

  MaterialDatabase() = default;
  explicit MaterialDatabase(std::vector<DispersionModel> models);

  static MaterialDatabase builtin();
  static MaterialDatabase from_json(const std::string& text);
  static MaterialDatabase load(const std::filesystem::path& path);

  std::string to_json() const;
  void save(const std::filesystem::path& path) const;

  const DispersionModel& get(Material id) const;
  /// Lookup by name or material id string, case insensitive.
  const DispersionModel& get(const std::string& name) const;

  const std::vector<DispersionModel>& models() const { return models_; }

 private:
  std::vector<DispersionModel> models_;
};

}  // namespace biphoton
