#pragma once

#include <json.hpp>

#include "biphoton/assembly.hpp"
#include "biphoton/gvm_design.hpp"
#include "biphoton/schmidt.hpp"

namespace biphoton::cli {

using json = nlohmann::ordered_json;

json to_json(const TaylorCoefficients& t);
json to_json(const FactorizabilityReport& r);
json to_json(const TemporalReport& t);
json to_json(const DecorrelationRange& r);
json to_json(const AssemblyDesign& d);
json to_json(const HeraldMetrics& m);
json to_json(const PumpConfig& p);
json to_json(const FrequencyGrid& g);
json crystal_json(const CrystalConfig& c);

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace biphoton::cli
