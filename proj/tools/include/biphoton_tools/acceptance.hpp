#pragma once

// Pass/fail judgement of the reference scenarios. Shared by the acceptance
// test binary and the paper-repro subcommand so both print the same table.

#include <string>
#include <vector>

#include "biphoton/material_database.hpp"

namespace biphoton::acceptance {

enum class Comparison { Relative, Absolute, Below, Above };

struct Check {
  std::string name;
  double value = 0.0;
  double target = 0.0;
  double tolerance = 0.0;  // relative or absolute, depending on comparison
  Comparison comparison = Comparison::Relative;
  bool pass = false;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  double runtime_s = 0.0;
  double runtime_limit_s = 0.0;
  std::string error;  // non-empty when the scenario threw

  bool pass() const;
};

inline constexpr int kCriterionCount = 6;

/// Runs criterion `id` (1-based) and times it.
CriterionResult evaluate(int id, const MaterialDatabase& db);

/// One line per check plus a summary line for the criterion.
std::string format(const CriterionResult& r);

}  // namespace biphoton::acceptance
