#pragma once

#include <cmath>

#include <doctest.h>

#include "biphoton/error.hpp"
#include "biphoton/material_database.hpp"

namespace biphoton::test {

inline const MaterialDatabase& db() {
  static const MaterialDatabase d = MaterialDatabase::builtin();
  return d;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

/// Non-dispersive uniaxial model with constant indices.
inline DispersionModel constant_model(double no, double ne) {
  DispersionModel m;
  m.name = "const";
  m.ordinary = FrequencyPolynomialLaw{{no}};
  m.extraordinary = FrequencyPolynomialLaw{{ne}};
  m.lambda_min = 0.2;
  m.lambda_max = 5.0;
  return m;
}

template <typename F>
ErrorCode error_code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace biphoton::test
