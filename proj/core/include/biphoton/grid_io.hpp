#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "biphoton/jsa.hpp"

namespace biphoton {

/// CSV with one "# key=value ..." metadata line, a header, then rows
/// (coordinate_s, coordinate_i, re, im) at 17 significant digits.
void write_csv(std::ostream& out, const JointAmplitude& f);
void write_csv(const std::filesystem::path& path, const JointAmplitude& f);
JointAmplitude read_csv(std::istream& in);
JointAmplitude read_csv(const std::filesystem::path& path);

/// Intensity-only CSV (coordinate_s, coordinate_i, |f|^2).
void write_intensity_csv(const std::filesystem::path& path, const JointAmplitude& f);

/// BJSA binary: "BJSA", u16 version, u64 n, f64 omega0, f64 half_span, then
/// n*n row-major (re, im) f64 pairs, all little endian. Spectral grids only.
inline constexpr std::uint16_t kBjsaVersion = 1;
void write_bjsa(std::ostream& out, const JointAmplitude& f);
void write_bjsa(const std::filesystem::path& path, const JointAmplitude& f);
JointAmplitude read_bjsa(std::istream& in);
JointAmplitude read_bjsa(const std::filesystem::path& path);

/// Dispatches on the file's first bytes.
JointAmplitude read_grid(const std::filesystem::path& path);

}  // namespace biphoton
