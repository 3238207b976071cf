#include "biphoton/grid_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <vector>

#include "biphoton/error.hpp"

namespace biphoton {

static_assert(std::endian::native == std::endian::little, "BJSA I/O assumes a little-endian host");

namespace {

constexpr char kMagic[4] = {'B', 'J', 'S', 'A'};

template <typename T>
void put(std::ostream& out, T v) {
  char bytes[sizeof(T)];
  std::memcpy(bytes, &v, sizeof(T));
  out.write(bytes, sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  char bytes[sizeof(T)];
  if (!in.read(bytes, sizeof(T))) raise(ErrorCode::Io, "truncated BJSA stream");
  T v;
  std::memcpy(&v, bytes, sizeof(T));
  return v;
}

std::ofstream open_out(const std::filesystem::path& path, bool binary) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) raise(ErrorCode::Io, "cannot write " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path, bool binary) {
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) raise(ErrorCode::Io, "cannot open " + path.string());
  return in;
}

}  // namespace

void write_csv(std::ostream& out, const JointAmplitude& f) {
  const bool spectral = f.domain == Domain::Spectral;
  out << std::setprecision(17);
  out << "# domain=" << (spectral ? "spectral" : "temporal") << " n=" << f.grid.n
      << " omega0=" << f.grid.omega0 << " half_span=" << f.grid.half_span;
  if (!spectral) out << " dt=" << f.time.dt << " t0_s=" << f.time.t0_s << " t0_i=" << f.time.t0_i;
  out << "\n";
  out << (spectral ? "nu_s,nu_i,re,im\n" : "t_s,t_i,re,im\n");
  const int n = static_cast<int>(f.values.rows());
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const auto v = f.values(j, k);
      out << f.coordinate_s(j) << ',' << f.coordinate_i(k) << ',' << v.real() << ',' << v.imag() << '\n';
    }
  }
}

void write_csv(const std::filesystem::path& path, const JointAmplitude& f) {
  auto out = open_out(path, false);
  write_csv(out, f);
}

void write_intensity_csv(const std::filesystem::path& path, const JointAmplitude& f) {
  auto out = open_out(path, false);
  const bool spectral = f.domain == Domain::Spectral;
  out << std::setprecision(17);
  out << (spectral ? "nu_s,nu_i,intensity\n" : "t_s,t_i,intensity\n");
  const int n = static_cast<int>(f.values.rows());
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      out << f.coordinate_s(j) << ',' << f.coordinate_i(k) << ',' << std::norm(f.values(j, k)) << '\n';
    }
  }
}

JointAmplitude read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) {
    raise(ErrorCode::Io, "CSV grid lacks its metadata line");
  }
  std::map<std::string, std::string> meta;
  std::istringstream ms(line.substr(2));
  std::string kv;
  while (ms >> kv) {
    const auto eq = kv.find('=');
    if (eq != std::string::npos) meta[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  auto num = [&](const std::string& key) {
    const auto it = meta.find(key);
    if (it == meta.end()) raise(ErrorCode::Io, "CSV metadata missing '" + key + "'");
    return std::stod(it->second);
  };
  JointAmplitude f;
  f.grid.n = static_cast<int>(num("n"));
  f.grid.omega0 = num("omega0");
  f.grid.half_span = num("half_span");
  f.grid.validate();
  if (meta["domain"] == "temporal") {
    f.domain = Domain::Temporal;
    f.time = {f.grid.n, num("dt"), num("t0_s"), num("t0_i")};
  }
  std::getline(in, line);  // column header
  const int n = f.grid.n;
  f.values.resize(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (!std::getline(in, line)) raise(ErrorCode::Io, "CSV grid truncated");
      std::istringstream ls(line);
      std::string cell;
      double col[4];
      for (double& c : col) {
        if (!std::getline(ls, cell, ',')) raise(ErrorCode::Io, "malformed CSV row");
        c = std::stod(cell);
      }
      f.values(j, k) = {col[2], col[3]};
    }
  }
  return f;
}

JointAmplitude read_csv(const std::filesystem::path& path) {
  auto in = open_in(path, false);
  return read_csv(in);
}

void write_bjsa(std::ostream& out, const JointAmplitude& f) {
  if (f.domain != Domain::Spectral) raise(ErrorCode::BadDomain, "BJSA stores spectral grids only");
  out.write(kMagic, 4);
  put<std::uint16_t>(out, kBjsaVersion);
  put<std::uint64_t>(out, static_cast<std::uint64_t>(f.grid.n));
  put<double>(out, f.grid.omega0);
  put<double>(out, f.grid.half_span);
  const int n = f.grid.n;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      put<double>(out, f.values(j, k).real());
      put<double>(out, f.values(j, k).imag());
    }
  }
  if (!out) raise(ErrorCode::Io, "BJSA write failed");
}

void write_bjsa(const std::filesystem::path& path, const JointAmplitude& f) {
  auto out = open_out(path, true);
  write_bjsa(out, f);
}

JointAmplitude read_bjsa(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) raise(ErrorCode::Io, "not a BJSA stream");
  const auto version = get<std::uint16_t>(in);
  if (version != kBjsaVersion) raise(ErrorCode::Io, "unsupported BJSA version " + std::to_string(version));
  JointAmplitude f;
  const auto n = get<std::uint64_t>(in);
  if (n > (1u << 16)) raise(ErrorCode::Io, "BJSA grid too large");
  f.grid.n = static_cast<int>(n);
  f.grid.omega0 = get<double>(in);
  f.grid.half_span = get<double>(in);
  f.grid.validate();
  f.values.resize(f.grid.n, f.grid.n);
  for (int j = 0; j < f.grid.n; ++j) {
    for (int k = 0; k < f.grid.n; ++k) {
      const double re = get<double>(in);
      const double im = get<double>(in);
      f.values(j, k) = {re, im};
    }
  }
  return f;
}

JointAmplitude read_bjsa(const std::filesystem::path& path) {
  auto in = open_in(path, true);
  return read_bjsa(in);
}

JointAmplitude read_grid(const std::filesystem::path& path) {
  auto in = open_in(path, true);
  char head[4] = {0, 0, 0, 0};
  in.read(head, 4);
  in.clear();
  in.seekg(0);
  if (std::memcmp(head, kMagic, 4) == 0) return read_bjsa(in);
  return read_csv(in);
}

}  // namespace biphoton
