#include "biphoton/schmidt.hpp"

#include <algorithm>
#include <cmath>

#include "biphoton/error.hpp"

namespace biphoton {

SchmidtSpectrum schmidt_decompose(const JointAmplitude& jsa) {
  if (jsa.domain != Domain::Spectral) raise(ErrorCode::BadDomain, "Schmidt decomposition needs a spectral amplitude");
  const double dnu = jsa.grid.spacing();
  const Eigen::MatrixXcd m = jsa.values * dnu;
  if (!m.allFinite()) raise(ErrorCode::NumericalFailure, "joint amplitude contains non-finite values");

  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) raise(ErrorCode::NumericalFailure, "SVD did not converge");
  const Eigen::VectorXd s = svd.singularValues();
  const double total = s.squaredNorm();
  if (!(total > 0.0)) raise(ErrorCode::DegenerateGrid, "joint amplitude vanishes on the grid");

  const double floor = 1e-12 * s(0) * s(0) / total;
  int r = 0;
  while (r < s.size() && s(r) * s(r) / total >= floor) ++r;

  SchmidtSpectrum out;
  double kept = 0.0;
  for (int j = 0; j < r; ++j) kept += s(j) * s(j);
  out.lambdas.resize(r);
  for (int j = 0; j < r; ++j) out.lambdas[j] = s(j) * s(j) / kept;
  out.signal_modes = svd.matrixU().leftCols(r);
  // f = sum sqrt(lambda) psi(nu_s) phi(nu_i): the idler mode is conj(V).
  out.idler_modes = svd.matrixV().leftCols(r).conjugate();
  return out;
}

double cooperativity(const std::vector<double>& lambdas) {
  double s2 = 0.0;
  for (double l : lambdas) s2 += l * l;
  return 1.0 / s2;
}

double cooperativity(const SchmidtSpectrum& s) { return cooperativity(s.lambdas); }

double entropy(const std::vector<double>& lambdas) {
  double h = 0.0;
  for (double l : lambdas) {
    if (l > 0.0) h -= l * std::log2(l);
  }
  return std::max(h, 0.0);
}

double entropy(const SchmidtSpectrum& s) { return entropy(s.lambdas); }

double SpectralFilter::transmission(double omega) const {
  switch (shape) {
    case Shape::Unit: return 1.0;
    case Shape::Gaussian: {
      // |t|^2 = exp(-4 ln2 x^2 / fwhm^2), so the amplitude carries half the exponent.
      const double x = (omega - center) / width;
      return std::exp(-2.0 * std::log(2.0) * x * x);
    }
    case Shape::TopHat: return std::abs(omega - center) <= width / 2 ? 1.0 : 0.0;
  }
  return 1.0;
}

HeraldedState heralded_state(const JointAmplitude& jsa, const SpectralFilter& filter) {
  if (jsa.domain != Domain::Spectral) raise(ErrorCode::BadDomain, "heralding needs a spectral amplitude");
  if (filter.shape != SpectralFilter::Shape::Unit && !(filter.width > 0.0)) {
    raise(ErrorCode::InvalidArgument, "filter width must be positive");
  }
  const int n = static_cast<int>(jsa.values.cols());
  const double dnu = jsa.grid.spacing();
  Eigen::VectorXd w(n);
  for (int k = 0; k < n; ++k) {
    const double t = filter.transmission(jsa.grid.omega0 + jsa.grid.nu(k));
    w(k) = t * t;
  }
  const Eigen::MatrixXcd m = jsa.values * dnu;
  HeraldedState out;
  out.rho = m * w.asDiagonal() * m.adjoint();
  out.herald_rate = out.rho.trace().real();
  if (!(out.herald_rate > 1e-300)) raise(ErrorCode::ZeroHeraldRate, "trigger filter blocks every idler frequency");
  out.rho /= out.herald_rate;
  return out;
}

double purity(const Eigen::MatrixXcd& rho) {
  // Tr(rho^2) for Hermitian rho is the squared Frobenius norm.
  const double tr = rho.trace().real();
  return rho.squaredNorm() / (tr * tr);
}

HeraldMetrics herald_metrics(const JointAmplitude& jsa, const SpectralFilter& filter) {
  const auto s = schmidt_decompose(jsa);
  const auto h = heralded_state(jsa, filter);
  return {purity(h.rho), cooperativity(s), entropy(s), h.herald_rate};
}

}  // namespace biphoton
