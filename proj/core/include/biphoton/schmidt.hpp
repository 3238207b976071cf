#pragma once

#include <vector>

#include <Eigen/Dense>

#include "biphoton/jsa.hpp"

namespace biphoton {

struct SchmidtSpectrum {
  std::vector<double> lambdas;    // descending, sum 1
  Eigen::MatrixXcd signal_modes;  // n x r, columns orthonormal (include sqrt(dnu))
  Eigen::MatrixXcd idler_modes;   // n x r
};

/// Quadrature-weighted SVD of the sampled amplitude. Eigenvalues below 1e-12
/// of the largest are dropped.
SchmidtSpectrum schmidt_decompose(const JointAmplitude& jsa);

double cooperativity(const std::vector<double>& lambdas);
double cooperativity(const SchmidtSpectrum& s);
/// Entanglement entropy in bits.
double entropy(const std::vector<double>& lambdas);
double entropy(const SchmidtSpectrum& s);

/// Amplitude transmission of the trigger (idler) arm filter.
struct SpectralFilter {
  enum class Shape { Unit, Gaussian, TopHat };
  Shape shape = Shape::Unit;
  double center = 0.0;  // rad/ps, absolute frequency
  double width = 0.0;   // rad/ps: intensity FWHM (Gaussian) or full width (TopHat)

  static SpectralFilter unit() { return {}; }
  static SpectralFilter gaussian(double center, double fwhm) { return {Shape::Gaussian, center, fwhm}; }
  static SpectralFilter tophat(double center, double width) { return {Shape::TopHat, center, width}; }

  double transmission(double omega) const;
};

struct HeraldedState {
  Eigen::MatrixXcd rho;      // unit trace, signal axis
  double herald_rate = 0.0;  // trace before renormalization
};

HeraldedState heralded_state(const JointAmplitude& jsa, const SpectralFilter& filter);

double purity(const Eigen::MatrixXcd& rho);

struct HeraldMetrics {
  double purity = 0.0;
  double cooperativity_K = 0.0;
  double entropy_S = 0.0;
  double herald_rate = 0.0;
};

HeraldMetrics herald_metrics(const JointAmplitude& jsa, const SpectralFilter& filter);

}  // namespace biphoton
