#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "biphoton/schmidt.hpp"
#include "biphoton/units.hpp"
#include "biphoton_tools/scenarios.hpp"
#include "support.hpp"

using namespace biphoton;
using biphoton::test::error_code_of;
using biphoton::test::rel;

namespace {

JointAmplitude sampled(int n, double half_span, auto&& fn) {
  JointAmplitude f;
  f.grid = {300.0, half_span, n};
  f.values.resize(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) f.values(j, k) = fn(f.grid.nu(j), f.grid.nu(k));
  }
  normalize(f);
  return f;
}

JointAmplitude factorable(int n = 128) {
  return sampled(n, 6.0, [](double x, double y) {
    return std::exp(-x * x / 2.0 - (y - 0.3) * (y - 0.3) / 0.7) * std::polar(1.0, 0.2 * x * x - 0.5 * y);
  });
}

// || f dnu - sum sqrt(lambda_n) psi_n phi_n^T ||_F; modes carry sqrt(dnu).
double reconstruction_error(const JointAmplitude& f, const SchmidtSpectrum& s) {
  Eigen::MatrixXcd rec = Eigen::MatrixXcd::Zero(f.grid.n, f.grid.n);
  for (long q = 0; q < s.signal_modes.cols(); ++q) {
    rec += std::sqrt(s.lambdas[q]) * s.signal_modes.col(q) * s.idler_modes.col(q).transpose();
  }
  return (f.values * f.grid.spacing() - rec).norm();
}

}  // namespace

TEST_SUITE("schmidt") {
  TEST_CASE("factorable state has rank one") {
    const auto f = factorable();
    const auto s = schmidt_decompose(f);
    REQUIRE(s.lambdas.size() >= 1);
    CHECK(s.lambdas[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cooperativity(s) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(entropy(s)) < 1e-9);
    const auto h = heralded_state(f, SpectralFilter::unit());
    CHECK(purity(h.rho) == doctest::Approx(1.0).epsilon(1e-10));
  }

  TEST_CASE("closed-form metrics") {
    CHECK(cooperativity(std::vector<double>{1.0}) == 1.0);
    CHECK(cooperativity(std::vector<double>{0.5, 0.5}) == doctest::Approx(2.0));
    CHECK(entropy(std::vector<double>{1.0}) == 0.0);
    CHECK(entropy(std::vector<double>{0.5, 0.5}) == doctest::Approx(1.0));
    CHECK(entropy(std::vector<double>{0.7, 0.3, 0.0}) == doctest::Approx(entropy(std::vector<double>{0.7, 0.3})));
    const double mu = 0.3;
    std::vector<double> geo;
    for (int j = 0; j < 200; ++j) geo.push_back((1 - mu) * std::pow(mu, j));
    CHECK(cooperativity(geo) == doctest::Approx((1 + mu) / (1 - mu)).epsilon(1e-12));

    Eigen::MatrixXcd proj = Eigen::MatrixXcd::Zero(8, 8);
    proj(3, 3) = 1.0;
    CHECK(purity(proj) == doctest::Approx(1.0));
    CHECK(purity(Eigen::MatrixXcd::Identity(8, 8) / 8.0) == doctest::Approx(1.0 / 8));
  }

  TEST_CASE("spectrum invariants and reconstruction") {
    const auto f = scenarios::correlated_gaussian(3.0, 1.0, 128);
    const auto s = schmidt_decompose(f);
    double sum = 0.0;
    for (double l : s.lambdas) {
      CHECK(l >= 0.0);
      sum += l;
    }
    CHECK(std::abs(sum - 1.0) < 1e-9);
    for (size_t j = 1; j < s.lambdas.size(); ++j) CHECK(s.lambdas[j] <= s.lambdas[j - 1]);

    const long r = s.signal_modes.cols();
    const Eigen::MatrixXcd gs = s.signal_modes.adjoint() * s.signal_modes - Eigen::MatrixXcd::Identity(r, r);
    const Eigen::MatrixXcd gi = s.idler_modes.adjoint() * s.idler_modes - Eigen::MatrixXcd::Identity(r, r);
    CHECK(gs.cwiseAbs().maxCoeff() < 1e-8);
    CHECK(gi.cwiseAbs().maxCoeff() < 1e-8);

    // Truncation below 1e-12 of the largest weight leaves a tail of at
    // most sqrt(sum of dropped weights) in the reconstruction.
    CHECK(reconstruction_error(f, s) < 1e-5);
  }

  TEST_CASE("finite-rank states are reconstructed exactly") {
    const auto f = sampled(128, 6.0, [](double x, double y) {
      const auto a = std::exp(-x * x - y * y);
      const auto b = x * y * std::exp(-x * x / 2 - y * y / 3) * std::polar(1.0, 0.4 * y);
      const auto c = std::exp(-(x - 1) * (x - 1) - (y + 0.5) * (y + 0.5) * 2);
      return a + 0.5 * b + 0.3 * c;
    });
    const auto s = schmidt_decompose(f);
    CHECK(s.lambdas.size() == 3);
    CHECK(reconstruction_error(f, s) < 1e-8);
  }

  TEST_CASE("Mehler kernel eigenvalues") {
    for (double a : {1.5, 2.0, 3.0, 4.0, 6.0}) {
      const auto s = schmidt_decompose(scenarios::correlated_gaussian(a, 1.0));
      const auto exact = scenarios::mehler_lambdas(a, 1.0, static_cast<int>(s.lambdas.size()));
      for (size_t j = 0; j < s.lambdas.size(); ++j) CHECK(std::abs(s.lambdas[j] - exact[j]) < 1e-4);
      const double mu = std::pow((a - 1) / (a + 1), 2);
      CHECK(rel(cooperativity(s), (1 + mu) / (1 - mu)) < 1e-4);
    }
  }

  TEST_CASE("symmetries") {
    const auto f = scenarios::correlated_gaussian(2.5, 1.0, 128);
    auto swapped = f;
    swapped.values = f.values.transpose();
    auto phased = f;
    phased.values *= std::polar(1.0, 1.234);
    const auto a = schmidt_decompose(f);
    const auto b = schmidt_decompose(swapped);
    const auto c = schmidt_decompose(phased);
    REQUIRE(a.lambdas.size() == b.lambdas.size());
    REQUIRE(a.lambdas.size() == c.lambdas.size());
    for (size_t j = 0; j < a.lambdas.size(); ++j) {
      CHECK(std::abs(a.lambdas[j] - b.lambdas[j]) < 1e-12);
      CHECK(std::abs(a.lambdas[j] - c.lambdas[j]) < 1e-12);
    }
  }

  TEST_CASE("unit filter: purity is 1/K and rho carries the Schmidt spectrum") {
    const auto f = sampled(128, 8.0, [](double x, double y) {
      return std::exp(-(x + y) * (x + y) / 6.0 - (x - y) * (x - y) / 1.5) * std::polar(1.0, 0.3 * x * y + 0.1 * y * y);
    });
    const auto s = schmidt_decompose(f);
    const auto h = heralded_state(f, SpectralFilter::unit());
    CHECK(std::abs(purity(h.rho) * cooperativity(s) - 1.0) < 1e-6);
    CHECK(h.herald_rate == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(h.rho.trace() - 1.0) < 1e-12);
    CHECK((h.rho - h.rho.adjoint()).cwiseAbs().maxCoeff() < 1e-14);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.rho);
    const Eigen::VectorXd ev = es.eigenvalues().reverse();
    CHECK(ev.minCoeff() > -1e-12);
    for (size_t j = 0; j < std::min<size_t>(s.lambdas.size(), 10); ++j) CHECK(std::abs(ev(j) - s.lambdas[j]) < 1e-6);
  }

  TEST_CASE("filtering the trigger arm") {
    const auto f = scenarios::correlated_gaussian(3.0, 1.0, 256);
    const double cell = f.grid.spacing();

    // One-cell top hat on the idler: the heralded photon is nearly pure.
    const auto delta = heralded_state(f, SpectralFilter::tophat(f.grid.omega0, 0.999 * cell));
    CHECK(purity(delta.rho) >= 0.999);

    double last_p = 0.0, last_rate = 2.0;
    for (double width : {20.0, 10.0, 6.0, 4.0, 2.5, 1.5, 0.8, 0.4}) {
      const auto h = heralded_state(f, SpectralFilter::gaussian(f.grid.omega0, width));
      const double p = purity(h.rho);
      CHECK(p > last_p);
      CHECK(h.herald_rate < last_rate);
      last_p = p;
      last_rate = h.herald_rate;
    }

    CHECK(error_code_of([&] { heralded_state(f, SpectralFilter::tophat(f.grid.omega0 + 1e4, 1.0)); }) ==
          ErrorCode::ZeroHeraldRate);
  }

  TEST_CASE("entropy grows with cooperativity") {
    double last_k = 0.0, last_s = -1.0;
    for (int j = 0; j < 10; ++j) {
      const auto s = schmidt_decompose(scenarios::correlated_gaussian(1.2 + 0.5 * j, 1.0, 128));
      CHECK(cooperativity(s) > last_k);
      CHECK(entropy(s) > last_s);
      last_k = cooperativity(s);
      last_s = entropy(s);
    }
  }

  TEST_CASE("non-finite input is a numerical failure") {
    auto f = factorable(32);
    f.values(3, 4) = std::nan("");
    CHECK(error_code_of([&] { schmidt_decompose(f); }) == ErrorCode::NumericalFailure);
  }
}
