#include <doctest.h>

#include "biphoton/assembly.hpp"
#include "biphoton/units.hpp"
#include "biphoton_tools/scenarios.hpp"
#include "support.hpp"

using namespace biphoton;
using biphoton::test::db;
using biphoton::test::error_code_of;
using biphoton::test::rel;

namespace {

const DispersionModel& bbo() { return db().get(Material::BBO); }
const DispersionModel& calcite() { return db().get(Material::Calcite); }

AssemblyDesign design(int n = 10, int m = 10) {
  return design_assembly(bbo(), bbo().default_scheme, calcite(), calcite().default_scheme, 0.8, n, m);
}

// Half-power half-width of |g(x)|^2 around x = 0.
template <typename G>
double half_width(G g, double step, double limit) {
  const double p0 = std::norm(g(0.0));
  for (double x = step; x < limit; x += step) {
    if (std::norm(g(x)) < 0.5 * p0) return x;
  }
  return limit;
}

}  // namespace

TEST_SUITE("assembly") {
  TEST_CASE("upsilon structure") {
    for (int n = 1; n <= 12; ++n) {
      CHECK(upsilon(n, 0.0) == 1.0);
      CHECK(upsilon(n, kPi) == (n % 2 == 1 ? 1.0 : -1.0));
      CHECK(upsilon(n, -2 * kPi) == 1.0);
      CHECK(upsilon(n, 0.37) == doctest::Approx(std::sin(n * 0.37) / (n * std::sin(0.37))).epsilon(1e-14));
      // Continuous through the removable singularity.
      CHECK(std::abs(upsilon(n, kPi + 1e-9) - upsilon(n, kPi)) < 1e-6);
    }
    std::vector<double> nx;
    for (int n : {5, 10, 20}) {
      const double w = half_width([n](double x) { return upsilon(n, x); }, 1e-5, 1.0);
      nx.push_back(n * w);
    }
    CHECK(rel(nx[1], nx[0]) < 0.05);
    CHECK(rel(nx[2], nx[1]) < 0.02);
    CHECK(rel(nx[2], kUpsilonWidth) < 0.01);
  }

  TEST_CASE("single crystal reduces to the sinc") {
    auto cfg = design().config;
    cfg.n_crystals = 1;
    for (double x : {-30.0, 0.0, 12.0}) {
      for (double y : {-25.0, 4.0}) {
        CHECK(std::abs(assembly_phasematching(x, y, cfg) - phasematching_sinc(x, y, cfg.crystal)) < 1e-13);
      }
    }
  }

  TEST_CASE("geometric sum bound") {
    const auto cfg = design().config;
    const double n = cfg.n_crystals;
    CHECK(std::abs(assembly_phasematching(0.0, 0.0, cfg)) == doctest::Approx(n).epsilon(1e-6));
    for (int j = -8; j <= 8; ++j) {
      for (int k = -8; k <= 8; ++k) {
        const double x = 9.0 * j, y = 7.0 * k;
        CHECK(std::abs(assembly_phasematching(x, y, cfg)) <= n * std::abs(phasematching_sinc(x, y, cfg.crystal)) + 1e-12);
      }
    }
  }

  TEST_CASE("generalized group-velocity ratio") {
    const auto r = generalized_gvm_ratio(bbo(), bbo().default_scheme, calcite(), calcite().default_scheme, 0.8);
    REQUIRE(r.has_value());
    CHECK(rel(*r, 1.204) < 0.02);
    const double th = phasematching_angle(bbo(), bbo().default_scheme, 0.8);
    const double cs = mismatch_sum(bbo(), make_propagation(bbo().default_scheme, th), 0.8);
    const double ss = mismatch_sum(calcite(), make_propagation(calcite().default_scheme, kPi / 2), 0.8);
    CHECK(rel(*r, std::abs(cs) / std::abs(ss)) < 1e-12);
    CHECK_FALSE(generalized_gvm_ratio(bbo(), bbo().default_scheme, bbo(), bbo().default_scheme, 0.8).has_value());
    CHECK(error_code_of([] {
            design_assembly(bbo(), bbo().default_scheme, bbo(), bbo().default_scheme, 0.8, 10, 10);
          }) == ErrorCode::NoOppositeSign);
  }

  TEST_CASE("spacer quantization") {
    const auto q1 = quantize_spacer(calcite(), calcite().default_scheme, 0.8, 1);
    const auto q2 = quantize_spacer(calcite(), calcite().default_scheme, 0.8, 2);
    const auto q10 = quantize_spacer(calcite(), calcite().default_scheme, 0.8, 10);
    CHECK(rel(q1.h_min, 5.88) < 0.02);
    CHECK(rel(q2.h, 2 * q1.h) < 1e-14);
    CHECK(rel(q10.h, 58.83) < 0.02);
    CHECK(rel(q1.h_min, 2 * kPi / std::abs(q1.dkappa0)) < 1e-14);
    auto flat = test::constant_model(1.6, 1.6);
    flat.default_scheme.fixed_theta = kPi / 2;
    CHECK(error_code_of([&] { quantize_spacer(flat, flat.default_scheme, 0.8, 1); }) == ErrorCode::ZeroMismatch);
  }

  TEST_CASE("design numbers") {
    const auto d = design();
    CHECK(rel(d.L, 48.85) < 0.02);
    CHECK(rel(d.h, 58.83) < 0.02);
    CHECK(std::abs(d.h - 10 * d.h_min) < 1e-9 * d.h);
    CHECK(rel(d.delta_lambda_ridge_spacing, 67.05) < 0.03);
    CHECK(rel(d.per_axis_ridge_spacing, 47.41) < 0.03);
    CHECK(rel(d.per_axis_ridge_spacing, d.delta_lambda_ridge_spacing / std::sqrt(2.0)) < 1e-12);
    CHECK(rel(d.pump_fwhm_diagonal_nm, 1.48) < 0.05);
    CHECK(std::abs(d.genGVM_residual) < 1e-6 * std::abs(d.T_s));
    CHECK(rel(d.contour_slope, 1.0) < 1e-6);

    // Delta-lambda is inversely proportional to the stack thickness.
    const auto half = design(10, 5);
    CHECK(rel(half.L, d.L / 2) < 1e-12);
    CHECK(rel(half.delta_lambda_ridge_spacing, 2 * d.delta_lambda_ridge_spacing) < 1e-9);
  }

  TEST_CASE("grid measurements against the closed forms") {
    const auto d = design();
    const double w = d.central_window();
    CHECK(rel(measure_ridge_slope(d.config, w), 1.0) < 0.02);
    const double spacing = measure_ridge_spacing(d.config, d.lambda0, 3.0 * w);
    CHECK(rel(spacing, d.delta_lambda_ridge_spacing) < 0.01);
    CHECK(phase_model_discrepancy(d, w) < 0.5);
  }

  TEST_CASE("off-quantization spacer moves the central ridge") {
    const auto d = design();
    const double w = d.central_window();
    const double cell = 2 * w / 256;
    CHECK(std::abs(central_peak_offset(d.config, 2 * w)) < cell);
    auto off = d.config;
    off.spacer_h += d.h_min / 2;
    CHECK(std::abs(central_peak_offset(off, 2 * w)) > 5 * cell);
  }

  TEST_CASE("assembly dominates the single-crystal bandwidth") {
    const auto cfg = design().config;
    auto single = cfg;
    single.n_crystals = 1;
    const double inv = 1.0 / std::sqrt(2.0);
    auto ridge = [&](double u) { return assembly_phasematching(u * inv, -u * inv, cfg); };
    auto sinc = [&](double u) { return assembly_phasematching(u * inv, -u * inv, single); };
    const double wr = half_width(ridge, 0.01, 500.0);
    const double ws = half_width(sinc, 0.01, 500.0);
    CHECK(ws / wr > 5.0);
  }

  TEST_CASE("assembly grid") {
    const auto d = design();
    const auto w = d.central_window();
    const FrequencyGrid g{d.config.crystal.omega0, 4 * w, 128};
    const auto f = assembly_jsa(d.pump(), d.config, g);
    CHECK(std::abs(f.norm() - 1.0) < 1e-9);
    const auto c = window(f, w);
    CHECK(std::abs(c.norm() - 1.0) < 1e-9);
    CHECK(c.values(0, 0) == std::complex<double>(0.0));
    auto bad = d.config;
    bad.n_crystals = 0;
    CHECK(error_code_of([&] { assembly_jsa(d.pump(), bad, g); }) == ErrorCode::InvalidArgument);
  }
}
