#include <doctest.h>

#include <cmath>
#include <numbers>

#include "common.hpp"
#include "fixtures.hpp"
#include "walkoff/dispersion.hpp"
#include "walkoff/errors.hpp"

using namespace walkoff;
using testing::bbo;

namespace {
constexpr double kDeg = std::numbers::pi / 180.0;

// Medium whose birefringence is too small to compensate dispersion anywhere in range.
const char* kWeakMedium = R"(
name = weak
sellmeier_o = 2.7405 0.0184 0.0179 0.0155
sellmeier_e = 2.7305 0.0184 0.0179 0.0155
range_um = 0.3 1.0
)";
}  // namespace

TEST_CASE("Sellmeier indices match the frozen evaluation") {
  CHECK(index_ordinary(bbo(), 0.7094) == doctest::Approx(fixtures::kNoSignal).epsilon(1e-14));
  CHECK(index_ordinary(bbo(), 0.3547) == doctest::Approx(fixtures::kNoPump).epsilon(1e-14));
  CHECK(index_extraordinary_principal(bbo(), 0.3547) ==
        doctest::Approx(fixtures::kNePump).epsilon(1e-14));
  CHECK(index_ordinary(bbo(), 0.3547) > index_ordinary(bbo(), 0.7094));
}

TEST_CASE("medium invariants hold over the valid range") {
  const auto& m = bbo();
  for (int k = 0; k <= 200; ++k) {
    const double l = std::min(m.range_lo_um + (m.range_hi_um - m.range_lo_um) * k / 200.0, m.range_hi_um);
    const double no = index_ordinary(m, l), ne = index_extraordinary_principal(m, l);
    CHECK(no > ne);
    CHECK(ne > 1.0);
  }
}

TEST_CASE("wavelength outside the valid range is a domain error naming the range") {
  CHECK_THROWS_AS(index_ordinary(bbo(), 1.5), DomainError);
  CHECK_THROWS_AS(index_extraordinary_effective(bbo(), 0.1, 0.3), DomainError);
  try {
    index_ordinary(bbo(), 2.0);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("[0.22, 1.06]") != std::string::npos);
  }
}

TEST_CASE("index ellipse endpoints") {
  for (double l : {0.3, 0.3547, 0.5, 0.7094, 1.0}) {
    CHECK(index_extraordinary_effective(bbo(), l, 0.0) ==
          doctest::Approx(index_ordinary(bbo(), l)).epsilon(1e-15));
    CHECK(index_extraordinary_effective(bbo(), l, std::numbers::pi / 2) ==
          doctest::Approx(index_extraordinary_principal(bbo(), l)).epsilon(1e-15));
  }
  CHECK_THROWS_AS(index_extraordinary_effective(bbo(), 0.5, -0.1), DomainError);
  CHECK_THROWS_AS(index_extraordinary_effective(bbo(), 0.5, 1.6), DomainError);
}

TEST_CASE("n_eff decreases monotonically on (0, pi/2)") {
  double prev = index_extraordinary_effective(bbo(), 0.3547, 0.0);
  for (int k = 1; k <= 100; ++k) {
    const double n = index_extraordinary_effective(bbo(), 0.3547, k * (std::numbers::pi / 2) / 100.0);
    CHECK(n < prev);
    prev = n;
  }
}

TEST_CASE("phase-matching angle for a 354.7 nm pump") {
  const double alpha = phase_matching_angle(bbo(), 0.3547);
  CHECK(alpha == doctest::Approx(fixtures::kAlpha).epsilon(1e-12));
  CHECK(alpha / kDeg > 32.0);
  CHECK(alpha / kDeg < 34.0);
  const double residual =
      index_extraordinary_effective(bbo(), 0.3547, alpha) - index_ordinary(bbo(), 0.7094);
  CHECK(std::abs(residual) < 1e-12);
  CHECK(index_extraordinary_effective(bbo(), 0.3547, alpha) ==
        doctest::Approx(fixtures::kNoSignal).epsilon(1e-12));
}

TEST_CASE("phase-matching angle is continuous in pump wavelength") {
  const double a1 = phase_matching_angle(bbo(), 0.3547);
  const double a2 = phase_matching_angle(bbo(), 0.3548);
  CHECK(std::abs(a1 - a2) / kDeg < 0.1);
  CHECK(a2 / kDeg == doctest::Approx(fixtures::kAlphaDeg3548).epsilon(1e-11));
}

TEST_CASE("unmatchable pumps are rejected") {
  // far-infrared pump: signal wavelength leaves the Sellmeier range
  CHECK_THROWS_AS(phase_matching_angle(bbo(), 10.0), DomainError);
  const UniaxialMedium weak = parse_medium(kWeakMedium);
  CHECK_THROWS_AS(phase_matching_angle(weak, 0.4), PhaseMatchError);
}

TEST_CASE("walk-off angle") {
  CHECK(walk_off_angle(bbo(), 0.3547, 0.0) == 0.0);
  CHECK(std::abs(walk_off_angle(bbo(), 0.3547, std::numbers::pi / 2)) < 1e-16);
  const double theta = walk_off_angle(bbo(), 0.3547, fixtures::kAlpha);
  CHECK(theta == doctest::Approx(fixtures::kWalkoff).epsilon(1e-12));
  CHECK(theta / kDeg > 3.0);
  CHECK(theta / kDeg < 6.0);
}

TEST_CASE("analytic walk-off agrees with a finite-difference derivative of n_eff") {
  const double h = 1e-6;
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double alpha = 0.01 + (std::numbers::pi / 2 - 0.02) * k / 99.0;
    const double n = index_extraordinary_effective(bbo(), 0.3547, alpha);
    const double dn = (index_extraordinary_effective(bbo(), 0.3547, alpha + h) -
                       index_extraordinary_effective(bbo(), 0.3547, alpha - h)) /
                      (2.0 * h);
    const double fd = std::atan(-dn / n);
    const double analytic = walk_off_angle(bbo(), 0.3547, alpha);
    CHECK(analytic >= 0.0);
    worst = std::max(worst, std::abs(fd - analytic));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("phase-matching solution closes the collinear mismatch") {
  const PhaseMatchingSolution pm = solve_phase_matching(bbo(), 0.3547);
  CHECK(pm.k_s == pm.k_i);
  CHECK(std::abs(pm.collinear_mismatch()) < 1e-6);
  CHECK(pm.k_p == doctest::Approx(fixtures::kKp).epsilon(1e-13));
  CHECK(pm.k_s == doctest::Approx(fixtures::kKs).epsilon(1e-13));
}

TEST_CASE("medium file parsing is strict") {
  CHECK_THROWS_AS(parse_medium("name = x\nsellmeier_o = 1 2 3\n"), ConfigError);
  CHECK_THROWS_AS(parse_medium("name = x\ncolour = blue\n"), ConfigError);
  CHECK_THROWS_AS(parse_medium("name = x\nsellmeier_o = 1 2 3 4\nsellmeier_e = 1 2 3 4\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_medium("name = x\nsellmeier_o = 1 2 3 4\nsellmeier_e = 1 2 3 4\n"
                               "range_um = 1.0 0.5\n"),
                  ConfigError);
  CHECK_THROWS_AS(load_medium("/nonexistent/medium"), IoError);
  const UniaxialMedium m = parse_medium(kWeakMedium);
  CHECK(m.name == "weak");
  CHECK(m.range_hi_um == 1.0);
}
