#pragma once

#include <random>

#include "walkoff/dispersion.hpp"
#include "walkoff/geometry.hpp"

namespace testing {

inline const walkoff::UniaxialMedium& bbo() {
  static const walkoff::UniaxialMedium m = walkoff::load_medium(walkoff::default_medium_path());
  return m;
}

inline const walkoff::PhaseMatchingSolution& reference_pm() {
  static const walkoff::PhaseMatchingSolution pm = walkoff::solve_phase_matching(bbo(), 0.3547);
  return pm;
}

inline walkoff::PumpBeam reference_pump() { return walkoff::PumpBeam(354.7e-9, 70e-6); }

inline walkoff::StandardStacks reference_stacks() {
  return walkoff::make_standard_stacks(6e-3, reference_pm().theta_walkoff);
}

/// Phase-matching solution with the frozen fixture wavenumbers.
inline walkoff::PhaseMatchingSolution fixture_pm() {
  walkoff::PhaseMatchingSolution pm;
  pm.alpha = 0.5749951143794625663;
  pm.theta_walkoff = 0.07330876946256598995;
  pm.k_p = 29485359.197966084;
  pm.k_s = 14742679.598983042;
  pm.k_i = pm.k_s;
  return pm;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(0x5eed);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

}  // namespace testing
