#pragma once

// Frozen reference values.
//
// Dispersion values: 40-digit mpmath evaluation of data/bbo.medium (Sellmeier form in
// the file header), mpmath.findroot for the phase-matching angle and mpmath.diff for
// the walk-off derivative.
//
// TPA regression values: an independent numpy implementation of the defining
// overlap integral (600-node Gauss-Legendre in x over +-9 sigma, 400 panels x 40
// nodes in z per slab) using the fixture wavenumbers below.
//
// Grid-derived values (Schmidt numbers, conditional peak, fit residuals): closed-form
// engine at 354.7 nm / 70 um / 6 mm on the automatic 201 x 201 grid, after the closed
// form was confirmed against both oracles above.

#include <complex>

namespace fixtures {

inline constexpr double kNoSignal = 1.664515113945157876;   // n_o(0.7094 um)
inline constexpr double kNoPump = 1.705596398411826209;     // n_o(0.3547 um)
inline constexpr double kNePump = 1.577525320003325363;     // n_e(0.3547 um)
inline constexpr double kAlpha = 0.5749951143794625663;     // rad, 32.9448 deg
inline constexpr double kWalkoff = 0.07330876946256598995;  // rad, 4.2003 deg
inline constexpr double kAlphaDeg3548 = 32.93448272057545928;

// wavenumbers (rad/m) used by the mismatch and TPA fixtures
inline constexpr double kKp = 29485359.197966084;
inline constexpr double kKs = 14742679.598983042;

// mismatches at theta_s = 0.02, theta_i = 0.01 rad
inline constexpr double kDparAt = 3685.565473762861326;
inline constexpr double kDperpAt = 147409.5965778137812;

// comp stack (3 mm, +theta | 3 mm, -theta), 70 um pump, raw (unnormalized) F
inline const std::complex<double> kCompF_6_45{-2.174139504680013e-08, -1.0961731912584124e-07};
inline const std::complex<double> kCompF_15_15{2.7673313815829236e-08, 1.6078655614168734e-08};

// 354.7 nm pump, 70 um FWHM, 6 mm total, automatic grid
inline constexpr double kAutoHalfRange = 0.028912842439092951;
inline constexpr double kSchmidtKIso = 3.4147412822176588;
inline constexpr double kSchmidtKComp = 10.084784804681462;
inline constexpr double kSchmidtKAniso = 25.458628180371964;
inline constexpr double kAnisoCondPeakAt10mrad = 0.0113934683344071;
inline constexpr double kDoubleGaussResidualIso = 0.193106;
inline constexpr double kDoubleGaussResidualAniso = 0.836846;
inline constexpr double kDoubleGaussResidualComp = 0.638452;

}  // namespace fixtures
