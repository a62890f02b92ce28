#pragma once

#include <cstddef>

/*
 * Every pass/fail gate in one place. Experiments read these constants and
 * the acceptance suite quotes them, so code and criteria cannot drift apart.
 * KS gates are calibrated constants for seed-stable finite-N runs, not
 * asymptotic p-values.
 */
namespace lpplab::thresholds {

// Exact identities: gap scaled by max(1, |a|, |b|), sized for accumulated
// roundoff across <= 64-step running maxima.
inline constexpr double kIdentityRelTol = 1e-9;

// Geodesic weight must reproduce the DP value.
inline constexpr double kGeodesicRelTol = 1e-12;

// Running-max vs occupation-time comparison (rate 4, 5000 replicas).
inline constexpr double kLevyTwoSampleKs = 0.05;
inline constexpr double kLevyOneSampleKs = 0.03;
inline constexpr double kLevyMeanSigmas = 3.0;

// Box-counting gates.
inline constexpr double kCantorSlopeTol = 1e-6;
inline constexpr double kZeroSetSlopeLo = 0.43;
inline constexpr double kZeroSetSlopeHi = 0.57;
inline constexpr double kZeroSetR2 = 0.97;
inline constexpr double kNcSlopeLo = 0.40;
inline constexpr double kNcSlopeHi = 0.60;
inline constexpr double kNcR2 = 0.95;

// Local-limit KS gates: oracle harness calibration, then simulated profiles.
inline constexpr double kOracleKs = 0.03;
inline constexpr double kLocalLimitKs = 0.08;
inline constexpr std::size_t kLocalLimitMinEffective = 500;

// Growth slope must be within 15% of 2*(y_b - y_a).
inline constexpr double kGrowthSlopeRelTol = 0.15;

} // namespace lpplab::thresholds
