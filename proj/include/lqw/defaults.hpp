#pragma once

#include <cstddef>

// All tunable defaults of the toolkit in one place. Values here are the ones
// the CLI uses when a config file does not override them; the library
// functions take them as explicit parameters.
namespace lqw::defaults {

// --- discretization / solver ---
inline constexpr int kNodes = 512;           // quadrature nodes n
inline constexpr double kTruncation = 100.0; // arc-length half-width T for unbounded curves
inline constexpr int kTopBranches = 4;       // eigenvalue branches tracked (top_k)
inline constexpr int kKappaGridPoints = 64;  // log-spaced kappa grid for eigenvalue tables
inline constexpr int kPanelGaussOrder = 12;  // Gauss order for panel integrals
inline constexpr int kDenseEigenCutoff = 2048; // full eigendecomposition up to this n

// --- chord-arc constant ---
inline constexpr int kChordArcGrid = 512;      // initial pair grid m
inline constexpr int kRefineLevels = 6;        // local refinement levels r
inline constexpr double kDiagFloorFactor = 1e-4; // eps_diag = factor * L
inline constexpr double kSelfIntersectChord = 1e-9;  // chord below this ...
inline constexpr double kSelfIntersectGeoFactor = 1e-2; // ... at geodesic separation > factor * L
inline constexpr double kChordArcFloor = 1e-4; // extensions must beat this

// --- cusp detection ---
inline constexpr double kCuspVelocityTol = 1e-8;
inline constexpr double kCuspFdStep = 1e-6;

// --- bound-state search ---
inline constexpr double kRootResidualTol = 1e-8; // |mu - 1| at the root
inline constexpr double kBracketFloor = 1e-10;   // minimal kappa bracket width
inline constexpr double kVerdictSlack = 1e-6;    // lambda >= bound - slack

// --- asymptotic-straightness diagnostic ---
inline constexpr double kSectorOmega = 0.5;

// --- arc-length machinery ---
inline constexpr double kArcLengthRelTol = 1e-13;
inline constexpr int kArcLengthMaxDepth = 48;

}  // namespace lqw::defaults
