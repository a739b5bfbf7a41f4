#pragma once

#include <functional>

#include "pentagon/types.hpp"

namespace pentagon {

struct HalflineOptions {
  // > 0: integrate only (t_min, t_max]; the caller supplies any analytic tail.
  // 0: the truncation point is found by scanning geometrically for decay.
  double t_max = 0.0;
  // > 0: cap on the width of a Gauss panel (oscillation control).
  double panel_width = 0.0;
  // Start of the numerical range; pair with small_t for a caller-evaluated
  // contribution of the initial segment (0, t_min].
  double t_min = 0.0;
  Complex small_t{0.0, 0.0};
};

// Integral of f over (t_min, t_max or infinity) by composite Gauss-Legendre
// panels with width halving until two refinements agree within tol.
QuadratureResult integrate_halfline(const std::function<Complex(double)>& f,
                                    double tol,
                                    const HalflineOptions& opt = {});

struct ReallineOptions {
  double panel_width = 0.0;   // > 0: cap on the width of a Gauss panel
  double radius_scale = 1.0;  // multiplies the detected truncation radius
};

// Samples |f| near radii {5, 10, 20, 40} on both sides (three offsets per
// radius to dodge isolated zeros). detected requires the envelope to decrease
// strictly over the last three radii.
DecayReport probe_decay(const std::function<Complex(double)>& f);

// Integral of f over the whole real line. Probes for decay first and throws
// NoDecay when the envelope does not fall off (or falls off too slowly to
// truncate). Exponentially decaying integrands are truncated where the
// envelope extrapolates below tol * 1e-2; power-law tails are completed with a
// fitted inverse-power correction.
QuadratureResult integrate_realline(const std::function<Complex(double)>& f,
                                    double tol,
                                    const ReallineOptions& opt = {});

// Mean of f over the unit circle (equals the z^0 Laurent coefficient, i.e. the
// contour integral with measure dz/(2 pi i z)) using N equispaced nodes,
// doubling N from 64 with node reuse until two levels agree within tol.
// Throws PoleNearContour when a node value is non-finite or implausibly large,
// QuadratureFailure when N exceeds 2^20 without converging.
QuadratureResult contour_unit_circle(
    const std::function<Complex(const Complex&)>& f, double tol);

struct BilateralOptions {
  std::size_t max_each_way = 4000;
  // Window length for the no-decay heuristic: if the max |term| over the most
  // recent window fails to drop below the max over the previous window while
  // still above threshold, the sum is declared non-decaying.
  std::size_t probe_window = 10;
};

// Sum of term(s) over all integers s, expanding outward from 0 in both
// directions; a direction stops after 3 consecutive terms below tol * 1e-2
// relative to the accumulated magnitude.
QuadratureResult sum_bilateral(const std::function<Complex(long)>& term,
                               double tol, const BilateralOptions& opt = {});

}  // namespace pentagon
