#pragma once

// Flat-function seminorm machinery built on the distribution function
// phi(t) = mu((0,t]).
//
// The window quantity min_c int_{t-1}^{t+1} |phi(s) - c| ds sandwiches the
// seminorm sup{ |int u dmu| : |u'| <= 1, spt u in the window } within a
// factor of two; the minimizing c is a weighted median of the piecewise
// linear phi over the window.

#include <vector>

#include "slm/measure.hpp"

namespace slm {

struct Interval {
  double lo;
  double hi;
  double length() const { return hi - lo; }
};

// phi restricted to [lo, hi): contiguous affine runs; atoms jump between
// consecutive segments.  On [x0, x1): phi(s) = v0 + slope * (s - x0).
struct PhiSegment {
  double x0;
  double x1;
  double v0;
  double slope;
};

std::vector<PhiSegment> phi_segments(const LocalMeasure& mu, double lo,
                                     double hi);

struct FlatDistance {
  double value;   // min_c int_{t-1}^{t+1} |phi - c|
  double c_star;  // minimizer; midpoint of the minimizing interval on ties
};

// Exact evaluation; for t == 0 the returned c_star is clipped into
// [-unif_norm(mu), unif_norm(mu)].
FlatDistance window_flat_distance(const LocalMeasure& mu, double t);

// window_flat_distance(mu, 0).c_star.
double c_constant(const LocalMeasure& mu);

// sup over windows [t-1, t+1] inside I of the window flat distance.  The t
// sweep runs over breakpoints of phi (each also shifted by +-1) plus a
// uniform refinement grid; requires length(I) >= 2.
double seminorm_surrogate(const LocalMeasure& mu, Interval I,
                          int refine_per_unit = 64);

// Brute-force lower bound on the seminorm over I: maximizes |int u dmu| over
// trapezoidal test functions with unit slopes, support diameter <= 2 and
// support inside I, on an n_grid^3 lattice of (center, plateau, support).
double seminorm_lower_oracle(const LocalMeasure& mu, Interval I, int n_grid);

// Exact integral of the piecewise-linear function through nodes (xs, ys)
// (zero outside [xs.front(), xs.back()]) against mu.
double integrate_pwl(const LocalMeasure& mu, const std::vector<double>& xs,
                     const std::vector<double>& ys);

}  // namespace slm
