#pragma once

// Two-frequency coefficients: a 1-periodic triple plus an alpha-periodic
// summand, realized as exact windowed descriptions over the span the period
// scan needs.  The Hoelder-continuous diffusion summand enters through
// left-endpoint sampling at step h; the potential summand is laid out cell
// by cell at multiples of alpha.

#include <functional>
#include <vector>

#include "slm/coefficients.hpp"
#include "slm/liouville.hpp"

namespace slm {

struct QuasiperiodicSystem {
  Coefficients realized;  // windowed over [window_lo, window_hi]
  double window_lo = 0;
  double window_hi = 0;
  double h = 0;                        // sampling step (0 when no sampled part)
  double sampling_error_per_unit = 0;  // holder_c * h^holder_beta
  std::vector<double> scan_periods;    // integer shifts from the convergents
};

// base must be 1-periodic (all components).  a2 may be empty (no sampled
// summand); mu2_cell describes one cell (0, alpha] of the alpha-periodic
// potential summand and may be the zero measure.
QuasiperiodicSystem quasiperiodic(const Coefficients& base,
                                  const std::function<double(double)>& a2,
                                  double holder_c, double holder_beta,
                                  const LocalMeasure& mu2_cell,
                                  const LiouvilleNumber& alpha, double h);

// Worked two-frequency example: a2(x) = 0.1 (1 + cos(2 pi x / alpha)) and
// mu2 = 0.5 * (point masses at alpha Z + alpha/2), over Lebesgue weight.
QuasiperiodicSystem example_quasiperiodic(double B, int m_max, double h);

}  // namespace slm
