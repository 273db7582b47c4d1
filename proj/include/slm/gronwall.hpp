#pragma once

// Gronwall inequality for nonnegative measure kernels on [0, T]: from
//   u(t) <= alpha(t) + int_{[0,t)} u dmu
// follows
//   u(t) <= alpha(t) + int_{[0,t)} alpha(s) exp(mu((s,t))) dmu(s),
// with the open-interval exponent (atoms at s and t excluded).  The closed
// bound is evaluated exactly for piecewise-constant alpha and density+atom
// kernels; the iterated-kernel oracle certifies it from below.

#include "slm/measure.hpp"
#include "slm/step_function.hpp"

namespace slm {

struct GronwallInstance {
  StepFunction alpha_fn;  // nonnegative, piecewise constant on [0, T]
  LocalMeasure kernel;    // nonnegative, restricted to [0, T]
  double T = 1.0;
};

double gronwall_bound(const GronwallInstance& g, double t);

struct GronwallOracleResult {
  double partial_sum;    // Neumann series through k_max on an n_grid mesh
  double remainder_cap;  // mu((0,t))^{k_max} / k_max! * int |u| dmu
};

GronwallOracleResult gronwall_oracle(const GronwallInstance& g, double t,
                                     int n_grid, int k_max);

}  // namespace slm
