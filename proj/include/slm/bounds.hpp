#pragma once

// Explicit constants, period-scan distances, exponent estimation and the
// eigenvalue-exclusion bounds.

#include <optional>
#include <vector>

#include "slm/coefficients.hpp"

namespace slm {

// C_{r,a,mu} = max{2 ||a||_inf / r, ||mu||_unif / 2} + ceil(r) ||mu||_unif.
double derivative_constant(double r, const StepFunction& a,
                           const LocalMeasure& mu);

// D(p) = ||a - a(.+p)||_{L1(-p,p)} + seminorm surrogate of mu - mu(.+p) over
// [-p, p].  The coefficients must be described on [-p, 2p] (windowed
// descriptions must cover it).  For p < 1 the seminorm window is widened to
// [-1, 1] (the smallest admissible window), an upper proxy.
double gordon_distance(const StepFunction& a, const LocalMeasure& mu, double p,
                       int refine_per_unit = 64);

// Running max of -log(D)/p over the grid (the scan's exponent estimator);
// D == 0 entries give +inf.
double exponent_estimate_from(const std::vector<double>& distances,
                              const std::vector<double>& periods,
                              bool* infinite_flag = nullptr);

struct GordonReport {
  std::vector<double> periods;
  std::vector<double> distances;         // D(p)
  std::vector<double> log_weighted;      // C p + log D(p)   (-inf when D == 0)
  std::vector<double> weighted;          // exp of the above when |.| <= 700
  std::vector<double> exponent_estimates;  // -log(D(p)) / p
  double C_used = 0;
  double C_hat = 0;  // running max of the exponent estimates
  bool C_hat_infinite = false;
  double bound_basic = 0;
  double bound_refined = 0;
  double bound_refined_argmin_r = 1;
  double bound_refined_sup = 0;
  double bound_refined_argmax_r = 1;
  double sampling_step = 0;
  bool verdict = false;
  double tolerance = 1e-6;
};

// Distances at each period, weighted values in log space, exponent
// estimates, and (when a full triple is supplied) the exclusion bounds.
// Verdict: the weighted column is eventually strictly decreasing and its
// last value is at most verdict_tol.
GordonReport gordon_scan(const StepFunction& a, const LocalMeasure& mu,
                         const std::vector<double>& periods, double C,
                         const std::optional<Coefficients>& for_bounds =
                             std::nullopt,
                         const std::vector<double>& r_grid = {},
                         double verdict_tol = 1e-6, int refine_per_unit = 64);

// Running max over the grid of -log(D(p))/p; a zero distance makes the
// estimate +inf (flagged).
double gordon_exponent_estimate(const StepFunction& a, const LocalMeasure& mu,
                                const std::vector<double>& p_grid,
                                bool* infinite_flag = nullptr,
                                int refine_per_unit = 64);

// max(0, (C^2 / ||1/a||_inf - ||mu||_unif) / ||rho||_unif).
double eigenvalue_bound(double C, const Coefficients& c);

struct RefinedBound {
  double value = 0;      // grid infimum of the r-parametrized bound
  double argmin_r = 1;
  double sup_value = 0;  // grid supremum (the larger exclusion radius)
  double argmax_r = 1;
  double at_r1 = 0;      // value at r = 1 (equals the basic bound)
};

// (1 / ||rho||_{unif,r}) (C^2 / ||1/a||_inf - ||mu||_{unif,r}) over r_grid.
RefinedBound eigenvalue_bound_refined(double C, const Coefficients& c,
                                      const std::vector<double>& r_grid);

struct GrowthEnvelopes {
  double basic;      // (|u0| + |w0|) e^{(||1/a||_inf + ||mu - z rho||_unif)(|t| + 1)}
  double optimized;  // sqrt(w^2 u0^2 + w0^2) e^{w ||1/a||_inf (|t| + 1/2)}
  double omega;      // sqrt(||mu - z rho||_unif / ||1/a||_inf)
};

GrowthEnvelopes growth_envelopes(const Coefficients& c, double z, double t,
                                 double u0, double w0);

}  // namespace slm
