#include "slm/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "slm/seminorm.hpp"

namespace slm {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double derivative_constant(double r, const StepFunction& a,
                           const LocalMeasure& mu) {
  if (!(r > 0)) throw std::invalid_argument("derivative_constant: r > 0");
  const double nu = unif_norm(mu);
  return std::max(2.0 * a.sup() / r, nu / 2.0) + std::ceil(r) * nu;
}

double gordon_distance(const StepFunction& a, const LocalMeasure& mu, double p,
                       int refine_per_unit) {
  if (!(p > 0)) throw std::invalid_argument("gordon_distance: needs p > 0");
  const double win = std::max(p, 1.0);
  // Windowed descriptions must cover [-p, 2p] (plus the seminorm margin).
  auto covers = [&](double lo, double hi) {
    if (!mu.period() && !mu.is_zero())
      if (mu.min_coord() > lo + kStructTol || mu.max_coord() < hi - kStructTol)
        return false;
    if (!a.period() && !a.is_constant())
      if (a.pieces().front().lo > lo + kStructTol ||
          a.pieces().back().hi < hi - kStructTol)
        return false;
    return true;
  };
  if (!covers(-win - 1.0, win + p + 1.0))
    throw std::invalid_argument(
        "gordon_distance: coefficients not described on [-p-1, 2p+1]");

  const double l1 = l1_distance(a, shift_arg(a, p), -p, p);
  const LocalMeasure diff =
      subtract_on_window(mu, shift(mu, p), -win - 1.0, win + 1.0);
  const double w = seminorm_surrogate(diff, {-win, win}, refine_per_unit);
  return l1 + w;
}

double exponent_estimate_from(const std::vector<double>& distances,
                              const std::vector<double>& periods,
                              bool* infinite_flag) {
  if (distances.empty() || distances.size() != periods.size())
    throw std::invalid_argument("exponent_estimate_from: bad grids");
  double best = -kInf;
  bool inf_flag = false;
  for (std::size_t i = 0; i < distances.size(); ++i) {
    if (distances[i] <= 0) {
      inf_flag = true;
      best = kInf;
    } else {
      best = std::max(best, -std::log(distances[i]) / periods[i]);
    }
  }
  if (infinite_flag) *infinite_flag = inf_flag;
  return best;
}

GordonReport gordon_scan(const StepFunction& a, const LocalMeasure& mu,
                         const std::vector<double>& periods, double C,
                         const std::optional<Coefficients>& for_bounds,
                         const std::vector<double>& r_grid, double verdict_tol,
                         int refine_per_unit) {
  if (C < 0) throw std::invalid_argument("gordon_scan: C >= 0");
  for (std::size_t i = 0; i + 1 < periods.size(); ++i)
    if (!(periods[i] < periods[i + 1]))
      throw std::invalid_argument("gordon_scan: periods strictly increasing");

  GordonReport rep;
  rep.C_used = C;
  rep.tolerance = verdict_tol;
  rep.periods = periods;
  for (double p : periods) {
    const double D = gordon_distance(a, mu, p, refine_per_unit);
    rep.distances.push_back(D);
    const double lw = (D > 0) ? C * p + std::log(D) : -kInf;
    rep.log_weighted.push_back(lw);
    rep.weighted.push_back(std::abs(lw) <= 700.0
                               ? std::exp(lw)
                               : std::numeric_limits<double>::quiet_NaN());
    const double e = (D > 0) ? -std::log(D) / p : kInf;
    rep.exponent_estimates.push_back(e);
  }
  rep.C_hat = -kInf;
  for (double e : rep.exponent_estimates) {
    if (std::isinf(e)) rep.C_hat_infinite = true;
    rep.C_hat = std::max(rep.C_hat, e);
  }

  // verdict: the log-weighted column is eventually monotone (nonincreasing,
  // so exact-period zero distances qualify) and ends at or below the
  // tolerance
  if (!rep.log_weighted.empty()) {
    std::size_t start = rep.log_weighted.size() - 1;
    while (start > 0 &&
           rep.log_weighted[start - 1] >= rep.log_weighted[start])
      --start;
    const bool tail_ok = rep.log_weighted.size() == 1 ||
                         start + 2 <= rep.log_weighted.size();
    const bool small_enough =
        rep.log_weighted.back() <= std::log(verdict_tol) + 1e-15;
    rep.verdict = tail_ok && small_enough;
  }

  if (for_bounds) {
    rep.bound_basic = eigenvalue_bound(C, *for_bounds);
    const std::vector<double> rg =
        r_grid.empty() ? std::vector<double>{0.25, 0.5, 1.0, 2.0, 4.0} : r_grid;
    const RefinedBound rb = eigenvalue_bound_refined(C, *for_bounds, rg);
    rep.bound_refined = rb.value;
    rep.bound_refined_argmin_r = rb.argmin_r;
    rep.bound_refined_sup = rb.sup_value;
    rep.bound_refined_argmax_r = rb.argmax_r;
  }
  return rep;
}

double gordon_exponent_estimate(const StepFunction& a, const LocalMeasure& mu,
                                const std::vector<double>& p_grid,
                                bool* infinite_flag, int refine_per_unit) {
  if (p_grid.empty())
    throw std::invalid_argument("gordon_exponent_estimate: empty grid");
  std::vector<double> distances;
  for (double p : p_grid)
    distances.push_back(gordon_distance(a, mu, p, refine_per_unit));
  return exponent_estimate_from(distances, p_grid, infinite_flag);
}

double eigenvalue_bound(double C, const Coefficients& c) {
  const ValidationReport v = validate(c);
  const double val = (C * C / v.sup_inv_a - v.unif_mu) / v.unif_rho;
  return std::max(0.0, val);
}

RefinedBound eigenvalue_bound_refined(double C, const Coefficients& c,
                                      const std::vector<double>& r_grid) {
  if (r_grid.empty())
    throw std::invalid_argument("eigenvalue_bound_refined: empty r grid");
  const ValidationReport v = validate(c);
  RefinedBound out;
  out.value = kInf;
  out.sup_value = -kInf;
  for (double r : r_grid) {
    if (!(r > 0))
      throw std::invalid_argument("eigenvalue_bound_refined: r > 0");
    const double mur = unif_norm_r(c.potential, r);
    const double rhor = unif_norm_r(c.weight, r);
    const double val = std::max(0.0, (C * C / v.sup_inv_a - mur) / rhor);
    if (val < out.value) {
      out.value = val;
      out.argmin_r = r;
    }
    if (val > out.sup_value) {
      out.sup_value = val;
      out.argmax_r = r;
    }
    if (r == 1.0) out.at_r1 = val;
  }
  return out;
}

GrowthEnvelopes growth_envelopes(const Coefficients& c, double z, double t,
                                 double u0, double w0) {
  const double inv_a = 1.0 / c.diffusion.inf();
  const double nu = unif_norm_shifted(c, z);
  GrowthEnvelopes g;
  g.basic = (std::abs(u0) + std::abs(w0)) *
            std::exp((inv_a + nu) * (std::abs(t) + 1.0));
  g.omega = std::sqrt(nu / inv_a);
  g.optimized = std::sqrt(g.omega * g.omega * u0 * u0 + w0 * w0) *
                std::exp(g.omega * inv_a * (std::abs(t) + 0.5));
  return g;
}

}  // namespace slm
