#include "slm/quasiperiodic.hpp"

#include <cmath>
#include <stdexcept>

namespace slm {

QuasiperiodicSystem quasiperiodic(const Coefficients& base,
                                  const std::function<double(double)>& a2,
                                  double holder_c, double holder_beta,
                                  const LocalMeasure& mu2_cell,
                                  const LiouvilleNumber& alpha, double h) {
  if (holder_c < 0 || holder_beta <= 0)
    throw std::invalid_argument("quasiperiodic: bad Hoelder constants");
  if (a2 && !(h > 0))
    throw std::invalid_argument("quasiperiodic: sampled summand needs h > 0");

  QuasiperiodicSystem sys;
  sys.scan_periods = alpha.scan_periods();
  const double pmax = sys.scan_periods.back();
  sys.window_lo = -(pmax + 2.0);
  sys.window_hi = 2.0 * pmax + 2.0;
  sys.h = a2 ? h : 0.0;
  sys.sampling_error_per_unit = a2 ? holder_c * std::pow(h, holder_beta) : 0.0;

  // diffusion: exact 1-periodic part materialized, plus the sampled summand
  StepFunction a = materialize(base.diffusion, sys.window_lo, sys.window_hi);
  if (a2) {
    const StepFunction a2s =
        sample_function(a2, sys.window_lo, sys.window_hi, h, 0.0);
    a = add(a, a2s);
  }

  // potential: both summands laid out over the window
  const double av = alpha.alpha();
  LocalMeasure mu2(mu2_cell.pieces(), mu2_cell.atoms(), av);
  LocalMeasure mu = add(restrict_window(base.potential, sys.window_lo, sys.window_hi),
                        restrict_window(mu2, sys.window_lo, sys.window_hi));

  sys.realized = Coefficients{a, base.weight, mu};
  return sys;
}

QuasiperiodicSystem example_quasiperiodic(double B, int m_max, double h) {
  const LiouvilleNumber alpha = LiouvilleNumber::construct(B, m_max);
  const double av = alpha.alpha();

  Coefficients base;
  base.diffusion = StepFunction({{0.0, 0.5, 1.0}, {0.5, 1.0, 1.25}}, 1.0, 1.0);
  base.weight = LocalMeasure::lebesgue();
  base.potential =
      LocalMeasure({{0.5, 0.75, 0.3}}, {{0.25, 0.4}}, 1.0);

  const double amp = 0.1;
  auto a2 = [av, amp](double x) {
    return amp * (1.0 + std::cos(2.0 * M_PI * x / av));
  };
  const double holder_c = amp * 2.0 * M_PI / av;  // Lipschitz constant

  const LocalMeasure mu2_cell({}, {{av / 2.0, 0.5}});
  return quasiperiodic(base, a2, holder_c, 1.0, mu2_cell, alpha, h);
}

}  // namespace slm
