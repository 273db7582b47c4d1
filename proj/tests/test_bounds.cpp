#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "slm/bounds.hpp"
#include "slm/quasiperiodic.hpp"
#include "slm/seminorm.hpp"
#include "slm/verify.hpp"

using namespace slm;

TEST_CASE("derivative constant formula") {
  CHECK(derivative_constant(1.0, StepFunction(1.0), LocalMeasure::zero()) ==
        2.0);
  // ||mu||_unif = 4: max{2, 2} + 4 = 6
  const LocalMeasure mu4 = LocalMeasure::constant_density(4.0);
  CHECK(derivative_constant(1.0, StepFunction(1.0), mu4) == 6.0);
  CHECK(derivative_constant(2.0, StepFunction(1.0), LocalMeasure::zero()) ==
        1.0);
  CHECK_THROWS_AS(
      derivative_constant(0.0, StepFunction(1.0), LocalMeasure::zero()),
      std::invalid_argument);
}

TEST_CASE("gordon distance vanishes exactly at common periods") {
  const StepFunction a({{0.0, 0.5, 1.0}, {0.5, 1.0, 2.0}}, 1.0, 1.0);
  const LocalMeasure mu({{0.1, 0.4, 0.8}}, {{0.7, -0.5}}, 1.0);
  CHECK(gordon_distance(a, mu, 1.0) == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(gordon_distance(a, mu, 3.0) == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(gordon_distance(a, mu, 1.37) > 1e-3);
}

TEST_CASE("gordon distance of a shifted lattice vs grid oracle") {
  // unit atom lattice scanned at the half period
  const StepFunction a(1.0);
  const LocalMeasure comb = LocalMeasure::dirac_comb(1.0, 1.0);
  const double D = gordon_distance(a, comb, 0.5, 128);
  // mu - mu(.+1/2) is the alternating half-integer lattice; the flat
  // distance of every window is 1/2 (checked against the dense scan)
  const LocalMeasure diff = subtract_on_window(comb, shift(comb, 0.5), -3, 3);
  double scanned = 0;
  for (int i = 0; i <= 40; ++i)
    scanned =
        std::max(scanned, verify::wfd_grid_oracle(diff, -1.0 + i / 20.0, 500, 3000));
  CHECK(D == doctest::Approx(scanned).epsilon(5e-3));
}

TEST_CASE("gordon distance of a jump mismatch vs quadrature") {
  // height-1 jump; shifting by 1 + eps slides the jumps by eps
  const StepFunction a({{0.0, 0.5, 1.0}, {0.5, 1.0, 2.0}}, 1.0, 1.0);
  const LocalMeasure mu = LocalMeasure::zero();
  const double eps = 0.05;
  const double p = 1.0 + eps;
  const double D = gordon_distance(a, mu, p);
  // Riemann quadrature of |a(x) - a(x+p)| over (-p, p)
  const int n = 400000;
  double acc = 0;
  for (int i = 0; i < n; ++i) {
    const double x = -p + 2.0 * p * (i + 0.5) / n;
    acc += std::abs(a.value(x) - a.value(x + p)) * (2.0 * p / n);
  }
  CHECK(D == doctest::Approx(acc).epsilon(1e-3));
}

TEST_CASE("gordon scan on an exactly periodic pair") {
  const StepFunction a({{0.0, 0.5, 1.0}, {0.5, 1.0, 2.0}}, 1.0, 1.0);
  const LocalMeasure mu({{0.1, 0.4, 0.8}}, {{0.7, -0.5}}, 1.0);
  const GordonReport rep = gordon_scan(a, mu, {1.0, 2.0, 3.0}, 7.0);
  for (double d : rep.distances) CHECK(d == doctest::Approx(0.0));
  CHECK(rep.verdict);
  CHECK(rep.C_hat_infinite);
}

TEST_CASE("gordon scan verdict fails when weighted values grow") {
  // lattice alternations do not shrink: huge C forces growth
  const StepFunction a(1.0);
  const LocalMeasure comb = LocalMeasure::dirac_comb(1.0, 1.0);
  const GordonReport rep =
      gordon_scan(a, comb, {1.5, 2.5, 3.5}, 1e6, std::nullopt, {}, 1e-6, 16);
  CHECK(!rep.verdict);
  // exponentials overflow the linear column: carried in log space
  for (double lw : rep.log_weighted) CHECK(lw > 700.0);
  for (double w : rep.weighted) CHECK(std::isnan(w));
}

TEST_CASE("exponent estimate") {
  // synthetic D(p) = e^{-2p}: the estimate recovers 2
  std::vector<double> periods{1.0, 2.0, 3.0, 4.0};
  std::vector<double> distances;
  for (double p : periods) distances.push_back(std::exp(-2.0 * p));
  bool inf_flag = true;
  CHECK(exponent_estimate_from(distances, periods, &inf_flag) ==
        doctest::Approx(2.0));
  CHECK(!inf_flag);

  // an exact period makes it infinite and flagged
  distances[2] = 0.0;
  CHECK(std::isinf(exponent_estimate_from(distances, periods, &inf_flag)));
  CHECK(inf_flag);
}

TEST_CASE("eigenvalue bound") {
  const Coefficients free = schroedinger(LocalMeasure::zero());
  CHECK(eigenvalue_bound(1.0, free) == 1.0);

  const Coefficients unit = schroedinger(LocalMeasure::lebesgue());
  CHECK(eigenvalue_bound(2.0, unit) == 3.0);
  // vacuous when C^2 < ||1/a|| ||mu||
  CHECK(eigenvalue_bound(0.5, unit) == 0.0);
}

TEST_CASE("refined bound over an r grid") {
  const Coefficients free = schroedinger(LocalMeasure::zero());
  const RefinedBound flat =
      eigenvalue_bound_refined(2.0, free, {0.25, 0.5, 1.0, 2.0});
  CHECK(flat.value == doctest::Approx(4.0));
  CHECK(flat.sup_value == doctest::Approx(4.0));

  const RefinedBound single = eigenvalue_bound_refined(2.0, free, {1.0});
  CHECK(single.value == eigenvalue_bound(2.0, free));
  CHECK(single.at_r1 == eigenvalue_bound(2.0, free));

  // atomic weight: ||rho||_{unif, r} = 2, 1, 1 at r = 1/2, 1, 2
  Coefficients comb;
  comb.diffusion = StepFunction(1.0);
  comb.weight = LocalMeasure::dirac_comb(1.0, 1.0);
  comb.potential = LocalMeasure::zero();
  const RefinedBound rb =
      eigenvalue_bound_refined(1.0, comb, {0.5, 1.0, 2.0});
  CHECK(rb.value == doctest::Approx(0.5));
  CHECK(rb.argmin_r == doctest::Approx(0.5));
  CHECK(rb.sup_value == doctest::Approx(1.0));
}

TEST_CASE("growth envelopes") {
  const Coefficients free = schroedinger(LocalMeasure::zero());
  const GrowthEnvelopes g = growth_envelopes(free, 0.0, 1.0, 1.0, 0.0);
  CHECK(g.basic == doctest::Approx(std::exp(2.0)));
  CHECK(g.omega == 0.0);
  // with omega = 0 the weighted seminorm of (1, 0) collapses to |w0| = 0
  CHECK(g.optimized == 0.0);

  const GrowthEnvelopes g0 = growth_envelopes(free, 0.0, 0.0, 0.5, 2.0);
  CHECK(g0.basic == doctest::Approx(2.5 * std::exp(1.0)));
  CHECK(g0.optimized == doctest::Approx(2.0));
}

TEST_CASE("worked quasiperiodic example: structure") {
  const QuasiperiodicSystem sys = example_quasiperiodic(1.0, 3, 1e-2);
  CHECK(sys.scan_periods == std::vector<double>{2.0, 3.0, 5.0});
  CHECK(validate(sys.realized).pass());
  CHECK(sys.sampling_error_per_unit > 0.0);
  CHECK(sys.h == 1e-2);
  // windows cover the largest scan
  CHECK(sys.window_lo <= -6.0);
  CHECK(sys.window_hi >= 11.0);
  // a trivial second component collapses to the periodic base
  const LiouvilleNumber L = LiouvilleNumber::construct(1.0, 2);
  Coefficients base = schroedinger(LocalMeasure::constant_density(0.5));
  const QuasiperiodicSystem flat = quasiperiodic(
      base, nullptr, 0.0, 1.0, LocalMeasure::zero(), L, 1e-2);
  const double D =
      gordon_distance(flat.realized.diffusion, flat.realized.potential, 2.0);
  CHECK(D == doctest::Approx(0.0).epsilon(1e-12));
}
