#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "slm/seminorm.hpp"
#include "slm/verify.hpp"

using namespace slm;

TEST_CASE("window flat distance: basic windows") {
  // phi(s) = s on [-1, 1]: minimizer 0, integral of |s| is 1
  const FlatDistance leb = window_flat_distance(LocalMeasure::lebesgue(), 0.0);
  CHECK(leb.value == doctest::Approx(1.0));
  CHECK(leb.c_star == doctest::Approx(0.0));

  const FlatDistance zero = window_flat_distance(LocalMeasure::zero(), 0.3);
  CHECK(zero.value == 0.0);
  CHECK(zero.c_star == 0.0);

  // single atom at 0: phi = -1 on [-1, 0), 0 on [0, 1]; every c in [-1, 0]
  // is optimal with value 1; ties resolve to the midpoint
  const FlatDistance d0 =
      window_flat_distance(LocalMeasure::dirac(0.0, 1.0), 0.0);
  CHECK(d0.value == doctest::Approx(1.0));
  CHECK(d0.c_star == doctest::Approx(-0.5));
}

TEST_CASE("window flat distance agrees with a dense grid scan") {
  verify::Rng rng(7);
  for (int i = 0; i < 12; ++i) {
    const LocalMeasure mu =
        verify::random_measure(rng, (i % 2) ? 1.3 : -1.0, 3.0);
    if (mu.is_zero()) continue;
    const double t = -1.0 + 0.4 * i;
    const double exact = window_flat_distance(mu, t).value;
    const double scanned = verify::wfd_grid_oracle(mu, t, 2000, 4000);
    CHECK(exact == doctest::Approx(scanned).epsilon(5e-3));
    // the Riemann scan can undershoot by its quadrature error only
    CHECK(exact <= scanned + 5e-3 * (1.0 + scanned));
  }
}

TEST_CASE("c constant") {
  CHECK(c_constant(LocalMeasure::zero()) == 0.0);
  CHECK(c_constant(LocalMeasure::lebesgue()) == doctest::Approx(0.0));
  CHECK(c_constant(LocalMeasure::dirac(0.0, 1.0)) == doctest::Approx(-0.5));
  // |c| <= unif norm
  const LocalMeasure m({{0.0, 0.5, 2.0}}, {{0.7, -1.0}}, 1.0);
  CHECK(std::abs(c_constant(m)) <= unif_norm(m) + 1e-12);
}

TEST_CASE("seminorm surrogate") {
  CHECK(seminorm_surrogate(LocalMeasure::zero(), {-3.0, 5.0}) == 0.0);
  CHECK(seminorm_surrogate(LocalMeasure::lebesgue(), {-1.0, 1.0}) ==
        doctest::Approx(1.0));
  CHECK_THROWS_AS(seminorm_surrogate(LocalMeasure::lebesgue(), {0.0, 1.5}),
                  std::invalid_argument);

  // an atom pair of opposite sign at small separation: the flat distance of
  // any window is the separation times the weight
  const double p = 0.1;
  const LocalMeasure pair = subtract(LocalMeasure::dirac(0.0, 1.0),
                                     LocalMeasure::dirac(p, 1.0));
  const double w = seminorm_surrogate(pair, {-1.0, 2.0});
  CHECK(w == doctest::Approx(p).epsilon(1e-9));

  // cross-check against a dense (t, c) grid scan
  double scanned = 0;
  for (int i = 0; i <= 60; ++i) {
    const double t = 0.0 + i / 60.0;  // windows [t-1, t+1] inside [-1, 2]
    scanned = std::max(scanned, verify::wfd_grid_oracle(pair, t, 400, 2000));
  }
  CHECK(w == doctest::Approx(scanned).epsilon(5e-3));
}

TEST_CASE("seminorm lower oracle") {
  CHECK(seminorm_lower_oracle(LocalMeasure::zero(), {-1.0, 1.0}, 16) == 0.0);
  CHECK_THROWS_AS(seminorm_lower_oracle(LocalMeasure::lebesgue(), {-1.0, 1.0}, 1),
                  std::invalid_argument);

  // hat of height 1 at the atom: the oracle approaches 1 from below
  const LocalMeasure d0 = LocalMeasure::dirac(0.0, 1.0);
  const double L64 = seminorm_lower_oracle(d0, {-1.0, 1.0}, 64);
  const double L256 = seminorm_lower_oracle(d0, {-1.0, 1.0}, 256);
  CHECK(L64 <= 1.0 + 1e-12);
  CHECK(L256 <= 1.0 + 1e-12);
  CHECK(L256 >= L64 - 1e-12);
  CHECK(L256 == doctest::Approx(1.0).epsilon(2e-2));

  // sandwich on a nonnegative instance: L <= W <= 2L + slack
  const LocalMeasure m({{-0.8, -0.1, 0.7}}, {{0.4, 0.9}});
  const double W = seminorm_surrogate(m, {-2.0, 2.0}, 128);
  const double L = seminorm_lower_oracle(m, {-2.0, 2.0}, 512);
  CHECK(L <= W + 1e-9);
  CHECK(W <= 2.0 * L + 0.05 * W);
}

TEST_CASE("integrate piecewise linear test functions") {
  // triangle hat against a density: int (1 - |x|) dx over [-1, 1] = 1
  const LocalMeasure leb = LocalMeasure::lebesgue();
  const double v = integrate_pwl(leb, {-1.0, 0.0, 1.0}, {0.0, 1.0, 0.0});
  CHECK(v == doctest::Approx(1.0));
  // an atom picks up the interpolated value
  const LocalMeasure at = LocalMeasure::dirac(0.25, 2.0);
  CHECK(integrate_pwl(at, {-1.0, 0.0, 1.0}, {0.0, 1.0, 0.0}) ==
        doctest::Approx(2.0 * 0.75));
}
