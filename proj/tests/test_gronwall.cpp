#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "slm/gronwall.hpp"

using namespace slm;

namespace {
GronwallInstance lebesgue_instance(double T) {
  return {StepFunction(1.0), LocalMeasure({{0.0, T, 1.0}}, {}), T};
}
}  // namespace

TEST_CASE("closed bound: textbook cases") {
  const GronwallInstance g = lebesgue_instance(3.0);
  for (double t : {0.0, 0.5, 1.0, 2.0, 3.0})
    CHECK(gronwall_bound(g, t) == doctest::Approx(std::exp(t)).epsilon(1e-12));

  const GronwallInstance zero{StepFunction(1.0), LocalMeasure::zero(), 2.0};
  CHECK(gronwall_bound(zero, 1.3) == doctest::Approx(1.0));

  // single atom: the open-interval exponent excludes the atom itself
  const GronwallInstance atom{StepFunction(1.0),
                              LocalMeasure::dirac(0.5, 0.8), 2.0};
  CHECK(gronwall_bound(atom, 1.5) == doctest::Approx(1.8));
  CHECK(gronwall_bound(atom, 0.25) == doctest::Approx(1.0));
  // at t equal to the atom the open interval [0, t) excludes it
  CHECK(gronwall_bound(atom, 0.5) == doctest::Approx(1.0));
}

TEST_CASE("closed bound: atom at zero counts") {
  const GronwallInstance g{StepFunction(1.0), LocalMeasure::dirac(0.0, 0.7),
                           1.0};
  CHECK(gronwall_bound(g, 0.5) == doctest::Approx(1.7));
}

TEST_CASE("two atoms compound") {
  // kernel c1 delta_{t1} + c2 delta_{t2}: bound(t) for t > t2 is
  // alpha (1 + c1 e^{c2} + c2) with the open exponent seeing only the later atom
  const GronwallInstance g{
      StepFunction(1.0),
      LocalMeasure({}, {{0.4, 0.3}, {0.9, 0.5}}), 2.0};
  const double expect = 1.0 + 0.3 * std::exp(0.5) + 0.5;
  CHECK(gronwall_bound(g, 1.5) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("bound input validation") {
  const GronwallInstance g = lebesgue_instance(2.0);
  CHECK_THROWS_AS(gronwall_bound(g, -0.5), std::invalid_argument);
  CHECK_THROWS_AS(gronwall_bound(g, 2.5), std::invalid_argument);
  const GronwallInstance bad{StepFunction(1.0),
                             LocalMeasure({{0.0, 1.0, -1.0}}, {}), 1.0};
  CHECK_THROWS_AS(gronwall_bound(bad, 0.5), std::invalid_argument);
}

TEST_CASE("oracle: zero kernel and exponential convergence") {
  const GronwallInstance zero{StepFunction(2.0), LocalMeasure::zero(), 2.0};
  const GronwallOracleResult r0 = gronwall_oracle(zero, 1.0, 64, 4);
  CHECK(r0.partial_sum == doctest::Approx(2.0));
  CHECK(r0.remainder_cap == doctest::Approx(0.0));

  const GronwallInstance g = lebesgue_instance(2.0);
  for (double t : {0.5, 1.0, 2.0}) {
    const GronwallOracleResult r = gronwall_oracle(g, t, 2048, 20);
    CHECK(r.partial_sum == doctest::Approx(std::exp(t)).epsilon(1e-4));
    CHECK(r.partial_sum <= gronwall_bound(g, t) + 1e-4);
  }
}

TEST_CASE("oracle remainder cap decays factorially") {
  const GronwallInstance g = lebesgue_instance(2.0);
  double prev = 1e300;
  for (int k : {4, 8, 12, 20}) {
    const GronwallOracleResult r = gronwall_oracle(g, 2.0, 256, k);
    CHECK(r.remainder_cap < prev);
    prev = r.remainder_cap;
  }
  CHECK(prev < 1e-8);
}

TEST_CASE("oracle parameter validation") {
  const GronwallInstance g = lebesgue_instance(1.0);
  CHECK_THROWS_AS(gronwall_oracle(g, 0.5, 4, 4), std::invalid_argument);
  CHECK_THROWS_AS(gronwall_oracle(g, 0.5, 64, 0), std::invalid_argument);
}
