#include <doctest.h>

#include <stdexcept>

#include "slm/coefficients.hpp"
#include "slm/verify.hpp"

using namespace slm;

TEST_CASE("validate the free triple") {
  const Coefficients c = schroedinger(LocalMeasure::zero());
  const ValidationReport v = validate(c);
  CHECK(v.pass());
  CHECK(v.sup_a == doctest::Approx(1.0));
  CHECK(v.sup_inv_a == doctest::Approx(1.0));
  CHECK(v.unif_mu == doctest::Approx(0.0));
  CHECK(v.unif_rho == doctest::Approx(1.0));
}

TEST_CASE("validate flags an unbounded 1/a") {
  Coefficients c = schroedinger(LocalMeasure::zero());
  c.diffusion = StepFunction({{0.0, 0.5, 0.0}, {0.5, 1.0, 1.0}}, 1.0, 1.0);
  const ValidationReport v = validate(c);
  CHECK(!v.pass());
  bool found = false;
  for (const auto& f : v.failures)
    if (f.find("1/a") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("validate flags support escape") {
  Coefficients c;
  c.diffusion = StepFunction(1.0);
  c.weight = LocalMeasure::dirac_comb(1.0, 1.0);
  c.potential = LocalMeasure::dirac(0.5, 1.0);
  const ValidationReport v = validate(c);
  CHECK(!v.pass());
  bool found = false;
  for (const auto& f : v.failures)
    if (f.find("spt") != std::string::npos) found = true;
  CHECK(found);
  // an atom sitting on the lattice is fine
  c.potential = LocalMeasure::dirac(1.0, 1.0);
  CHECK(validate(c).pass());
}

TEST_CASE("classical") {
  const Coefficients free =
      classical(StepFunction(1.0), StepFunction(1.0), StepFunction(0.0));
  CHECK(validate(free).pass());
  CHECK(free.potential.is_zero());

  const Coefficients with_q =
      classical(StepFunction(1.0), StepFunction(1.0), StepFunction(1.0));
  CHECK(structurally_equal(with_q.potential, LocalMeasure::lebesgue()));

  const Coefficients heavy = classical(StepFunction({{0.0, 1.0, 2.0}}, 1.0, 2.0),
                                       StepFunction(1.0), StepFunction(0.0));
  CHECK(validate(heavy).unif_rho == doctest::Approx(2.0));

  CHECK_THROWS_AS(
      classical(StepFunction(0.0), StepFunction(1.0), StepFunction(0.0)),
      std::invalid_argument);
}

TEST_CASE("schroedinger consistency with classical") {
  const LocalMeasure q({{0.0, 1.0, 0.7}}, {}, 1.0);
  const Coefficients a = schroedinger(q);
  const Coefficients b =
      classical(StepFunction(1.0), StepFunction(1.0), StepFunction(0.7));
  CHECK(structurally_equal(a.potential, b.potential));
  CHECK(structurally_equal(a.weight, b.weight));
  CHECK(validate(a).pass());
}

TEST_CASE("schroedinger accepts any locally bounded potential") {
  verify::Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const LocalMeasure mu = verify::random_measure(rng, (i % 2) ? 1.0 : -1.0);
    CHECK(validate(schroedinger(mu)).pass());
  }
}

TEST_CASE("jacobi") {
  const Coefficients free = jacobi({1.0}, {0.0});
  CHECK(validate(free).pass());
  CHECK(free.potential.is_zero());

  const Coefficients two = jacobi({1.0, 2.0}, {0.0, 3.0});
  REQUIRE(two.diffusion.period().has_value());
  CHECK(*two.diffusion.period() == doctest::Approx(2.0));
  CHECK(two.diffusion.value(0.5) == doctest::Approx(1.0));
  CHECK(two.diffusion.value(1.5) == doctest::Approx(2.0));
  // zero-weight atom dropped, the other kept
  REQUIRE(two.potential.atoms().size() == 1);
  CHECK(two.potential.atoms()[0].pos == doctest::Approx(1.0));
  CHECK(two.potential.atoms()[0].weight == doctest::Approx(3.0));
  CHECK(common_period(two) == doctest::Approx(2.0));

  CHECK_THROWS_AS(jacobi({1.0, -0.5}, {0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(jacobi({}, {}), std::invalid_argument);
}

TEST_CASE("shifted unif norm against a periodic weight") {
  // mu periodic, rho periodic, same period: exact subtraction
  Coefficients c = schroedinger(LocalMeasure::constant_density(0.5));
  CHECK(unif_norm_shifted(c, 2.0) == doctest::Approx(1.5));
  CHECK(unif_norm_shifted(c, -1.0) == doctest::Approx(1.5));
  CHECK(unif_norm_shifted(c, 0.0) == doctest::Approx(0.5));

  // windowed potential: tails are weight-only
  Coefficients w = schroedinger(LocalMeasure({{0.0, 1.0, 3.0}}, {}));
  CHECK(unif_norm_shifted(w, 1.0) == doctest::Approx(2.0));
  CHECK(unif_norm_shifted(w, -1.0) == doctest::Approx(4.0));
}
