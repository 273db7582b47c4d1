#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "slm/measure.hpp"

using namespace slm;

TEST_CASE("tv on intervals with the half-open convention") {
  const LocalMeasure delta0 = LocalMeasure::dirac(0.0, 1.0);
  CHECK(tv_on_interval(delta0, -1.0, 0.0) == doctest::Approx(1.0));
  CHECK(tv_on_interval(delta0, 0.0, 1.0) == doctest::Approx(0.0));

  const LocalMeasure dens({{0.0, 3.0, 2.0}}, {});
  CHECK(tv_on_interval(dens, 1.0, 2.0) == doctest::Approx(2.0));

  // signed mass uses |density| and |weight|
  const LocalMeasure mixed({{0.0, 1.0, -2.0}}, {{0.5, -0.25}});
  CHECK(tv_on_interval(mixed, 0.0, 1.0) == doctest::Approx(2.25));
  CHECK(mixed.mass(0.0, 1.0) == doctest::Approx(-2.25));
}

TEST_CASE("tv is additive over adjacent intervals") {
  const LocalMeasure mu({{0.2, 1.4, 1.5}, {1.9, 2.3, -0.7}},
                        {{0.8, 0.4}, {2.0, -1.0}});
  const double whole = tv_on_interval(mu, 0.0, 3.0);
  const double split = tv_on_interval(mu, 0.0, 0.8) +
                       tv_on_interval(mu, 0.8, 2.0) +
                       tv_on_interval(mu, 2.0, 3.0);
  CHECK(whole == doctest::Approx(split).epsilon(1e-13));
}

TEST_CASE("unif norm") {
  CHECK(unif_norm(LocalMeasure::lebesgue()) == doctest::Approx(1.0));
  CHECK(unif_norm(LocalMeasure::dirac_comb(1.0, 1.0)) == doctest::Approx(1.0));

  // two atoms, non-periodic: one window captures both
  const LocalMeasure two({}, {{0.0, 1.0}, {0.5, 1.0}});
  CHECK(unif_norm(two) == doctest::Approx(2.0));
}

TEST_CASE("unif norm with window length r") {
  CHECK(unif_norm_r(LocalMeasure::lebesgue(), 0.37) == doctest::Approx(1.0));
  CHECK(unif_norm_r(LocalMeasure::lebesgue(), 2.9) == doctest::Approx(1.0));
  const LocalMeasure comb = LocalMeasure::dirac_comb(1.0, 1.0);
  CHECK(unif_norm_r(comb, 0.5) == doctest::Approx(2.0));
  CHECK(unif_norm_r(comb, 2.0) == doctest::Approx(1.0));
  CHECK(unif_norm_r(comb, 1.0) == doctest::Approx(unif_norm(comb)));
  CHECK_THROWS_AS(unif_norm_r(comb, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(unif_norm_r(comb, -1.0), std::invalid_argument);
}

TEST_CASE("distribution function phi") {
  const LocalMeasure delta0 = LocalMeasure::dirac(0.0, 1.0);
  CHECK(phi(delta0, 0.0) == doctest::Approx(0.0));
  CHECK(phi(delta0, 0.7) == doctest::Approx(0.0));
  CHECK(phi(delta0, -0.5) == doctest::Approx(-1.0));

  const LocalMeasure leb = LocalMeasure::lebesgue();
  CHECK(phi(leb, 2.25) == doctest::Approx(2.25));
  CHECK(phi(leb, -1.5) == doctest::Approx(-1.5));

  const LocalMeasure m({{0.0, 1.0, 1.0}}, {{0.5, -2.0}});
  CHECK(phi(m, 0.75) == doctest::Approx(-1.25));
}

TEST_CASE("phi cocycle identity") {
  const LocalMeasure mu({{0.1, 0.9, 1.3}}, {{0.4, -0.6}}, 1.0);
  for (double s : {-2.3, -0.5, 0.0, 0.4, 1.7}) {
    for (double t : {-1.9, 0.2, 0.4, 2.5}) {
      if (t < s) continue;
      CHECK(phi(mu, t) - phi(mu, s) ==
            doctest::Approx(mu.mass(s, t)).epsilon(1e-13));
    }
  }
}

TEST_CASE("shift") {
  const LocalMeasure comb = LocalMeasure::dirac_comb(1.0, 1.0);
  CHECK(structurally_equal(shift(comb, 1.0), comb));

  const LocalMeasure d0 = LocalMeasure::dirac(0.0, 1.0);
  const LocalMeasure d_half = LocalMeasure::dirac(0.5, 1.0);
  CHECK(structurally_equal(shift(d0, -0.5), d_half));

  const LocalMeasure dens({{0.0, 1.0, 1.0}}, {});
  const LocalMeasure expect({{-0.25, 0.75, 1.0}}, {});
  CHECK(structurally_equal(shift(dens, 0.25), expect));

  // phi relation: phi_{shift}(t) = phi(t + p) - phi(p)
  const LocalMeasure mu({{0.1, 0.8, -0.9}}, {{0.3, 0.7}}, 1.3);
  const double p = 0.37;
  const LocalMeasure sh = shift(mu, p);
  for (double t : {-1.1, 0.0, 0.45, 2.2})
    CHECK(phi(sh, t) ==
          doctest::Approx(phi(mu, t + p) - phi(mu, p)).epsilon(1e-12));
}

TEST_CASE("subtract") {
  const LocalMeasure mu({{0.1, 0.8, -0.9}}, {{0.3, 0.7}}, 1.3);
  CHECK(subtract(mu, mu).is_zero());

  const LocalMeasure d = subtract(LocalMeasure::dirac(0.0, 1.0),
                                  LocalMeasure::dirac(0.5, 1.0));
  REQUIRE(d.atoms().size() == 2);
  CHECK(d.atoms()[0].pos == doctest::Approx(0.0));
  CHECK(d.atoms()[0].weight == doctest::Approx(1.0));
  CHECK(d.atoms()[1].pos == doctest::Approx(0.5));
  CHECK(d.atoms()[1].weight == doctest::Approx(-1.0));

  const LocalMeasure a({{0.0, 1.0, 1.0}}, {});
  const LocalMeasure b({{0.5, 1.5, 1.0}}, {});
  const LocalMeasure diff = subtract(a, b);
  const LocalMeasure expect({{0.0, 0.5, 1.0}, {1.0, 1.5, -1.0}}, {});
  CHECK(structurally_equal(diff, expect));
}

TEST_CASE("subtract on mixed periodicity requires a window") {
  const LocalMeasure per = LocalMeasure::lebesgue();
  const LocalMeasure win({{0.0, 1.0, 1.0}}, {});
  CHECK_THROWS_AS(subtract(per, win), std::invalid_argument);
  const LocalMeasure ok = subtract_on_window(per, win, -2.0, 2.0);
  CHECK(tv_on_interval(ok, 0.0, 1.0) == doctest::Approx(0.0));
  CHECK(tv_on_interval(ok, -2.0, 0.0) == doctest::Approx(2.0));
}

TEST_CASE("incommensurable periods are rejected") {
  const LocalMeasure a({{0.0, 1.0, 1.0}}, {}, 1.0);
  const LocalMeasure b({{0.0, 1.0, 1.0}}, {}, std::sqrt(2.0));
  CHECK_THROWS_AS(subtract(a, b), std::invalid_argument);
  // commensurable: lcm resolves
  const LocalMeasure c({{0.0, 1.0, 1.0}}, {}, 1.5);
  const LocalMeasure d = subtract(a, c);
  REQUIRE(d.period().has_value());
  CHECK(*d.period() == doctest::Approx(3.0));
}

TEST_CASE("periodize") {
  const LocalMeasure mu({{0.1, 0.8, -0.9}}, {{0.3, 0.7}}, 2.0);
  CHECK(structurally_equal(periodize(mu, 2.0, 0.5), mu));

  const LocalMeasure single = LocalMeasure::dirac(0.5, 1.0);
  const LocalMeasure per = periodize(single, 2.0, 0.25);
  REQUIRE(per.period().has_value());
  CHECK(*per.period() == doctest::Approx(2.0));
  CHECK(per.atom_at(0.5) == doctest::Approx(1.0));
  CHECK(per.atom_at(2.5) == doctest::Approx(1.0));
  CHECK(per.atom_at(-1.5) == doctest::Approx(1.0));

  CHECK_THROWS_AS(periodize(single, 2.0, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(periodize(single, 2.0, 0.0), std::invalid_argument);
}

TEST_CASE("construction invariants") {
  CHECK_THROWS_AS(LocalMeasure({{1.0, 0.5, 1.0}}, {}), std::invalid_argument);
  CHECK_THROWS_AS(LocalMeasure({{0.0, 1.0, 1.0}, {0.5, 1.5, 2.0}}, {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(LocalMeasure({}, {}, -1.0), std::invalid_argument);
  // atoms at identical positions merge; zero atoms drop
  const LocalMeasure m({}, {{0.5, 1.0}, {0.5, -1.0}});
  CHECK(m.is_zero());
}

TEST_CASE("periodic wrap puts the description into one cell") {
  const LocalMeasure m({{2.25, 2.75, 1.0}}, {{3.5, 2.0}}, 1.0);
  REQUIRE(m.pieces().size() == 1);
  CHECK(m.pieces()[0].lo == doctest::Approx(0.25));
  CHECK(m.pieces()[0].hi == doctest::Approx(0.75));
  REQUIRE(m.atoms().size() == 1);
  CHECK(m.atoms()[0].pos == doctest::Approx(0.5));
  // atoms at -0.5 and 0.5 both land in (-0.6, 0.6]; density overlap is
  // (-0.6, -0.25] plus (0.25, 0.6]
  CHECK(m.mass(-0.6, 0.6) == doctest::Approx(4.0 + 0.7).epsilon(1e-12));
}
