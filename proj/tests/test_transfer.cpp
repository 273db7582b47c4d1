#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "slm/transfer.hpp"
#include "slm/verify.hpp"

using namespace slm;

namespace {
Coefficients free_triple() { return schroedinger(LocalMeasure::zero()); }
}  // namespace

TEST_CASE("piece matrix closed forms") {
  // free: u'' = 0
  const TransferMatrix F = piece_matrix(1.0, 0.0, 0.7);
  CHECK(F.m11 == doctest::Approx(1.0));
  CHECK(F.m12 == doctest::Approx(0.7));
  CHECK(F.m21 == doctest::Approx(0.0));
  CHECK(F.m22 == doctest::Approx(1.0));

  // oscillatory: k = -1, d = pi gives minus the identity
  const TransferMatrix R = piece_matrix(1.0, -1.0, M_PI);
  CHECK(R.m11 == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(R.m22 == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::abs(R.m12) < 1e-12);
  CHECK(std::abs(R.m21) < 1e-12);

  // hyperbolic entries
  const TransferMatrix H = piece_matrix(2.0, 3.0, 0.5);
  const double ld = std::sqrt(3.0 / 2.0) * 0.5;
  CHECK(H.m11 == doctest::Approx(std::cosh(ld)));
  CHECK(H.m12 == doctest::Approx(0.25 * std::sinh(ld) / ld));
  CHECK(H.m21 == doctest::Approx(1.5 * std::sinh(ld) / ld));

  CHECK_THROWS_AS(piece_matrix(0.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(piece_matrix(-1.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("piece matrix determinant stays 1 across the k -> 0 seam") {
  verify::Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    const double a = std::uniform_real_distribution<double>(0.3, 3.0)(rng);
    const double k = std::uniform_real_distribution<double>(-5.0, 5.0)(rng) *
                     std::pow(10.0, -std::uniform_int_distribution<int>(0, 15)(rng));
    const double d = std::uniform_real_distribution<double>(0.0, 2.0)(rng);
    const TransferMatrix M = piece_matrix(a, k, d);
    // cancellation in cosh^2 - sinh^2 grows with the entry size
    const double scale = std::max(1.0, M.m11 * M.m11);
    CHECK(std::abs(M.det() - 1.0) < 1e-14 * scale);
  }
  // moderate arguments hold the absolute bound
  for (int i = 0; i < 2000; ++i) {
    const double a = std::uniform_real_distribution<double>(0.5, 2.0)(rng);
    const double k = std::uniform_real_distribution<double>(-2.0, 2.0)(rng);
    const double d = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    CHECK(std::abs(piece_matrix(a, k, d).det() - 1.0) < 1e-14);
  }
}

TEST_CASE("atom matrix") {
  const TransferMatrix I = atom_matrix(0.0);
  CHECK(I.m11 == 1.0);
  CHECK(I.m12 == 0.0);
  CHECK(I.m21 == 0.0);
  CHECK(I.m22 == 1.0);

  const PhaseVector v = atom_matrix(1.0).apply({1.0, 0.0});
  CHECK(v.u == doctest::Approx(1.0));
  CHECK(v.w == doctest::Approx(1.0));

  // coincident atoms merge additively (lower-triangular factors commute)
  const TransferMatrix AB = atom_matrix(0.4) * atom_matrix(-1.1);
  const TransferMatrix C = atom_matrix(0.4 - 1.1);
  CHECK(AB.m21 == doctest::Approx(C.m21));
  CHECK(AB.m11 == doctest::Approx(1.0));
}

TEST_CASE("free transfer is a shear") {
  const Coefficients c = free_triple();
  const TransferMatrix M = transfer(c, 0.0, -1.3, 2.1);
  CHECK(M.m11 == doctest::Approx(1.0));
  CHECK(M.m12 == doctest::Approx(3.4));
  CHECK(M.m21 == doctest::Approx(0.0));
  CHECK(M.m22 == doctest::Approx(1.0));
}

TEST_CASE("discrete free step") {
  const Coefficients c = jacobi({1.0}, {0.0});
  const TransferMatrix M = transfer(c, 0.0, 0.0, 1.0);
  CHECK(M.m11 == doctest::Approx(1.0));
  CHECK(M.m12 == doctest::Approx(1.0));
  CHECK(M.m21 == doctest::Approx(0.0));
  CHECK(M.m22 == doctest::Approx(1.0));
}

TEST_CASE("round trip is the identity") {
  verify::Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    const Coefficients c = verify::random_triple(rng);
    const double z = std::uniform_real_distribution<double>(-3, 3)(rng);
    const double s = std::uniform_real_distribution<double>(-4, 4)(rng);
    const double t = std::uniform_real_distribution<double>(-4, 4)(rng);
    const TransferMatrix R = transfer(c, z, t, s) * transfer(c, z, s, t);
    CHECK(std::abs(R.m11 - 1.0) < 1e-10);
    CHECK(std::abs(R.m12) < 1e-10);
    CHECK(std::abs(R.m21) < 1e-10);
    CHECK(std::abs(R.m22 - 1.0) < 1e-10);
  }
}

TEST_CASE("neumann and dirichlet solutions") {
  const Coefficients c = free_triple();
  const PhaseVector n0 = neumann(c, 0.0, 0.5, 0.5);
  CHECK(n0.u == doctest::Approx(1.0));
  CHECK(n0.w == doctest::Approx(0.0));
  const PhaseVector d0 = dirichlet(c, 0.0, 0.5, 0.5);
  CHECK(d0.u == doctest::Approx(0.0));
  CHECK(d0.w == doctest::Approx(1.0));

  // free case: u_D(t; s) = t - s
  CHECK(dirichlet(c, 0.0, 1.0, 3.5).u == doctest::Approx(2.5));

  // constant positive potential density: u_N = cosh(sqrt(q)(t-s))
  const Coefficients cq = schroedinger(LocalMeasure::constant_density(2.0));
  const double got = neumann(cq, 0.0, 0.0, 1.7).u;
  CHECK(got == doctest::Approx(std::cosh(std::sqrt(2.0) * 1.7)).epsilon(1e-12));
  // cross-check with the integration oracle
  const TransferMatrix O = verify::rk_transfer_oracle(cq, 0.0, 0.0, 1.7);
  CHECK(got == doctest::Approx(O.m11).epsilon(1e-10));
}

TEST_CASE("evaluate solution") {
  const Coefficients c = free_triple();
  const std::vector<double> grid{-2.0, -1.0, 0.0, 1.0, 2.0, 3.0};

  const auto zeros = evaluate_solution(c, 0.0, {0.0, 0.0}, 0.0, grid);
  for (const auto& v : zeros) {
    CHECK(v.u == 0.0);
    CHECK(v.w == 0.0);
  }

  const auto ramp = evaluate_solution(c, 0.0, {0.0, 1.0}, 0.0, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(ramp[i].u == doctest::Approx(grid[i]));
    CHECK(ramp[i].w == doctest::Approx(1.0));
  }

  // linearity and agreement with independent transfer calls
  verify::Rng rng(17);
  const Coefficients r = verify::random_triple(rng);
  const double z = 1.3;
  const auto a = evaluate_solution(r, z, {1.0, -0.5}, 0.2, grid);
  const auto b = evaluate_solution(r, z, {2.0, -1.0}, 0.2, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(std::abs(b[i].u - 2.0 * a[i].u) <= 1e-10 * (1.0 + std::abs(a[i].u)));
    const PhaseVector direct =
        transfer(r, z, 0.2, grid[i]).apply({1.0, -0.5});
    CHECK(std::abs(a[i].u - direct.u) <= 1e-9 * (1.0 + std::abs(direct.u)));
    CHECK(std::abs(a[i].w - direct.w) <= 1e-9 * (1.0 + std::abs(direct.w)));
  }
}

TEST_CASE("monodromy trace") {
  CHECK(monodromy_trace(free_triple(), 0.0) == doctest::Approx(2.0));
  CHECK(monodromy_trace(jacobi({1.0}, {0.0}), 0.0) == doctest::Approx(2.0));
  // rho = lambda, z = pi^2 over one unit period: trace = 2 cos(pi) = -2
  CHECK(monodromy_trace(free_triple(), M_PI * M_PI) ==
        doctest::Approx(-2.0).epsilon(1e-10));
  // no common period
  Coefficients bad = free_triple();
  bad.potential = LocalMeasure({{0.0, 1.0, 1.0}}, {}, std::sqrt(2.0));
  CHECK_THROWS_AS(monodromy_trace(bad, 0.0), std::invalid_argument);
}

TEST_CASE("three point inequality") {
  const ThreePointResult free_tp =
      three_point_check(free_triple(), 0.0, {1.0, 0.0});
  CHECK(free_tp.ok);
  CHECK(free_tp.lhs >= 1.0 - 1e-12);
  CHECK(free_tp.rhs == doctest::Approx(0.5));

  const ThreePointResult zero_tp =
      three_point_check(free_triple(), 0.0, {0.0, 0.0});
  CHECK(zero_tp.ok);
  CHECK(zero_tp.lhs == 0.0);
  CHECK(zero_tp.rhs == 0.0);
}

TEST_CASE("atoms in the weight shift the jump with z") {
  // jacobi triple at z: the atom factor carries b_n - z
  const Coefficients c = jacobi({1.0, 1.0}, {0.5, -0.25});
  const double z = 0.8;
  const TransferMatrix M = transfer(c, z, 0.0, 1.0);
  // one unit shear then the atom at 1 with mass b_1 - z
  const double m = -0.25 - z;
  CHECK(M.m11 == doctest::Approx(1.0));
  CHECK(M.m21 == doctest::Approx(m));
  CHECK(M.m22 == doctest::Approx(1.0 + m));
}
