#pragma once

// Property suites with their random instance generators and independent
// oracles (adaptive Runge-Kutta integration, three-term recursions, grid
// scans).  Shared by the CLI `verify` command, the unit tests and the
// acceptance runner.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "slm/coefficients.hpp"
#include "slm/transfer.hpp"

namespace slm::verify {

using Rng = std::mt19937_64;

struct SuiteResult {
  std::string name;
  int cases = 0;
  int violations = 0;
  double worst_slack = 0;  // suite-specific measure, reported in the summary
  std::string note;
};

// ---- generators -----------------------------------------------------------

// period <= 0 gives a non-periodic measure supported in [0, span].
LocalMeasure random_measure(Rng& rng, double period, double span = 3.0,
                            bool nonneg = false);
StepFunction random_diffusion(Rng& rng, double period);
// Periodic triple with full-support weight (common period = its period).
Coefficients random_triple(Rng& rng);
// Densities only (no atoms anywhere).
Coefficients random_density_triple(Rng& rng);

// ---- oracles ---------------------------------------------------------------

// Adaptive Runge-Kutta integration of the first-order system across the
// coefficient runs (closed-form factors are not used); atms apply exactly.
TransferMatrix rk_transfer_oracle(const Coefficients& c, double z, double s,
                                  double t, double tol = 1e-13);

// u(n) for n in [nmin, nmax] from the three-term recursion, with a_n = 1,
// b_n = 0 outside [n0, n0 + a.size()); initial data (u(0), w(0)) at 0.
std::vector<double> jacobi_recursion_u(const std::vector<double>& a_seq,
                                       const std::vector<double>& b_seq,
                                       long long n0, double z, double u0,
                                       double w0, int nmin, int nmax);

// Grid-scan value of min_c int |phi - c| over [t-1, t+1].
double wfd_grid_oracle(const LocalMeasure& mu, double t, int nc, int ns);

// ---- suites ----------------------------------------------------------------

SuiteResult suite_tv_additivity(Rng& rng, int cases);
SuiteResult suite_phi_cocycle(Rng& rng, int cases);
SuiteResult suite_shift_identity(Rng& rng, int cases);
SuiteResult suite_median_optimality(Rng& rng, int cases);
SuiteResult suite_c_bound(Rng& rng, int cases);
SuiteResult suite_periodize(Rng& rng, int cases);
SuiteResult suite_sandwich(Rng& rng, int cases, int n_grid = 512);
SuiteResult suite_schroedinger_validate(Rng& rng, int cases);
SuiteResult suite_liouville_certificate();
SuiteResult suite_quasiperiodic_sampling(Rng& rng, int cases);
SuiteResult suite_det_chains(Rng& rng, int cases, int max_factors = 10000);
SuiteResult suite_composition(Rng& rng, int cases);
SuiteResult suite_oracle_smooth(Rng& rng, int cases, double horizon = 10.0);
SuiteResult suite_oracle_discrete(Rng& rng, int cases, int n_range = 50);
SuiteResult suite_growth_est1(Rng& rng, int cases);
SuiteResult suite_growth_est2(Rng& rng, int cases);
SuiteResult suite_derivative_control(Rng& rng, int triples, int intervals,
                                     int grid_per_unit = 1000);
SuiteResult suite_three_point(Rng& rng, int cases);
SuiteResult suite_diff_identity(Rng& rng, int cases);
SuiteResult suite_diff_scaling(Rng& rng, int cases);
SuiteResult suite_gordon_period_zero(Rng& rng, int cases);
SuiteResult suite_gordon_perturbation(Rng& rng, int cases);
SuiteResult suite_bound_monotonicity(Rng& rng, int cases);
SuiteResult suite_gronwall_dominance(Rng& rng, int cases);
SuiteResult suite_gronwall_simplex(Rng& rng, int cases);
SuiteResult suite_gronwall_monotonicity(Rng& rng, int cases);
SuiteResult suite_gronwall_growth_link(Rng& rng, int cases);

// Every suite at a size scaled by `scale` (1 = quick, 10 = thorough).
std::vector<SuiteResult> run_all_suites(std::uint64_t seed, int scale = 1);

}  // namespace slm::verify
