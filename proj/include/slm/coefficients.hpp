#pragma once

// Validated coefficient triples (a, rho, mu): positive diffusion a bounded
// away from zero, nonnegative periodic weight rho with spt mu inside spt rho,
// and a real uniformly locally bounded potential mu.

#include <string>
#include <vector>

#include "slm/measure.hpp"
#include "slm/step_function.hpp"

namespace slm {

struct Coefficients {
  StepFunction diffusion;  // a
  LocalMeasure weight;     // rho
  LocalMeasure potential;  // mu
};

struct ValidationReport {
  double sup_a = 0;
  double inf_a = 0;
  double sup_inv_a = 0;  // ||1/a||_inf when inf_a > 0
  double unif_mu = 0;
  double unif_rho = 0;
  std::vector<std::string> failures;
  bool pass() const { return failures.empty(); }
};

// Diagnostics only; never throws on invalid triples.
ValidationReport validate(const Coefficients& c);

// rho = r * lambda, mu = q * lambda; requires r > 0 and periodic.
Coefficients classical(const StepFunction& r, const StepFunction& a,
                       const StepFunction& q);

// rho = lambda (period 1), a = 1.
Coefficients schroedinger(const LocalMeasure& mu);

// rho = sum of unit atoms on Z; a = sum a_n 1_[n, n+1); mu = sum b_n delta_n.
// Periodic with period = a_seq.size() (= b_seq.size()).
Coefficients jacobi(const std::vector<double>& a_seq,
                    const std::vector<double>& b_seq);

// Finite-range variant covering indices n0 .. n0 + size - 1; a = 1 and b = 0
// outside the range.
Coefficients jacobi_window(const std::vector<double>& a_seq,
                           const std::vector<double>& b_seq, long long n0);

// f * lambda as a measure.  Non-periodic f must have default value 0.
LocalMeasure density_measure(const StepFunction& f);

// Smallest p that is a common period of all three coefficients (components
// without breakpoints are unconstrained); throws if none exists.
double common_period(const Coefficients& c);

// ||mu - z rho||_unif, exact also when mu is a windowed (non-periodic)
// description against a periodic rho.
double unif_norm_shifted(const Coefficients& c, double z);

}  // namespace slm
