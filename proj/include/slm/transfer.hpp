#pragma once

// Transfer-matrix propagation of the generalized eigenvalue equation for a
// coefficient triple (a, rho, mu) at real spectral parameter z.  The phase
// vector is (u, w) with quasi-derivative w = a u'; u stays continuous across
// atoms while w jumps by u * (mu - z rho)({tau}).
//
// Propagating left to right over (s, t], the atom factor at tau applies
// after the piece ending at tau; an atom exactly at s is excluded, one at t
// is included.  Right-to-left transfer uses the adjugate inverse.

#include <vector>

#include "slm/coefficients.hpp"

namespace slm {

struct PhaseVector {
  double u = 0;
  double w = 0;
  double norm() const;
};

struct TransferMatrix {
  double m11 = 1, m12 = 0, m21 = 0, m22 = 1;

  static TransferMatrix identity() { return {}; }
  PhaseVector apply(const PhaseVector& v) const;
  // Adjugate; equals the inverse because det == 1.
  TransferMatrix inverse() const { return {m22, -m12, -m21, m11}; }
  double det() const;  // compensated 2x2 determinant
};

TransferMatrix operator*(const TransferMatrix& A, const TransferMatrix& B);

// Closed-form factor across a run of length d with constant diffusion a_val
// and constant density k of (mu - z rho): with xi = (k/a_val) d^2,
//   [ C(xi)            (d/a_val) S(xi) ]
//   [ k d S(xi)        C(xi)           ]
// where C = cosh/cos and S = sinh/sin of sqrt(|xi|) scaled; det == 1 in
// closed form.  Near xi = 0 a series keeps the k -> 0 seam exact.
TransferMatrix piece_matrix(double a_val, double k, double d);

// Jump factor [[1, 0], [m, 1]] with m = (mu - z rho)({tau}).
TransferMatrix atom_matrix(double m);

TransferMatrix transfer(const Coefficients& c, double z, double s, double t);

PhaseVector neumann(const Coefficients& c, double z, double s, double t);
PhaseVector dirichlet(const Coefficients& c, double z, double s, double t);

// Incremental propagation of init (given at s) to every grid point; the grid
// must be sorted ascending (points on either side of s are allowed).
std::vector<PhaseVector> evaluate_solution(const Coefficients& c, double z,
                                           PhaseVector init, double s,
                                           const std::vector<double>& grid);

// Trace of the transfer matrix over one common period.
double monodromy_trace(const Coefficients& c, double z);

struct ThreePointResult {
  double lhs;  // max vector norm at {-p, p, 2p}
  double rhs;  // half the initial norm
  bool ok;
};
ThreePointResult three_point_check(const Coefficients& c, double z,
                                   PhaseVector init);

}  // namespace slm
