#pragma once

// Signed local measures on the real line with piecewise-constant Lebesgue
// density and finitely many atoms per cell, optionally extended periodically.
//
// Conventions used throughout:
//   * a piece carries constant density on the half-open interval (lo, hi];
//   * interval masses are mu((s, t]) — an atom sitting exactly at s is
//     excluded, one at t is included;
//   * the distribution function is phi(t) = mu((0, t]) for t >= 0 and
//     -mu((t, 0]) for t < 0, so phi(0) = 0 and phi is right-continuous;
//   * a periodic measure describes one fundamental cell: atoms in [0, P),
//     pieces within 0 <= lo < hi <= P.
//
// Coordinate comparisons snap at an absolute 1e-12 tolerance so that float
// noise from shifting and wrapping cannot move an atom across a window edge.

#include <optional>
#include <vector>

namespace slm {

struct Piece {
  double lo;
  double hi;
  double density;
};

struct Atom {
  double pos;
  double weight;
};

// Absolute tolerance for structural comparisons of coordinates, densities
// and weights after canonicalization.
inline constexpr double kStructTol = 1e-12;

class LocalMeasure {
 public:
  LocalMeasure() = default;
  LocalMeasure(std::vector<Piece> pieces, std::vector<Atom> atoms,
               std::optional<double> period = std::nullopt);

  static LocalMeasure zero();
  // Lebesgue measure, represented as density 1 with period 1.
  static LocalMeasure lebesgue();
  static LocalMeasure constant_density(double density);
  static LocalMeasure dirac(double pos, double weight);
  // weight * sum of point masses at period * Z.
  static LocalMeasure dirac_comb(double period, double weight);

  const std::vector<Piece>& pieces() const { return pieces_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  std::optional<double> period() const { return period_; }
  bool is_zero() const { return pieces_.empty() && atoms_.empty(); }

  // mu((s, t]) for s <= t (returns 0 on empty intervals).
  double mass(double s, double t) const;
  // mu({pos}).
  double atom_at(double pos) const;
  // density of the piece whose half-open interval contains pos; 0 in gaps.
  double density_at(double pos) const;

  // Piece endpoints and atom positions intersected with [lo, hi], sorted.
  // For periodic measures the cell structure is replicated across the span.
  std::vector<double> breakpoints_in(double lo, double hi) const;

  // Smallest/largest coordinate of the description (cell for periodic).
  double min_coord() const;
  double max_coord() const;

 private:
  std::vector<Piece> pieces_;
  std::vector<Atom> atoms_;
  std::optional<double> period_;

  void canonicalize();
};

// |mu|((s,t]): total variation mass of the window.
double tv_on_interval(const LocalMeasure& mu, double s, double t);

// sup_t |mu|((t, t+1]), exact via the critical-set sweep.
double unif_norm(const LocalMeasure& mu);

// (1/r) sup_t |mu|((t, t+r]), r > 0.
double unif_norm_r(const LocalMeasure& mu, double r);

// Distribution function phi(t) = mu((0,t]) (t>=0) / -mu((t,0]) (t<0).
double phi(const LocalMeasure& mu, double t);

// The measure B |-> mu(B + p); an atom at x moves to x - p.
LocalMeasure shift(const LocalMeasure& mu, double p);

LocalMeasure scale(const LocalMeasure& mu, double c);
LocalMeasure abs_measure(const LocalMeasure& mu);

// Pointwise sum/difference.  Operands must be either both non-periodic or
// both periodic with commensurable periods (result period = lcm); otherwise
// restrict one operand to a finite window first.
LocalMeasure add(const LocalMeasure& a, const LocalMeasure& b);
LocalMeasure subtract(const LocalMeasure& a, const LocalMeasure& b);

// 1_{(lo, hi]} mu as a non-periodic measure.
LocalMeasure restrict_window(const LocalMeasure& mu, double lo, double hi);

// Convenience: subtract(restrict(a), restrict(b)) on a common window.
LocalMeasure subtract_on_window(const LocalMeasure& a, const LocalMeasure& b,
                                double lo, double hi);

// Periodic extension (period p) of 1_{(0, p]} mu.  Requires 0 < alpha <= p/2;
// the result agrees with mu on [alpha, p - alpha].
LocalMeasure periodize(const LocalMeasure& mu, double p, double alpha);

// Equality of canonical structure up to an absolute tolerance on positions,
// densities and atom weights (sub-tolerance pieces/atoms are ignored).
bool structurally_equal(const LocalMeasure& a, const LocalMeasure& b,
                        double tol = kStructTol);

}  // namespace slm
