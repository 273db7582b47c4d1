#include "slm/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace slm {

namespace {

constexpr double kEps = kStructTol;

bool finite(double x) { return std::isfinite(x); }

// Half-open membership pos in (s, t] with coordinate snapping.
bool in_half_open(double pos, double s, double t) {
  return pos > s + kEps && pos <= t + kEps;
}

double overlap_len(double lo1, double hi1, double lo2, double hi2) {
  const double lo = std::max(lo1, lo2);
  const double hi = std::min(hi1, hi2);
  return hi > lo ? hi - lo : 0.0;
}

// Greatest k with k*P <= x (snapped), i.e. cell index of x.
long long cell_index(double x, double P) {
  return static_cast<long long>(std::floor((x + kEps) / P));
}

}  // namespace

LocalMeasure::LocalMeasure(std::vector<Piece> pieces, std::vector<Atom> atoms,
                           std::optional<double> period)
    : pieces_(std::move(pieces)), atoms_(std::move(atoms)), period_(period) {
  canonicalize();
}

void LocalMeasure::canonicalize() {
  if (period_) {
    if (!finite(*period_) || *period_ <= 0.0)
      throw std::invalid_argument("LocalMeasure: period must be positive");
  }
  for (const Piece& p : pieces_) {
    if (!finite(p.lo) || !finite(p.hi) || !finite(p.density))
      throw std::invalid_argument("LocalMeasure: non-finite piece");
    if (!(p.hi > p.lo))
      throw std::invalid_argument("LocalMeasure: piece needs lo < hi");
  }
  for (const Atom& a : atoms_) {
    if (!finite(a.pos) || !finite(a.weight))
      throw std::invalid_argument("LocalMeasure: non-finite atom");
  }

  if (period_) {
    const double P = *period_;
    // Wrap the description into the fundamental cell, splitting pieces that
    // cross a cell boundary.
    std::vector<Piece> wrapped;
    for (const Piece& p : pieces_) {
      if (p.hi - p.lo >= P - kEps) {
        // Covers a full cell.
        wrapped.push_back({0.0, P, p.density});
        continue;
      }
      const long long k = cell_index(p.lo, P);
      double lo = p.lo - static_cast<double>(k) * P;
      double hi = p.hi - static_cast<double>(k) * P;
      if (std::abs(lo) <= kEps) lo = 0.0;
      if (hi <= P + kEps) {
        wrapped.push_back({lo, std::min(hi, P), p.density});
      } else {
        wrapped.push_back({lo, P, p.density});
        wrapped.push_back({0.0, hi - P, p.density});
      }
    }
    pieces_ = std::move(wrapped);
    for (Atom& a : atoms_) {
      const long long k = cell_index(a.pos, P);
      a.pos -= static_cast<double>(k) * P;
      if (a.pos >= P - kEps || std::abs(a.pos) <= kEps) a.pos = 0.0;
    }
  }

  // Pieces: sort, drop slivers and exact zeros, merge adjacent equal runs.
  std::sort(pieces_.begin(), pieces_.end(),
            [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
  std::vector<Piece> out;
  for (const Piece& p : pieces_) {
    if (p.hi - p.lo <= kEps) continue;  // float sliver
    if (p.density == 0.0) continue;
    if (!out.empty()) {
      Piece& q = out.back();
      if (p.lo < q.hi - kEps)
        throw std::invalid_argument("LocalMeasure: overlapping pieces");
      if (std::abs(p.lo - q.hi) <= kEps && p.density == q.density) {
        q.hi = p.hi;
        continue;
      }
    }
    out.push_back(p);
  }
  pieces_ = std::move(out);

  // Atoms: sort, merge coincident positions, drop exact zeros.
  std::sort(atoms_.begin(), atoms_.end(),
            [](const Atom& a, const Atom& b) { return a.pos < b.pos; });
  std::vector<Atom> akeep;
  for (const Atom& a : atoms_) {
    if (!akeep.empty() && std::abs(a.pos - akeep.back().pos) <= kEps) {
      akeep.back().weight += a.weight;
    } else {
      akeep.push_back(a);
    }
  }
  std::erase_if(akeep, [](const Atom& a) { return a.weight == 0.0; });
  atoms_ = std::move(akeep);
}

LocalMeasure LocalMeasure::zero() { return LocalMeasure(); }

LocalMeasure LocalMeasure::lebesgue() {
  return LocalMeasure({{0.0, 1.0, 1.0}}, {}, 1.0);
}

LocalMeasure LocalMeasure::constant_density(double density) {
  if (density == 0.0) return zero();
  return LocalMeasure({{0.0, 1.0, density}}, {}, 1.0);
}

LocalMeasure LocalMeasure::dirac(double pos, double weight) {
  if (weight == 0.0) return zero();
  return LocalMeasure({}, {{pos, weight}});
}

LocalMeasure LocalMeasure::dirac_comb(double period, double weight) {
  if (weight == 0.0) return zero();
  return LocalMeasure({}, {{0.0, weight}}, period);
}

double LocalMeasure::mass(double s, double t) const {
  if (!(t > s)) return 0.0;
  double m = 0.0;
  if (!period_) {
    for (const Piece& p : pieces_) m += p.density * overlap_len(p.lo, p.hi, s, t);
    for (const Atom& a : atoms_)
      if (in_half_open(a.pos, s, t)) m += a.weight;
    return m;
  }
  const double P = *period_;
  for (const Piece& p : pieces_) {
    const long long k0 = cell_index(s - p.hi, P) - 1;
    const long long k1 = cell_index(t - p.lo, P) + 1;
    for (long long k = k0; k <= k1; ++k) {
      const double off = static_cast<double>(k) * P;
      m += p.density * overlap_len(p.lo + off, p.hi + off, s, t);
    }
  }
  for (const Atom& a : atoms_) {
    // count of k with s < a.pos + k*P <= t, up to snapping
    const long long klo = cell_index(s - a.pos, P);      // k*P <= s - pos
    const long long khi = cell_index(t - a.pos, P);      // k*P <= t - pos
    double cnt = static_cast<double>(khi - klo);
    m += a.weight * cnt;
  }
  return m;
}

double LocalMeasure::atom_at(double pos) const {
  if (!period_) {
    for (const Atom& a : atoms_)
      if (std::abs(a.pos - pos) <= kEps) return a.weight;
    return 0.0;
  }
  const double P = *period_;
  const long long k = cell_index(pos, P);
  double r = pos - static_cast<double>(k) * P;
  if (r >= P - kEps) r -= P;
  for (const Atom& a : atoms_)
    if (std::abs(a.pos - r) <= kEps) return a.weight;
  return 0.0;
}

double LocalMeasure::density_at(double pos) const {
  double x = pos;
  if (period_) {
    const double P = *period_;
    x = pos - static_cast<double>(cell_index(pos, P)) * P;
    if (x > P) x -= P;
  }
  for (const Piece& p : pieces_) {
    if (x > p.lo + kEps && x <= p.hi + kEps) return p.density;
  }
  // Periodic cells are half-open at 0: a piece ending at P covers 0 as well.
  if (period_ && std::abs(x) <= kEps) {
    for (const Piece& p : pieces_)
      if (std::abs(p.hi - *period_) <= kEps) return p.density;
  }
  return 0.0;
}

std::vector<double> LocalMeasure::breakpoints_in(double lo, double hi) const {
  std::vector<double> bp;
  auto push = [&](double x) {
    if (x >= lo - kEps && x <= hi + kEps) bp.push_back(x);
  };
  if (!period_) {
    for (const Piece& p : pieces_) {
      push(p.lo);
      push(p.hi);
    }
    for (const Atom& a : atoms_) push(a.pos);
  } else {
    const double P = *period_;
    const long long k0 = cell_index(lo, P) - 1;
    const long long k1 = cell_index(hi, P) + 1;
    for (long long k = k0; k <= k1; ++k) {
      const double off = static_cast<double>(k) * P;
      for (const Piece& p : pieces_) {
        push(p.lo + off);
        push(p.hi + off);
      }
      for (const Atom& a : atoms_) push(a.pos + off);
    }
  }
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end(),
                       [](double a, double b) { return std::abs(a - b) <= kEps; }),
           bp.end());
  return bp;
}

double LocalMeasure::min_coord() const {
  double m = std::numeric_limits<double>::infinity();
  for (const Piece& p : pieces_) m = std::min(m, p.lo);
  for (const Atom& a : atoms_) m = std::min(m, a.pos);
  return m;
}

double LocalMeasure::max_coord() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const Piece& p : pieces_) m = std::max(m, p.hi);
  for (const Atom& a : atoms_) m = std::max(m, a.pos);
  return m;
}

double tv_on_interval(const LocalMeasure& mu, double s, double t) {
  if (t < s) throw std::invalid_argument("tv_on_interval: needs s <= t");
  return abs_measure(mu).mass(s, t);
}

double phi(const LocalMeasure& mu, double t) {
  return t >= 0.0 ? mu.mass(0.0, t) : -mu.mass(t, 0.0);
}

namespace {

// sup_t |mu|((t, t+r]).  |mu|((t,t+r]) is piecewise affine in t between
// critical points (breakpoints of |mu| and breakpoints shifted by -r), so the
// supremum is attained either at a critical point (right value) or as the
// left limit at the end of an affine segment.
double sup_window_mass(const LocalMeasure& nu, double r) {
  if (nu.is_zero()) return 0.0;
  std::vector<double> cand;
  auto add_cand = [&](double x) { cand.push_back(x); };

  if (nu.period()) {
    const double P = *nu.period();
    std::vector<double> base = nu.breakpoints_in(0.0, P);
    for (double b : base) {
      double c = std::fmod(b, P);
      if (c < 0) c += P;
      add_cand(c);
      double d = std::fmod(b - r, P);
      if (d < 0) d += P;
      add_cand(d);
    }
  } else {
    const double lo = nu.min_coord();
    const double hi = nu.max_coord();
    std::vector<double> base = nu.breakpoints_in(lo, hi);
    for (double b : base) {
      add_cand(b);
      add_cand(b - r);
    }
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end(),
                         [](double a, double b) { return std::abs(a - b) <= kEps; }),
             cand.end());
  if (cand.empty()) return 0.0;

  double best = 0.0;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    const double t0 = cand[i];
    best = std::max(best, nu.mass(t0, t0 + r));
    // Left limit at the next critical point: extrapolate the affine segment.
    double t1;
    if (i + 1 < cand.size()) {
      t1 = cand[i + 1];
    } else if (nu.period()) {
      t1 = cand[0] + *nu.period();
    } else {
      continue;
    }
    if (t1 - t0 <= kEps) continue;
    const double mid = 0.5 * (t0 + t1);
    const double slope = nu.density_at(mid + r) - nu.density_at(mid);
    best = std::max(best, nu.mass(t0, t0 + r) + slope * (t1 - t0));
  }
  return best;
}

}  // namespace

double unif_norm(const LocalMeasure& mu) {
  return sup_window_mass(abs_measure(mu), 1.0);
}

double unif_norm_r(const LocalMeasure& mu, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("unif_norm_r: needs r > 0");
  return sup_window_mass(abs_measure(mu), r) / r;
}

LocalMeasure shift(const LocalMeasure& mu, double p) {
  std::vector<Piece> pieces = mu.pieces();
  std::vector<Atom> atoms = mu.atoms();
  for (Piece& q : pieces) {
    q.lo -= p;
    q.hi -= p;
  }
  for (Atom& a : atoms) a.pos -= p;
  return LocalMeasure(std::move(pieces), std::move(atoms), mu.period());
}

LocalMeasure scale(const LocalMeasure& mu, double c) {
  if (c == 0.0) return LocalMeasure::zero();
  std::vector<Piece> pieces = mu.pieces();
  std::vector<Atom> atoms = mu.atoms();
  for (Piece& q : pieces) q.density *= c;
  for (Atom& a : atoms) a.weight *= c;
  return LocalMeasure(std::move(pieces), std::move(atoms), mu.period());
}

LocalMeasure abs_measure(const LocalMeasure& mu) {
  std::vector<Piece> pieces = mu.pieces();
  std::vector<Atom> atoms = mu.atoms();
  for (Piece& q : pieces) q.density = std::abs(q.density);
  for (Atom& a : atoms) a.weight = std::abs(a.weight);
  return LocalMeasure(std::move(pieces), std::move(atoms), mu.period());
}

namespace {

// Rebuild a piece list over the union of breakpoints, summing densities.
std::vector<Piece> combine_pieces(const std::vector<Piece>& A,
                                  const std::vector<Piece>& B) {
  std::vector<double> bp;
  for (const Piece& p : A) {
    bp.push_back(p.lo);
    bp.push_back(p.hi);
  }
  for (const Piece& p : B) {
    bp.push_back(p.lo);
    bp.push_back(p.hi);
  }
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end(),
                       [](double a, double b) { return std::abs(a - b) <= kEps; }),
           bp.end());
  auto dens = [](const std::vector<Piece>& ps, double x) {
    for (const Piece& p : ps)
      if (x > p.lo && x <= p.hi) return p.density;
    return 0.0;
  };
  std::vector<Piece> out;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    const double mid = 0.5 * (bp[i] + bp[i + 1]);
    const double d = dens(A, mid) + dens(B, mid);
    if (d != 0.0 && bp[i + 1] - bp[i] > kEps)
      out.push_back({bp[i], bp[i + 1], d});
  }
  return out;
}

// Smallest common period of two periodic measures, or nullopt.
std::optional<double> common_period(double P1, double P2) {
  if (std::abs(P1 - P2) <= kEps) return std::max(P1, P2);
  // Look for small integers m, n with m*P1 == n*P2.
  for (int m = 1; m <= 1024; ++m) {
    const double target = m * P1 / P2;
    const double n = std::round(target);
    if (n >= 1.0 && std::abs(target - n) <= 1e-9 * m) return m * P1;
  }
  return std::nullopt;
}

}  // namespace

LocalMeasure add(const LocalMeasure& a, const LocalMeasure& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.period().has_value() != b.period().has_value())
    throw std::invalid_argument(
        "add/subtract: mixed periodic and non-periodic operands; restrict to "
        "a window first");
  if (!a.period()) {
    std::vector<Atom> atoms = a.atoms();
    atoms.insert(atoms.end(), b.atoms().begin(), b.atoms().end());
    return LocalMeasure(combine_pieces(a.pieces(), b.pieces()), std::move(atoms),
                        std::nullopt);
  }
  const auto P = common_period(*a.period(), *b.period());
  if (!P)
    throw std::invalid_argument("add/subtract: incommensurable periods");
  LocalMeasure am = restrict_window(a, 0.0, *P);
  LocalMeasure bm = restrict_window(b, 0.0, *P);
  std::vector<Atom> atoms = am.atoms();
  atoms.insert(atoms.end(), bm.atoms().begin(), bm.atoms().end());
  return LocalMeasure(combine_pieces(am.pieces(), bm.pieces()), std::move(atoms),
                      *P);
}

LocalMeasure subtract(const LocalMeasure& a, const LocalMeasure& b) {
  return add(a, scale(b, -1.0));
}

LocalMeasure restrict_window(const LocalMeasure& mu, double lo, double hi) {
  if (!(hi > lo)) return LocalMeasure::zero();
  std::vector<Piece> pieces;
  std::vector<Atom> atoms;
  if (!mu.period()) {
    for (const Piece& p : mu.pieces()) {
      const double l = std::max(p.lo, lo);
      const double h = std::min(p.hi, hi);
      if (h - l > kEps) pieces.push_back({l, h, p.density});
    }
    for (const Atom& a : mu.atoms())
      if (in_half_open(a.pos, lo, hi)) atoms.push_back(a);
  } else {
    const double P = *mu.period();
    const long long k0 = cell_index(lo, P) - 1;
    const long long k1 = cell_index(hi, P) + 1;
    for (long long k = k0; k <= k1; ++k) {
      const double off = static_cast<double>(k) * P;
      for (const Piece& p : mu.pieces()) {
        const double l = std::max(p.lo + off, lo);
        const double h = std::min(p.hi + off, hi);
        if (h - l > kEps) pieces.push_back({l, h, p.density});
      }
      for (const Atom& a : mu.atoms()) {
        const double x = a.pos + off;
        if (in_half_open(x, lo, hi)) atoms.push_back({x, a.weight});
      }
    }
  }
  return LocalMeasure(std::move(pieces), std::move(atoms), std::nullopt);
}

LocalMeasure subtract_on_window(const LocalMeasure& a, const LocalMeasure& b,
                                double lo, double hi) {
  return subtract(restrict_window(a, lo, hi), restrict_window(b, lo, hi));
}

LocalMeasure periodize(const LocalMeasure& mu, double p, double alpha) {
  if (!(p > 0.0) || !(alpha > 0.0) || alpha > p / 2.0 + kEps)
    throw std::invalid_argument("periodize: needs 0 < alpha <= p/2");
  LocalMeasure cell = restrict_window(mu, 0.0, p);
  return LocalMeasure(cell.pieces(), cell.atoms(), p);
}

namespace {

LocalMeasure strip(const LocalMeasure& m, double tol) {
  std::vector<Piece> pieces;
  for (const Piece& p : m.pieces())
    if (std::abs(p.density) > tol) pieces.push_back(p);
  std::vector<Atom> atoms;
  for (const Atom& a : m.atoms())
    if (std::abs(a.weight) > tol) atoms.push_back(a);
  return LocalMeasure(std::move(pieces), std::move(atoms), m.period());
}

}  // namespace

bool structurally_equal(const LocalMeasure& a, const LocalMeasure& b,
                        double tol) {
  const LocalMeasure x = strip(a, tol);
  const LocalMeasure y = strip(b, tol);
  if (x.period().has_value() != y.period().has_value()) return false;
  if (x.period() && std::abs(*x.period() - *y.period()) > tol) return false;
  if (x.pieces().size() != y.pieces().size()) return false;
  if (x.atoms().size() != y.atoms().size()) return false;
  for (std::size_t i = 0; i < x.pieces().size(); ++i) {
    const Piece& p = x.pieces()[i];
    const Piece& q = y.pieces()[i];
    if (std::abs(p.lo - q.lo) > tol || std::abs(p.hi - q.hi) > tol ||
        std::abs(p.density - q.density) > tol)
      return false;
  }
  for (std::size_t i = 0; i < x.atoms().size(); ++i) {
    const Atom& p = x.atoms()[i];
    const Atom& q = y.atoms()[i];
    if (std::abs(p.pos - q.pos) > tol || std::abs(p.weight - q.weight) > tol)
      return false;
  }
  return true;
}

}  // namespace slm
