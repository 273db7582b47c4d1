#include "slm/seminorm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace slm {

namespace {
constexpr double kEps = kStructTol;
}

std::vector<PhiSegment> phi_segments(const LocalMeasure& mu, double lo,
                                     double hi) {
  std::vector<double> bp = mu.breakpoints_in(lo, hi);
  std::vector<double> xs;
  xs.push_back(lo);
  for (double b : bp)
    if (b > lo + kEps && b < hi - kEps) xs.push_back(b);
  xs.push_back(hi);

  std::vector<PhiSegment> segs;
  double v = phi(mu, lo);  // right value at lo (atom at lo already applied)
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double x0 = xs[i];
    const double x1 = xs[i + 1];
    const double slope = mu.density_at(0.5 * (x0 + x1));
    segs.push_back({x0, x1, v, slope});
    v += slope * (x1 - x0);
    v += mu.atom_at(x1);  // jump at the right end of the run
  }
  return segs;
}

namespace {

// Value distribution of phi over the window: flat runs contribute point
// masses at their value, sloped runs uniform mass over their value range.
struct ValueDist {
  struct PointMass {
    double v, m;
  };
  struct RangeMass {
    double vlo, vhi, m;
  };
  std::vector<PointMass> points;
  std::vector<RangeMass> ranges;
  double total = 0;
  double vmin = std::numeric_limits<double>::infinity();
  double vmax = -std::numeric_limits<double>::infinity();

  double mass_leq(double c) const {
    double s = 0;
    for (const PointMass& p : points)
      if (p.v <= c) s += p.m;
    for (const RangeMass& r : ranges) {
      if (c >= r.vhi)
        s += r.m;
      else if (c > r.vlo)
        s += r.m * (c - r.vlo) / (r.vhi - r.vlo);
    }
    return s;
  }

  double mass_lt(double c) const {
    double s = 0;
    for (const PointMass& p : points)
      if (p.v < c) s += p.m;
    for (const RangeMass& r : ranges) {
      if (c >= r.vhi)
        s += r.m;
      else if (c > r.vlo)
        s += r.m * (c - r.vlo) / (r.vhi - r.vlo);
    }
    return s;
  }
};

ValueDist value_distribution(const std::vector<PhiSegment>& segs) {
  ValueDist d;
  for (const PhiSegment& s : segs) {
    const double L = s.x1 - s.x0;
    if (L <= 0) continue;
    d.total += L;
    const double v1 = s.v0 + s.slope * L;
    d.vmin = std::min({d.vmin, s.v0, v1});
    d.vmax = std::max({d.vmax, s.v0, v1});
    if (s.slope == 0.0) {
      d.points.push_back({s.v0, L});
    } else {
      d.ranges.push_back({std::min(s.v0, v1), std::max(s.v0, v1), L});
    }
  }
  return d;
}

// Minimizer interval of c |-> int |phi - c|: the median set of the value
// distribution, found by bisection on the monotone cdf.
std::pair<double, double> median_interval(const ValueDist& d) {
  const double half = 0.5 * d.total;
  if (d.vmax <= d.vmin) return {d.vmin, d.vmin};

  // c_lo = inf{c : mass_leq(c) >= half}
  double lo = d.vmin - 1.0, hi = d.vmax;
  for (int it = 0; it < 100 && hi - lo > 0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (d.mass_leq(mid) >= half)
      hi = mid;
    else
      lo = mid;
  }
  const double c_lo = hi;

  // c_hi = sup{c : mass_lt(c) <= half}
  lo = d.vmin;
  hi = d.vmax + 1.0;
  for (int it = 0; it < 100 && hi - lo > 0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (d.mass_lt(mid) <= half)
      lo = mid;
    else
      hi = mid;
  }
  const double c_hi = std::max(lo, c_lo);
  return {c_lo, c_hi};
}

double integral_abs(const std::vector<PhiSegment>& segs, double c) {
  double total = 0;
  for (const PhiSegment& s : segs) {
    const double L = s.x1 - s.x0;
    if (L <= 0) continue;
    const double g0 = s.v0 - c;
    const double g1 = s.v0 + s.slope * L - c;
    if (g0 * g1 >= 0.0) {
      total += 0.5 * std::abs(g0 + g1) * L;
    } else {
      // sign change inside the run: two triangles
      total += 0.5 * (g0 * g0 + g1 * g1) / std::abs(s.slope);
    }
  }
  return total;
}

}  // namespace

FlatDistance window_flat_distance(const LocalMeasure& mu, double t) {
  if (mu.is_zero()) return {0.0, 0.0};
  const std::vector<PhiSegment> segs = phi_segments(mu, t - 1.0, t + 1.0);
  const ValueDist dist = value_distribution(segs);
  auto [c_lo, c_hi] = median_interval(dist);
  double c = 0.5 * (c_lo + c_hi);
  if (t == 0.0) {
    const double bound = unif_norm(mu);
    c = std::clamp(c, -bound, bound);
  }
  return {integral_abs(segs, c), c};
}

double c_constant(const LocalMeasure& mu) {
  return window_flat_distance(mu, 0.0).c_star;
}

double seminorm_surrogate(const LocalMeasure& mu, Interval I,
                          int refine_per_unit) {
  if (I.length() < 2.0 - kEps)
    throw std::invalid_argument("seminorm_surrogate: interval shorter than 2");
  if (mu.is_zero()) return 0.0;
  const double tlo = I.lo + 1.0;
  const double thi = std::max(I.hi - 1.0, tlo);

  std::vector<double> cand;
  cand.push_back(tlo);
  cand.push_back(thi);
  for (double b : mu.breakpoints_in(I.lo - 1.0, I.hi + 1.0)) {
    for (double t : {b, b - 1.0, b + 1.0}) {
      if (t >= tlo && t <= thi) cand.push_back(t);
    }
  }
  if (refine_per_unit > 0 && thi > tlo) {
    const int n = std::max(1, static_cast<int>((thi - tlo) * refine_per_unit));
    for (int i = 1; i < n; ++i)
      cand.push_back(tlo + (thi - tlo) * i / static_cast<double>(n));
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  double best = 0;
  for (double t : cand) best = std::max(best, window_flat_distance(mu, t).value);
  return best;
}

namespace {

// Antiderivative of phi as a table of quadratic runs.
struct PhiAntiderivative {
  std::vector<double> x0;
  std::vector<double> A, V, S;  // Phi(x) = A + V dx + S/2 dx^2 on the run

  double eval(double x) const {
    auto it = std::upper_bound(x0.begin(), x0.end(), x);
    const std::size_t i = (it == x0.begin()) ? 0 : (it - x0.begin() - 1);
    const double dx = x - x0[i];
    return A[i] + dx * (V[i] + 0.5 * S[i] * dx);
  }
};

PhiAntiderivative build_antiderivative(const std::vector<PhiSegment>& segs) {
  PhiAntiderivative F;
  double acc = 0;
  for (const PhiSegment& s : segs) {
    F.x0.push_back(s.x0);
    F.A.push_back(acc);
    F.V.push_back(s.v0);
    F.S.push_back(s.slope);
    const double L = s.x1 - s.x0;
    acc += s.v0 * L + 0.5 * s.slope * L * L;
  }
  return F;
}

}  // namespace

double seminorm_lower_oracle(const LocalMeasure& mu, Interval I, int n_grid) {
  if (n_grid < 2)
    throw std::invalid_argument("seminorm_lower_oracle: n_grid >= 2");
  if (mu.is_zero() || I.length() <= 0) return 0.0;

  // For a trapezoid with support [m-W, m+W] and plateau [m-w, m+w],
  // integration by parts gives
  //   int u dmu = Phi(m-W) - Phi(m-w) - Phi(m+w) + Phi(m+W).
  // With G(d) := Phi(m-d) + Phi(m+d) the lattice maximum over all (w, W)
  // pairs at a fixed center is max G - min G over the d-grid.
  const std::vector<PhiSegment> segs = phi_segments(mu, I.lo, I.hi);
  const PhiAntiderivative F = build_antiderivative(segs);

  double best = 0;
  for (int i = 0; i < n_grid; ++i) {
    const double m = I.lo + I.length() * (i + 0.5) / n_grid;
    const double wmax = std::min({1.0, m - I.lo, I.hi - m});
    if (wmax <= 0) continue;
    double gmin = std::numeric_limits<double>::infinity();
    double gmax = -gmin;
    for (int j = 0; j < n_grid; ++j) {
      const double d = wmax * j / static_cast<double>(n_grid - 1);
      const double G = F.eval(m - d) + F.eval(m + d);
      gmin = std::min(gmin, G);
      gmax = std::max(gmax, G);
    }
    best = std::max(best, gmax - gmin);
  }
  return best;
}

double integrate_pwl(const LocalMeasure& mu, const std::vector<double>& xs,
                     const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("integrate_pwl: bad node lists");
  const LocalMeasure w =
      restrict_window(mu, xs.front() - 2 * kEps, xs.back() + kEps);

  auto u_at = [&](double x) {
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t i = it - xs.begin() - 1;
    const double f = (x - xs[i]) / (xs[i + 1] - xs[i]);
    return ys[i] + f * (ys[i + 1] - ys[i]);
  };

  double total = 0;
  for (const Piece& p : w.pieces()) {
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      const double a = std::max(p.lo, xs[i]);
      const double b = std::min(p.hi, xs[i + 1]);
      if (b > a) total += p.density * 0.5 * (u_at(a) + u_at(b)) * (b - a);
    }
  }
  for (const Atom& a : w.atoms()) total += a.weight * u_at(a.pos);
  return total;
}

}  // namespace slm
