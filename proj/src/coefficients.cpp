#include "slm/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace slm {

namespace {
constexpr double kEps = kStructTol;

// Closed support intervals (positive-density pieces widened to closed
// intervals) and atom locations of a nonnegative measure over [lo, hi].
struct SupportSet {
  std::vector<std::pair<double, double>> intervals;
  std::vector<double> points;

  bool contains_point(double x) const {
    for (const auto& [a, b] : intervals)
      if (x >= a - kEps && x <= b + kEps) return true;
    for (double p : points)
      if (std::abs(x - p) <= kEps) return true;
    return false;
  }

  bool covers_interval(double a, double b) const {
    double cur = a;
    while (cur < b - kEps) {
      bool advanced = false;
      for (const auto& [s, e] : intervals) {
        if (s <= cur + kEps && e > cur + kEps) {
          cur = e;
          advanced = true;
        }
      }
      if (!advanced) return false;
    }
    return true;
  }
};

SupportSet support_of(const LocalMeasure& m, double lo, double hi) {
  SupportSet s;
  const LocalMeasure w = restrict_window(m, lo, hi);
  for (const Piece& p : w.pieces())
    if (p.density > kEps) s.intervals.push_back({p.lo, p.hi});
  for (const Atom& a : w.atoms())
    if (std::abs(a.weight) > kEps) s.points.push_back(a.pos);
  // merge touching intervals
  std::sort(s.intervals.begin(), s.intervals.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& iv : s.intervals) {
    if (!merged.empty() && iv.first <= merged.back().second + kEps)
      merged.back().second = std::max(merged.back().second, iv.second);
    else
      merged.push_back(iv);
  }
  s.intervals = std::move(merged);
  return s;
}

bool rho_has_full_support(const LocalMeasure& rho) {
  if (!rho.period()) return false;
  const double P = *rho.period();
  return support_of(rho, -P, 2 * P).covers_interval(0.0, P);
}

}  // namespace

ValidationReport validate(const Coefficients& c) {
  ValidationReport r;
  r.sup_a = c.diffusion.sup();
  r.inf_a = c.diffusion.inf();
  if (!(r.inf_a > 0)) {
    r.failures.push_back("1/a unbounded: diffusion not bounded away from zero");
    r.sup_inv_a = std::numeric_limits<double>::infinity();
  } else {
    r.sup_inv_a = 1.0 / r.inf_a;
  }
  if (!std::isfinite(r.sup_a) || r.sup_a <= 0)
    r.failures.push_back("a unbounded or nonpositive");

  const LocalMeasure& rho = c.weight;
  for (const Piece& p : rho.pieces())
    if (p.density < -kEps) {
      r.failures.push_back("weight has negative density");
      break;
    }
  for (const Atom& a : rho.atoms())
    if (a.weight < -kEps) {
      r.failures.push_back("weight has a negative atom");
      break;
    }
  if (rho.is_zero()) r.failures.push_back("weight is identically zero");
  if (!rho.period()) r.failures.push_back("weight has no period");

  r.unif_mu = unif_norm(c.potential);
  r.unif_rho = unif_norm(rho);

  // spt mu inside spt rho
  if (!rho.is_zero() && rho.period()) {
    const LocalMeasure& mu = c.potential;
    if (!mu.is_zero()) {
      bool ok = true;
      if (rho_has_full_support(rho)) {
        // nothing to check
      } else if (!mu.period()) {
        const SupportSet s =
            support_of(rho, mu.min_coord() - 1.0, mu.max_coord() + 1.0);
        for (const Atom& a : mu.atoms())
          if (!s.contains_point(a.pos)) ok = false;
        for (const Piece& p : mu.pieces())
          if (std::abs(p.density) > kEps && !s.covers_interval(p.lo, p.hi))
            ok = false;
      } else {
        // both periodic: decidable when the periods are commensurable
        const double Pm = *mu.period();
        const double Pr = *rho.period();
        double L = -1;
        for (int k = 1; k <= 4096; ++k) {
          const double cand = k * Pm;
          const double n = std::round(cand / Pr);
          if (n >= 1.0 && std::abs(cand - n * Pr) <= 1e-9 * cand) {
            L = cand;
            break;
          }
        }
        if (L > 0) {
          const SupportSet s = support_of(rho, -1.0, L + 1.0);
          const LocalMeasure cell = restrict_window(mu, 0.0, L);
          for (const Atom& a : cell.atoms())
            if (!s.contains_point(a.pos)) ok = false;
          for (const Piece& p : cell.pieces())
            if (std::abs(p.density) > kEps && !s.covers_interval(p.lo, p.hi))
              ok = false;
        } else {
          r.failures.push_back(
              "support check undecidable: incommensurable periods and weight "
              "without full support");
        }
      }
      if (!ok) r.failures.push_back("spt mu not contained in spt rho");
    }
  }
  return r;
}

LocalMeasure density_measure(const StepFunction& f) {
  if (f.is_constant()) {
    if (f.default_value() == 0.0) return LocalMeasure::zero();
    return LocalMeasure::constant_density(f.default_value());
  }
  if (!f.period() && f.default_value() != 0.0)
    throw std::invalid_argument(
        "density_measure: non-periodic step function with nonzero default has "
        "no finite description");
  std::vector<Piece> pieces;
  for (const StepPiece& p : f.pieces())
    if (p.value != 0.0) pieces.push_back({p.lo, p.hi, p.value});
  return LocalMeasure(std::move(pieces), {}, f.period());
}

Coefficients classical(const StepFunction& r, const StepFunction& a,
                       const StepFunction& q) {
  if (!(r.inf() > 0))
    throw std::invalid_argument("classical: weight density must be positive");
  if (!r.period() && !r.is_constant())
    throw std::invalid_argument("classical: weight density must be periodic");
  StepFunction rr = r;
  if (r.is_constant())
    rr = StepFunction({{0.0, 1.0, r.default_value()}}, 1.0, r.default_value());
  return {a, density_measure(rr), density_measure(q)};
}

Coefficients schroedinger(const LocalMeasure& mu) {
  return {StepFunction(1.0), LocalMeasure::lebesgue(), mu};
}

Coefficients jacobi(const std::vector<double>& a_seq,
                    const std::vector<double>& b_seq) {
  if (a_seq.empty() || a_seq.size() != b_seq.size())
    throw std::invalid_argument("jacobi: sequences must be nonempty and equal");
  for (double a : a_seq)
    if (!(a > 0)) throw std::invalid_argument("jacobi: a_n must be positive");
  const auto N = static_cast<double>(a_seq.size());
  std::vector<StepPiece> ap;
  std::vector<Atom> batoms;
  for (std::size_t n = 0; n < a_seq.size(); ++n) {
    const auto x = static_cast<double>(n);
    ap.push_back({x, x + 1.0, a_seq[n]});
    if (b_seq[n] != 0.0) batoms.push_back({x, b_seq[n]});
  }
  return {StepFunction(std::move(ap), N, 1.0), LocalMeasure::dirac_comb(1.0, 1.0),
          LocalMeasure({}, std::move(batoms), N)};
}

Coefficients jacobi_window(const std::vector<double>& a_seq,
                           const std::vector<double>& b_seq, long long n0) {
  if (a_seq.empty() || a_seq.size() != b_seq.size())
    throw std::invalid_argument("jacobi: sequences must be nonempty and equal");
  for (double a : a_seq)
    if (!(a > 0)) throw std::invalid_argument("jacobi: a_n must be positive");
  std::vector<StepPiece> ap;
  std::vector<Atom> batoms;
  for (std::size_t i = 0; i < a_seq.size(); ++i) {
    const auto x = static_cast<double>(n0 + static_cast<long long>(i));
    ap.push_back({x, x + 1.0, a_seq[i]});
    if (b_seq[i] != 0.0) batoms.push_back({x, b_seq[i]});
  }
  return {StepFunction(std::move(ap), std::nullopt, 1.0),
          LocalMeasure::dirac_comb(1.0, 1.0),
          LocalMeasure({}, std::move(batoms), std::nullopt)};
}

double common_period(const Coefficients& c) {
  std::vector<double> periods;
  if (!c.diffusion.is_constant()) {
    if (!c.diffusion.period())
      throw std::invalid_argument("common_period: diffusion not periodic");
    periods.push_back(*c.diffusion.period());
  }
  if (!c.weight.is_zero()) {
    if (!c.weight.period())
      throw std::invalid_argument("common_period: weight not periodic");
    periods.push_back(*c.weight.period());
  }
  if (!c.potential.is_zero()) {
    if (!c.potential.period())
      throw std::invalid_argument("common_period: potential not periodic");
    periods.push_back(*c.potential.period());
  }
  if (periods.empty())
    throw std::invalid_argument("common_period: no periodic component");
  const double pmax = *std::max_element(periods.begin(), periods.end());
  for (int k = 1; k <= 4096; ++k) {
    const double cand = k * pmax;
    bool ok = true;
    for (double P : periods) {
      const double n = std::round(cand / P);
      if (!(n >= 1.0) || std::abs(cand - n * P) > 1e-9 * std::max(1.0, cand))
        ok = false;
    }
    if (ok) return cand;
  }
  throw std::invalid_argument("common_period: periods are incommensurable");
}

double unif_norm_shifted(const Coefficients& c, double z) {
  if (z == 0.0) return unif_norm(c.potential);
  const LocalMeasure& mu = c.potential;
  const LocalMeasure& rho = c.weight;
  const bool mu_per = mu.period().has_value() || mu.is_zero();
  if (mu_per && rho.period()) {
    if (mu.is_zero()) return std::abs(z) * unif_norm(rho);
    return unif_norm(subtract(mu, scale(rho, z)));
  }
  // Windowed potential against a periodic weight: windows that meet the
  // potential's support are exact on the extended span; windows beyond it
  // carry weight mass only.
  const double lo = mu.min_coord() - 3.0;
  const double hi = mu.max_coord() + 3.0;
  const LocalMeasure diff = subtract_on_window(mu, scale(rho, z), lo, hi);
  return std::max(unif_norm(diff), std::abs(z) * unif_norm(rho));
}

}  // namespace slm
