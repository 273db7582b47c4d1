#include "slm/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace slm {

namespace {
constexpr double kEps = 1e-12;

long long cell_index(double x, double P) {
  return static_cast<long long>(std::floor((x + kEps) / P));
}
}  // namespace

StepFunction::StepFunction(std::vector<StepPiece> pieces,
                           std::optional<double> period, double default_value)
    : pieces_(std::move(pieces)), period_(period), default_(default_value) {
  canonicalize();
}

void StepFunction::canonicalize() {
  if (period_ && !(*period_ > 0.0))
    throw std::invalid_argument("StepFunction: period must be positive");
  for (const StepPiece& p : pieces_) {
    if (!std::isfinite(p.lo) || !std::isfinite(p.hi) || !std::isfinite(p.value))
      throw std::invalid_argument("StepFunction: non-finite piece");
    if (!(p.hi > p.lo))
      throw std::invalid_argument("StepFunction: piece needs lo < hi");
  }
  if (period_) {
    const double P = *period_;
    std::vector<StepPiece> wrapped;
    for (const StepPiece& p : pieces_) {
      if (p.hi - p.lo > P + kEps)
        throw std::invalid_argument("StepFunction: piece longer than period");
      if (p.hi - p.lo >= P - kEps) {
        wrapped.push_back({0.0, P, p.value});
        continue;
      }
      const long long k = cell_index(p.lo, P);
      double lo = p.lo - static_cast<double>(k) * P;
      double hi = p.hi - static_cast<double>(k) * P;
      if (std::abs(lo) <= kEps) lo = 0.0;
      if (hi <= P + kEps) {
        wrapped.push_back({lo, std::min(hi, P), p.value});
      } else {
        wrapped.push_back({lo, P, p.value});
        wrapped.push_back({0.0, hi - P, p.value});
      }
    }
    pieces_ = std::move(wrapped);
  }
  std::sort(pieces_.begin(), pieces_.end(),
            [](const StepPiece& a, const StepPiece& b) { return a.lo < b.lo; });
  for (std::size_t i = 0; i + 1 < pieces_.size(); ++i)
    if (pieces_[i + 1].lo < pieces_[i].hi - kEps)
      throw std::invalid_argument("StepFunction: overlapping pieces");

  if (period_) {
    // Fill cell gaps with the default value so the cell is fully covered.
    const double P = *period_;
    std::vector<StepPiece> full;
    double cur = 0.0;
    for (const StepPiece& p : pieces_) {
      if (p.lo > cur + kEps) full.push_back({cur, p.lo, default_});
      full.push_back(p);
      cur = p.hi;
    }
    if (cur < P - kEps) full.push_back({cur, P, default_});
    pieces_ = std::move(full);
  }
  // Merge adjacent pieces with equal value.
  std::vector<StepPiece> out;
  for (const StepPiece& p : pieces_) {
    if (p.hi - p.lo <= kEps) continue;
    if (!out.empty() && std::abs(out.back().hi - p.lo) <= kEps &&
        out.back().value == p.value) {
      out.back().hi = p.hi;
    } else {
      out.push_back(p);
    }
  }
  pieces_ = std::move(out);
}

double StepFunction::value(double x) const {
  double t = x;
  if (period_) {
    const double P = *period_;
    t = x - static_cast<double>(cell_index(x, P)) * P;
    if (t >= P - kEps) t = 0.0;  // wrap the snapped right edge
    if (t < 0) t = 0.0;
  }
  for (const StepPiece& p : pieces_) {
    if (t >= p.lo - kEps && t < p.hi - kEps) return p.value;
  }
  return default_;
}

double StepFunction::sup() const {
  double s = pieces_.empty() ? default_ : pieces_.front().value;
  for (const StepPiece& p : pieces_) s = std::max(s, p.value);
  if (!period_ && !pieces_.empty()) s = std::max(s, default_);
  return s;
}

double StepFunction::inf() const {
  double s = pieces_.empty() ? default_ : pieces_.front().value;
  for (const StepPiece& p : pieces_) s = std::min(s, p.value);
  if (!period_ && !pieces_.empty()) s = std::min(s, default_);
  return s;
}

std::vector<double> StepFunction::breakpoints_in(double lo, double hi) const {
  std::vector<double> bp;
  auto push = [&](double x) {
    if (x >= lo - kEps && x <= hi + kEps) bp.push_back(x);
  };
  if (!period_) {
    for (const StepPiece& p : pieces_) {
      push(p.lo);
      push(p.hi);
    }
  } else {
    const double P = *period_;
    const long long k0 = cell_index(lo, P) - 1;
    const long long k1 = cell_index(hi, P) + 1;
    for (long long k = k0; k <= k1; ++k) {
      const double off = static_cast<double>(k) * P;
      for (const StepPiece& p : pieces_) {
        push(p.lo + off);
        push(p.hi + off);
      }
    }
  }
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end(),
                       [](double a, double b) { return std::abs(a - b) <= kEps; }),
           bp.end());
  return bp;
}

StepFunction add(const StepFunction& f, const StepFunction& g) {
  if (f.is_constant() && g.is_constant())
    return StepFunction(f.default_value() + g.default_value());
  if (f.is_constant()) return add(g, f);
  if (g.is_constant()) {
    std::vector<StepPiece> pieces = f.pieces();
    for (StepPiece& p : pieces) p.value += g.default_value();
    return StepFunction(std::move(pieces), f.period(),
                        f.default_value() + g.default_value());
  }
  if (f.period().has_value() != g.period().has_value())
    throw std::invalid_argument("StepFunction add: mixed periodicity");
  if (f.period() && std::abs(*f.period() - *g.period()) > kEps)
    throw std::invalid_argument("StepFunction add: distinct periods");
  std::vector<double> bp;
  for (const StepPiece& p : f.pieces()) {
    bp.push_back(p.lo);
    bp.push_back(p.hi);
  }
  for (const StepPiece& p : g.pieces()) {
    bp.push_back(p.lo);
    bp.push_back(p.hi);
  }
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end(),
                       [](double a, double b) { return std::abs(a - b) <= kEps; }),
           bp.end());
  std::vector<StepPiece> out;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    const double mid = 0.5 * (bp[i] + bp[i + 1]);
    out.push_back({bp[i], bp[i + 1], f.value(mid) + g.value(mid)});
  }
  return StepFunction(std::move(out), f.period(),
                      f.default_value() + g.default_value());
}

StepFunction scale(const StepFunction& f, double c) {
  std::vector<StepPiece> pieces = f.pieces();
  for (StepPiece& p : pieces) p.value *= c;
  return StepFunction(std::move(pieces), f.period(), f.default_value() * c);
}

StepFunction shift_arg(const StepFunction& f, double p) {
  std::vector<StepPiece> pieces = f.pieces();
  for (StepPiece& q : pieces) {
    q.lo -= p;
    q.hi -= p;
  }
  return StepFunction(std::move(pieces), f.period(), f.default_value());
}

StepFunction materialize(const StepFunction& f, double lo, double hi) {
  if (!(hi > lo)) return StepFunction(f.default_value());
  std::vector<double> bp = f.breakpoints_in(lo, hi);
  std::vector<double> xs;
  xs.push_back(lo);
  for (double b : bp)
    if (b > lo + kEps && b < hi - kEps) xs.push_back(b);
  xs.push_back(hi);
  std::vector<StepPiece> out;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    out.push_back({xs[i], xs[i + 1], f.value(0.5 * (xs[i] + xs[i + 1]))});
  return StepFunction(std::move(out), std::nullopt, f.default_value());
}

StepFunction sample_function(const std::function<double(double)>& f, double lo,
                             double hi, double h, double default_value) {
  if (!(h > 0.0)) throw std::invalid_argument("sample_function: needs h > 0");
  const auto n = static_cast<long long>(std::ceil((hi - lo) / h));
  std::vector<StepPiece> pieces;
  pieces.reserve(static_cast<std::size_t>(n));
  for (long long k = 0; k < n; ++k) {
    const double a = lo + static_cast<double>(k) * h;
    const double b = std::min(lo + static_cast<double>(k + 1) * h, hi);
    if (b > a) pieces.push_back({a, b, f(a)});
  }
  return StepFunction(std::move(pieces), std::nullopt, default_value);
}

double l1_distance(const StepFunction& f, const StepFunction& g, double lo,
                   double hi) {
  if (!(hi > lo)) return 0.0;
  std::vector<double> bp = f.breakpoints_in(lo, hi);
  std::vector<double> bg = g.breakpoints_in(lo, hi);
  std::vector<double> xs;
  xs.push_back(lo);
  for (double b : bp)
    if (b > lo + kEps && b < hi - kEps) xs.push_back(b);
  for (double b : bg)
    if (b > lo + kEps && b < hi - kEps) xs.push_back(b);
  xs.push_back(hi);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  double total = 0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double mid = 0.5 * (xs[i] + xs[i + 1]);
    total += std::abs(f.value(mid) - g.value(mid)) * (xs[i + 1] - xs[i]);
  }
  return total;
}

}  // namespace slm
