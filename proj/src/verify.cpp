#include "slm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "slm/bounds.hpp"
#include "slm/gronwall.hpp"
#include "slm/liouville.hpp"
#include "slm/quasiperiodic.hpp"
#include "slm/seminorm.hpp"

namespace slm::verify {

namespace {

double uni(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uni_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// distinct sorted coordinates in (0, span) with a minimum gap
std::vector<double> distinct_coords(Rng& rng, int n, double span,
                                    double min_gap = 0.05) {
  std::vector<double> xs;
  int guard = 0;
  while (static_cast<int>(xs.size()) < n && guard++ < 200) {
    const double x = uni(rng, 0.02 * span, 0.98 * span);
    bool ok = true;
    for (double y : xs)
      if (std::abs(x - y) < min_gap) ok = false;
    if (ok) xs.push_back(x);
  }
  std::sort(xs.begin(), xs.end());
  return xs;
}

}  // namespace

LocalMeasure random_measure(Rng& rng, double period, double span, bool nonneg) {
  const double cell = period > 0 ? period : span;
  const int np = uni_int(rng, 0, 3);
  const int na = uni_int(rng, 0, 3);
  std::vector<Piece> pieces;
  if (np > 0) {
    std::vector<double> bp = distinct_coords(rng, 2 * np, cell);
    for (int i = 0; i + 1 < static_cast<int>(bp.size()); i += 2) {
      const double d =
          nonneg ? uni(rng, 0.05, 2.0) : uni(rng, -2.0, 2.0);
      pieces.push_back({bp[static_cast<std::size_t>(i)],
                        bp[static_cast<std::size_t>(i + 1)], d});
    }
  }
  std::vector<Atom> atoms;
  for (double x : distinct_coords(rng, na, cell)) {
    const double w = nonneg ? uni(rng, 0.05, 1.0) : uni(rng, -1.0, 1.0);
    if (std::abs(w) > 1e-3) atoms.push_back({x, w});
  }
  return LocalMeasure(std::move(pieces), std::move(atoms),
                      period > 0 ? std::optional<double>(period) : std::nullopt);
}

StepFunction random_diffusion(Rng& rng, double period) {
  const int np = uni_int(rng, 1, 3);
  std::vector<double> bp = distinct_coords(rng, np, period);
  bp.insert(bp.begin(), 0.0);
  bp.push_back(period);
  std::vector<StepPiece> pieces;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i)
    pieces.push_back({bp[i], bp[i + 1], uni(rng, 0.5, 2.0)});
  return StepFunction(std::move(pieces), period, 1.0);
}

Coefficients random_triple(Rng& rng) {
  const double P = uni(rng, 0.7, 1.8);
  Coefficients c;
  c.diffusion = random_diffusion(rng, P);
  // full-support weight: positive base density, optional atoms on top
  std::vector<Piece> rp{{0.0, P, uni(rng, 0.3, 1.5)}};
  std::vector<Atom> ra;
  for (double x : distinct_coords(rng, uni_int(rng, 0, 2), P))
    ra.push_back({x, uni(rng, 0.05, 0.8)});
  c.weight = LocalMeasure(std::move(rp), std::move(ra), P);
  c.potential = random_measure(rng, P);
  return c;
}

Coefficients random_density_triple(Rng& rng) {
  const double P = uni(rng, 0.7, 1.8);
  Coefficients c;
  c.diffusion = random_diffusion(rng, P);
  c.weight = LocalMeasure({{0.0, P, uni(rng, 0.3, 1.5)}}, {}, P);
  const int np = uni_int(rng, 1, 3);
  std::vector<double> bp = distinct_coords(rng, 2 * np, P);
  std::vector<Piece> mp;
  for (int i = 0; i + 1 < static_cast<int>(bp.size()); i += 2)
    mp.push_back({bp[static_cast<std::size_t>(i)],
                  bp[static_cast<std::size_t>(i + 1)], uni(rng, -2.0, 2.0)});
  c.potential = LocalMeasure(std::move(mp), {}, P);
  return c;
}

// ---- oracles ---------------------------------------------------------------

namespace {

// one adaptive RK4 sweep over a constant-coefficient run
void rk_run(double a, double k, double len, double& u, double& w, double tol) {
  auto f = [&](double uu, double ww, double& du, double& dw) {
    du = ww / a;
    dw = k * uu;
  };
  auto rk4 = [&](double uu, double ww, double h, double& ou, double& ow) {
    double k1u, k1w, k2u, k2w, k3u, k3w, k4u, k4w;
    f(uu, ww, k1u, k1w);
    f(uu + 0.5 * h * k1u, ww + 0.5 * h * k1w, k2u, k2w);
    f(uu + 0.5 * h * k2u, ww + 0.5 * h * k2w, k3u, k3w);
    f(uu + h * k3u, ww + h * k3w, k4u, k4w);
    ou = uu + h / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u);
    ow = ww + h / 6.0 * (k1w + 2 * k2w + 2 * k3w + k4w);
  };
  const double lambda = std::sqrt(std::abs(k / a)) + 1.0;
  double x = 0;
  double h = std::min(len, 0.05 / lambda);
  while (x < len) {
    h = std::min(h, len - x);
    // step doubling with fifth-order extrapolation
    double u1, w1, uh, wh, u2, w2;
    rk4(u, w, h, u1, w1);
    rk4(u, w, 0.5 * h, uh, wh);
    rk4(uh, wh, 0.5 * h, u2, w2);
    const double scale =
        std::max({std::abs(u2), std::abs(w2), 1.0});
    const double err =
        std::max(std::abs(u2 - u1), std::abs(w2 - w1)) / scale;
    if (err > tol && h > 1e-8) {
      h *= 0.5;
      continue;
    }
    u = u2 + (u2 - u1) / 15.0;
    w = w2 + (w2 - w1) / 15.0;
    x += h;
    if (err < 0.03 * tol) h *= 2.0;
  }
}

}  // namespace

TransferMatrix rk_transfer_oracle(const Coefficients& c, double z, double s,
                                  double t, double tol) {
  // independent event walk from the public description
  std::vector<double> xs;
  xs.push_back(s);
  auto keep = [&](double x) {
    if (x > s + 1e-12 && x < t - 1e-12) xs.push_back(x);
  };
  for (double b : c.diffusion.breakpoints_in(s, t)) keep(b);
  for (double b : c.weight.breakpoints_in(s, t)) keep(b);
  for (double b : c.potential.breakpoints_in(s, t)) keep(b);
  xs.push_back(t);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end(),
                       [](double a, double b) { return std::abs(a - b) <= 1e-12; }),
           xs.end());

  double nu = 1, nw = 0, du = 0, dw = 1;  // the two basis solutions
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double mid = 0.5 * (xs[i] + xs[i + 1]);
    const double a = c.diffusion.value(mid);
    const double k = c.potential.density_at(mid) - z * c.weight.density_at(mid);
    const double len = xs[i + 1] - xs[i];
    rk_run(a, k, len, nu, nw, tol);
    rk_run(a, k, len, du, dw, tol);
    const double m =
        c.potential.atom_at(xs[i + 1]) - z * c.weight.atom_at(xs[i + 1]);
    if (m != 0.0) {
      nw += m * nu;
      dw += m * du;
    }
  }
  return {nu, du, nw, dw};
}

std::vector<double> jacobi_recursion_u(const std::vector<double>& a_seq,
                                       const std::vector<double>& b_seq,
                                       long long n0, double z, double u0,
                                       double w0, int nmin, int nmax) {
  auto a_at = [&](long long n) -> double {
    const long long i = n - n0;
    if (i < 0 || i >= static_cast<long long>(a_seq.size())) return 1.0;
    return a_seq[static_cast<std::size_t>(i)];
  };
  auto b_at = [&](long long n) -> double {
    const long long i = n - n0;
    if (i < 0 || i >= static_cast<long long>(b_seq.size())) return 0.0;
    return b_seq[static_cast<std::size_t>(i)];
  };
  std::vector<double> out(static_cast<std::size_t>(nmax - nmin + 1));
  auto store = [&](long long n, double v) {
    if (n >= nmin && n <= nmax) out[static_cast<std::size_t>(n - nmin)] = v;
  };
  // forward: state (u(n), w_n) with w_n = a_n (u(n+1) - u(n))
  double u = u0, w = w0;
  store(0, u);
  for (long long n = 0; n < nmax; ++n) {
    const double unext = u + w / a_at(n);
    store(n + 1, unext);
    // w_{n+1} = w_n + (b_{n+1} - z) u(n+1)
    w = w + (b_at(n + 1) - z) * unext;
    u = unext;
  }
  // backward from (u(0), w_0): w_{n-1} = w_n - (b_n - z) u(n),
  // u(n-1) = u(n) - w_{n-1}/a_{n-1}
  u = u0;
  w = w0;
  for (long long n = 0; n > nmin; --n) {
    const double wprev = w - (b_at(n) - z) * u;
    const double uprev = u - wprev / a_at(n - 1);
    store(n - 1, uprev);
    u = uprev;
    w = wprev;
  }
  return out;
}

double wfd_grid_oracle(const LocalMeasure& mu, double t, int nc, int ns) {
  std::vector<double> vals(static_cast<std::size_t>(ns));
  double vmin = std::numeric_limits<double>::infinity();
  double vmax = -vmin;
  for (int i = 0; i < ns; ++i) {
    const double s = t - 1.0 + 2.0 * (i + 0.5) / ns;
    const double v = phi(mu, s);
    vals[static_cast<std::size_t>(i)] = v;
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
  }
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j <= nc; ++j) {
    const double c = vmin + (vmax - vmin) * j / std::max(1, nc);
    double acc = 0;
    for (double v : vals) acc += std::abs(v - c);
    best = std::min(best, acc * 2.0 / ns);
  }
  return best;
}

// ---- suites ----------------------------------------------------------------

namespace {

LocalMeasure random_any_measure(Rng& rng, bool nonneg = false) {
  const bool periodic = uni(rng, 0, 1) < 0.5;
  return random_measure(rng, periodic ? uni(rng, 0.6, 2.0) : -1.0, 3.0, nonneg);
}

}  // namespace

SuiteResult suite_tv_additivity(Rng& rng, int cases) {
  SuiteResult r{"tv-additivity", cases, 0, 0, "max |tv(s,u)-tv(s,t)-tv(t,u)|"};
  for (int i = 0; i < cases; ++i) {
    const LocalMeasure mu = random_any_measure(rng);
    double s = uni(rng, -4, 4), t = uni(rng, -4, 4), u = uni(rng, -4, 4);
    if (s > t) std::swap(s, t);
    if (t > u) std::swap(t, u);
    if (s > t) std::swap(s, t);
    const double gap = std::abs(tv_on_interval(mu, s, u) -
                                tv_on_interval(mu, s, t) -
                                tv_on_interval(mu, t, u));
    r.worst_slack = std::max(r.worst_slack, gap);
    if (gap > 1e-12) ++r.violations;
  }
  return r;
}

SuiteResult suite_phi_cocycle(Rng& rng, int cases) {
  SuiteResult r{"phi-cocycle", cases, 0, 0, "max |phi(t)-phi(s)-mu((s,t])|"};
  for (int i = 0; i < cases; ++i) {
    const LocalMeasure mu = random_any_measure(rng);
    double s = uni(rng, -4, 4), t = uni(rng, -4, 4);
    if (s > t) std::swap(s, t);
    const double gap = std::abs(phi(mu, t) - phi(mu, s) - mu.mass(s, t));
    r.worst_slack = std::max(r.worst_slack, gap);
    if (gap > 1e-12) ++r.violations;
  }
  return r;
}

SuiteResult suite_shift_identity(Rng& rng, int cases) {
  SuiteResult r{"shift-identity", cases, 0, 0,
                "max surrogate of mu - mu(.+P) for periodic mu"};
  for (int i = 0; i < cases; ++i) {
    const double P = uni(rng, 0.6, 2.0);
    const LocalMeasure mu = random_measure(rng, P);
    const LocalMeasure diff = subtract_on_window(mu, shift(mu, P), -4.0, 4.0);
    const double w = seminorm_surrogate(diff, {-3.0, 3.0}, 16);
    r.worst_slack = std::max(r.worst_slack, w);
    if (w > 1e-12) ++r.violations;
  }
  return r;
}

SuiteResult suite_median_optimality(Rng& rng, int cases) {
  SuiteResult r{"median-optimality", cases, 0, 0,
                "max value / min_over_random_c (<= 1 required)"};
  for (int i = 0; i < cases; ++i) {
    const LocalMeasure mu = random_any_measure(rng);
    if (mu.is_zero()) continue;
    const double t = uni(rng, -2, 2);
    const FlatDistance fd = window_flat_distance(mu, t);
    const auto segs = phi_segments(mu, t - 1.0, t + 1.0);
    double vmin = 0, vmax = 0;
    for (const auto& s : segs) {
      vmin = std::min({vmin, s.v0, s.v0 + s.slope * (s.x1 - s.x0)});
      vmax = std::max({vmax, s.v0, s.v0 + s.slope * (s.x1 - s.x0)});
    }
    double best_random = std::numeric_limits<double>::infinity();
    for (int j = 0; j < 100; ++j) {
      const double c = uni(rng, vmin - 0.5, vmax + 0.5);
      double acc = 0;
      for (const auto& s : segs) {
        const double L = s.x1 - s.x0;
        const double g0 = s.v0 - c;
        const double g1 = s.v0 + s.slope * L - c;
        if (g0 * g1 >= 0)
          acc += 0.5 * std::abs(g0 + g1) * L;
        else
          acc += 0.5 * (g0 * g0 + g1 * g1) / std::abs(s.slope);
      }
      best_random = std::min(best_random, acc);
    }
    if (best_random > 0) {
      const double ratio = fd.value / best_random;
      r.worst_slack = std::max(r.worst_slack, ratio);
      if (fd.value > best_random * (1 + 1e-12) + 1e-12) ++r.violations;
    }
  }
  return r;
}

SuiteResult suite_c_bound(Rng& rng, int cases) {
  SuiteResult r{"c-bound", cases, 0, 0, "max |c_mu| / unif_norm"};
  for (int i = 0; i < cases; ++i) {
    const LocalMeasure mu = random_any_measure(rng);
    if (mu.is_zero()) continue;
    const double c = c_constant(mu);
    const double n = unif_norm(mu);
    if (n == 0) continue;
    r.worst_slack = std::max(r.worst_slack, std::abs(c) / n);
    if (std::abs(c) > n * (1 + 1e-12)) ++r.violations;
  }
  return r;
}

SuiteResult suite_periodize(Rng& rng, int cases) {
  SuiteResult r{"periodize", cases, 0, 0,
                "max unif(result)/unif(mu) over p >= 1 (2 allowed)"};
  for (int i = 0; i < cases; ++i) {
    const LocalMeasure mu = random_measure(rng, -1.0, 3.0);
    if (mu.is_zero()) continue;
    const double p = uni(rng, 1.0, 3.0);
    const double alpha = uni(rng, 0.05, 0.5) * p;
    const LocalMeasure per = periodize(mu, p, alpha);
    bool bad = false;
    if (!per.period() || std::abs(*per.period() - p) > 1e-12) bad = true;
    // matching on [alpha, p - alpha]
    const LocalMeasure d =
        subtract_on_window(mu, per, alpha - 1e-9, p - alpha);
    if (tv_on_interval(d, alpha, p - alpha) > 1e-12) bad = true;
    const double nm = unif_norm(mu);
    if (nm > 0) {
      const double ratio = unif_norm(per) / nm;
      r.worst_slack = std::max(r.worst_slack, ratio);
      if (ratio > 2.0 + 1e-9) bad = true;
    }
    if (bad) ++r.violations;
  }
  return r;
}

SuiteResult suite_sandwich(Rng& rng, int cases, int n_grid) {
  SuiteResult r{"seminorm-sandwich", cases, 0, 0,
                "max of L-(W+1e-9) excess and W-(2L+eps) excess"};
  for (int i = 0; i < cases; ++i) {
    const double len = uni(rng, 2.0, 5.0);
    const Interval I{-0.5 * len, 0.5 * len};
    LocalMeasure mu = random_measure(rng, -1.0, len, true);
    mu = shift(mu, 0.5 * len);  // center the support in I
    if (uni(rng, 0, 1) < 0.3) mu = scale(mu, -1.0);  // one-signed either way
    if (mu.is_zero()) continue;
    const double W = seminorm_surrogate(mu, I, 128);
    const double L = seminorm_lower_oracle(mu, I, n_grid);
    const double Lc = seminorm_lower_oracle(mu, I, n_grid / 2);
    const double eps = std::max(0.0, (L - Lc) * (4.0 / 3.0)) + 1e-9;
    if (L > W + 1e-9) ++r.violations;
    if (W > 2 * L + eps) ++r.violations;
    r.worst_slack =
        std::max({r.worst_slack, L - (W + 1e-9), W - (2 * L + eps)});
  }
  return r;
}

SuiteResult suite_schroedinger_validate(Rng& rng, int cases) {
  SuiteResult r{"schroedinger-validate", cases, 0, 0, ""};
  for (int i = 0; i < cases; ++i) {
    const Coefficients c = schroedinger(random_any_measure(rng));
    if (!validate(c).pass()) ++r.violations;
  }
  return r;
}

SuiteResult suite_liouville_certificate() {
  SuiteResult r{"liouville-certificate", 0, 0, 0, ""};
  for (const auto& [B, mm] : std::vector<std::pair<double, int>>{
           {1.0, 1}, {1.0, 3}, {1.0, 4}, {0.25, 3}, {10.0, 4}}) {
    ++r.cases;
    const LiouvilleNumber L = LiouvilleNumber::construct(B, mm);
    std::string why;
    if (!L.verify_certificate(&why)) ++r.violations;
    // q_{m+1} >= m^{q_m} / (B q_m), restated exactly on the stored pairs
    const auto& cv = L.convergents();
    for (int m = 1; m + 1 <= mm; ++m) {
      if (!certificate_sufficient(cv[static_cast<std::size_t>(m - 1)].q,
                                  cv[static_cast<std::size_t>(m)].q, B, m))
        ++r.violations;
    }
  }
  // golden ratio: all-ones quotients fail the certificate at B = 1, m = 5
  ++r.cases;
  const double golden = 0.5 * (1.0 + std::sqrt(5.0));
  // fifth convergent of [1;1,1,...] is 8/5
  const double err = std::abs(golden - 8.0 / 5.0);
  const double thresh = std::pow(5.0, -5.0);
  if (err <= thresh) ++r.violations;  // must FAIL the certificate
  return r;
}

SuiteResult suite_quasiperiodic_sampling(Rng& rng, int cases) {
  SuiteResult r{"quasiperiodic-sampling", cases, 0, 0,
                "max measured L1 error / (c h^beta)"};
  for (int i = 0; i < cases; ++i) {
    const double freq = uni(rng, 0.5, 3.0);
    const double amp = uni(rng, 0.05, 0.3);
    auto f = [&](double x) { return amp * (1.0 + std::cos(freq * x)); };
    const double lip = amp * freq;
    const double h = uni(rng, 1e-3, 1e-2);
    const StepFunction s = sample_function(f, 0.0, 1.0, h, 0.0);
    // fine-grid quadrature of |f - s| over (0, 1)
    const int n = 20000;
    double acc = 0;
    for (int j = 0; j < n; ++j) {
      const double x = (j + 0.5) / n;
      acc += std::abs(f(x) - s.value(x));
    }
    acc /= n;
    const double bound = lip * h;
    r.worst_slack = std::max(r.worst_slack, acc / bound);
    if (acc > bound * (1 + 1e-6)) ++r.violations;
  }
  return r;
}

namespace {

// z inside a spectral band: |trace of the cell monodromy| small, so long
// products stay bounded and determinant drift is measurable.
double elliptic_z(const Coefficients& c, Rng& rng) {
  double best_z = 0;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 160; ++i) {
    const double z = uni(rng, -6.0, 6.0);
    const double tr = std::abs(monodromy_trace(c, z));
    if (tr < best) {
      best = tr;
      best_z = z;
    }
    if (best < 1.2) break;
  }
  return best_z;
}

}  // namespace

SuiteResult suite_det_chains(Rng& rng, int cases, int max_factors) {
  SuiteResult r{"det-chains", cases, 0, 0, "max |det - 1| along chains"};
  for (int i = 0; i < cases; ++i) {
    Coefficients c = random_triple(rng);
    const double z = elliptic_z(c, rng);
    const double P = common_period(c);
    // factors per cell: runs + atoms
    const std::size_t per_cell =
        std::max<std::size_t>(1, c.diffusion.pieces().size() +
                                     c.potential.pieces().size() +
                                     c.potential.atoms().size() +
                                     c.weight.atoms().size());
    const int cells =
        std::max(1, static_cast<int>(max_factors / per_cell));

    double worst = 0;
    // one long sequential product
    const TransferMatrix M = transfer(c, z, 0.0, cells * P);
    worst = std::max(worst, std::abs(M.det() - 1.0));
    // iterated cell powers, checked along the way
    const TransferMatrix cell = transfer(c, z, 0.0, P);
    TransferMatrix acc = TransferMatrix::identity();
    for (int k = 0; k < std::min(cells, 2000); ++k) {
      acc = cell * acc;
      if ((k & 127) == 0) worst = std::max(worst, std::abs(acc.det() - 1.0));
    }
    worst = std::max(worst, std::abs(acc.det() - 1.0));
    r.worst_slack = std::max(r.worst_slack, worst);
    if (worst > 1e-10) ++r.violations;
  }
  return r;
}

SuiteResult suite_composition(Rng& rng, int cases) {
  SuiteResult r{"composition", cases, 0, 0,
                "max entrywise |T(t,r)T(r,s) - T(t,s)|"};
  for (int i = 0; i < cases; ++i) {
    const Coefficients c = random_triple(rng);
    const double z = uni(rng, -3, 3);
    // the intermediate point lies between the endpoints (endpoints in either
    // order); an exterior split multiplies two large reciprocal factors and
    // only cancels in exact arithmetic
    double s = uni(rng, -5, 5), t = uni(rng, -5, 5);
    const double m = s + uni(rng, 0.0, 1.0) * (t - s);
    const TransferMatrix A = transfer(c, z, m, t) * transfer(c, z, s, m);
    const TransferMatrix B = transfer(c, z, s, t);
    const double scale =
        std::max({1.0, std::abs(B.m11), std::abs(B.m12), std::abs(B.m21),
                  std::abs(B.m22)});
    const double gap =
        std::max({std::abs(A.m11 - B.m11), std::abs(A.m12 - B.m12),
                  std::abs(A.m21 - B.m21), std::abs(A.m22 - B.m22)}) /
        scale;
    r.worst_slack = std::max(r.worst_slack, gap);
    if (gap > 1e-9) ++r.violations;
    // round trip
    const TransferMatrix R = transfer(c, z, t, s) * B;
    const double rt = std::max({std::abs(R.m11 - 1), std::abs(R.m12),
                                std::abs(R.m21), std::abs(R.m22 - 1)});
    if (rt > 1e-9 * scale * scale) ++r.violations;
  }
  return r;
}

SuiteResult suite_oracle_smooth(Rng& rng, int cases, double horizon) {
  SuiteResult r{"oracle-smooth", cases, 0, 0, "max relative entry gap vs RK"};
  for (int i = 0; i < cases; ++i) {
    const Coefficients c = random_density_triple(rng);
    const double z = uni(rng, -3, 3);
    const TransferMatrix M = transfer(c, z, 0.0, horizon);
    const TransferMatrix O = rk_transfer_oracle(c, z, 0.0, horizon);
    const double scale =
        std::max({1.0, std::abs(O.m11), std::abs(O.m12), std::abs(O.m21),
                  std::abs(O.m22)});
    const double gap =
        std::max({std::abs(M.m11 - O.m11), std::abs(M.m12 - O.m12),
                  std::abs(M.m21 - O.m21), std::abs(M.m22 - O.m22)}) /
        scale;
    r.worst_slack = std::max(r.worst_slack, gap);
    if (gap > 1e-8) ++r.violations;
  }
  return r;
}

SuiteResult suite_oracle_discrete(Rng& rng, int cases, int n_range) {
  SuiteResult r{"oracle-discrete", cases, 0, 0,
                "max |u(n) - recursion| over |n| <= range"};
  for (int i = 0; i < cases; ++i) {
    const int N = 2 * n_range + 1;
    std::vector<double> a(static_cast<std::size_t>(N)),
        b(static_cast<std::size_t>(N));
    for (auto& v : a) v = uni(rng, 0.5, 2.0);
    for (auto& v : b) v = uni(rng, -1.0, 1.0);
    const long long n0 = -n_range;
    const Coefficients c = jacobi_window(a, b, n0);
    const double z = uni(rng, -2.0, 2.0);
    const double u0 = uni(rng, -1, 1), w0 = uni(rng, -1, 1);
    const std::vector<double> rec =
        jacobi_recursion_u(a, b, n0, z, u0, w0, -n_range, n_range);
    std::vector<double> grid;
    for (int n = -n_range; n <= n_range; ++n) grid.push_back(n);
    const std::vector<PhaseVector> prop =
        evaluate_solution(c, z, {u0, w0}, 0.0, grid);
    double worst = 0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double scale = std::max(1.0, std::abs(rec[j]));
      worst = std::max(worst, std::abs(prop[j].u - rec[j]) / scale);
    }
    r.worst_slack = std::max(r.worst_slack, worst);
    if (worst > 1e-10) ++r.violations;
  }
  return r;
}

SuiteResult suite_growth_est1(Rng& rng, int cases) {
  SuiteResult r{"growth-est1", cases, 0, 0, "max (|u|+|w|) / envelope"};
  for (int i = 0; i < cases; ++i) {
    const Coefficients c = random_triple(rng);
    const double z = uni(rng, -5, 5);
    const double t = uni(rng, -10, 10);
    const double u0 = uni(rng, -1, 1), w0 = uni(rng, -1, 1);
    const PhaseVector v = transfer(c, z, 0.0, t).apply({u0, w0});
    const GrowthEnvelopes env = growth_envelopes(c, z, t, u0, w0);
    const double lhs = std::abs(v.u) + std::abs(v.w);
    if (env.basic == 0) continue;
    const double ratio = lhs / env.basic;
    r.worst_slack = std::max(r.worst_slack, ratio);
    if (ratio > 1 + 1e-9) ++r.violations;
  }
  return r;
}

SuiteResult suite_growth_est2(Rng& rng, int cases) {
  SuiteResult r{"growth-est2", cases, 0, 0,
                "max sqrt(w^2 u^2 + w^2) / optimized envelope"};
  for (int i = 0; i < cases; ++i) {
    const Coefficients c = random_triple(rng);
    const double z = uni(rng, -5, 5);
    const double t = uni(rng, -10, 10);
    const double u0 = uni(rng, -1, 1), w0 = uni(rng, -1, 1);
    const PhaseVector v = transfer(c, z, 0.0, t).apply({u0, w0});
    const GrowthEnvelopes env = growth_envelopes(c, z, t, u0, w0);
    const double lhs =
        std::sqrt(env.omega * env.omega * v.u * v.u + v.w * v.w);
    if (env.optimized == 0) {
      if (lhs > 1e-12) ++r.violations;
      continue;
    }
    const double ratio = lhs / env.optimized;
    r.worst_slack = std::max(r.worst_slack, ratio);
    if (ratio > 1 + 1e-9) ++r.violations;
  }
  return r;
}

SuiteResult suite_derivative_control(Rng& rng, int triples, int intervals,
                                     int grid_per_unit) {
  SuiteResult r{"derivative-control", triples * intervals, 0, 0,
                "max sup|w| / (C sup|u|)"};
  for (int i = 0; i < triples; ++i) {
    const Coefficients c = random_triple(rng);
    const double z = uni(rng, -3, 3);
    const double u0 = uni(rng, -1, 1), w0 = uni(rng, -1, 1);
    if (std::abs(u0) + std::abs(w0) < 1e-3) continue;
    const LocalMeasure shifted = [&] {
      // mu - z rho as one periodic measure (common period exists)
      return subtract(c.potential, scale(c.weight, z));
    }();
    const double C = derivative_constant(1.0, c.diffusion, shifted);
    for (int j = 0; j < intervals; ++j) {
      const double lo = uni(rng, -10.0, 9.0);
      std::vector<double> grid;
      for (int g = 0; g <= grid_per_unit; ++g)
        grid.push_back(lo + static_cast<double>(g) / grid_per_unit);
      for (double b : c.potential.breakpoints_in(lo, lo + 1.0))
        grid.push_back(std::clamp(b, lo, lo + 1.0));
      for (double b : c.weight.breakpoints_in(lo, lo + 1.0))
        grid.push_back(std::clamp(b, lo, lo + 1.0));
      std::sort(grid.begin(), grid.end());
      const std::vector<PhaseVector> vals =
          evaluate_solution(c, z, {u0, w0}, lo, grid);
      double su = 0, sw = 0;
      for (const PhaseVector& v : vals) {
        su = std::max(su, std::abs(v.u));
        sw = std::max(sw, std::abs(v.w));
      }
      if (su == 0) continue;
      const double ratio = sw / (C * su);
      r.worst_slack = std::max(r.worst_slack, ratio);
      if (ratio > 1 + 1e-9) ++r.violations;
    }
  }
  return r;
}

SuiteResult suite_three_point(Rng& rng, int cases) {
  SuiteResult r{"three-point", cases, 0, 0, "min lhs / rhs (>= 1 required)"};
  r.worst_slack = std::numeric_limits<double>::infinity();
  for (int i = 0; i < cases; ++i) {
    const Coefficients c = random_triple(rng);
    const double z = uni(rng, -4, 4);
    const PhaseVector init{uni(rng, -1, 1), uni(rng, -1, 1)};
    if (init.norm() < 1e-6) continue;
    const ThreePointResult tp = three_point_check(c, z, init);
    if (!tp.ok) ++r.violations;
    if (tp.rhs > 0)
      r.worst_slack = std::min(r.worst_slack, tp.lhs / tp.rhs);
  }
  if (std::isinf(r.worst_slack)) r.worst_slack = 0;
  return r;
}

SuiteResult suite_diff_identity(Rng& rng, int cases) {
  SuiteResult r{"difference-identity", cases, 0, 0,
                "max relative gap of the atom-perturbation identity"};
  for (int i = 0; i < cases; ++i) {
    const Coefficients c = random_triple(rng);
    const double z = uni(rng, -2, 2);
    const double T = uni(rng, 1.0, 4.0);
    // perturb with two atoms inside (0, T)
    const double tau1 = uni(rng, 0.1 * T, 0.45 * T);
    const double tau2 = uni(rng, 0.55 * T, 0.9 * T);
    const double e1 = uni(rng, -0.5, 0.5), e2 = uni(rng, -0.5, 0.5);
    Coefficients ct = c;
    ct.potential = add(restrict_window(c.potential, -1.0, T + 1.0),
                       LocalMeasure({}, {{tau1, e1}, {tau2, e2}}));
    // windowed potential keeps rho periodic; propagation only reads [0, T]
    const PhaseVector init{uni(rng, -1, 1), uni(rng, -1, 1)};
    const PhaseVector v = transfer(c, z, 0.0, T).apply(init);
    const PhaseVector vt = transfer(ct, z, 0.0, T).apply(init);
    // predicted difference: sum_tau T(t, tau) (0, u~(tau)) (mu - mu~)({tau})
    PhaseVector pred{0, 0};
    for (const auto& [tau, eps] : {std::pair{tau1, e1}, std::pair{tau2, e2}}) {
      const PhaseVector ut = transfer(ct, z, 0.0, tau).apply(init);
      const PhaseVector contrib =
          transfer(c, z, tau, T).apply({0.0, ut.u * (-eps)});
      pred.u += contrib.u;
      pred.w += contrib.w;
    }
    const double scale = std::max({1.0, std::abs(v.u), std::abs(v.w)});
    const double gap = std::max(std::abs((v.u - vt.u) - pred.u),
                                std::abs((v.w - vt.w) - pred.w)) /
                       scale;
    r.worst_slack = std::max(r.worst_slack, gap);
    if (gap > 1e-9) ++r.violations;
  }
  return r;
}

SuiteResult suite_diff_scaling(Rng& rng, int cases) {
  SuiteResult r{"difference-scaling", cases, 0, 0,
                "max S(eps/2) / (S(eps)/2), 1.1 allowed"};
  for (int i = 0; i < cases; ++i) {
    const Coefficients c = random_triple(rng);
    const double z = uni(rng, -2, 2);
    const double p = 3.0;
    const LocalMeasure bump(
        {{uni(rng, 0.2, 0.8), uni(rng, 1.0, 1.8), uni(rng, -1, 1)}},
        {{uni(rng, 2.0, 2.8), uni(rng, -0.5, 0.5)}});

    auto sup_diff = [&](double eps) {
      Coefficients ct = c;
      ct.potential = add(restrict_window(c.potential, -p - 1, p + 1),
                         scale(bump, eps));
      const LocalMeasure dmu = subtract_on_window(
          c.potential, ct.potential, -p - 1, p + 1);
      const double cc = c_constant(dmu);
      // coupling: u~(0) = u(0), w~(0) = w(0) + c_{mu - mu~} u(0)
      const PhaseVector init{1.0, 0.3};
      const PhaseVector init_t{init.u, init.w + cc * init.u};
      std::vector<double> grid;
      for (int g = -30; g <= 30; ++g) grid.push_back(p * g / 30.0);
      const auto a = evaluate_solution(c, z, init, 0.0, grid);
      const auto b = evaluate_solution(ct, z, init_t, 0.0, grid);
      double s = 0;
      for (std::size_t j = 0; j < grid.size(); ++j)
        s = std::max(s, std::abs(a[j].u - b[j].u));
      return s;
    };

    const double s1 = sup_diff(1e-3);
    const double s2 = sup_diff(5e-4);
    if (s1 < 1e-12) continue;
    const double ratio = s2 / (0.5 * s1);
    r.worst_slack = std::max(r.worst_slack, ratio);
    if (ratio > 1.1) ++r.violations;
  }
  return r;
}

SuiteResult suite_gordon_period_zero(Rng& rng, int cases) {
  SuiteResult r{"gordon-period-zero", cases, 0, 0,
                "max D(P) at exact periods (0 required)"};
  for (int i = 0; i < cases; ++i) {
    const double P = uni(rng, 1.0, 2.0);
    const StepFunction a = random_diffusion(rng, P);
    const LocalMeasure mu = random_measure(rng, P);
    const double d_period = gordon_distance(a, mu, P, 16);
    r.worst_slack = std::max(r.worst_slack, d_period);
    if (d_period > 1e-12) ++r.violations;
    if (!mu.is_zero()) {
      const double off = P * uni(rng, 1.17, 1.43);
      const double d_off = gordon_distance(a, mu, off, 16);
      const LocalMeasure probe =
          subtract_on_window(mu, shift(mu, off), -off - 1, off + 1);
      if (d_off <= 1e-12 && !probe.is_zero() &&
          tv_on_interval(probe, -off, off) > 1e-6)
        ++r.violations;
    }
  }
  return r;
}

SuiteResult suite_gordon_perturbation(Rng& rng, int cases) {
  SuiteResult r{"gordon-perturbation", cases, 0, 0,
                "max |D' - D| / perturbation size"};
  for (int i = 0; i < cases; ++i) {
    const double P = uni(rng, 1.0, 2.0);
    const StepFunction a = random_diffusion(rng, P);
    const LocalMeasure mu = random_measure(rng, P);
    const double p = uni(rng, 1.0, 3.0);
    const double eps = uni(rng, 1e-4, 1e-2);
    StepFunction a2 = add(a, StepFunction(eps));
    const double d1 = gordon_distance(a, mu, p, 16);
    const double d2 = gordon_distance(a2, mu, p, 16);
    // a and a + eps have identical shift differences: D should not move
    const double gap = std::abs(d2 - d1);
    r.worst_slack = std::max(r.worst_slack, gap);
    if (gap > 1e-10) ++r.violations;
    // a genuinely perturbed on a subinterval moves D by at most the L1 size
    StepFunction a3 =
        add(a, StepFunction({{0.1, 0.4, eps}}, P, 0.0));
    const double d3 = gordon_distance(a3, mu, p, 16);
    const double budget = 2.0 * eps * 0.3 * (2.0 * p / P + 2.0);
    if (std::abs(d3 - d1) > budget + 1e-10) ++r.violations;
  }
  return r;
}

SuiteResult suite_bound_monotonicity(Rng& rng, int cases) {
  SuiteResult r{"bound-monotonicity", cases, 0, 0, ""};
  for (int i = 0; i < cases; ++i) {
    const Coefficients c = random_triple(rng);
    const double C1 = uni(rng, 0.0, 3.0);
    const double C2 = C1 + uni(rng, 0.1, 2.0);
    if (eigenvalue_bound(C2, c) < eigenvalue_bound(C1, c) - 1e-12)
      ++r.violations;
    // scaling mu up cannot enlarge the bound
    Coefficients cs = c;
    cs.potential = scale(c.potential, 2.0);
    if (eigenvalue_bound(C2, cs) > eigenvalue_bound(C2, c) + 1e-12)
      ++r.violations;
    Coefficients cr = c;
    cr.weight = scale(c.weight, 2.0);
    if (eigenvalue_bound(C2, cr) > eigenvalue_bound(C2, c) + 1e-12)
      ++r.violations;
    // refined bound at r = 1 equals the basic bound exactly
    const RefinedBound rb = eigenvalue_bound_refined(C2, c, {1.0});
    if (rb.at_r1 != eigenvalue_bound(C2, c)) ++r.violations;
  }
  return r;
}

namespace {

GronwallInstance random_gronwall(Rng& rng) {
  GronwallInstance g;
  g.T = uni(rng, 1.0, 3.0);
  std::vector<StepPiece> ap;
  const double split = uni(rng, 0.3, 0.7) * g.T;
  ap.push_back({0.0, split, uni(rng, 0.1, 2.0)});
  ap.push_back({split, g.T + 1.0, uni(rng, 0.1, 2.0)});
  g.alpha_fn = StepFunction(std::move(ap), std::nullopt, 1.0);
  LocalMeasure m = random_measure(rng, -1.0, g.T, true);
  g.kernel = m;
  return g;
}

}  // namespace

SuiteResult suite_gronwall_dominance(Rng& rng, int cases) {
  SuiteResult r{"gronwall-dominance", cases, 0, 0,
                "max (partial_sum - slack) - bound"};
  for (int i = 0; i < cases; ++i) {
    const GronwallInstance g = random_gronwall(rng);
    const double t = uni(rng, 0.2, 1.0) * g.T;
    const double bound = gronwall_bound(g, t);
    const GronwallOracleResult o = gronwall_oracle(g, t, 2048, 20);
    const double excess = o.partial_sum - 1e-4 - bound;
    r.worst_slack = std::max(r.worst_slack, excess);
    if (excess > 0) ++r.violations;
  }
  return r;
}

SuiteResult suite_gronwall_simplex(Rng& rng, int cases) {
  SuiteResult r{"gronwall-simplex", cases, 0, 0,
                "max ordered-tuple sum / (mass^k / k!)"};
  for (int i = 0; i < cases; ++i) {
    const int na = uni_int(rng, 2, 7);
    std::vector<double> w(static_cast<std::size_t>(na));
    double total = 0;
    for (auto& x : w) {
      x = uni(rng, 0.01, 1.0);
      total += x;
    }
    for (int k = 1; k <= std::min(4, na); ++k) {
      // sum over increasing index tuples of products
      double sum = 0;
      std::vector<int> idx(static_cast<std::size_t>(k));
      std::function<void(int, int, double)> rec = [&](int start, int depth,
                                                      double prod) {
        if (depth == k) {
          sum += prod;
          return;
        }
        for (int j = start; j < na; ++j)
          rec(j + 1, depth + 1, prod * w[static_cast<std::size_t>(j)]);
      };
      rec(0, 0, 1.0);
      double cap = 1.0;
      for (int j = 1; j <= k; ++j) cap *= total / j;
      const double ratio = sum / cap;
      r.worst_slack = std::max(r.worst_slack, ratio);
      if (sum > cap * (1 + 1e-12)) ++r.violations;
    }
  }
  return r;
}

SuiteResult suite_gronwall_monotonicity(Rng& rng, int cases) {
  SuiteResult r{"gronwall-monotonicity", cases, 0, 0, ""};
  for (int i = 0; i < cases; ++i) {
    const GronwallInstance g = random_gronwall(rng);
    const double t = uni(rng, 0.2, 1.0) * g.T;
    const double b = gronwall_bound(g, t);
    GronwallInstance g2 = g;
    g2.alpha_fn = scale(g.alpha_fn, 1.5);
    if (gronwall_bound(g2, t) < b - 1e-12) ++r.violations;
    GronwallInstance g3 = g;
    g3.kernel = scale(g.kernel, 1.5);
    if (gronwall_bound(g3, t) < b - 1e-12) ++r.violations;
  }
  return r;
}

SuiteResult suite_gronwall_growth_link(Rng& rng, int cases) {
  SuiteResult r{"gronwall-growth-link", cases, 0, 0,
                "max (|u|+|w(t-)|) / gronwall bound"};
  for (int i = 0; i < cases; ++i) {
    const Coefficients c = random_triple(rng);
    const double z = uni(rng, -2, 2);
    const double T = uni(rng, 1.0, 4.0);
    const double u0 = uni(rng, -1, 1), w0 = uni(rng, -1, 1);
    // phi(t) = |u| + |w| satisfies the integral inequality against
    // nu = ||1/a||_inf lambda + |mu - z rho|
    const double inv_a = 1.0 / c.diffusion.inf();
    LocalMeasure nu = abs_measure(
        subtract_on_window(c.potential, scale(c.weight, z), -1.0, T + 1.0));
    nu = add(nu, LocalMeasure({{-0.5, T + 0.5, inv_a}}, {}));
    GronwallInstance g{StepFunction(std::abs(u0) + std::abs(w0)), nu, T};

    // left limit at T: exclude any atom exactly at T
    const double atom_T =
        c.potential.atom_at(T) - z * c.weight.atom_at(T);
    PhaseVector v = transfer(c, z, 0.0, T).apply({u0, w0});
    const double w_left = v.w - atom_T * v.u;
    const double lhs = std::abs(v.u) + std::abs(w_left);
    const double bound = gronwall_bound(g, T);
    if (bound <= 0) continue;
    const double ratio = lhs / bound;
    r.worst_slack = std::max(r.worst_slack, ratio);
    if (ratio > 1 + 1e-9) ++r.violations;
  }
  return r;
}

std::vector<SuiteResult> run_all_suites(std::uint64_t seed, int scale) {
  Rng rng(seed);
  const int s = std::max(1, scale);
  std::vector<SuiteResult> out;
  out.push_back(suite_tv_additivity(rng, 100 * s));
  out.push_back(suite_phi_cocycle(rng, 100 * s));
  out.push_back(suite_shift_identity(rng, 20 * s));
  out.push_back(suite_median_optimality(rng, 30 * s));
  out.push_back(suite_c_bound(rng, 50 * s));
  out.push_back(suite_periodize(rng, 50 * s));
  out.push_back(suite_sandwich(rng, 10 * s, 256));
  out.push_back(suite_schroedinger_validate(rng, 30 * s));
  out.push_back(suite_liouville_certificate());
  out.push_back(suite_quasiperiodic_sampling(rng, 5 * s));
  out.push_back(suite_det_chains(rng, 10 * s, 10000));
  out.push_back(suite_composition(rng, 30 * s));
  out.push_back(suite_oracle_smooth(rng, 5 * s, 6.0));
  out.push_back(suite_oracle_discrete(rng, 10 * s, 30));
  out.push_back(suite_growth_est1(rng, 100 * s));
  out.push_back(suite_growth_est2(rng, 100 * s));
  out.push_back(suite_derivative_control(rng, 10 * s, 5, 400));
  out.push_back(suite_three_point(rng, 100 * s));
  out.push_back(suite_diff_identity(rng, 30 * s));
  out.push_back(suite_diff_scaling(rng, 5 * s));
  out.push_back(suite_gordon_period_zero(rng, 10 * s));
  out.push_back(suite_gordon_perturbation(rng, 10 * s));
  out.push_back(suite_bound_monotonicity(rng, 30 * s));
  out.push_back(suite_gronwall_dominance(rng, 10 * s));
  out.push_back(suite_gronwall_simplex(rng, 20 * s));
  out.push_back(suite_gronwall_monotonicity(rng, 20 * s));
  out.push_back(suite_gronwall_growth_link(rng, 30 * s));
  return out;
}

}  // namespace slm::verify
