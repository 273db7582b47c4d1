#include "slm/gronwall.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace slm {

namespace {
constexpr double kEps = kStructTol;

void check_instance(const GronwallInstance& g) {
  if (!(g.T > 0)) throw std::invalid_argument("gronwall: T > 0");
  for (const Piece& p : g.kernel.pieces())
    if (p.density < 0)
      throw std::invalid_argument("gronwall: kernel must be nonnegative");
  for (const Atom& a : g.kernel.atoms())
    if (a.weight < 0)
      throw std::invalid_argument("gronwall: kernel must be nonnegative");
  if (g.alpha_fn.inf() < 0)
    throw std::invalid_argument("gronwall: alpha must be nonnegative");
}

}  // namespace

double gronwall_bound(const GronwallInstance& g, double t) {
  check_instance(g);
  if (t < -kEps || t > g.T + kEps)
    throw std::invalid_argument("gronwall_bound: t outside [0, T]");
  const LocalMeasure mu = restrict_window(g.kernel, -1.0, g.T + 1.0);

  // E(s) = mu((s, t)), open on both sides; right-continuous in s with
  // E(x-) = E(x) + mu({x}).
  const double atom_t = mu.atom_at(t);
  auto E = [&](double s) { return mu.mass(s, t) - atom_t; };
  auto E_left = [&](double s) { return E(s) + mu.atom_at(s); };

  double total = g.alpha_fn.value(t);

  std::vector<double> xs;
  xs.push_back(0.0);
  for (double b : mu.breakpoints_in(0.0, t))
    if (b > kEps && b < t - kEps) xs.push_back(b);
  for (double b : g.alpha_fn.breakpoints_in(0.0, t))
    if (b > kEps && b < t - kEps) xs.push_back(b);
  xs.push_back(t);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end(),
                       [](double a, double b) { return std::abs(a - b) <= kEps; }),
           xs.end());

  // density runs: int alpha(s) e^{E(s)} q ds = alpha * (e^{E(x0)} - e^{E(x1-)})
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double x0 = xs[i];
    const double x1 = xs[i + 1];
    const double q = mu.density_at(0.5 * (x0 + x1));
    if (q <= 0) continue;
    const double av = g.alpha_fn.value(0.5 * (x0 + x1));
    total += av * (std::exp(E(x0)) - std::exp(E_left(x1)));
  }
  // atoms in [0, t): note the closed left end (an atom at 0 contributes)
  for (const Atom& a : mu.atoms()) {
    if (a.pos >= -kEps && a.pos < t - kEps) {
      total += g.alpha_fn.value(a.pos) * std::exp(E(a.pos)) * a.weight;
    }
  }
  return total;
}

GronwallOracleResult gronwall_oracle(const GronwallInstance& g, double t,
                                     int n_grid, int k_max) {
  check_instance(g);
  if (n_grid < 8) throw std::invalid_argument("gronwall_oracle: n_grid >= 8");
  if (k_max < 1) throw std::invalid_argument("gronwall_oracle: k_max >= 1");
  if (t < -kEps || t > g.T + kEps)
    throw std::invalid_argument("gronwall_oracle: t outside [0, T]");

  // Discrete sources on [0, t): density mass of each mesh cell evaluated at
  // the cell midpoint, atoms kept at their exact positions.  The kernel row
  // for node i carries every source strictly below it plus half of its own
  // cell (the density mass between the last full cell and the midpoint),
  // which keeps the quadrature second order.
  struct Source {
    double pos, mass, half;  // half: own-cell mass below the node
  };
  std::vector<Source> src;
  const LocalMeasure mu = restrict_window(g.kernel, -1.0, t + 1.0);
  const double hstep = t / n_grid;
  for (int i = 0; i < n_grid; ++i) {
    const double a = i * hstep;
    const double b = (i + 1) * hstep;
    const double m = mu.density_at(0.5 * (a + b)) * (b - a);
    if (m > 0) src.push_back({0.5 * (a + b), m, 0.5 * m});
  }
  for (const Atom& a : mu.atoms())
    if (a.pos >= -kEps && a.pos < t - kEps)
      src.push_back({std::max(a.pos, 0.0), a.weight, 0.0});
  std::sort(src.begin(), src.end(),
            [](const Source& a, const Source& b) { return a.pos < b.pos; });

  const std::size_t n = src.size();
  std::vector<double> u(n), alpha_at(n);
  for (std::size_t i = 0; i < n; ++i) {
    alpha_at[i] = g.alpha_fn.value(src[i].pos);
    u[i] = alpha_at[i];
  }
  const double alpha_t = g.alpha_fn.value(t);
  double u_t = alpha_t;

  // u <- alpha + K u iterated k_max times; the final value is the Neumann
  // partial sum through order k_max.
  for (int k = 0; k < k_max; ++k) {
    std::vector<double> nu(n);
    double acc = 0;
    std::size_t j = 0;
    for (std::size_t i = 0; i < n; ++i) {
      while (j < i && src[j].pos < src[i].pos - kEps) {
        acc += u[j] * src[j].mass;
        ++j;
      }
      nu[i] = alpha_at[i] + acc + u[i] * src[i].half;
    }
    double full = 0;
    for (std::size_t i = 0; i < n; ++i) full += u[i] * src[i].mass;
    u_t = alpha_t + full;
    u = std::move(nu);
  }

  double total_mass = mu.mass(-kEps, t) - mu.atom_at(t);
  double int_abs_u = 0;
  for (std::size_t i = 0; i < n; ++i) int_abs_u += std::abs(u[i]) * src[i].mass;
  double cap = int_abs_u;
  for (int k = 1; k <= k_max; ++k) cap *= total_mass / k;

  return {u_t, cap};
}

}  // namespace slm
