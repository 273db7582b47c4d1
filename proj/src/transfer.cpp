#include "slm/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace slm {

namespace {
constexpr double kEps = kStructTol;
}

double PhaseVector::norm() const { return std::hypot(u, w); }

PhaseVector TransferMatrix::apply(const PhaseVector& v) const {
  return {m11 * v.u + m12 * v.w, m21 * v.u + m22 * v.w};
}

double TransferMatrix::det() const {
  const double w = m12 * m21;
  const double e = std::fma(m12, m21, -w);
  return std::fma(m11, m22, -w) - e;
}

TransferMatrix operator*(const TransferMatrix& A, const TransferMatrix& B) {
  return {A.m11 * B.m11 + A.m12 * B.m21, A.m11 * B.m12 + A.m12 * B.m22,
          A.m21 * B.m11 + A.m22 * B.m21, A.m21 * B.m12 + A.m22 * B.m22};
}

TransferMatrix piece_matrix(double a_val, double k, double d) {
  if (!(a_val > 0)) throw std::invalid_argument("piece_matrix: a_val > 0");
  if (d < 0) throw std::invalid_argument("piece_matrix: d >= 0");
  if (d == 0) return TransferMatrix::identity();
  const double xi = (k / a_val) * d * d;
  double C, S;
  if (std::abs(xi) < 1e-12) {
    // series through xi^3; the omitted term is xi^4/8! ~ 2.5e-53
    C = 1.0 + 0.5 * xi * (1.0 + xi / 12.0 * (1.0 + xi / 30.0));
    S = 1.0 + xi / 6.0 * (1.0 + xi / 20.0 * (1.0 + xi / 42.0));
  } else if (xi > 0) {
    const double ld = std::sqrt(xi);
    C = std::cosh(ld);
    S = std::sinh(ld) / ld;
  } else {
    const double ld = std::sqrt(-xi);
    C = std::cos(ld);
    S = std::sin(ld) / ld;
  }
  return {C, d / a_val * S, k * d * S, C};
}

TransferMatrix atom_matrix(double m) { return {1.0, 0.0, m, 1.0}; }

namespace {

// Ordered propagation steps over (s, t], s < t: constant runs separated by
// jump locations.
struct Step {
  double x0, x1;     // run (x0, x1]
  double a, k;       // constants on the run
  double atom_mass;  // (mu - z rho)({x1}), applied after the run
};

std::vector<Step> collect_steps(const Coefficients& c, double z, double s,
                                double t) {
  std::vector<double> xs;
  xs.push_back(s);
  auto keep = [&](double x) {
    if (x > s + kEps && x < t - kEps) xs.push_back(x);
  };
  for (double b : c.diffusion.breakpoints_in(s, t)) keep(b);
  for (double b : c.weight.breakpoints_in(s, t)) keep(b);
  for (double b : c.potential.breakpoints_in(s, t)) keep(b);
  xs.push_back(t);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end(),
                       [](double a, double b) { return std::abs(a - b) <= kEps; }),
           xs.end());
  if (xs.back() < t) xs.back() = t;

  std::vector<Step> steps;
  steps.reserve(xs.size());
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double x0 = xs[i];
    const double x1 = xs[i + 1];
    const double mid = 0.5 * (x0 + x1);
    Step st;
    st.x0 = x0;
    st.x1 = x1;
    st.a = c.diffusion.value(mid);
    st.k = c.potential.density_at(mid) - z * c.weight.density_at(mid);
    st.atom_mass = c.potential.atom_at(x1) - z * c.weight.atom_at(x1);
    steps.push_back(st);
  }
  return steps;
}

}  // namespace

TransferMatrix transfer(const Coefficients& c, double z, double s, double t) {
  if (s > t) return transfer(c, z, t, s).inverse();
  if (t - s <= kEps) return TransferMatrix::identity();
  TransferMatrix M = TransferMatrix::identity();
  for (const Step& st : collect_steps(c, z, s, t)) {
    M = piece_matrix(st.a, st.k, st.x1 - st.x0) * M;
    if (st.atom_mass != 0.0) M = atom_matrix(st.atom_mass) * M;
  }
  return M;
}

PhaseVector neumann(const Coefficients& c, double z, double s, double t) {
  return transfer(c, z, s, t).apply({1.0, 0.0});
}

PhaseVector dirichlet(const Coefficients& c, double z, double s, double t) {
  return transfer(c, z, s, t).apply({0.0, 1.0});
}

std::vector<PhaseVector> evaluate_solution(const Coefficients& c, double z,
                                           PhaseVector init, double s,
                                           const std::vector<double>& grid) {
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    if (grid[i] > grid[i + 1])
      throw std::invalid_argument("evaluate_solution: grid must be sorted");
  std::vector<PhaseVector> out(grid.size());

  // forward part: targets >= s in ascending order share one walk
  {
    TransferMatrix M = TransferMatrix::identity();
    double cur = s;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double x = grid[i];
      if (x < s) continue;
      if (x > cur + kEps) {
        for (const Step& st : collect_steps(c, z, cur, x)) {
          M = piece_matrix(st.a, st.k, st.x1 - st.x0) * M;
          if (st.atom_mass != 0.0) M = atom_matrix(st.atom_mass) * M;
        }
        cur = x;
      }
      out[i] = M.apply(init);
    }
  }
  // backward part: targets < s in descending order; invert factors walking
  // right to left so each target matches the independent transfer call
  {
    TransferMatrix M = TransferMatrix::identity();
    double cur = s;
    for (std::size_t j = grid.size(); j-- > 0;) {
      const double x = grid[j];
      if (x >= s) continue;
      if (x < cur - kEps) {
        std::vector<Step> steps = collect_steps(c, z, x, cur);
        for (std::size_t i = steps.size(); i-- > 0;) {
          const Step& st = steps[i];
          if (st.atom_mass != 0.0) M = atom_matrix(st.atom_mass).inverse() * M;
          M = piece_matrix(st.a, st.k, st.x1 - st.x0).inverse() * M;
        }
        cur = x;
      }
      out[j] = M.apply(init);
    }
  }
  return out;
}

double monodromy_trace(const Coefficients& c, double z) {
  const double p = common_period(c);
  const TransferMatrix T = transfer(c, z, 0.0, p);
  return T.m11 + T.m22;
}

ThreePointResult three_point_check(const Coefficients& c, double z,
                                   PhaseVector init) {
  const double p = common_period(c);
  const PhaseVector vm = transfer(c, z, 0.0, -p).apply(init);
  const PhaseVector vp = transfer(c, z, 0.0, p).apply(init);
  const PhaseVector v2 = transfer(c, z, 0.0, 2.0 * p).apply(init);
  const double lhs = std::max({vm.norm(), vp.norm(), v2.norm()});
  const double rhs = 0.5 * init.norm();
  return {lhs, rhs, lhs >= rhs - 1e-12};
}

}  // namespace slm
