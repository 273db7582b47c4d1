#include "slm/liouville.hpp"

#include <algorithm>
#include <cmath>

#include <boost/multiprecision/mpfr.hpp>

namespace slm {

namespace {

using BigFloat = boost::multiprecision::mpfr_float;
using BigRat = boost::multiprecision::mpq_rational;

// Working precision (bits) needed to resolve the certificate threshold
// B m^{-q} at level m, with headroom.
long needed_bits(int m, const BigInt& q) {
  if (m <= 1) return 192;
  const double qd = q.convert_to<double>();
  const double bits = qd * std::log2(static_cast<double>(m));
  if (!std::isfinite(bits) || bits > 4.0e6)
    throw precision_error(
        "liouville: certificate verification would exceed the 4M-bit "
        "precision cap");
  return std::max(192L, static_cast<long>(bits) + 128L);
}

struct PrecisionGuard {
  unsigned saved;
  explicit PrecisionGuard(long bits)
      : saved(BigFloat::default_precision()) {
    // boost counts decimal digits
    BigFloat::default_precision(
        static_cast<unsigned>(static_cast<double>(bits) * 0.30103) + 10);
  }
  ~PrecisionGuard() { BigFloat::default_precision(saved); }
};

// alpha = (pM phi + pM1) / (qM phi + qM1), phi = (1 + sqrt 5)/2, at the
// currently active default precision.
BigFloat alpha_value(const Convergent& last, const Convergent& before) {
  const BigFloat phi = (1 + sqrt(BigFloat(5))) / 2;
  return (BigFloat(last.p) * phi + BigFloat(before.p)) /
         (BigFloat(last.q) * phi + BigFloat(before.q));
}

}  // namespace

bool certificate_sufficient(const BigInt& q_m, const BigInt& q_next, double B,
                            int m) {
  if (!(B > 0)) return false;
  const BigRat b(B);  // exact binary rational of the double
  // q_m * q_next >= m^{q_m} / B  <=>  q_m * q_next * num(B) >= m^{q_m} * den(B)
  BigInt lhs = q_m * q_next * numerator(b);
  BigInt rhs = pow(BigInt(m), q_m.convert_to<unsigned long>()) * denominator(b);
  return lhs >= rhs;
}

LiouvilleNumber LiouvilleNumber::construct(double B, int m_max) {
  if (!(B > 0) || !std::isfinite(B))
    throw std::invalid_argument("liouville: B must be positive");
  if (m_max < 1) throw std::invalid_argument("liouville: m_max >= 1");
  if (m_max > 5)
    throw precision_error(
        "liouville: m_max > 5 needs partial quotients beyond representable "
        "size");

  LiouvilleNumber L;
  L.B_ = B;
  L.m_max_ = m_max;

  const BigRat b(B);
  // h_{-1}/k_{-1} = 1/0, h_0/k_0 = a0/1 with a0 = 1 (alpha in (1, 2)).
  BigInt h_prev = 1, k_prev = 0;
  BigInt h = 1, k = 1;
  L.quotients_.push_back(1);  // a0

  auto push_quotient = [&](const BigInt& a) {
    BigInt h_next = a * h + h_prev;
    BigInt k_next = a * k + k_prev;
    h_prev = h;
    k_prev = k;
    h = h_next;
    k = k_next;
    L.quotients_.push_back(a);
  };

  // a1 = 1 fixes the first convergent p1/q1 = 2/1.
  push_quotient(1);
  L.prev_ = {1, 1};  // m = 0 convergent (a0/1)
  L.convergents_.push_back({h, k});

  for (int m = 1; m <= m_max; ++m) {
    // smallest q_{m+1} = a q_m + q_{m-1} with q_m q_{m+1} B >= m^{q_m}
    const BigInt q_m = k;
    BigInt target =
        pow(BigInt(m), q_m.convert_to<unsigned long>()) * denominator(b);
    // ceil(target / (q_m * num(B)))
    BigInt denom = q_m * numerator(b);
    BigInt q_needed = (target + denom - 1) / denom;
    BigInt a = (q_needed - k_prev + q_m - 1) / q_m;
    if (a < 1) a = 1;
    push_quotient(a);
    if (m < m_max)
      L.convergents_.push_back({h, k});
    else
      L.tail_ = {h, k};
  }

  std::string why;
  if (!L.verify_certificate(&why))
    throw std::logic_error("liouville: construction failed its certificate: " +
                           why);
  return L;
}

double LiouvilleNumber::alpha() const {
  PrecisionGuard g(256);
  return alpha_value(tail_, convergents_.back()).convert_to<double>();
}

double LiouvilleNumber::shift_offset(int m) const {
  if (m < 1 || m > m_max_) throw std::invalid_argument("shift_offset: bad m");
  const Convergent& c = convergents_[static_cast<std::size_t>(m - 1)];
  // |p - alpha q| ~ 1/q_{m+1}: resolve well below that
  const Convergent& next = (m == m_max_)
                               ? tail_
                               : convergents_[static_cast<std::size_t>(m)];
  const long bits =
      static_cast<long>(msb(next.q)) + static_cast<long>(msb(c.q)) + 128;
  PrecisionGuard g(std::min(bits, 4000000L));
  const BigFloat a = alpha_value(tail_, convergents_.back());
  const BigFloat off = BigFloat(c.p) - a * BigFloat(c.q);
  return off.convert_to<double>();
}

double LiouvilleNumber::log_abs_shift_offset(int m) const {
  if (m < 1 || m > m_max_) throw std::invalid_argument("bad m");
  const Convergent& c = convergents_[static_cast<std::size_t>(m - 1)];
  const Convergent& next = (m == m_max_)
                               ? tail_
                               : convergents_[static_cast<std::size_t>(m)];
  const long bits =
      static_cast<long>(msb(next.q)) + static_cast<long>(msb(c.q)) + 128;
  PrecisionGuard g(std::min(bits, 4000000L));
  const BigFloat a = alpha_value(tail_, convergents_.back());
  const BigFloat off = abs(BigFloat(c.p) - a * BigFloat(c.q));
  return log(off).convert_to<double>();
}

double LiouvilleNumber::approx_error(int m) const {
  if (m < 1 || m > m_max_) throw std::invalid_argument("bad m");
  const Convergent& c = convergents_[static_cast<std::size_t>(m - 1)];
  const double q = c.q.convert_to<double>();
  return std::abs(shift_offset(m)) / q;
}

std::vector<double> LiouvilleNumber::scan_periods() const {
  std::vector<double> out;
  for (const Convergent& c : convergents_)
    out.push_back(c.p.convert_to<double>());
  return out;
}

bool LiouvilleNumber::verify_certificate(std::string* why) const {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  for (int m = 1; m <= m_max_; ++m) {
    const Convergent& c = convergents_[static_cast<std::size_t>(m - 1)];
    const Convergent& next = (m == m_max_)
                                 ? tail_
                                 : convergents_[static_cast<std::size_t>(m)];
    if (gcd(c.p, c.q) != 1) return fail("convergent not in lowest terms");
    if (!certificate_sufficient(c.q, next.q, B_, m))
      return fail("exact certificate fails at m = " + std::to_string(m));

    // numeric re-check: |alpha - p/q| <= B m^{-q}
    const long bits = needed_bits(m, c.q);
    PrecisionGuard g(bits);
    const BigFloat a = alpha_value(tail_, convergents_.back());
    const BigFloat err = abs(a - BigFloat(c.p) / BigFloat(c.q));
    const BigFloat thresh =
        BigFloat(B_) * pow(BigFloat(m), -BigFloat(c.q));
    if (!(err <= thresh))
      return fail("numeric certificate fails at m = " + std::to_string(m));
  }
  return true;
}

}  // namespace slm
