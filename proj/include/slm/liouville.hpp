#pragma once

// Continued-fraction construction of an irrational alpha in (1, 2) whose
// convergents p_m/q_m carry the certificate |alpha - p_m/q_m| <= B m^{-q_m}.
// Partial quotients are chosen greedily: a_{m+1} is the smallest integer for
// which the convergent error bound |alpha - p_m/q_m| < 1/(q_m q_{m+1})
// already implies the certificate, i.e. q_m q_{m+1} >= m^{q_m} / B.  The
// tail beyond the last constructed quotient is all ones, so
// alpha = (p_M phi + p_{M-1}) / (q_M phi + q_{M-1}) with phi the golden
// ratio, exactly evaluable at any precision.

#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace slm {

using BigInt = boost::multiprecision::mpz_int;

struct Convergent {
  BigInt p, q;
};

struct precision_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class LiouvilleNumber {
 public:
  static LiouvilleNumber construct(double B, int m_max);

  const std::vector<BigInt>& partial_quotients() const { return quotients_; }
  const std::vector<Convergent>& convergents() const { return convergents_; }
  double B() const { return B_; }
  int m_max() const { return m_max_; }

  double alpha() const;
  // p_m - alpha q_m in high precision, rounded to double (1-based m; may
  // underflow to 0 for extreme certificates).
  double shift_offset(int m) const;
  // Natural log of |p_m - alpha q_m| (usable even when the offset underflows).
  double log_abs_shift_offset(int m) const;
  double approx_error(int m) const;  // |alpha - p_m/q_m|
  // Integer shift amounts for period scans: the convergent numerators
  // (alpha in (1,2), so a shift by p_m crosses q_m cells of an
  // alpha-periodic structure and leaves 1-periodic structure fixed).
  std::vector<double> scan_periods() const;

  // Re-verifies the certificate for every stored m: exactly via
  // q_m q_{m+1} B >= m^{q_m} and numerically with MPFR at >= 128-bit
  // working precision (raised as the certificate demands).
  bool verify_certificate(std::string* why = nullptr) const;

 private:
  std::vector<BigInt> quotients_;        // a_0 .. a_{m_max + 1}
  std::vector<Convergent> convergents_;  // m = 1 .. m_max
  Convergent prev_;                      // m = 0 (for offset evaluation)
  Convergent tail_;                      // m = m_max + 1 (certificate witness)
  double B_ = 1.0;
  int m_max_ = 0;
};

// Exact sufficient certificate check for one level: q_m q_{m+1} >= m^{q_m}/B.
bool certificate_sufficient(const BigInt& q_m, const BigInt& q_next, double B,
                            int m);

}  // namespace slm
