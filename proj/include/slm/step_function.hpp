#pragma once

// Right-continuous step functions: a piece carries its value on [lo, hi).
// Periodic step functions describe one cell [0, P) (gaps filled with the
// default value at construction); non-periodic ones take the default value
// outside their pieces.

#include <functional>
#include <optional>
#include <vector>

namespace slm {

struct StepPiece {
  double lo;
  double hi;
  double value;
};

class StepFunction {
 public:
  StepFunction() = default;
  explicit StepFunction(double constant_value) : default_(constant_value) {}
  StepFunction(std::vector<StepPiece> pieces, std::optional<double> period,
               double default_value = 0.0);

  double value(double x) const;
  double sup() const;
  double inf() const;

  const std::vector<StepPiece>& pieces() const { return pieces_; }
  std::optional<double> period() const { return period_; }
  double default_value() const { return default_; }
  bool is_constant() const { return pieces_.empty(); }

  std::vector<double> breakpoints_in(double lo, double hi) const;

 private:
  std::vector<StepPiece> pieces_;
  std::optional<double> period_;
  double default_ = 0.0;

  void canonicalize();
};

// Pointwise sum; operands must be both non-periodic (defaults add) or both
// periodic with equal period, or either side constant.
StepFunction add(const StepFunction& f, const StepFunction& g);

StepFunction scale(const StepFunction& f, double c);

// x |-> f(x + p)
StepFunction shift_arg(const StepFunction& f, double p);

// Non-periodic copy of f restricted to [lo, hi) (default value outside).
StepFunction materialize(const StepFunction& f, double lo, double hi);

// Left-endpoint sampling of a callable on [lo, hi) at step h.
StepFunction sample_function(const std::function<double(double)>& f, double lo,
                             double hi, double h, double default_value = 0.0);

// Exact integral of |f - g| over (lo, hi).
double l1_distance(const StepFunction& f, const StepFunction& g, double lo,
                   double hi);

}  // namespace slm
