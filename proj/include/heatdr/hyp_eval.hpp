#ifndef HEATDR_HYP_EVAL_HPP
#define HEATDR_HYP_EVAL_HPP

#include <memory>
#include <string>

#include "heatdr/hyp_expr.hpp"
#include "heatdr/real.hpp"

namespace heatdr {

// Shared per-r quantities for evaluating many expressions at one point.
struct HypPoint {
  explicit HypPoint(const Real& r);
  Real r;
  Real uinv;            // e^{-r/2}
  Real one_minus_uinv;  // 1 - e^{-r/2}
};

// Floating evaluator for a HypExpr.  Direct evaluation factors out the
// dominant u-power; near r = 0, when the direct sum loses more than 20 bits,
// it switches to the Laurent series of N/D about r = 0 (exact integer Taylor
// coefficients, quotient formed at 384 bits).  Cheap to copy; thread-safe.
class CompiledHyp {
 public:
  CompiledHyp();
  explicit CompiledHyp(const HypExpr& e);

  Real operator()(const Real& r) const;
  Real operator()(const HypPoint& p) const;
  // Direct evaluation only, plus an estimate sum|terms| / |sum| of the
  // cancellation in the numerator.
  Real direct(const Real& r, Real* condition = nullptr) const;
  Real direct(const HypPoint& p, Real* condition = nullptr) const;
  // Series evaluation; requires r within the disc of convergence.
  Real series(const Real& r) const;

  // Exact order of r at 0 (negative for a pole) and the coefficient of that power.
  int order_at_zero() const;
  Rational leading_coefficient_at_zero() const;
  // Radius of convergence of the series about r = 0.
  Real series_radius() const;

  const HypExpr& expr() const;
  bool is_zero() const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

// Evaluates e at r >= 0.  precision_bits <= 113 uses binary128; larger values
// evaluate in MPFR with enough guard bits for the cancellation at r.  The
// multi-precision result is returned as a decimal string with
// ceil(precision_bits * log10 2) + 2 digits.
Real eval_hyp(const HypExpr& e, const Real& r, int precision_bits = kWorkingPrecisionBits);
std::string eval_hyp_decimal(const HypExpr& e, const std::string& r, int precision_bits);

}  // namespace heatdr

#endif
