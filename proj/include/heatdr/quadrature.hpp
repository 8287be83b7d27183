#ifndef HEATDR_QUADRATURE_HPP
#define HEATDR_QUADRATURE_HPP

#include <functional>
#include <vector>

#include "heatdr/real.hpp"

namespace heatdr {

struct QuadratureConfig {
  Real abs_tol = Real("1e-4000");
  Real rel_tol = Real("1e-10");
  int max_panels = 4000;
  int precision_bits = kWorkingPrecisionBits;
};

// Throws BadParameter unless tolerances are positive, max_panels >= 1 and
// precision_bits is in [24, 113].
void check_config(const QuadratureConfig& cfg);

// Relative tolerance actually used: max(rel_tol, 2^{4 - precision_bits}).
Real effective_rel_tol(const QuadratureConfig& cfg);

// f(x, out) writes dim values at x.
using VectorIntegrand = std::function<void(const Real& x, Real* out)>;

struct QuadratureResult {
  std::vector<Real> value;
  std::vector<Real> error;  // Kronrod minus Gauss estimate, summed over panels
  int panels = 0;
};

// Adaptive 61-point Gauss-Kronrod over [a, b], starting from `initial_panels`
// equal panels and bisecting the worst panel until every component satisfies
// error <= max(abs_tol, rel_tol |value|).  Throws QuadratureNoConvergence.
QuadratureResult integrate(const VectorIntegrand& f, int dim, const Real& a, const Real& b,
                           const QuadratureConfig& cfg, int initial_panels = 1);

Real integrate_scalar(const std::function<Real(const Real&)>& f, const Real& a, const Real& b,
                      const QuadratureConfig& cfg, int initial_panels = 1);

}  // namespace heatdr

#endif
