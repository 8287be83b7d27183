#ifndef HEATDR_DISTANCE_CALCULUS_HPP
#define HEATDR_DISTANCE_CALCULUS_HPP

#include <functional>
#include <vector>

#include "heatdr/group_model.hpp"
#include "heatdr/multidual.hpp"

namespace heatdr {

using MultiIndex = std::vector<int>;
using Jet = MultiDual<Real>;
using JetPoint = BasicPoint<Jet>;
using JetFunction = std::function<Jet(const JetPoint&)>;

// Smallest r at which operations on r itself are offered.
inline const Real kMinRadius = Real(1) / 1000;

// cosh r - 1 = (2a)^{-1} ((a-1)^2 + (a+1)|x|^2/2 + |x|^4/16 + |z|^2), free of cancellation.
template <class T>
T cosh_distance_minus_one(const BasicPoint<T>& g) {
  T x2 = T(0);
  for (const auto& v : g.x) x2 += v * v;
  T z2 = T(0);
  for (const auto& v : g.z) z2 += v * v;
  const T am1 = g.a - Real(1);
  T num = am1 * am1 + (g.a + Real(1)) * x2 * Real(0.5) + x2 * x2 / Real(16) + z2;
  return num / (g.a * Real(2));
}

Real cosh_distance(const HTypeGroup& G, const GroupPoint& g);
Real distance(const HTypeGroup& G, const GroupPoint& g);
// arcosh(1 + w) for w >= 0 without cancellation near w = 0.
Real arcosh1p(const Real& w);
// F^{(m)}(w0), m = 0..order, for F(w) = arcosh(1 + w)^2, analytic at w = 0.
std::vector<Real> arcosh1p_squared_derivatives(const Real& w0, int order);

void check_multi_index(const HTypeGroup& G, const MultiIndex& J);

// g . gamma_{J_1}(e_1) ... gamma_{J_k}(e_k) with e_i nilpotent.
JetPoint lift_point(const HTypeGroup& G, const MultiIndex& J, const GroupPoint& g);

// Radial jets at a lifted point.
Jet cosh_r_jet(const JetPoint& p);
Jet r_jet(const JetPoint& p);  // SingularPoint if r < kMinRadius
Jet r_squared_jet(const JetPoint& p);
// f(r) for a radial profile with derivs[m] = f^{(m)}(r0).
Jet radial_jet(const JetPoint& p, const std::vector<Real>& profile_derivs);

Real apply_field(const HTypeGroup& G, int j, const JetFunction& f, const GroupPoint& g);
Real apply_fields(const HTypeGroup& G, const MultiIndex& J, const JetFunction& f, const GroupPoint& g);

// X_J r.
Real distance_derivative(const HTypeGroup& G, const MultiIndex& J, const GroupPoint& g);
// X_J cosh r and X_J (r^{2l}); both smooth at r = 0.
Real cosh_derivative(const HTypeGroup& G, const MultiIndex& J, const GroupPoint& g);
Real r_power_derivative(const HTypeGroup& G, const MultiIndex& J, const GroupPoint& g, int l);

struct SigmaTable {
  MultiIndex J;
  Real r;
  std::vector<Real> sigma;  // sigma[j-1] = sigma_{j,J}
  Real condition;           // 1-norm condition number of the probe system
  const Real& operator()(int j) const { return sigma.at(j - 1); }
};

SigmaTable sigma_table(const HTypeGroup& G, const MultiIndex& J, const GroupPoint& g);

// eta_y(a) = (0, sqrt((1-y)/(1+y)) a u_1, a).
GroupPoint sharpness_curve(const HTypeGroup& G, const Real& y, const Real& a);
// lim_{a -> inf} X_0^k r along eta_y, Richardson-extrapolated in 1/a^2 over
// the last three entries of a_grid.
Real limit_polynomial(const HTypeGroup& G, int k, const Real& y, const std::vector<Real>& a_grid);
// Least-squares coefficients c_0..c_k of the limit polynomial P_k(y) from
// samples on y_grid.
std::vector<Real> limit_polynomial_fit(const HTypeGroup& G, int k, const std::vector<Real>& y_grid,
                                       const std::vector<Real>& a_grid);

// Point along the ray s -> (s x_dir, s z_dir, e^{s log_a_dir}) at distance r.
GroupPoint point_at_distance(const HTypeGroup& G, const std::vector<Real>& x_dir,
                             const std::vector<Real>& z_dir, const Real& log_a_dir, const Real& r);

// Point at distance r along a fixed ray with every coordinate active.
GroupPoint generic_point(const HTypeGroup& G, const Real& r);

}  // namespace heatdr

#endif
