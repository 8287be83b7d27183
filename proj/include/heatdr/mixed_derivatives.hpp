#ifndef HEATDR_MIXED_DERIVATIVES_HPP
#define HEATDR_MIXED_DERIVATIVES_HPP

#include <vector>

#include <gmpxx.h>

#include "heatdr/distance_calculus.hpp"
#include "heatdr/heat_kernel.hpp"

namespace heatdr {

// Phi_{2b,2q,t}(r) from a radial jet d[i] = h^{(i)}(r), i >= 2b + 2q.
Real phi_from_jet(int b, int q, const Real& r, const std::vector<Real>& d);
Real phi(const KernelParams& P, int b, int q, const Real& t, const Real& r, const QuadratureConfig& cfg = {});
// -1/(2b-1)! int_0^r s^{2b-1} h^{(2b+2q+1)}(s) ds, b >= 1.
Real phi_by_integral(const KernelParams& P, int b, int q, const Real& t, const Real& r,
                     const QuadratureConfig& cfg = {});

struct UpsilonXiTable {
  MultiIndex J;
  Real r = 0;
  SigmaTable sigma;
  std::vector<Real> upsilon;  // upsilon[j] = Upsilon_{2j+1,J}, j = 0..top
  std::vector<Real> xi;       // xi[j] = Xi_{2j,J}, j = 1..[(k-1)/2]; xi[0] unused
  // max relative deviation of the Xi recursion from the X_J(r^{2j}) form
  Real xi_residual = 0;
  // max relative deviation of sigma_{2l+1} = sum_p r^{2l-2p}/(2l-2p)! Upsilon_{2p+1}
  Real telescoping_residual = 0;

  int top() const { return static_cast<int>(upsilon.size()) - 1; }
  const Real& Upsilon(int odd_index) const { return upsilon.at((odd_index - 1) / 2); }
  const Real& Xi(int even_index) const { return xi.at(even_index / 2); }
};

UpsilonXiTable upsilon_xi_table(const HTypeGroup& G, const MultiIndex& J, const GroupPoint& g);

struct DecompositionReport {
  Real lhs;       // X_J h_t(g) * e^{r^2/4t}
  Real rhs;       // decomposition, same scaling
  Real residual;  // |lhs - rhs| / max(|lhs|, 1e-12 Psi~_k h_t e^{r^2/4t})
};

DecompositionReport decomposition_check(const KernelParams& P, const MultiIndex& J, const Real& t,
                                        const GroupPoint& g, const QuadratureConfig& cfg = {});

struct SweepReport {
  std::vector<Real> r;
  std::vector<Real> value;
  Real sup = 0;
};

// |X_j^{2k+1}(r^{2l})| / r along a ray, r log-spaced in [1e-3, 1].
SweepReport odd_power_check(const HTypeGroup& G, int j, int k, int l, int points = 24);

struct RemarkWitnessRow {
  Real r, t;
  Real xj_r2;             // |X_l^2 X_m (r^2)|
  Real ratio;             // |X_J h_t| / (Psi~_3 h_t)
  Real psi_over_psitilde;  // Psi_3 / Psi~_3
};

struct RemarkWitness {
  int l = 0, m = 0;
  MultiIndex J;
  std::vector<RemarkWitnessRow> rows;
  Real xj_r2_min = 0, xj_r2_max = 0;  // over the r <= 1 sweep
  Real ratio_floor = 0;               // min ratio over rows
};

// J = (l, l, m) with l = 1 and m = mu + 1 at generic points; t_of_r = sqrt(r) at
// r in radii.  Throws NotApplicable when mu = 0.  X_l^2 X_m cosh r vanishes
// identically (it is a multiple of (J_u e_l, e_l) = 0), so |X_J(r^2)| ~ r here;
// paired = true uses J = (l, l', m) with e_l' the largest component of
// J_{u_1} e_l, for which |X_J(r^2)| stays near 1.
RemarkWitness remark_nor_witness(const KernelParams& P, const std::vector<Real>& radii,
                                 const QuadratureConfig& cfg = {}, bool paired = false);

// sum_{l=p+1}^{j} beta_l(p, j) in exact rationals.
mpq_class beta_cancellation_sum(int p, int j);

// M_k = k! sum_j 1/j! sum_{m_1+..+m_j=k} prod c_{m_i}/m_i!, with
// c_m = (-1)^{m-1}(m-1)! (corrected) or (-1)^m (m-1)! (literal).
mpq_class faa_di_bruno_M(int k, bool literal_sign = false);

}  // namespace heatdr

#endif
