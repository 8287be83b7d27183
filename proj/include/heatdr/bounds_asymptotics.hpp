#ifndef HEATDR_BOUNDS_ASYMPTOTICS_HPP
#define HEATDR_BOUNDS_ASYMPTOTICS_HPP

#include <vector>

#include "heatdr/grid.hpp"
#include "heatdr/heat_kernel.hpp"

namespace heatdr {

// Envelopes.  A(r,t) = 1 + 1/sqrt(t) + r/t.
Real psi(int k, const Real& r, const Real& t);
Real psi_tilde(int k, const Real& r, const Real& t);
// Theta_{p,q}(r); p, q may be half-integers.
Real theta(const Real& p, const Real& q, const Real& r);

// Alternative forms in terms of B = 1 + (1+r)/t and max[1, r^2 B].
Real envelope_base_alt(const Real& r, const Real& t);  // equivalent of A
Real psi_alt(int k, const Real& r, const Real& t);
Real psi_tilde_alt(int k, const Real& r, const Real& t);

// Ratio A / envelope_base_alt over the grid.
BoundReport envelope_equivalence_check(const GridSpec& grid);
// Ratios psi/psi_alt (tilde = false) or psi_tilde/psi_tilde_alt over the grid.
BoundReport envelope_form_check(int k, bool tilde, const GridSpec& grid);

// |d_r^k h_t| / (Psi_k h_t), one report per k = 1..K from a shared jet.
std::vector<BoundReport> upper_bound_reports(const KernelParams& P, int K, const GridSpec& grid,
                                             const QuadratureConfig& cfg = {});
BoundReport upper_bound_report(const KernelParams& P, int k, const GridSpec& grid,
                               const QuadratureConfig& cfg = {});

// |d_t^m X_J h_t| / (Psi~_{2m+|J|} h_t) at generic_point(r), or with
// distinguished = true the same ratio for h^Delta_t (denominator Psi~ h^Delta_t).
BoundReport space_bound_report(const KernelParams& P, int m, const MultiIndex& J, const GridSpec& grid,
                               bool distinguished = false, const QuadratureConfig& cfg = {});
// m = 0 reports for several J from one radial jet per grid point.
std::vector<BoundReport> space_bound_reports(const KernelParams& P, const std::vector<MultiIndex>& Js,
                                             const GridSpec& grid, const QuadratureConfig& cfg = {});

enum class SharpnessBranch { LargeR, SmallR };

struct SharpnessResult {
  BoundReport base;      // region for the accepted gamma
  BoundReport extended;  // region pushed further towards its limit
  Real gamma = 0;        // accepted gamma (doubled while the floor degrades)
  bool degraded = false; // true if no tried gamma gave a stable floor
};

// inf of |d_r^k h_t| / (Psi_k h_t) over the region (1+r)/t >= gamma with
// r > 1 (LargeR) or r^alpha (1 + (1+r)/t) < 1 (SmallR).  The floor counts as
// stable when extending the region keeps inf >= half the base inf.
SharpnessResult sharpness_report(const KernelParams& P, int k, const Real& alpha, const Real& gamma,
                                 SharpnessBranch branch, const QuadratureConfig& cfg = {});

// Leading-order expressions; the scaled variants omit the factor e^{-r^2/4t}.
Real asymptotic_radial_scaled(const KernelParams& P, int k, const Real& t, const Real& r);
Real asymptotic_radial(const KernelParams& P, int k, const Real& t, const Real& r);
Real asymptotic_fixed_t_scaled(const KernelParams& P, int m, int k, const Real& t, const Real& r);
Real asymptotic_fixed_t(const KernelParams& P, int m, int k, const Real& t, const Real& r);

struct AsymptoticRow {
  Real r, t, exact, asymptotic, ratio;
};
// d_r^k h_t / asymptotic_radial along the listed radii at fixed t.
std::vector<AsymptoticRow> asymptotic_radial_rows(const KernelParams& P, int k, const Real& t,
                                                  const std::vector<Real>& radii, const QuadratureConfig& cfg = {});
// d_t^m d_r^k h_t / asymptotic_fixed_t.
std::vector<AsymptoticRow> asymptotic_fixed_t_rows(const KernelParams& P, int m, int k, const Real& t,
                                                   const std::vector<Real>& radii, const QuadratureConfig& cfg = {});

struct LaplaceCheck {
  Real integral_scaled;  // int_r^inf z_r R_{p,q} e^{-s^2/4t} ds * e^{r^2/4t}
  Real formula_scaled;   // sqrt(pi) e^{-(q - 1/2 + p/2) r} (r/t)^{p+q-1/2}
  Real ratio;
};
LaplaceCheck laplace_method_crosscheck(int p, int q, const Real& t, const Real& r, const QuadratureConfig& cfg = {});

// int_0^inf (e^s - 1)^{-1/2} e^{-s^2/4t - rs/2t - (q + p/2 - 1)s} s^j ds divided by
// Gamma(j + 1/2) (2t/r)^{j+1/2}.
Real laplace_leading_term_ratio(int p, int q, int j, const Real& t, const Real& r,
                                const QuadratureConfig& cfg = {});

// |d_t h_t| / ((|r^2/4t^2 - Q^2/4| + 1/t) h_t) over the grid plus the points r = Q t
// for t in extra_diagonal_t.
BoundReport first_time_derivative_bound(const KernelParams& P, const GridSpec& grid,
                                        const std::vector<Real>& extra_diagonal_t,
                                        const QuadratureConfig& cfg = {});

// V_t = -(1/4)(h'/h)^2 - (1/2) rad(L)h / h.
Real ou_potential(const KernelParams& P, const Real& t, const Real& r, const QuadratureConfig& cfg = {});

}  // namespace heatdr

#endif
