#ifndef HEATDR_HEAT_KERNEL_HPP
#define HEATDR_HEAT_KERNEL_HPP

#include <memory>
#include <vector>

#include "heatdr/distance_calculus.hpp"
#include "heatdr/group_model.hpp"
#include "heatdr/quadrature.hpp"

namespace heatdr {

namespace detail {
struct KernelTables;
}

// Heat kernel data for one group.  Symbol tables are built on first use and
// shared between copies; all evaluations are const and thread-safe.
struct KernelParams {
  HTypeGroup group;
  std::shared_ptr<detail::KernelTables> tables;

  int mu() const { return group.mu(); }
  int nu() const { return group.nu(); }
  Real Q() const { return group.Q(); }
  // c_k = 2^{-mu - nu/2 - 1 - k} pi^{-n/2}
  Real constant(int k) const;
};

KernelParams make_kernel_params(const HTypeGroup& G);

// Channel values  d_t^m ((-1)^j R^j h_t)(r) * e^{r^2/4t}  for j = 0..J, m = 0..M,
// indexed [j][m].  Even nu: closed form through the a_i tables; odd nu: the
// integral over s = r + v^2.
std::vector<std::vector<Real>> kernel_channels_scaled(const KernelParams& P, int J, int M, const Real& t,
                                                      const Real& r, const QuadratureConfig& cfg = {});

Real eval_even(const KernelParams& P, const Real& t, const Real& r);
Real eval_odd(const KernelParams& P, const Real& t, const Real& r, const QuadratureConfig& cfg = {});
Real eval_kernel(const KernelParams& P, const Real& t, const Real& r, const QuadratureConfig& cfg = {});

// d_t^m d_r^k h_t(r) for k = 0..K, each multiplied by e^{r^2/4t}, computed as
// sum_j f_{j,k} R^j d_t^m h_t.  M = 0 gives the radial jet.
std::vector<Real> radial_jet_scaled(const KernelParams& P, int K, int m, const Real& t, const Real& r,
                                    const QuadratureConfig& cfg = {});
std::vector<Real> radial_jet(const KernelParams& P, int K, const Real& t, const Real& r,
                             const QuadratureConfig& cfg = {});
Real radial_derivative(const KernelParams& P, int k, const Real& t, const Real& r,
                       const QuadratureConfig& cfg = {});

// d_t^m d_r^k h_t(r) through the operator d^k o (-rad L)^m applied to radial
// derivatives of h_t; scaled variant multiplies by e^{r^2/4t}.
Real time_derivative_scaled(const KernelParams& P, int m, int k, const Real& t, const Real& r,
                            const QuadratureConfig& cfg = {});
Real time_derivative(const KernelParams& P, int m, int k, const Real& t, const Real& r,
                     const QuadratureConfig& cfg = {});
// Same quantity by differentiating the kernel representation in t.
Real time_derivative_direct(const KernelParams& P, int m, int k, const Real& t, const Real& r,
                            const QuadratureConfig& cfg = {});

// rad(L) h_t(r) = -h'' + drift h', scaled by e^{r^2/4t}.
Real radial_laplacian_scaled(const KernelParams& P, const Real& t, const Real& r,
                             const QuadratureConfig& cfg = {});

// d_t^m X_J h_t(g); the scaled variant multiplies by e^{r(g)^2/4t}.
Real space_derivative_scaled(const KernelParams& P, int m, const MultiIndex& J, const Real& t,
                             const GroupPoint& g, const QuadratureConfig& cfg = {});
Real space_derivative(const KernelParams& P, const MultiIndex& J, const Real& t, const GroupPoint& g,
                      const QuadratureConfig& cfg = {});

// M(t) = int_0^inf h_t(r) sinh^{mu+nu}(r/2) cosh^nu(r/2) dr.
Real mass_functional(const KernelParams& P, const Real& t, const QuadratureConfig& cfg = {});

// h^Delta_t(g) = a^{-Q/2} e^{Q^2 t/4} h_t(r(g)).
Real distinguished_kernel(const KernelParams& P, const Real& t, const GroupPoint& g,
                          const QuadratureConfig& cfg = {});
// d_t^m X_J h^Delta_t(g), scaled by e^{r(g)^2/4t}.
Real distinguished_derivative_scaled(const KernelParams& P, int m, const MultiIndex& J, const Real& t,
                                     const GroupPoint& g, const QuadratureConfig& cfg = {});

}  // namespace heatdr

#endif
