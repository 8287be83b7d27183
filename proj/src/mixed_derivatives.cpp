#include "heatdr/mixed_derivatives.hpp"

#include <algorithm>

#include "heatdr/bounds_asymptotics.hpp"
#include "heatdr/error.hpp"
#include "heatdr/grid.hpp"

namespace heatdr {

namespace {

Real factorial(int n) {
  Real f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

mpz_class factorial_z(int n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

Real rel_dev(const Real& a, const Real& b) {
  const Real d = std::max(abs(a), abs(b));
  return d == 0 ? Real(0) : abs(a - b) / d;
}

}  // namespace

Real phi_from_jet(int b, int q, const Real& r, const std::vector<Real>& d) {
  if (b < 0 || q < 0) fail(Errc::BadParameter, "Phi indices must be nonnegative");
  if (b == 0) return d.at(2 * q + 1);
  Real s = 0, term = 1;  // term = (-r)^l / l!
  for (int l = 0; l <= 2 * b - 1; ++l) {
    s += term * d.at(2 * q + l + 1);
    term *= -r / (l + 1);
  }
  return s;
}

Real phi(const KernelParams& P, int b, int q, const Real& t, const Real& r, const QuadratureConfig& cfg) {
  const int order = b == 0 ? 2 * q + 1 : 2 * q + 2 * b;
  return phi_from_jet(b, q, r, radial_jet(P, order, t, r, cfg));
}

Real phi_by_integral(const KernelParams& P, int b, int q, const Real& t, const Real& r, const QuadratureConfig& cfg) {
  if (b < 1) fail(Errc::BadParameter, "the integral form needs b >= 1");
  const int k = 2 * b + 2 * q + 1;
  auto f = [&](const Real& s) { return pow(s, 2 * b - 1) * radial_derivative(P, k, t, s, cfg); };
  return -integrate_scalar(f, Real(0), r, cfg, 2) / factorial(2 * b - 1);
}

UpsilonXiTable upsilon_xi_table(const HTypeGroup& G, const MultiIndex& J, const GroupPoint& g) {
  const int k = static_cast<int>(J.size());
  if (k < 1) fail(Errc::BadParameter, "Upsilon/Xi tables need |J| >= 1");
  UpsilonXiTable T;
  T.J = J;
  T.sigma = sigma_table(G, J, g);
  const Real r = T.sigma.r;
  T.r = r;
  const int top = (k - 1) / 2;
  T.upsilon.assign(top + 1, Real(0));
  for (int j = 0; j < top; ++j) {
    Real u = T.sigma(2 * j + 1);
    for (int l = 0; l < j; ++l) u -= pow(r, 2 * j - 2 * l) / factorial(2 * j - 2 * l) * T.upsilon[l];
    T.upsilon[j] = u;
  }
  T.upsilon[top] = T.sigma(2 * top + 1);
  T.xi.assign(top + 1, Real(0));
  for (int j = 1; j <= top; ++j) {
    Real x = T.sigma(2 * j);
    for (int l = 0; l < j; ++l) x += pow(r, 2 * j - 2 * l - 1) / factorial(2 * j - 2 * l - 1) * T.upsilon[l];
    T.xi[j] = x;
  }
  // Xi_{2j} = X_J(r^{2j})/(2j)! - sum_{l<j} r^{2j-2l}/(2j-2l)! Xi_{2l}
  for (int j = 1; j <= top; ++j) {
    Real alt = r_power_derivative(G, J, g, j) / factorial(2 * j);
    for (int l = 1; l < j; ++l) alt -= pow(r, 2 * j - 2 * l) / factorial(2 * j - 2 * l) * T.xi[l];
    T.xi_residual = std::max(T.xi_residual, rel_dev(T.xi[j], alt));
  }
  for (int l = 0; l < top; ++l) {
    Real s = 0;
    for (int p = 0; p <= l; ++p) s += pow(r, 2 * l - 2 * p) / factorial(2 * l - 2 * p) * T.upsilon[p];
    T.telescoping_residual = std::max(T.telescoping_residual, rel_dev(T.sigma(2 * l + 1), s));
  }
  return T;
}

DecompositionReport decomposition_check(const KernelParams& P, const MultiIndex& J, const Real& t,
                                        const GroupPoint& g, const QuadratureConfig& cfg) {
  const int k = static_cast<int>(J.size());
  if (k < 1 || k > 5) fail(Errc::BadParameter, "decomposition_check needs 1 <= |J| <= 5");
  const UpsilonXiTable T = upsilon_xi_table(P.group, J, g);
  const Real r = T.r;
  const auto d = radial_jet_scaled(P, k, 0, t, r, cfg);
  Real rhs = 0;
  if (k % 2 == 1) {
    for (int j = 0; j <= (k - 1) / 2; ++j) rhs += phi_from_jet((k - 2 * j - 1) / 2, j, r, d) * T.Upsilon(2 * j + 1);
    for (int j = 1; j <= (k - 1) / 2; ++j) rhs += d[2 * j] * T.Xi(2 * j);
  } else {
    for (int j = 0; j <= k / 2 - 1; ++j) rhs += phi_from_jet((k - 2 * j - 2) / 2, j, r, d) * T.Upsilon(2 * j + 1);
    for (int j = 1; j <= k / 2 - 1; ++j) rhs += d[2 * j] * T.Xi(2 * j);
    rhs += d[k] * T.sigma(k);
  }
  DecompositionReport rep;
  rep.lhs = space_derivative_scaled(P, 0, J, t, g, cfg);
  rep.rhs = rhs;
  const Real floor = Real("1e-12") * psi_tilde(k, r, t) * d[0];
  rep.residual = abs(rep.lhs - rep.rhs) / std::max(abs(rep.lhs), floor);
  return rep;
}

SweepReport odd_power_check(const HTypeGroup& G, int j, int k, int l, int points) {
  if (j < 0 || j >= G.n()) fail(Errc::BadParameter, "field index out of range");
  if (k < 0 || l < 1) fail(Errc::BadParameter, "odd_power_check needs k >= 0, l >= 1");
  const MultiIndex J(2 * k + 1, j);
  SweepReport rep;
  rep.r = Axis{Real("1e-3"), Real(1), points, true}.values();
  rep.value.resize(rep.r.size());
  for (std::size_t i = 0; i < rep.r.size(); ++i) {
    const GroupPoint g = generic_point(G, rep.r[i]);
    rep.value[i] = abs(r_power_derivative(G, J, g, l)) / rep.r[i];
    rep.sup = std::max(rep.sup, rep.value[i]);
  }
  return rep;
}

RemarkWitness remark_nor_witness(const KernelParams& P, const std::vector<Real>& radii, const QuadratureConfig& cfg,
                                 bool paired) {
  const HTypeGroup& G = P.group;
  if (G.mu() < 1) fail(Errc::NotApplicable, "the witness needs mu >= 1");
  RemarkWitness W;
  W.l = 1;
  W.m = G.mu() + 1;
  int partner = W.l;
  if (paired) {
    Eigen::Index row = 0;
    G.J()[0].col(W.l - 1).cwiseAbs().maxCoeff(&row);
    partner = static_cast<int>(row) + 1;
  }
  W.J = {W.l, partner, W.m};
  const MultiIndex& J = W.J;
  bool first = true;
  for (const auto& r : Axis{Real("1e-3"), Real(1), 24, true}.values()) {
    const Real v = abs(r_power_derivative(G, J, generic_point(G, r), 1));
    W.xj_r2_min = first ? v : std::min(W.xj_r2_min, v);
    W.xj_r2_max = first ? v : std::max(W.xj_r2_max, v);
    first = false;
  }
  W.rows.resize(radii.size());
  parallel_for(radii.size(), [&](std::size_t i) {
    const Real r = radii[i], t = sqrt(r);
    const GroupPoint g = generic_point(G, r);
    const Real h = kernel_channels_scaled(P, 0, 0, t, r, cfg)[0][0];
    const Real x = abs(space_derivative_scaled(P, 0, J, t, g, cfg));
    W.rows[i] = {r, t, abs(r_power_derivative(G, J, g, 1)), x / (psi_tilde(3, r, t) * h),
                 psi(3, r, t) / psi_tilde(3, r, t)};
  });
  W.ratio_floor = W.rows.empty() ? Real(0) : W.rows[0].ratio;
  for (const auto& row : W.rows) W.ratio_floor = std::min(W.ratio_floor, row.ratio);
  return W;
}

mpq_class beta_cancellation_sum(int p, int j) {
  if (p < 0 || j <= p) fail(Errc::BadParameter, "beta sums need 0 <= p < j");
  mpq_class s = 0;
  for (int l = p + 1; l <= j; ++l) {
    s += mpq_class(1, 1) / mpq_class(factorial_z(2 * j - 2 * l) * factorial_z(2 * l - 2 * p - 1));
    s -= mpq_class(1, 1) / mpq_class(factorial_z(2 * j - 2 * l + 1) * factorial_z(2 * l - 2 * p - 2));
  }
  return s;
}

mpq_class faa_di_bruno_M(int k, bool literal_sign) {
  if (k < 1) fail(Errc::BadParameter, "M_k needs k >= 1");
  // w_m = c_m / m! = (-1)^{m-1} / m, or (-1)^m / m for the literal sign.
  std::vector<mpq_class> w(k + 1);
  for (int m = 1; m <= k; ++m) w[m] = mpq_class((m % 2 == 1) != literal_sign ? 1 : -1, m);
  // E[s] over compositions into the current number of parts.
  std::vector<mpq_class> E(k + 1, mpq_class(0));
  E[0] = 1;
  mpq_class total = 0;
  mpz_class jfact = 1;
  for (int parts = 1; parts <= k; ++parts) {
    std::vector<mpq_class> next(k + 1, mpq_class(0));
    for (int s = 1; s <= k; ++s)
      for (int m = 1; m <= s; ++m) next[s] += w[m] * E[s - m];
    E = std::move(next);
    jfact *= parts;
    total += E[k] / mpq_class(jfact);
  }
  total *= mpq_class(factorial_z(k));
  total.canonicalize();
  return total;
}

}  // namespace heatdr
