#include "heatdr/heat_kernel.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "heatdr/error.hpp"
#include "heatdr/hyp_eval.hpp"
#include "heatdr/radial_symbolics.hpp"

namespace heatdr {

namespace detail {

using HypTable = std::shared_ptr<const std::vector<CompiledHyp>>;

struct KernelTables {
  int p = 0;   // mu / 2
  int q0 = 0;  // nu / 2 (even nu) or (nu + 1) / 2 (odd nu)
  int mu = 0, nu = 0;
  std::mutex lock;
  std::map<int, HypTable> gauss;                 // a_i of gaussian_shift(p, q0 + j)
  std::map<int, HypTable> fjk;                   // f_{j,k}, j = 1..k
  std::map<std::pair<int, int>, HypTable> tops;  // coefficients of d^k o (-rad L)^m
  HypTable drift;

  static HypTable compile(const std::vector<HypExpr>& v) {
    auto out = std::make_shared<std::vector<CompiledHyp>>();
    out->reserve(v.size());
    for (const auto& e : v) out->emplace_back(e);
    return out;
  }

  HypTable gaussian(int j) {
    std::lock_guard<std::mutex> g(lock);
    auto& slot = gauss[j];
    if (!slot) slot = compile(gaussian_shift(p, q0 + j).a);
    return slot;
  }
  HypTable expansion(int k) {
    std::lock_guard<std::mutex> g(lock);
    auto& slot = fjk[k];
    if (!slot) slot = compile(radial_expansion(k).f);
    return slot;
  }
  HypTable time_operator(int m, int k) {
    std::lock_guard<std::mutex> g(lock);
    auto& slot = tops[{m, k}];
    if (!slot) {
      const RadialOperator D = derivative_operator(k);
      slot = compile(m == 0 ? D.coeff : compose(D, radial_laplacian(mu, nu, m).op).coeff);
    }
    return slot;
  }
  HypTable drift_table() {
    std::lock_guard<std::mutex> g(lock);
    if (!drift) drift = compile({radial_laplacian_drift(mu, nu)});
    return drift;
  }
};

}  // namespace detail

namespace {

void check_tr(const Real& t, const Real& r) {
  if (!(t > 0)) fail(Errc::BadParameter, "t must be positive");
  if (!(r >= 0)) fail(Errc::BadParameter, "r must be nonnegative");
}

// Factors P_m, m = 0..M, with d_t^m E = E P_m for E = t^{-1/2-i} e^{-Q^2 t/4 - s^2/4t}.
// P_m is a polynomial in x = 1/t; psi' = -Q^2/4 - (1/2 + i) x + (s^2/4) x^2.
void time_factors(int i, int M, const Real& x, const Real& Q2over4, const Real& s2over4, Real* out) {
  std::vector<Real> poly{Real(1)};
  const Real c1 = -(Real(1) / 2 + i);
  for (int m = 0;; ++m) {
    Real v = 0;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) v = v * x + *it;
    out[m] = v;
    if (m == M) break;
    std::vector<Real> next(poly.size() + 2, Real(0));
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k + 1] -= Real(static_cast<int>(k)) * poly[k];
      next[k] -= Q2over4 * poly[k];
      next[k + 1] += c1 * poly[k];
      next[k + 2] += s2over4 * poly[k];
    }
    poly = std::move(next);
  }
}

// sum_i a_i(s) t^{-i} P_{i,m}(t, s) into out[m], m = 0..M.
void gaussian_sum(const std::vector<CompiledHyp>& a, const HypPoint& hp, int M, const Real& x,
                  const Real& Q2over4, Real* out) {
  for (int m = 0; m <= M; ++m) out[m] = 0;
  std::vector<Real> P(M + 1);
  const Real s2over4 = hp.r * hp.r / 4;
  Real xi = 1;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    xi *= x;
    const Real ai = a[i - 1](hp);
    if (ai == 0) continue;
    time_factors(static_cast<int>(i), M, x, Q2over4, s2over4, P.data());
    for (int m = 0; m <= M; ++m) out[m] += ai * xi * P[m];
  }
}

Real tail_length(const QuadratureConfig& cfg) { return -log(effective_rel_tol(cfg)) + 40; }

}  // namespace

Real KernelParams::constant(int k) const {
  const int n = group.n();
  return pow(Real(2), -Real(2 * group.mu() + group.nu() + 2 + 2 * k) / 2) * pow(pi_real(), -Real(n) / 2);
}

KernelParams make_kernel_params(const HTypeGroup& G) {
  if (G.mu() % 2 != 0) fail(Errc::OddMu, "mu must be even");
  auto tables = std::make_shared<detail::KernelTables>();
  tables->mu = G.mu();
  tables->nu = G.nu();
  tables->p = G.mu() / 2;
  tables->q0 = (G.nu() + 1) / 2;
  return KernelParams{G, std::move(tables)};
}

std::vector<std::vector<Real>> kernel_channels_scaled(const KernelParams& P, int J, int M, const Real& t,
                                                      const Real& r, const QuadratureConfig& cfg) {
  check_tr(t, r);
  if (J < 0 || M < 0) fail(Errc::BadParameter, "channel orders must be nonnegative");
  check_config(cfg);
  std::vector<detail::HypTable> a(J + 1);
  for (int j = 0; j <= J; ++j) a[j] = P.tables->gaussian(j);
  const Real x = 1 / t;
  const Real Q = P.Q();
  const Real Q2over4 = Q * Q / 4;
  Real prefactor = P.constant(0) * exp(-Q2over4 * t) / sqrt(t);
  std::vector<std::vector<Real>> V(J + 1, std::vector<Real>(M + 1));

  if (P.nu() % 2 == 0) {
    const HypPoint hp(r);
    for (int j = 0; j <= J; ++j) {
      gaussian_sum(*a[j], hp, M, x, Q2over4, V[j].data());
      for (auto& v : V[j]) v *= prefactor;
    }
    return V;
  }

  // s = r + v^2:  z_r(s) ds = sinh(s) 2v / sqrt(2 sinh(r + v^2/2) sinh(v^2/2)) dv.
  prefactor /= sqrt(pi_real());
  const int dim = (J + 1) * (M + 1);
  const Real L = tail_length(cfg);
  const Real s_max = sqrt(r * r + 4 * t * L);
  const Real v_max = sqrt(s_max - r);
  std::vector<Real> buf(M + 1);
  auto integrand = [&](const Real& v, Real* out) {
    const Real v2 = v * v;
    const Real s = r + v2;
    const Real w = sinh(s) * 2 * v / sqrt(2 * sinh(r + v2 / 2) * sinh(v2 / 2)) *
                   exp(-v2 * (2 * r + v2) * x / 4);
    const HypPoint hp(s);
    for (int j = 0; j <= J; ++j) {
      gaussian_sum(*a[j], hp, M, x, Q2over4, buf.data());
      for (int m = 0; m <= M; ++m) out[j * (M + 1) + m] = w * buf[m];
    }
  };
  const auto res = integrate(integrand, dim, Real(0), v_max, cfg, 6);
  for (int j = 0; j <= J; ++j)
    for (int m = 0; m <= M; ++m) V[j][m] = prefactor * res.value[j * (M + 1) + m];
  return V;
}

Real eval_even(const KernelParams& P, const Real& t, const Real& r) {
  if (P.nu() % 2 != 0) fail(Errc::WrongParity, "eval_even needs even nu");
  return kernel_channels_scaled(P, 0, 0, t, r)[0][0] * exp(-r * r / (4 * t));
}

Real eval_odd(const KernelParams& P, const Real& t, const Real& r, const QuadratureConfig& cfg) {
  if (P.nu() % 2 == 0) fail(Errc::WrongParity, "eval_odd needs odd nu");
  return kernel_channels_scaled(P, 0, 0, t, r, cfg)[0][0] * exp(-r * r / (4 * t));
}

Real eval_kernel(const KernelParams& P, const Real& t, const Real& r, const QuadratureConfig& cfg) {
  return kernel_channels_scaled(P, 0, 0, t, r, cfg)[0][0] * exp(-r * r / (4 * t));
}

std::vector<Real> radial_jet_scaled(const KernelParams& P, int K, int m, const Real& t, const Real& r,
                                    const QuadratureConfig& cfg) {
  if (K < 0) fail(Errc::BadParameter, "negative derivative order");
  if (K > 0 && !(r > 0)) fail(Errc::BadParameter, "radial derivatives need r > 0");
  const auto V = kernel_channels_scaled(P, K, m, t, r, cfg);
  std::vector<Real> d(K + 1, Real(0));
  d[0] = V[0][m];
  const HypPoint hp(r);
  for (int k = 1; k <= K; ++k) {
    const auto f = P.tables->expansion(k);
    for (int j = 1; j <= k; ++j) d[k] += (*f)[j - 1](hp) * (j % 2 ? -V[j][m] : V[j][m]);
  }
  return d;
}

std::vector<Real> radial_jet(const KernelParams& P, int K, const Real& t, const Real& r,
                             const QuadratureConfig& cfg) {
  auto d = radial_jet_scaled(P, K, 0, t, r, cfg);
  const Real g = exp(-r * r / (4 * t));
  for (auto& v : d) v *= g;
  return d;
}

Real radial_derivative(const KernelParams& P, int k, const Real& t, const Real& r, const QuadratureConfig& cfg) {
  return radial_jet(P, k, t, r, cfg)[k];
}

namespace {

// d_t^m d_r^k h * e^{r^2/4t} for k = 0..K from one radial jet of order 2m + K.
std::vector<Real> time_jet_scaled(const KernelParams& P, int m, int K, const Real& t, const Real& r,
                                  const QuadratureConfig& cfg) {
  if (m < 0 || K < 0) fail(Errc::BadParameter, "negative derivative order");
  if (m == 0) return radial_jet_scaled(P, K, 0, t, r, cfg);
  const auto jet = radial_jet_scaled(P, 2 * m + K, 0, t, r, cfg);
  const HypPoint hp(r);
  std::vector<Real> out(K + 1, Real(0));
  for (int k = 0; k <= K; ++k) {
    const auto op = P.tables->time_operator(m, k);
    for (std::size_t l = 0; l < op->size(); ++l)
      if (!(*op)[l].is_zero()) out[k] += (*op)[l](hp) * jet[l];
  }
  return out;
}

}  // namespace

Real time_derivative_scaled(const KernelParams& P, int m, int k, const Real& t, const Real& r,
                            const QuadratureConfig& cfg) {
  if (!(r > 0)) fail(Errc::BadParameter, "time_derivative needs r > 0");
  return time_jet_scaled(P, m, k, t, r, cfg)[k];
}

Real time_derivative(const KernelParams& P, int m, int k, const Real& t, const Real& r,
                     const QuadratureConfig& cfg) {
  return time_derivative_scaled(P, m, k, t, r, cfg) * exp(-r * r / (4 * t));
}

Real time_derivative_direct(const KernelParams& P, int m, int k, const Real& t, const Real& r,
                            const QuadratureConfig& cfg) {
  if (m < 0) fail(Errc::BadParameter, "negative derivative order");
  return radial_jet_scaled(P, k, m, t, r, cfg)[k] * exp(-r * r / (4 * t));
}

Real radial_laplacian_scaled(const KernelParams& P, const Real& t, const Real& r, const QuadratureConfig& cfg) {
  if (!(r > 0)) fail(Errc::BadParameter, "rad(L) is evaluated at r > 0");
  const auto d = radial_jet_scaled(P, 2, 0, t, r, cfg);
  const Real drift = (*P.tables->drift_table())[0](r);
  return -d[2] + drift * d[1];
}

Real space_derivative_scaled(const KernelParams& P, int m, const MultiIndex& J, const Real& t,
                             const GroupPoint& g, const QuadratureConfig& cfg) {
  const HTypeGroup& G = P.group;
  check_multi_index(G, J);
  check_point(G, g);
  const Real r0 = distance(G, g);
  if (r0 < kMinRadius) fail(Errc::SingularPoint, "space derivatives are offered for r > 1e-3");
  const auto profile = time_jet_scaled(P, m, static_cast<int>(J.size()), t, r0, cfg);
  return apply_fields(G, J, [&](const JetPoint& p) { return radial_jet(p, profile); }, g);
}

Real space_derivative(const KernelParams& P, const MultiIndex& J, const Real& t, const GroupPoint& g,
                      const QuadratureConfig& cfg) {
  const Real r0 = distance(P.group, g);
  return space_derivative_scaled(P, 0, J, t, g, cfg) * exp(-r0 * r0 / (4 * t));
}

Real mass_functional(const KernelParams& P, const Real& t, const QuadratureConfig& cfg) {
  if (!(t > 0)) fail(Errc::BadParameter, "t must be positive");
  check_config(cfg);
  // The integrand behaves like e^{-(r - Qt)^2/4t}.
  const Real L = tail_length(cfg);
  const Real r_max = P.Q() * t + 2 * sqrt(t * (L + 10)) + 2;
  QuadratureConfig inner = cfg;
  inner.rel_tol = effective_rel_tol(cfg) / 100;
  const int a = P.mu() + P.nu(), b = P.nu();
  auto f = [&](const Real& r) {
    const Real h = kernel_channels_scaled(P, 0, 0, t, r, inner)[0][0];
    return h * exp(-r * r / (4 * t)) * pow(sinh(r / 2), a) * pow(cosh(r / 2), b);
  };
  return integrate_scalar(f, Real(0), r_max, cfg, 8);
}

Real distinguished_kernel(const KernelParams& P, const Real& t, const GroupPoint& g, const QuadratureConfig& cfg) {
  check_point(P.group, g);
  const Real Q = P.Q();
  return pow(g.a, -Q / 2) * exp(Q * Q * t / 4) * eval_kernel(P, t, distance(P.group, g), cfg);
}

Real distinguished_derivative_scaled(const KernelParams& P, int m, const MultiIndex& J, const Real& t,
                                     const GroupPoint& g, const QuadratureConfig& cfg) {
  const HTypeGroup& G = P.group;
  check_multi_index(G, J);
  check_point(G, g);
  if (m < 0) fail(Errc::BadParameter, "negative derivative order");
  const Real r0 = distance(G, g);
  if (r0 < kMinRadius) fail(Errc::SingularPoint, "space derivatives are offered for r > 1e-3");
  const Real Q = P.Q();
  const Real q2 = Q * Q / 4;
  // d_t^m (e^{q2 t} h_t) = e^{q2 t} sum_i C(m, i) q2^{m-i} d_t^i h_t
  Real total = 0;
  Real binom = 1;
  for (int i = 0; i <= m; ++i) {
    const auto profile = time_jet_scaled(P, i, static_cast<int>(J.size()), t, r0, cfg);
    const Real v = apply_fields(
        G, J, [&](const JetPoint& p) { return pow(p.a, -Q / 2) * radial_jet(p, profile); }, g);
    total += binom * pow(q2, m - i) * v;
    binom = binom * (m - i) / (i + 1);
  }
  return exp(q2 * t) * total;
}

}  // namespace heatdr
