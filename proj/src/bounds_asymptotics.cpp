#include "heatdr/bounds_asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "heatdr/error.hpp"
#include "heatdr/radial_symbolics.hpp"

namespace heatdr {

namespace {

void check_rt(const Real& r, const Real& t) {
  if (!(r > 0) || !(t > 0)) fail(Errc::BadParameter, "envelopes need r, t > 0");
}

Real base_A(const Real& r, const Real& t) { return 1 + 1 / sqrt(t) + r / t; }
Real base_B(const Real& r, const Real& t) { return 1 + (1 + r) / t; }

struct GridPoint {
  Real r, t;
};

std::vector<GridPoint> grid_points(const GridSpec& g) {
  check_grid(g);
  std::vector<GridPoint> pts;
  for (const auto& t : g.t.values())
    for (const auto& r : g.r.values()) pts.push_back({r, t});
  return pts;
}

Real scaled_gauss_exponent(const Real& r, const Real& t) { return -r * r / (4 * t); }

}  // namespace

Real psi(int k, const Real& r, const Real& t) {
  check_rt(r, t);
  if (k < 0) fail(Errc::BadParameter, "negative order");
  const Real A = base_A(r, t);
  if (r > 1 || k % 2 == 0) return pow(A, k);
  return r * pow(A, k - 1) * (1 + 1 / t);
}

Real psi_tilde(int k, const Real& r, const Real& t) {
  check_rt(r, t);
  if (k < 0) fail(Errc::BadParameter, "negative order");
  const Real A = base_A(r, t);
  if (r > 1 || k % 2 == 0) return pow(A, k);
  return pow(A, k - 1) * (1 + r / t);
}

Real theta(const Real& p, const Real& q, const Real& r) {
  if (!(r > 0)) fail(Errc::BadParameter, "Theta needs r > 0");
  // e^{r/2} / (2 sinh(r/2)) = -1/expm1(-r),  e^r / sinh r = -2/expm1(-2r)
  const Real f1 = r / (1 + r) * (-1 / expm1(-r));
  const Real f2 = r / (1 + 2 * r) * (-2 / expm1(-2 * r));
  return pow(f1, p) * pow(f2, q);
}

Real envelope_base_alt(const Real& r, const Real& t) {
  check_rt(r, t);
  const Real B = base_B(r, t);
  if (r > 1) return B;
  return sqrt(std::max(Real(1), r * r * B)) * sqrt(B);
}

Real psi_alt(int k, const Real& r, const Real& t) {
  check_rt(r, t);
  const Real B = base_B(r, t);
  if (r > 1) return pow(B, k);
  const Real M = std::max(Real(1), r * r * B);
  if (k % 2 == 1) return r * pow(M, Real(k - 1) / 2) * pow(B, Real(k + 1) / 2);
  return pow(M, Real(k) / 2) * pow(B, Real(k) / 2);
}

Real psi_tilde_alt(int k, const Real& r, const Real& t) {
  check_rt(r, t);
  const Real B = base_B(r, t);
  if (r > 1) return pow(B, k);
  const Real M = std::max(Real(1), r * r * B);
  if (k % 2 == 1) return pow(M, Real(k - 1) / 2) * pow(B, Real(k - 1) / 2) * (r * B + 1);
  return pow(M, Real(k) / 2) * pow(B, Real(k) / 2);
}

BoundReport envelope_equivalence_check(const GridSpec& grid) {
  BoundReport rep;
  rep.name = "envelope_equivalence";
  for (const auto& p : grid_points(grid)) {
    const Real lhs = base_A(p.r, p.t), rhs = envelope_base_alt(p.r, p.t);
    rep.rows.push_back({p.r, p.t, lhs, rhs, lhs / rhs});
  }
  summarize(rep);
  return rep;
}

BoundReport envelope_form_check(int k, bool tilde, const GridSpec& grid) {
  BoundReport rep;
  rep.name = tilde ? "psi_tilde_forms" : "psi_forms";
  for (const auto& p : grid_points(grid)) {
    const Real lhs = tilde ? psi_tilde(k, p.r, p.t) : psi(k, p.r, p.t);
    const Real rhs = tilde ? psi_tilde_alt(k, p.r, p.t) : psi_alt(k, p.r, p.t);
    rep.rows.push_back({p.r, p.t, lhs, rhs, lhs / rhs});
  }
  summarize(rep);
  return rep;
}

std::vector<BoundReport> upper_bound_reports(const KernelParams& P, int K, const GridSpec& grid,
                                             const QuadratureConfig& cfg) {
  if (K < 1 || K > 12) fail(Errc::BadParameter, "upper bounds are offered for 1 <= k <= 12");
  const auto pts = grid_points(grid);
  std::vector<std::vector<Real>> jets(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { jets[i] = radial_jet_scaled(P, K, 0, pts[i].t, pts[i].r, cfg); });
  std::vector<BoundReport> out(K);
  for (int k = 1; k <= K; ++k) {
    auto& rep = out[k - 1];
    rep.name = "upper_bound_k" + std::to_string(k);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Real lhs = abs(jets[i][k]);
      const Real rhs = psi(k, pts[i].r, pts[i].t) * jets[i][0];
      rep.rows.push_back({pts[i].r, pts[i].t, lhs, rhs, lhs / rhs});
    }
    summarize(rep);
  }
  return out;
}

BoundReport upper_bound_report(const KernelParams& P, int k, const GridSpec& grid, const QuadratureConfig& cfg) {
  if (k < 1 || k > 6) fail(Errc::BadParameter, "upper_bound_report: k must be in [1, 6]");
  return upper_bound_reports(P, k, grid, cfg).back();
}

BoundReport space_bound_report(const KernelParams& P, int m, const MultiIndex& J, const GridSpec& grid,
                               bool distinguished, const QuadratureConfig& cfg) {
  check_multi_index(P.group, J);
  const auto pts = grid_points(grid);
  BoundReport rep;
  rep.name = distinguished ? "distinguished_bound" : "space_bound";
  rep.rows.resize(pts.size());
  const int order = 2 * m + static_cast<int>(J.size());
  const Real Q = P.Q();
  parallel_for(pts.size(), [&](std::size_t i) {
    const Real r = pts[i].r, t = pts[i].t;
    const GroupPoint g = generic_point(P.group, r);
    Real lhs, base;
    const Real h = kernel_channels_scaled(P, 0, 0, t, r, cfg)[0][0];
    if (distinguished) {
      lhs = abs(distinguished_derivative_scaled(P, m, J, t, g, cfg));
      base = pow(g.a, -Q / 2) * exp(Q * Q * t / 4) * h;
    } else {
      lhs = abs(space_derivative_scaled(P, m, J, t, g, cfg));
      base = h;
    }
    const Real rhs = psi_tilde(order, r, t) * base;
    rep.rows[i] = {r, t, lhs, rhs, lhs / rhs};
  });
  summarize(rep);
  return rep;
}

std::vector<BoundReport> space_bound_reports(const KernelParams& P, const std::vector<MultiIndex>& Js,
                                             const GridSpec& grid, const QuadratureConfig& cfg) {
  std::size_t K = 0;
  for (const auto& J : Js) {
    check_multi_index(P.group, J);
    K = std::max(K, J.size());
  }
  const auto pts = grid_points(grid);
  std::vector<BoundReport> out(Js.size());
  for (auto& rep : out) {
    rep.name = "space_bound";
    rep.rows.resize(pts.size());
  }
  parallel_for(pts.size(), [&](std::size_t i) {
    const Real r = pts[i].r, t = pts[i].t;
    const GroupPoint g = generic_point(P.group, r);
    const auto profile = radial_jet_scaled(P, static_cast<int>(K), 0, t, distance(P.group, g), cfg);
    for (std::size_t j = 0; j < Js.size(); ++j) {
      const Real lhs = abs(apply_fields(P.group, Js[j], [&](const JetPoint& p) { return radial_jet(p, profile); }, g));
      const Real rhs = psi_tilde(static_cast<int>(Js[j].size()), r, t) * profile[0];
      out[j].rows[i] = {r, t, lhs, rhs, lhs / rhs};
    }
  });
  for (auto& rep : out) summarize(rep);
  return out;
}

namespace {

BoundReport sharpness_region(const KernelParams& P, int k, const Real& alpha, const Real& gamma,
                             SharpnessBranch branch, const GridSpec& grid, const QuadratureConfig& cfg) {
  std::vector<GridPoint> pts;
  for (const auto& p : grid_points(grid)) {
    const Real B = base_B(p.r, p.t);
    if ((1 + p.r) / p.t < gamma) continue;
    if (branch == SharpnessBranch::LargeR ? !(p.r > 1) : !(pow(p.r, alpha) * B < 1)) continue;
    pts.push_back(p);
  }
  BoundReport rep;
  rep.name = "sharpness_k" + std::to_string(k);
  if (pts.empty()) fail(Errc::RegionEmpty, "sharpness region has no grid points");
  rep.rows.resize(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    const auto jet = radial_jet_scaled(P, k, 0, pts[i].t, pts[i].r, cfg);
    const Real lhs = abs(jet[k]);
    const Real rhs = psi(k, pts[i].r, pts[i].t) * jet[0];
    rep.rows[i] = {pts[i].r, pts[i].t, lhs, rhs, lhs / rhs};
  });
  summarize(rep);
  return rep;
}

}  // namespace

SharpnessResult sharpness_report(const KernelParams& P, int k, const Real& alpha, const Real& gamma,
                                 SharpnessBranch branch, const QuadratureConfig& cfg) {
  if (k < 1) fail(Errc::BadParameter, "sharpness needs k >= 1");
  if (alpha < 1 || alpha >= 2) fail(Errc::BadParameter, "alpha must lie in [1, 2)");
  if (!(gamma > 0)) fail(Errc::BadParameter, "gamma must be positive");
  GridSpec base, ext;
  if (branch == SharpnessBranch::LargeR) {
    base = {Axis{Real("1.05"), Real(20), 14, true}, Axis{Real("1e-3"), Real(1), 14, true}};
    ext = {Axis{Real("1.05"), Real(60), 18, true}, Axis{Real("1e-4"), Real(1), 18, true}};
  } else {
    base = {Axis{Real("1e-3"), Real("0.1"), 14, true}, Axis{Real("1e-5"), Real("0.05"), 14, true}};
    ext = {Axis{Real("1e-4"), Real("0.1"), 18, true}, Axis{Real("1e-7"), Real("0.05"), 18, true}};
  }
  SharpnessResult res;
  Real g = gamma;
  for (int attempt = 0; attempt < 4; ++attempt, g *= 2) {
    res.gamma = g;
    res.base = sharpness_region(P, k, alpha, g, branch, base, cfg);
    res.extended = sharpness_region(P, k, alpha, g, branch, ext, cfg);
    res.degraded = res.extended.inf_ratio < res.base.inf_ratio / 2;
    if (!res.degraded) break;
  }
  return res;
}

Real asymptotic_radial_scaled(const KernelParams& P, int k, const Real& t, const Real& r) {
  check_rt(r, t);
  const Real Q = P.Q();
  const Real mu2 = Real(P.mu()) / 2, nu2 = Real(P.nu()) / 2;
  const Real e_sinh = -expm1(-2 * r) / 2;  // e^{-r} sinh r
  const Real v = P.constant(0) / sqrt(t) * exp(-Q * Q * t / 4 - Q * r / 2) * pow(e_sinh, k) *
                 pow((1 + r) / t, mu2) * pow((Real(1) / 2 + r) / t, k + nu2) * theta(mu2, k + nu2, r);
  return k % 2 ? -v : v;
}

Real asymptotic_radial(const KernelParams& P, int k, const Real& t, const Real& r) {
  return asymptotic_radial_scaled(P, k, t, r) * exp(scaled_gauss_exponent(r, t));
}

Real asymptotic_fixed_t_scaled(const KernelParams& P, int m, int k, const Real& t, const Real& r) {
  check_rt(r, t);
  const Real Q = P.Q();
  const Real power = Real(P.mu() + P.nu()) / 2 + k + 2 * m;
  const Real v = P.constant(k + 2 * m) / sqrt(t) * exp(-Q * Q * t / 4 - Q * r / 2) * pow(r / t, power);
  return k % 2 ? -v : v;
}

Real asymptotic_fixed_t(const KernelParams& P, int m, int k, const Real& t, const Real& r) {
  return asymptotic_fixed_t_scaled(P, m, k, t, r) * exp(scaled_gauss_exponent(r, t));
}

std::vector<AsymptoticRow> asymptotic_radial_rows(const KernelParams& P, int k, const Real& t,
                                                  const std::vector<Real>& radii, const QuadratureConfig& cfg) {
  std::vector<AsymptoticRow> rows(radii.size());
  parallel_for(radii.size(), [&](std::size_t i) {
    const Real r = radii[i];
    const Real exact = radial_jet_scaled(P, k, 0, t, r, cfg)[k];
    const Real asym = asymptotic_radial_scaled(P, k, t, r);
    rows[i] = {r, t, exact, asym, exact / asym};
  });
  return rows;
}

std::vector<AsymptoticRow> asymptotic_fixed_t_rows(const KernelParams& P, int m, int k, const Real& t,
                                                   const std::vector<Real>& radii, const QuadratureConfig& cfg) {
  std::vector<AsymptoticRow> rows(radii.size());
  parallel_for(radii.size(), [&](std::size_t i) {
    const Real r = radii[i];
    const Real exact = time_derivative_scaled(P, m, k, t, r, cfg);
    const Real asym = asymptotic_fixed_t_scaled(P, m, k, t, r);
    rows[i] = {r, t, exact, asym, exact / asym};
  });
  return rows;
}

LaplaceCheck laplace_method_crosscheck(int p, int q, const Real& t, const Real& r, const QuadratureConfig& cfg) {
  if (p < 0 || q < 0 || p + q == 0) fail(Errc::BadParameter, "laplace check needs p, q >= 0, p + q >= 1");
  check_rt(r, t);
  const auto G = gaussian_shift(p, q);
  std::vector<CompiledHyp> a;
  for (const auto& e : G.a) a.emplace_back(e);
  // s = r + v^2; the Gaussian ratio e^{-(s^2 - r^2)/4t} sets the range.
  const Real L = -log(effective_rel_tol(cfg)) + 40;
  const Real v_max = sqrt(sqrt(r * r + 4 * t * L) - r);
  auto f = [&](const Real& v) {
    const Real v2 = v * v, s = r + v2;
    const HypPoint hp(s);
    Real sum = 0, ti = 1;
    for (const auto& ai : a) {
      ti /= t;
      sum += ai(hp) * ti;
    }
    return sinh(s) * 2 * v / sqrt(2 * sinh(r + v2 / 2) * sinh(v2 / 2)) * exp(-v2 * (2 * r + v2) / (4 * t)) * sum;
  };
  LaplaceCheck out;
  out.integral_scaled = integrate_scalar(f, Real(0), v_max, cfg, 6);
  out.formula_scaled = sqrt(pi_real()) * exp(-(q - Real(1) / 2 + Real(p) / 2) * r) * pow(r / t, p + q - Real(1) / 2);
  out.ratio = out.integral_scaled / out.formula_scaled;
  return out;
}

Real laplace_leading_term_ratio(int p, int q, int j, const Real& t, const Real& r, const QuadratureConfig& cfg) {
  check_rt(r, t);
  if (j < 0) fail(Errc::BadParameter, "negative power");
  const Real c = q + Real(p) / 2 - 1;
  // s = w^2 removes the s^{-1/2} endpoint behaviour.
  const Real rate = r / (2 * t);
  const Real L = -log(effective_rel_tol(cfg)) + 40;
  const Real w_max = sqrt(L / rate + j + 1);
  auto f = [&](const Real& w) {
    const Real s = w * w;
    return 2 * w / sqrt(expm1(s)) * exp(-s * s / (4 * t) - rate * s - c * s) * pow(s, j);
  };
  const Real I = integrate_scalar(f, Real(0), w_max, cfg, 8);
  const Real ref = boost::math::tgamma(Real(j) + Real(1) / 2) * pow(2 * t / r, Real(j) + Real(1) / 2);
  return I / ref;
}

BoundReport first_time_derivative_bound(const KernelParams& P, const GridSpec& grid,
                                        const std::vector<Real>& extra_diagonal_t, const QuadratureConfig& cfg) {
  auto pts = grid_points(grid);
  for (const auto& t : extra_diagonal_t) pts.push_back({P.Q() * t, t});
  BoundReport rep;
  rep.name = "first_time_derivative";
  rep.rows.resize(pts.size());
  const Real Q = P.Q();
  parallel_for(pts.size(), [&](std::size_t i) {
    const Real r = pts[i].r, t = pts[i].t;
    const auto V = kernel_channels_scaled(P, 0, 1, t, r, cfg);
    const Real lhs = abs(V[0][1]);
    const Real rhs = (abs(r * r / (4 * t * t) - Q * Q / 4) + 1 / t) * V[0][0];
    rep.rows[i] = {r, t, lhs, rhs, lhs / rhs};
  });
  summarize(rep);
  return rep;
}

Real ou_potential(const KernelParams& P, const Real& t, const Real& r, const QuadratureConfig& cfg) {
  const auto d = radial_jet_scaled(P, 2, 0, t, r, cfg);
  const Real rad = -d[2] + eval_hyp(radial_laplacian_drift(P.mu(), P.nu()), r) * d[1];
  const Real g = d[1] / d[0];
  return -g * g / 4 - rad / (2 * d[0]);
}

}  // namespace heatdr
