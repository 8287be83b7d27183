#include "heatdr/distance_calculus.hpp"

#include <boost/math/tools/roots.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

namespace heatdr {

Real cosh_distance(const HTypeGroup& G, const GroupPoint& g) {
  check_point(G, g);
  return 1 + cosh_distance_minus_one(g);
}

Real arcosh1p(const Real& w) { return log1p(w + sqrt(w * (w + 2))); }

Real distance(const HTypeGroup& G, const GroupPoint& g) {
  check_point(G, g);
  return arcosh1p(cosh_distance_minus_one(g));
}

std::vector<Real> arcosh1p_squared_derivatives(const Real& w0, int order) {
  if (w0 < 0) fail(Errc::OutOfRange, "arcosh(1+w)^2 needs w >= 0");
  std::vector<Real> d(order + 1, Real(0));
  if (w0 < Real(0.5)) {
    // Series about 0: c_1 = 2, (n+1)(2n+1) c_{n+1} = -n^2 c_n, radius 2.
    std::vector<Real> c{Real(0), Real(2)};
    const Real eps = std::numeric_limits<Real>::epsilon() / 16;
    for (int n = 1; n < 400; ++n) {
      c.push_back(-Real(n) * n * c[n] / ((n + 1) * Real(2 * n + 1)));
      if (n > order + 4 && abs(c.back()) * pow(w0 + Real(1e-30), n + 1 - order) < eps) break;
    }
    for (int m = 0; m <= order; ++m) {
      Real s = 0;
      Real wp = 1;
      for (std::size_t n = m; n < c.size(); ++n) {
        Real falling = 1;
        for (int i = 0; i < m; ++i) falling *= Real(static_cast<int>(n) - i);
        s += c[n] * falling * wp;
        wp *= w0;
      }
      d[m] = s;
    }
    return d;
  }
  // Taylor coefficients at w0 from P F'' + (1+w) F' = 2, P = w(w+2).
  const Real P0 = w0 * (w0 + 2);
  const Real P1 = 2 * (w0 + 1);
  const Real phi = arcosh1p(w0);
  std::vector<Real> c(order + 2, Real(0));
  c[0] = phi * phi;
  c[1] = 2 * phi / sqrt(P0);
  for (int n = 0; n + 2 <= order; ++n) {
    Real rhs = (n == 0 ? Real(2) : Real(0)) - Real(n + 1) * (P1 * n + 1 + w0) * c[n + 1] -
               Real(n) * n * c[n];
    c[n + 2] = rhs / (P0 * (n + 2) * (n + 1));
  }
  Real fact = 1;
  for (int m = 0; m <= order; ++m) {
    if (m > 0) fact *= m;
    d[m] = c[m] * fact;
  }
  return d;
}

void check_multi_index(const HTypeGroup& G, const MultiIndex& J) {
  for (int j : J)
    if (j < 0 || j >= G.n())
      fail(Errc::OutOfRange, "vector field index " + std::to_string(j) + " outside 0.." +
                                 std::to_string(G.n() - 1));
  if (J.size() > 12) fail(Errc::BadParameter, "multi-index longer than 12");
}

JetPoint lift_point(const HTypeGroup& G, const MultiIndex& J, const GroupPoint& g) {
  check_point(G, g);
  check_multi_index(G, J);
  const int k = static_cast<int>(J.size());
  JetPoint p;
  for (const auto& v : g.x) p.x.push_back(Jet::constant(k, v));
  for (const auto& v : g.z) p.z.push_back(Jet::constant(k, v));
  p.a = Jet::constant(k, g.a);
  for (int i = 0; i < k; ++i) {
    JetPoint gamma;
    gamma.x.assign(G.mu(), Jet::constant(k, Real(0)));
    gamma.z.assign(G.nu(), Jet::constant(k, Real(0)));
    gamma.a = Jet::constant(k, Real(1));
    const int j = J[i];
    if (j == 0) {
      gamma.a = Jet::variable(k, i, Real(1));  // e^{e_i} = 1 + e_i exactly
    } else if (j <= G.mu()) {
      gamma.x[j - 1] = Jet::variable(k, i, Real(0));
    } else {
      gamma.z[j - 1 - G.mu()] = Jet::variable(k, i, Real(0));
    }
    p = multiply(G, p, gamma);
  }
  return p;
}

Jet cosh_r_jet(const JetPoint& p) { return cosh_distance_minus_one(p) + Jet(Real(1)); }

Jet r_jet(const JetPoint& p) {
  const Jet w = cosh_distance_minus_one(p);
  if (arcosh1p(w.value()) < kMinRadius)
    fail(Errc::SingularPoint, "r < 1e-3: r is not offered here, use r^2 or cosh r");
  return log1p(w + sqrt(w * (w + Jet(Real(2)))));
}

Jet r_squared_jet(const JetPoint& p) {
  const Jet w = cosh_distance_minus_one(p);
  return compose(w, arcosh1p_squared_derivatives(w.value(), w.order()));
}

Jet radial_jet(const JetPoint& p, const std::vector<Real>& profile_derivs) {
  return compose(r_jet(p), profile_derivs);
}

Real apply_fields(const HTypeGroup& G, const MultiIndex& J, const JetFunction& f, const GroupPoint& g) {
  const JetPoint p = lift_point(G, J, g);
  const Jet v = f(p);
  if (J.empty()) return v.value();
  return v.order() == 0 ? Real(0) : v.top();
}

Real apply_field(const HTypeGroup& G, int j, const JetFunction& f, const GroupPoint& g) {
  return apply_fields(G, MultiIndex{j}, f, g);
}

Real distance_derivative(const HTypeGroup& G, const MultiIndex& J, const GroupPoint& g) {
  return apply_fields(G, J, [](const JetPoint& p) { return r_jet(p); }, g);
}

Real cosh_derivative(const HTypeGroup& G, const MultiIndex& J, const GroupPoint& g) {
  return apply_fields(G, J, [](const JetPoint& p) { return cosh_r_jet(p); }, g);
}

Real r_power_derivative(const HTypeGroup& G, const MultiIndex& J, const GroupPoint& g, int l) {
  if (l < 0) fail(Errc::BadParameter, "negative power");
  return apply_fields(
      G, J,
      [l](const JetPoint& p) {
        const Jet r2 = r_squared_jet(p);
        Jet out = Jet::constant(r2.order(), Real(1));
        for (int i = 0; i < l; ++i) out *= r2;
        return out;
      },
      g);
}

SigmaTable sigma_table(const HTypeGroup& G, const MultiIndex& J, const GroupPoint& g) {
  using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
  const int b = static_cast<int>(J.size());
  if (b < 1) fail(Errc::BadParameter, "sigma table needs |J| >= 1");
  const JetPoint p = lift_point(G, J, g);
  const Jet r = r_jet(p);
  SigmaTable out{J, r.value(), {}, Real(1)};
  Mat V(b, b);
  Vec y(b);
  for (int m = 0; m < b; ++m) {
    const Real alpha = m + 1;
    // e^{-alpha r0} X_J e^{alpha r}: profile derivatives alpha^j with e^{alpha r0} divided out.
    std::vector<Real> derivs(b + 1);
    Real ap = 1;
    for (int j = 0; j <= b; ++j) {
      derivs[j] = ap;
      ap *= alpha;
    }
    y(m) = compose(r, derivs).top();
    Real pw = alpha;
    for (int j = 0; j < b; ++j) {
      V(m, j) = pw;
      pw *= alpha;
    }
  }
  const Mat Vinv = V.fullPivLu().inverse();
  auto norm1 = [](const Mat& M) {
    Real best = 0;
    for (int c = 0; c < M.cols(); ++c) {
      Real s = 0;
      for (int r = 0; r < M.rows(); ++r) s += abs(M(r, c));
      best = std::max(best, s);
    }
    return best;
  };
  out.condition = norm1(V) * norm1(Vinv);
  if (out.condition > Real(1e12)) fail(Errc::IllConditioned, "probe system condition exceeds 1e12");
  const Vec s = V.fullPivLu().solve(y);
  for (int j = 0; j < b; ++j) out.sigma.push_back(s(j));
  return out;
}

GroupPoint sharpness_curve(const HTypeGroup& G, const Real& y, const Real& a) {
  if (!(abs(y) < 1)) fail(Errc::OutOfRange, "sharpness curve needs |y| < 1");
  if (!(a > 0)) fail(Errc::BadParameter, "sharpness curve needs a > 0");
  GroupPoint g = identity_point(G);
  g.z[0] = sqrt((1 - y) / (1 + y)) * a;
  g.a = a;
  return g;
}

Real limit_polynomial(const HTypeGroup& G, int k, const Real& y, const std::vector<Real>& a_grid) {
  if (k < 1) fail(Errc::BadParameter, "limit polynomial needs k >= 1");
  if (a_grid.size() < 3) fail(Errc::BadParameter, "a_grid needs at least three entries");
  for (std::size_t i = 1; i < a_grid.size(); ++i)
    if (!(a_grid[i] > a_grid[i - 1])) fail(Errc::BadParameter, "a_grid must increase");
  const MultiIndex J(k, 0);
  const std::size_t n = a_grid.size();
  std::vector<Real> h, v;
  for (std::size_t i = n - 3; i < n; ++i) {
    h.push_back(1 / (a_grid[i] * a_grid[i]));
    v.push_back(distance_derivative(G, J, sharpness_curve(G, y, a_grid[i])));
  }
  // Neville extrapolation to h = 0.
  for (int level = 1; level < 3; ++level)
    for (int i = 2; i >= level; --i)
      v[i] = (h[i - level] * v[i] - h[i] * v[i - 1]) / (h[i - level] - h[i]);
  return v[2];
}

std::vector<Real> limit_polynomial_fit(const HTypeGroup& G, int k, const std::vector<Real>& y_grid,
                                       const std::vector<Real>& a_grid) {
  using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
  const int m = static_cast<int>(y_grid.size());
  if (m < k + 1) fail(Errc::BadParameter, "need at least k+1 sample abscissae");
  Mat A(m, k + 1);
  Vec b(m);
  for (int i = 0; i < m; ++i) {
    Real p = 1;
    for (int c = 0; c <= k; ++c) {
      A(i, c) = p;
      p *= y_grid[i];
    }
    b(i) = limit_polynomial(G, k, y_grid[i], a_grid);
  }
  const Vec c = A.colPivHouseholderQr().solve(b);
  return std::vector<Real>(c.data(), c.data() + c.size());
}

GroupPoint point_at_distance(const HTypeGroup& G, const std::vector<Real>& x_dir,
                             const std::vector<Real>& z_dir, const Real& log_a_dir, const Real& r) {
  if (static_cast<int>(x_dir.size()) != G.mu() || static_cast<int>(z_dir.size()) != G.nu())
    fail(Errc::DimensionMismatch, "direction dimensions do not match the group");
  if (r < 0) fail(Errc::BadParameter, "negative distance");
  auto at = [&](const Real& s) {
    GroupPoint g = identity_point(G);
    for (int i = 0; i < G.mu(); ++i) g.x[i] = s * x_dir[i];
    for (int i = 0; i < G.nu(); ++i) g.z[i] = s * z_dir[i];
    g.a = exp(s * log_a_dir);
    return g;
  };
  if (r == 0) return at(Real(0));
  auto f = [&](const Real& s) { return arcosh1p(cosh_distance_minus_one(at(s))) - r; };
  Real hi = r;
  while (f(hi) < 0) {
    hi *= 2;
    if (hi > Real(1e6)) fail(Errc::BadParameter, "direction does not leave the origin");
  }
  std::uintmax_t iters = 200;
  auto tol = boost::math::tools::eps_tolerance<Real>(110);
  const auto [lo_s, hi_s] = boost::math::tools::toms748_solve(f, Real(0), hi, f(Real(0)), f(hi), tol, iters);
  return at((lo_s + hi_s) / 2);
}

GroupPoint generic_point(const HTypeGroup& G, const Real& r) {
  std::vector<Real> x(G.mu()), z(G.nu());
  for (int i = 0; i < G.mu(); ++i) x[i] = Real(1) / (i + 2);
  for (int i = 0; i < G.nu(); ++i) z[i] = Real(2) / (i + 3);
  return point_at_distance(G, x, z, Real(3) / 10, r);
}

}  // namespace heatdr
