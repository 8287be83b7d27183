#include "heatdr/radial_symbolics.hpp"

#include <algorithm>

#include "heatdr/error.hpp"

namespace heatdr {

RadialExpansion radial_expansion(int k) {
  if (k < 1) fail(Errc::BadParameter, "radial expansion needs k >= 1");
  const HypExpr S = HypExpr::sinh_r();
  RadialExpansion e{1, {S}};
  for (int kk = 1; kk < k; ++kk) {
    // f_{j,kk+1} = f'_{j,kk} + sinh r f_{j-1,kk}
    std::vector<HypExpr> next(kk + 1);
    for (int j = 1; j <= kk + 1; ++j) {
      HypExpr v;
      if (j <= kk) v += e.f[j - 1].derivative();
      if (j >= 2) v += S * e.f[j - 2];
      next[j - 1] = std::move(v);
    }
    e.k = kk + 1;
    e.f = std::move(next);
  }
  return e;
}

std::vector<std::vector<mpz_class>> radial_expansion_sc(int k) {
  if (k < 1) fail(Errc::BadParameter, "radial expansion needs k >= 1");
  // f[j-1][a] multiplies S^a C^{j-a}; (S^a C^b)' = a S^{a-1} C^{b+1} + b S^{a+1} C^{b-1}.
  std::vector<std::vector<mpz_class>> f{{0, 1}};
  for (int kk = 1; kk < k; ++kk) {
    std::vector<std::vector<mpz_class>> next(kk + 1);
    for (int j = 1; j <= kk + 1; ++j) {
      std::vector<mpz_class> v(j + 1, 0);
      if (j <= kk) {
        const auto& g = f[j - 1];
        for (int a = 0; a <= j; ++a) {
          if (g[a] == 0) continue;
          const int b = j - a;
          if (a > 0) v[a - 1] += a * g[a];
          if (b > 0) v[a + 1] += b * g[a];
        }
      }
      if (j >= 2) {
        const auto& g = f[j - 2];
        for (int a = 0; a <= j - 1; ++a) v[a + 1] += g[a];
      }
      next[j - 1] = std::move(v);
    }
    f = std::move(next);
  }
  return f;
}

namespace {

HypExpr sc_to_hyp(const std::vector<mpz_class>& coeffs) {
  const int j = static_cast<int>(coeffs.size()) - 1;
  HypExpr out;
  for (int a = 0; a <= j; ++a)
    if (coeffs[a] != 0)
      out += pow(HypExpr::sinh_r(), a) * pow(HypExpr::cosh_r(), j - a) * Rational(coeffs[a]);
  return out;
}

std::vector<Real> sample_grid(const Real& lo, const Real& hi, int n) {
  std::vector<Real> g;
  for (int i = 0; i < n; ++i) g.push_back(lo * pow(hi / lo, Real(i) / (n - 1)));
  return g;
}

}  // namespace

StructuralReport structural_check(int k) {
  if (k < 1 || k > 12) fail(Errc::BadParameter, "structural check supports 1 <= k <= 12");
  const RadialExpansion e = radial_expansion(k);
  const auto sc = radial_expansion_sc(k);
  StructuralReport rep;
  rep.k = k;
  auto violation = [&](const std::string& clause) {
    fail(Errc::StructuralViolation, "k=" + std::to_string(k) + ": " + clause);
  };
  if (!(e(k) == pow(HypExpr::sinh_r(), k))) violation("f_{k,k} != sinh^k r");

  const auto grid = sample_grid(Real(1) / 1000, Real(10), 61);
  const auto far = sample_grid(Real(1), Real(60), 41);
  for (int j = 1; j <= k; ++j) {
    const HypExpr& f = e(j);
    if (f.is_zero()) violation("f_{" + std::to_string(j) + ",k} vanishes identically");
    if (!(sc_to_hyp(sc[j - 1]) == f)) violation("(sinh, cosh) form disagrees for j=" + std::to_string(j));

    // (a) vanishing order at 0
    const CompiledHyp cf(f);
    const int order = cf.order_at_zero();
    const int expected = std::max(2 * j - k, k % 2);
    rep.vanishing_order.push_back(order);
    rep.expected_order.push_back(expected);
    const bool upper = 2 * j > k + 1;  // j > ceil(k/2)
    if (upper ? order != 2 * j - k : order < expected)
      violation("vanishing order of f_{" + std::to_string(j) + ",k} is " + std::to_string(order));
    if ((order - k) % 2 != 0) violation("parity of f_{" + std::to_string(j) + ",k}");

    // (b) nonnegativity of f and its first three derivatives
    Real mn = std::numeric_limits<Real>::infinity();
    HypExpr d = f;
    for (int m = 0; m <= 3; ++m) {
      const CompiledHyp cd(d);
      for (const auto& r : grid) mn = std::min(mn, cd(r));
      d = d.derivative();
    }
    rep.min_on_grid.push_back(mn);
    if (mn < 0) violation("negative value of f_{" + std::to_string(j) + ",k} or a derivative");

    // (d) f e^{-jr} bounded on r >= 1
    Real sup = 0;
    for (const auto& r : far) sup = std::max(sup, cf(r) * exp(-Real(j) * r));
    rep.growth_sup.push_back(sup);
    const Real v30 = cf(Real(30)) * exp(-Real(j) * 30);
    const Real v60 = cf(Real(60)) * exp(-Real(j) * 60);
    if (abs(v60 - v30) > Real(1e-6) * v60) violation("f_{" + std::to_string(j) + ",k} e^{-jr} not settling");

    // basis coefficients
    for (int a = 0; a <= j; ++a) {
      if (sc[j - 1][a] < 0) rep.basis_nonnegative = false;
      if (sc[j - 1][a] != 0 && ((a - k) % 2 != 0 || a < std::max(2 * j - k, 0))) rep.basis_pattern = false;
    }
  }
  if (!rep.basis_nonnegative) violation("negative (sinh, cosh) basis coefficient");
  if (!rep.basis_pattern) violation("(sinh, cosh) monomial outside the expected pattern");

  // (c) sharp coefficient
  const int js = k % 2 == 1 ? (k + 1) / 2 : k / 2;
  const CompiledHyp cs(e(js));
  const int want = k % 2;
  rep.sharp_coefficient = cs.order_at_zero() == want ? cs.leading_coefficient_at_zero() : Rational(0);
  if (rep.sharp_coefficient <= 0) violation("sharp coefficient not positive");
  return rep;
}

GaussianExpansion gaussian_shift(int p, int q) {
  if (p < 0 || q < 0 || p + q < 1) fail(Errc::BadParameter, "gaussian shift needs p, q >= 0 and p+q >= 1");
  // A[j] multiplies t^{-j} e^{-r^2/4t}.  One step with s(r) in {sinh(r/2), sinh r}:
  //   -(1/s) d/dr (A e^{-r^2/4t}) = (-A'/s) + (r/(2s)) A t^{-1}.
  std::vector<HypExpr> A{HypExpr::constant(1)};
  auto step = [&A](const HypExpr& inv_s) {
    const HypExpr shift = HypExpr::r_power(1) * inv_s * Rational(1, 2);
    std::vector<HypExpr> next(A.size() + 1);
    for (std::size_t j = 0; j < A.size(); ++j) {
      if (A[j].is_zero()) continue;
      next[j] -= A[j].derivative() * inv_s;
      next[j + 1] += A[j] * shift;
    }
    A = std::move(next);
  };
  const HypExpr inv_half = HypExpr::inv_sinh_half();
  const HypExpr inv_full = HypExpr::inv_sinh_r();
  for (int i = 0; i < p; ++i) step(inv_half);
  for (int i = 0; i < q; ++i) step(inv_full);
  if (!A[0].is_zero()) fail(Errc::StructuralViolation, "t^0 term survived the shift");
  GaussianExpansion g{p, q, {}};
  g.a.assign(A.begin() + 1, A.end());
  return g;
}

HypExpr gaussian_top_coefficient(int p, int q) {
  const HypExpr r = HypExpr::r_power(1);
  return pow(r * HypExpr::inv_sinh_half(), p) * pow(r * HypExpr::inv_sinh_r(), q) *
         Rational(mpz_class(1), mpz_class(1) << (p + q));
}

std::vector<Real> gaussian_coefficient_bound_check(int p, int q) {
  if (p + q > 8) fail(Errc::BadParameter, "bound check supports p+q <= 8");
  const GaussianExpansion g = gaussian_shift(p, q);
  std::vector<Real> sups;
  auto grid = sample_grid(Real(1) / 10000, Real(50), 200);
  grid.insert(grid.begin(), Real(0));
  const Real rate = Real(p) / 2 + q;
  for (int j = 1; j <= p + q; ++j) {
    const CompiledHyp a(g(j));
    Real sup = 0;
    for (const auto& r : grid) sup = std::max(sup, abs(a(r)) * exp(rate * r) / pow(1 + r, j));
    sups.push_back(sup);
  }
  return sups;
}

RadialOperator derivative_operator(int k) {
  if (k < 0) fail(Errc::BadParameter, "negative derivative order");
  RadialOperator op;
  op.coeff.assign(k + 1, HypExpr());
  op.coeff[k] = HypExpr::constant(1);
  return op;
}

RadialOperator compose(const RadialOperator& A, const RadialOperator& B) {
  // A (B f) = sum_i alpha_i sum_j sum_l C(i,l) beta_j^{(l)} d^{i-l+j} f
  RadialOperator out;
  out.coeff.assign(std::max(0, A.order() + B.order()) + 1, HypExpr());
  for (int j = 0; j <= B.order(); ++j) {
    HypExpr beta = B.coeff[j];
    for (int l = 0; l <= A.order(); ++l) {
      if (!beta.is_zero()) {
        mpz_class binom = 1;
        for (int i = l; i <= A.order(); ++i) {
          if (i > l) {
            binom *= i;
            binom /= i - l;
          }
          if (!A.coeff[i].is_zero()) out.coeff[i - l + j] += A.coeff[i] * beta * Rational(binom);
        }
      }
      beta = beta.derivative();
    }
  }
  return out;
}

HypExpr radial_laplacian_drift(int mu, int nu) {
  const HypExpr D = HypExpr::coth_half() * Rational(mu + nu, 2) + HypExpr::tanh_half() * Rational(nu, 2);
  return -D;
}

RadialLaplacianExpansion radial_laplacian(int mu, int nu, int m) {
  if (m < 1) fail(Errc::BadParameter, "radial Laplacian power needs m >= 1");
  if (mu < 0 || nu < 1) fail(Errc::BadParameter, "radial Laplacian needs mu >= 0, nu >= 1");
  // -rad(L) = d^2 + D d
  RadialOperator minus_rad;
  minus_rad.coeff = {HypExpr(), -radial_laplacian_drift(mu, nu), HypExpr::constant(1)};
  RadialOperator acc = minus_rad;
  for (int i = 1; i < m; ++i) acc = compose(minus_rad, acc);
  return RadialLaplacianExpansion{m, std::move(acc)};
}

}  // namespace heatdr
