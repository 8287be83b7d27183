#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "heatdr/error.hpp"
#include "heatdr/radial_symbolics.hpp"
#include "support.hpp"

using namespace heatdr;
using namespace heatdr::testing;

namespace {

const Mp kStep("1e-40");

HypExpr random_expr(int depth) {
  static const std::vector<HypExpr> atoms = {
      HypExpr::sinh_r(),      HypExpr::cosh_r(),    HypExpr::sinh_half(), HypExpr::cosh_half(),
      HypExpr::coth_half(),   HypExpr::tanh_half(), HypExpr::r_power(1),  HypExpr::u_power(-1),
      HypExpr::inv_sinh_half(), HypExpr::constant(Rational(3, 7))};
  std::uniform_int_distribution<std::size_t> pick(0, atoms.size() - 1);
  std::uniform_int_distribution<int> coin(0, 2), num(-5, 5);
  if (depth == 0) return atoms[pick(rng())] * Rational(num(rng()) == 0 ? 1 : num(rng()), 2);
  const HypExpr a = random_expr(depth - 1), b = random_expr(depth - 1);
  switch (coin(rng())) {
    case 0: return a + b;
    case 1: return a * b;
    default: return a - b * Rational(2, 3);
  }
}

// sinh^a r cosh^b r
HypExpr p_ab(int a, int b) { return pow(HypExpr::sinh_r(), a) * pow(HypExpr::cosh_r(), b); }

}  // namespace

TEST_CASE("derivation rules") {
  CHECK(hyp_differentiate(HypExpr::sinh_r()) == HypExpr::cosh_r());
  const HypExpr ru = HypExpr::r_power(1) * HypExpr::u_power(1);
  CHECK(hyp_differentiate(ru) == HypExpr::u_power(1) + ru * Rational(1, 2));
  CHECK(hyp_differentiate(p_ab(2, 3)) == p_ab(1, 4) * Rational(2) + p_ab(3, 2) * Rational(3));
  // Half-angle identities hold as canonical equalities.
  CHECK(HypExpr::sinh_half() * HypExpr::cosh_half() * Rational(2) == HypExpr::sinh_r());
  CHECK(HypExpr::cosh_r() * HypExpr::cosh_r() - HypExpr::sinh_r() * HypExpr::sinh_r() == HypExpr::constant(1));
  CHECK(HypExpr::coth_half() * HypExpr::tanh_half() == HypExpr::constant(1));
}

TEST_CASE("ring laws and derivation on random expressions") {
  for (int trial = 0; trial < 60; ++trial) {
    const HypExpr a = random_expr(2), b = random_expr(2), c = random_expr(1);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK((a - a).is_zero());
    CHECK(hyp_differentiate(a * b) == hyp_differentiate(a) * b + a * hyp_differentiate(b));
    CHECK(hyp_differentiate(a + c) == hyp_differentiate(a) + hyp_differentiate(c));
  }
}

TEST_CASE("floating evaluation against a 300-bit reference") {
  for (int trial = 0; trial < 40; ++trial) {
    const HypExpr e = random_expr(2);
    for (const char* r : {"1e-4", "0.03", "0.7", "2.5", "17", "90"}) {
      const Real want = to_real(Mp(eval_hyp_decimal(e, r, 300)));
      const Real got = eval_hyp(e, parse_real(r));
      CHECK(abs(got - want) <= Real("1e-27") * (abs(want) + 1e-20));
    }
  }
}

TEST_CASE("evaluation examples") {
  const HypExpr q = HypExpr::r_power(1) * HypExpr::inv_sinh_r() * Rational(1, 2);
  CHECK(eval_hyp(q, Real(0)) == Real(1) / 2);
  CHECK(rel(eval_hyp(q, Real("1e-9")), Real(1) / 2) < 1e-17);
  CHECK(rel(eval_hyp(p_ab(2, 0), Real(1)), sinh(Real(1)) * sinh(Real(1))) < 1e-32);
  CHECK_THROWS_AS(eval_hyp(HypExpr::inv_sinh_r(), Real(0)), Error);
  // The hyperbolic part of Theta_{1,0}: e^{r/2} / (2 sinh(r/2)) tends to 1 as r grows.
  const HypExpr h = HypExpr::u_power(1) * HypExpr::inv_sinh_half() * Rational(1, 2);
  CHECK(rel(eval_hyp(h, Real(150)), Real(1)) < 1e-30);
  // Large r: the dominant u-power is factored out.
  CHECK(rel(eval_hyp(p_ab(0, 3), Real(200)), pow(cosh(Real(200)), 3)) < 1e-30);
  CHECK(rel(to_real(Mp(eval_hyp_decimal(HypExpr::sinh_r(), "1", 200))), sinh(Real(1))) < 1e-33);
}

TEST_CASE("radial expansion examples") {
  const auto e2 = radial_expansion(2);
  CHECK(e2(1) == HypExpr::cosh_r());
  CHECK(e2(2) == p_ab(2, 0));
  const auto e3 = radial_expansion(3);
  CHECK(e3(2) == p_ab(1, 1) * Rational(3));
  CHECK(e3(3) == p_ab(3, 0));
  for (int k = 1; k <= 12; ++k) CHECK(radial_expansion(k)(k) == p_ab(k, 0));
  // The (S, C) basis agrees with the HypExpr table.
  for (int k = 1; k <= 10; ++k) {
    const auto e = radial_expansion(k);
    const auto sc = radial_expansion_sc(k);
    for (int j = 1; j <= k; ++j) {
      HypExpr s;
      for (int a = 0; a <= j; ++a)
        if (sc[j - 1][a] != 0) s += p_ab(a, j - a) * Rational(sc[j - 1][a]);
      CHECK(s == e(j));
    }
  }
}

TEST_CASE("radial expansion reproduces d^k/dr^k of exp(alpha cosh r)") {
  // R^j exp(alpha cosh r) = alpha^j exp(alpha cosh r), so sum_j f_{j,k} alpha^j is
  // exp(-alpha cosh r) d^k/dr^k exp(alpha cosh r).
  const Mp alpha("-0.75");
  auto phi = [&](const Mp& r) -> Mp { return exp(alpha * cosh(r)); };
  for (int k = 1; k <= 6; ++k) {
    const auto e = radial_expansion(k);
    for (const char* rs : {"0.05", "0.4", "1.3", "3.7", "6"}) {
      const Mp r(rs);
      const Mp oracle = central_difference(phi, r, k, kStep) / phi(r);
      Real sum = 0, ap = 1;
      for (int j = 1; j <= k; ++j) {
        ap *= to_real(alpha);
        sum += eval_hyp(e(j), parse_real(rs)) * ap;
      }
      CHECK(abs(sum - to_real(oracle)) < Real("1e-25") * (1 + abs(sum)));
    }
  }
}

TEST_CASE("structural checks") {
  for (int k = 1; k <= 12; ++k) {
    const auto rep = structural_check(k);
    CHECK(rep.basis_nonnegative);
    CHECK(rep.basis_pattern);
    CHECK(rep.sharp_coefficient > 0);
    for (const auto& g : rep.growth_sup) CHECK(boost::multiprecision::isfinite(g));
  }
  CHECK(structural_check(3).sharp_coefficient == 3);
  CHECK(eval_hyp(radial_expansion(4)(2), Real(0)) > 0);
  CHECK(structural_check(8).vanishing_order[7] == 8);
  CHECK_THROWS_AS(structural_check(13), Error);
}

TEST_CASE("gaussian shift examples and the top coefficient") {
  const HypExpr r = HypExpr::r_power(1);
  const auto g01 = gaussian_shift(0, 1);
  CHECK(g01.a.size() == 1);
  CHECK(g01(1) == r * HypExpr::inv_sinh_r() * Rational(1, 2));
  const auto g10 = gaussian_shift(1, 0);
  CHECK(g10(1) == r * HypExpr::inv_sinh_half() * Rational(1, 2));
  const auto g23 = gaussian_shift(2, 3);
  CHECK(g23(5) == pow(r * HypExpr::inv_sinh_half(), 2) * pow(r * HypExpr::inv_sinh_r(), 3) * Rational(1, 32));
  for (int p = 0; p <= 4; ++p)
    for (int q = 0; q <= 4; ++q) {
      if (p + q == 0) continue;
      CHECK(gaussian_shift(p, q)(p + q) == gaussian_top_coefficient(p, q));
    }
  const auto a11 = gaussian_shift(1, 1);
  CHECK(a11(2) == r * HypExpr::inv_sinh_half() * r * HypExpr::inv_sinh_r() * Rational(1, 4));
}

TEST_CASE("gaussian shift against nested numeric differentiation") {
  // -(1/sinh(r/2)) d/dr = -(1/2) d/dc2 with c2 = cosh(r/2), and -(1/sinh r) d/dr = -d/dc
  // with c = cosh r = 2 c2^2 - 1.
  for (int p = 0; p <= 3; ++p)
    for (int q = 0; p + q <= 5; ++q) {
      if (p + q == 0) continue;
      const auto A = gaussian_shift(p, q);
      for (const char* ts : {"0.3", "2"}) {
        const Mp t(ts);
        auto gauss_c2 = [&](const Mp& c2) -> Mp {
          const Mp r = 2 * acosh(c2);
          return exp(-r * r / (4 * t));
        };
        auto inner = [&](const Mp& c) -> Mp {
          const Mp c2 = sqrt((1 + c) / 2);
          return pow(Mp(-0.5), p) * central_difference(gauss_c2, c2, p, kStep);
        };
        for (const char* rs : {"0.2", "1.1", "4"}) {
          const Mp r(rs);
          const Mp oracle = (q % 2 ? -1 : 1) * central_difference(inner, cosh(r), q, kStep);
          Real sum = 0;
          for (int j = 1; j <= p + q; ++j)
            sum += eval_hyp(A(j), parse_real(rs)) * pow(parse_real(ts), -j);
          sum *= exp(-parse_real(rs) * parse_real(rs) / (4 * parse_real(ts)));
          CHECK(rel(sum, to_real(oracle)) < 1e-20);
        }
      }
    }
}

TEST_CASE("gaussian coefficient bounds") {
  for (auto [p, q] : std::vector<std::pair<int, int>>{{0, 1}, {1, 0}, {2, 2}, {3, 1}}) {
    const auto sup = gaussian_coefficient_bound_check(p, q);
    CHECK(sup.size() == static_cast<std::size_t>(p + q));
    for (const auto& s : sup) {
      CHECK(boost::multiprecision::isfinite(s));
      CHECK(s > 0);
      CHECK(s < 1e4);
    }
  }
}

TEST_CASE("radial Laplacian") {
  // (0,2): rad(L) = -d^2 - 2 coth r d.
  const HypExpr two_coth = HypExpr::coth_r() * Rational(2);
  CHECK(radial_laplacian_drift(0, 2) == -two_coth);
  CHECK(radial_laplacian(0, 2, 1).c(1) == two_coth);
  const auto H = radial_laplacian(2, 1, 1);
  CHECK(H.c(1) == HypExpr::coth_half() * Rational(3, 2) + HypExpr::tanh_half() * Rational(1, 2));
  CHECK(H.c(2) == HypExpr::constant(1));

  // c_{j,2} bounded on r >= 1.
  for (const auto& [mu, nu] : std::vector<std::pair<int, int>>{{0, 2}, {2, 1}, {4, 3}}) {
    const auto L2 = radial_laplacian(mu, nu, 2);
    for (int j = 1; j <= 3; ++j) {
      Real sup = 0;
      for (int i = 0; i <= 60; ++i) sup = std::max(sup, abs(eval_hyp(L2.c(j), 1 + Real(i))));
      CHECK(sup < 100);
    }
  }
}

TEST_CASE("powers of the radial Laplacian against nested differences") {
  for (const auto& [mu, nu] : std::vector<std::pair<int, int>>{{0, 3}, {2, 1}}) {
    auto D = [&](const Mp& r) -> Mp { return Mp(mu + nu) / 2 / tanh(r / 2) + Mp(nu) / 2 * tanh(r / 2); };
    const Mp h("1e-30");
    auto phi = [](const Mp& r) -> Mp { return exp(-r * r / 3) * cosh(r); };
    std::function<Mp(const Mp&)> minus_rad1 = [&](const Mp& r) -> Mp {
      return central_difference(phi, r, 2, h) + D(r) * central_difference(phi, r, 1, h);
    };
    std::function<Mp(const Mp&)> minus_rad2 = [&](const Mp& r) -> Mp {
      return central_difference(minus_rad1, r, 2, h) + D(r) * central_difference(minus_rad1, r, 1, h);
    };
    for (int m = 1; m <= 2; ++m) {
      const auto L = radial_laplacian(mu, nu, m);
      for (const char* rs : {"0.3", "1.7", "5"}) {
        const Mp r(rs);
        Real sum = 0;
        for (int j = 1; j <= 2 * m; ++j) sum += eval_hyp(L.c(j), parse_real(rs)) * to_real(central_difference(phi, r, j, h));
        const Mp oracle = m == 1 ? minus_rad1(r) : minus_rad2(r);
        CHECK(rel(sum, to_real(oracle)) < 1e-20);
      }
    }
  }
}
