#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "heatdr/distance_calculus.hpp"
#include "heatdr/grid.hpp"
#include "heatdr/heat_kernel.hpp"
#include "support.hpp"

using namespace heatdr;
using namespace heatdr::testing;

namespace {

// Three-dimensional real hyperbolic kernel.
Real h3(const Real& t, const Real& r) {
  const Real shape = r == 0 ? Real(1) : r / sinh(r);
  return pow(4 * pi_real() * t, Real(-1.5)) * shape * exp(-t - r * r / (4 * t));
}

Real h3_dr(const Real& t, const Real& r) {
  const Real s = sinh(r), c = cosh(r);
  return pow(4 * pi_real() * t, Real(-1.5)) * exp(-t - r * r / (4 * t)) *
         ((s - r * c) / (s * s) - r * r / (2 * t * s));
}

KernelParams params(const std::string& family, int m) { return make_kernel_params(standard_group(family, m)); }

QuadratureConfig tight() {
  QuadratureConfig cfg;
  cfg.rel_tol = Real("1e-24");
  return cfg;
}

// Envelope shape of the two-sided kernel bound.
Real kernel_envelope(const KernelParams& P, const Real& t, const Real& r) {
  const Real Q = P.Q();
  const int n = P.group.n();
  return pow(t, Real(-1.5)) * (1 + r) * pow(1 + (1 + r) / t, Real(n - 3) / 2) *
         exp(-Q * Q * t / 4 - Q * r / 2 - r * r / (4 * t));
}

}  // namespace

TEST_CASE("kernel constants halve with k") {
  for (const auto& c : catalog()) {
    const auto P = params(c.family, c.m);
    for (int k = 0; k < 6; ++k) CHECK(rel(P.constant(k + 1), P.constant(k) / 2) < 1e-32);
  }
  const auto P = params("real_hyperbolic", 2);
  CHECK(rel(P.constant(0), pow(pi_real(), Real(-1.5)) / 4) < 1e-32);
}

TEST_CASE("three-dimensional closed form") {
  const auto P = params("real_hyperbolic", 2);
  CHECK(rel(eval_even(P, 1, 1), h3(1, 1)) < 1e-30);
  CHECK(rel(eval_kernel(P, Real("0.3"), 0), h3(Real("0.3"), 0)) < 1e-30);
  for (int i = 0; i < 50; ++i) {
    const Real r = uniform(0, 20), t = exp(uniform(std::log(0.05), std::log(5.0)));
    CHECK(rel(eval_kernel(P, t, r), h3(t, r)) < 1e-12);
  }
  for (const char* rs : {"0.01", "0.5", "1", "3", "12"})
    for (const char* ts : {"0.1", "1", "4"}) {
      const Real r(rs), t(ts);
      CHECK(rel(radial_derivative(P, 1, t, r), h3_dr(t, r)) < 1e-10);
      CHECK(rel(radial_derivative(P, 0, t, r), h3(t, r)) < 1e-30);
    }
}

TEST_CASE("parity contracts") {
  const auto even = params("real_hyperbolic", 2);
  const auto odd = params("real_hyperbolic", 3);
  CHECK(error_code([&] { eval_even(odd, 1, 1); }) == Errc::WrongParity);
  CHECK(error_code([&] { eval_odd(even, 1, 1); }) == Errc::WrongParity);
  CHECK(error_code([&] { eval_kernel(even, 0, 1); }) == Errc::BadParameter);
}

TEST_CASE("kernel is finite and positive at the origin") {
  for (const auto& c : catalog()) {
    const auto P = params(c.family, c.m);
    const Real h0 = eval_kernel(P, 1, 0);
    CHECK(boost::multiprecision::isfinite(h0));
    CHECK(h0 > 0);
    CHECK(rel(h0, eval_kernel(P, 1, Real("1e-6"))) < 1e-9);
  }
  // (4,2): i and j of the quaternions acting on R^4.
  RationalMatrix qi{{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}};
  RationalMatrix qj{{0, 0, -1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, -1, 0, 0}};
  const auto P42 = make_kernel_params(make_htype_group_exact(4, 2, {qi, qj}));
  const Real h0 = eval_even(P42, 1, 0);
  CHECK(boost::multiprecision::isfinite(h0));
  CHECK(h0 > 0);
}

TEST_CASE("positivity and channel signs on the grid") {
  const GridSpec grid = coarse_grid();
  for (const auto& c : catalog()) {
    const auto P = params(c.family, c.m);
    for (const Real& t : grid.t.values())
      for (const Real& r : grid.r.values()) {
        const auto ch = kernel_channels_scaled(P, 3, 0, t, r);
        for (int j = 0; j <= 3; ++j) CHECK(ch[j][0] > 0);
      }
  }
}

TEST_CASE("radial derivatives against finite differences") {
  const Real h("1e-3");
  for (const auto& c : catalog()) {
    const auto P = params(c.family, c.m);
    const auto cfg = tight();
    for (const char* rs : {"0.2", "1.5", "6"})
      for (const char* ts : {"0.3", "2"}) {
        const Real r(rs), t(ts);
        for (int k = 1; k <= 3; ++k) {
          const Real fd = stencil6([&](const Real& x) { return radial_derivative(P, k - 1, t, x, cfg); }, r, h);
          const Real got = radial_derivative(P, k, t, r, cfg);
          CHECK(abs(got - fd) < 1e-7 * abs(got) + Real("1e-30"));
        }
      }
  }
}

TEST_CASE("time derivatives") {
  const Real h("1e-3");
  for (const auto& c : catalog()) {
    const auto P = params(c.family, c.m);
    const auto cfg = tight();
    for (const char* rs : {"0.1", "1", "5"})
      for (const char* ts : {"0.2", "1.5"}) {
        const Real r(rs), t(ts);
        CHECK(time_derivative(P, 0, 2, t, r, cfg) == radial_derivative(P, 2, t, r, cfg));
        const Real fd = stencil6([&](const Real& s) { return eval_kernel(P, s, r, cfg); }, t, h);
        const Real dt = time_derivative(P, 1, 0, t, r, cfg);
        CHECK(rel(dt, fd) < 1e-6);
        // Heat equation: d_t h = -rad(L) h.
        const Real lap = radial_laplacian_scaled(P, t, r, cfg) * exp(-r * r / (4 * t));
        CHECK(abs(dt + lap) <= 1e-8 * (abs(dt) + abs(lap)));
        // Composition and direct routes agree.
        for (int m = 1; m <= 2; ++m)
          for (int k = 0; k <= 2; ++k) {
            const Real a = time_derivative(P, m, k, t, r, cfg), b = time_derivative_direct(P, m, k, t, r, cfg);
            CHECK(abs(a - b) <= 1e-20 * (abs(a) + abs(b)) + Real("1e-60"));
          }
      }
  }
}

TEST_CASE("space derivatives") {
  for (const auto& c : catalog()) {
    const auto P = params(c.family, c.m);
    const auto& G = P.group;
    // On the a-axis X_0 r = 1 for a > 1.
    const Real a = 3;
    std::vector<Real> x(G.mu(), Real(0)), z(G.nu(), Real(0));
    const auto g = make_point(G, x, z, a);
    CHECK(rel(space_derivative(P, {0}, 1, g), radial_derivative(P, 1, 1, log(a))) < 1e-28);
    CHECK(rel(space_derivative(P, {}, 1, g), eval_kernel(P, 1, log(a))) < 1e-28);
    CHECK(error_code([&] { space_derivative(P, {0}, 1, identity_point(G)); }) == Errc::SingularPoint);
    // |X_j h| <= |h'| since |X_j r| <= 1.
    for (int trial = 0; trial < 10; ++trial) {
      const auto p = random_point(G, 1.5);
      const Real r = distance(G, p);
      if (r < 0.01) continue;
      const Real t = uniform(0.1, 3);
      const Real bound = abs(radial_derivative(P, 1, t, r));
      for (int j = 0; j < G.n(); ++j) CHECK(abs(space_derivative(P, {j}, t, p)) <= bound * (1 + Real("1e-25")));
    }
    // The scaled variant carries e^{r^2/4t}.
    const auto p = generic_point(G, 2);
    const Real s = space_derivative_scaled(P, 0, {0, 1}, Real("0.5"), p);
    CHECK(rel(s * exp(-Real(4) / 2), space_derivative(P, {0, 1}, Real("0.5"), p)) < 1e-28);
  }
}

TEST_CASE("mass is conserved") {
  for (const auto& [family, m, t] : std::vector<std::tuple<std::string, int, Real>>{
           {"real_hyperbolic", 2, Real("0.5")}, {"heisenberg", 1, Real(2)}, {"real_hyperbolic", 3, Real("0.5")}}) {
    const auto P = params(family, m);
    CHECK(abs(mass_functional(P, t) / mass_functional(P, 1) - 1) < 1e-6);
  }
}

TEST_CASE("distinguished kernel") {
  for (const auto& c : catalog()) {
    const auto P = params(c.family, c.m);
    const auto& G = P.group;
    const Real Q = P.Q(), t("0.7");
    const auto g1 = make_point(G, std::vector<Real>(G.mu(), Real("0.4")), std::vector<Real>(G.nu(), Real("-0.3")), 1);
    const Real r1 = distance(G, g1);
    CHECK(rel(distinguished_kernel(P, t, g1), exp(Q * Q * t / 4) * eval_kernel(P, t, r1)) < 1e-30);

    // Same distance, different a: the ratio is (a/a')^{-Q/2}.
    const auto ga = make_point(G, std::vector<Real>(G.mu(), Real(0)), std::vector<Real>(G.nu(), Real(0)), 4);
    const auto gb = make_point(G, std::vector<Real>(G.mu(), Real(0)), std::vector<Real>(G.nu(), Real(0)), Real(1) / 4);
    CHECK(rel(distinguished_kernel(P, t, ga) / distinguished_kernel(P, t, gb), pow(Real(16), -Q / 2)) < 1e-30);

    // X_0 a^{-Q/2} = -(Q/2) a^{-Q/2}, so X_0 h^D = e^{Q^2t/4} a^{-Q/2} (X_0 h - (Q/2) h).
    const auto p = random_point(G, 1);
    const Real r = distance(G, p), w = exp(r * r / (4 * t)) * exp(Q * Q * t / 4) * pow(p.a, -Q / 2);
    const Real want = w * (space_derivative(P, {0}, t, p) - Q / 2 * eval_kernel(P, t, r));
    CHECK(rel(distinguished_derivative_scaled(P, 0, {0}, t, p), want) < 1e-26);
    // d_t h^D = (Q^2/4) h^D + e^{Q^2t/4} a^{-Q/2} d_t h.
    const Real want_t = w * (Q * Q / 4 * eval_kernel(P, t, r) + time_derivative(P, 1, 0, t, r));
    CHECK(rel(distinguished_derivative_scaled(P, 1, {}, t, p), want_t) < 1e-26);
    // Horizontal fields do not see the modular factor.
    const Real want_x = w * space_derivative(P, {1}, t, p);
    CHECK(rel(distinguished_derivative_scaled(P, 0, {1}, t, p), want_x) < 1e-26);
  }
}

TEST_CASE("two-sided kernel envelope") {
  const GridSpec grid = coarse_grid();
  for (const auto& c : catalog()) {
    const auto P = params(c.family, c.m);
    Real lo = 1e300, hi = 0;
    for (const Real& t : grid.t.values())
      for (const Real& r : grid.r.values()) {
        const Real q = eval_kernel(P, t, r) / kernel_envelope(P, t, r);
        lo = std::min(lo, q);
        hi = std::max(hi, q);
      }
    MESSAGE(c.family << " " << c.m << ": kernel / envelope in [" << lo << ", " << hi << "]");
    CHECK(lo > 0);
    CHECK(hi / lo < 1e3);
  }
}
