#ifndef HEATDR_TESTS_SUPPORT_HPP
#define HEATDR_TESTS_SUPPORT_HPP

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

#include "heatdr/error.hpp"
#include "heatdr/grid.hpp"
#include "heatdr/group_model.hpp"
#include "heatdr/real.hpp"

namespace heatdr::testing {

// Oracle arithmetic, far above the working precision.
using Mp = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<1000>>;

inline Real rel(const Real& a, const Real& b) {
  const Real d = std::max(abs(a), abs(b));
  return d == 0 ? Real(0) : abs(a - b) / d;
}

inline Real to_real(const Mp& x) { return parse_real(x.str(40, std::ios_base::scientific)); }
inline Mp to_mp(const Real& x) { return Mp(format_real(x, 36)); }

// Code of the heatdr::Error thrown by f, if any.
inline std::optional<Errc> error_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

struct CatalogEntry {
  std::string family;
  int m;
};

// (mu, nu) = (0,2), (0,3), (2,1), (4,3).
inline std::vector<CatalogEntry> catalog() {
  return {{"real_hyperbolic", 2}, {"real_hyperbolic", 3}, {"heisenberg", 1}, {"quaternionic", 1}};
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline Real uniform(double lo, double hi) {
  return Real(std::uniform_real_distribution<double>(lo, hi)(rng()));
}

// Random point with coordinates in [-s, s] and log a in [-s, s].
inline GroupPoint random_point(const HTypeGroup& G, double s) {
  std::vector<Real> x(G.mu()), z(G.nu());
  for (auto& v : x) v = uniform(-s, s);
  for (auto& v : z) v = uniform(-s, s);
  return make_point(G, x, z, exp(uniform(-s, s)));
}

// f^{(n)}(x) by the n-th central difference, for Mp oracles.
template <class F>
Mp central_difference(const F& f, const Mp& x, int n, const Mp& h) {
  Mp s = 0;
  Mp binom = 1;
  for (int i = 0; i <= n; ++i) {
    const Mp offset = (Mp(n) / 2 - i) * h;
    s += (i % 2 == 0 ? binom : -binom) * f(x + offset);
    binom = binom * (n - i) / (i + 1);
  }
  return s / pow(h, n);
}

// First derivative with the 7-point stencil (error O(h^6)).
template <class F>
Real stencil6(const F& f, const Real& x, const Real& h) {
  static const Real w[] = {Real(3) / 4, Real(-3) / 20, Real(1) / 60};
  Real s = 0;
  for (int i = 1; i <= 3; ++i) s += w[i - 1] * (f(x + i * h) - f(x - i * h));
  return s / h;
}

// Standard ranges at a quarter of the r resolution, for quick sweeps.
inline GridSpec coarse_grid() {
  return GridSpec{Axis{Real("0.01"), Real(20), 24, true}, Axis{Real("0.05"), Real(5), 12, true}};
}

}  // namespace heatdr::testing

#endif
