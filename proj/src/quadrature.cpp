#include "heatdr/quadrature.hpp"

#include <algorithm>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "heatdr/error.hpp"

namespace heatdr {

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<Real, 61>;
using Gauss = boost::math::quadrature::gauss<Real, 30>;

struct Panel {
  Real a, b;
  std::vector<Real> value, error;
};

// Kronrod nodes: xk[0] = 0, Gauss nodes are xk[1], xk[3], ...
void apply_rule(const VectorIntegrand& f, int dim, Panel& p, std::vector<Real>& buf) {
  const auto& xk = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  const auto& wg = Gauss::weights();
  const Real c = (p.a + p.b) / 2, h = (p.b - p.a) / 2;
  std::vector<Real> K(dim, Real(0)), G(dim, Real(0));
  buf.resize(2 * dim);
  f(c, buf.data());
  for (int d = 0; d < dim; ++d) K[d] = wk[0] * buf[d];
  for (std::size_t i = 1; i < xk.size(); ++i) {
    f(c - h * xk[i], buf.data());
    f(c + h * xk[i], buf.data() + dim);
    for (int d = 0; d < dim; ++d) {
      const Real s = buf[d] + buf[dim + d];
      K[d] += wk[i] * s;
      if (i % 2 == 1) G[d] += wg[i / 2] * s;
    }
  }
  p.value.assign(dim, Real(0));
  p.error.assign(dim, Real(0));
  for (int d = 0; d < dim; ++d) {
    p.value[d] = K[d] * h;
    p.error[d] = abs((K[d] - G[d]) * h);
  }
}

}  // namespace

void check_config(const QuadratureConfig& cfg) {
  if (!(cfg.abs_tol > 0) || !(cfg.rel_tol > 0)) fail(Errc::BadParameter, "quadrature tolerances must be positive");
  if (cfg.max_panels < 1) fail(Errc::BadParameter, "max_panels must be positive");
  if (cfg.precision_bits < 24 || cfg.precision_bits > kWorkingPrecisionBits)
    fail(Errc::BadParameter, "precision_bits must lie in [24, 113]");
}

Real effective_rel_tol(const QuadratureConfig& cfg) {
  return std::max(cfg.rel_tol, ldexp(Real(1), 4 - cfg.precision_bits));
}

QuadratureResult integrate(const VectorIntegrand& f, int dim, const Real& a, const Real& b,
                           const QuadratureConfig& cfg, int initial_panels) {
  check_config(cfg);
  if (dim < 1 || initial_panels < 1) fail(Errc::BadParameter, "integrate: bad dimension or panel count");
  const Real rel = effective_rel_tol(cfg);
  std::vector<Real> buf;
  std::vector<Panel> panels;
  panels.reserve(initial_panels);
  for (int i = 0; i < initial_panels; ++i) {
    Panel p;
    p.a = a + (b - a) * i / initial_panels;
    p.b = i + 1 == initial_panels ? b : a + (b - a) * (i + 1) / initial_panels;
    apply_rule(f, dim, p, buf);
    panels.push_back(std::move(p));
  }

  std::vector<Real> total(dim), err(dim);
  for (;;) {
    std::fill(total.begin(), total.end(), Real(0));
    std::fill(err.begin(), err.end(), Real(0));
    for (const auto& p : panels)
      for (int d = 0; d < dim; ++d) {
        total[d] += p.value[d];
        err[d] += p.error[d];
      }
    std::vector<Real> tol(dim);
    bool done = true;
    for (int d = 0; d < dim; ++d) {
      tol[d] = std::max(cfg.abs_tol, rel * abs(total[d]));
      if (err[d] > tol[d]) done = false;
    }
    if (done) break;
    if (static_cast<int>(panels.size()) >= cfg.max_panels)
      fail(Errc::QuadratureNoConvergence, "adaptive quadrature exceeded max_panels");
    // Bisect every panel whose error share is above its length-proportional budget,
    // or the single worst panel if none is.
    std::vector<std::size_t> split;
    std::size_t worst = 0;
    Real worst_bad = -1;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      Real bad = 0;
      const Real frac = (panels[i].b - panels[i].a) / (b - a);
      for (int d = 0; d < dim; ++d) bad = std::max(bad, panels[i].error[d] / (tol[d] * frac));
      if (bad > 1) split.push_back(i);
      if (bad > worst_bad) {
        worst_bad = bad;
        worst = i;
      }
    }
    if (split.empty()) split.push_back(worst);
    std::vector<Panel> next;
    next.reserve(panels.size() + split.size());
    std::size_t s = 0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      if (s < split.size() && split[s] == i) {
        ++s;
        const Real mid = (panels[i].a + panels[i].b) / 2;
        Panel l, r;
        l.a = panels[i].a;
        l.b = mid;
        r.a = mid;
        r.b = panels[i].b;
        apply_rule(f, dim, l, buf);
        apply_rule(f, dim, r, buf);
        next.push_back(std::move(l));
        next.push_back(std::move(r));
      } else {
        next.push_back(std::move(panels[i]));
      }
    }
    panels = std::move(next);
  }
  return {total, err, static_cast<int>(panels.size())};
}

Real integrate_scalar(const std::function<Real(const Real&)>& f, const Real& a, const Real& b,
                      const QuadratureConfig& cfg, int initial_panels) {
  auto res = integrate([&](const Real& x, Real* out) { out[0] = f(x); }, 1, a, b, cfg, initial_panels);
  return res.value[0];
}

}  // namespace heatdr
