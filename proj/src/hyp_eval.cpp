#include "heatdr/hyp_eval.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <set>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "heatdr/error.hpp"

namespace heatdr {

namespace {

namespace bmp = boost::multiprecision;
using SeriesFloat = bmp::number<bmp::mpfr_float_backend<116>, bmp::et_off>;  // ~384 bits

constexpr int kSeriesTerms = 100;
const Real kSeriesSwitchCondition = Real(1 << 20);

Real rational_to_real(const Rational& q) {
  // Exact numerator / denominator at 384 bits, then rounded once.
  SeriesFloat n(q.get_num().get_str());
  SeriesFloat d(q.get_den().get_str());
  return Real((n / d).str(40, std::ios_base::scientific));
}

}  // namespace

struct CompiledHyp::Impl {
  HypExpr expr;
  // Per r-power i: coefficients of u^{lo_i..hi_i}.
  std::vector<int> lo, hi;
  std::vector<std::vector<Real>> coef;
  std::vector<std::vector<Real>> abs_coef;
  int top_power = 0;  // max hi_i
  int e1 = 0, e2 = 0, e3 = 0;
  Real radius = 0;

  mutable std::once_flag series_once;
  mutable int lead = 0;
  mutable Rational lead_coefficient;
  mutable std::vector<Real> q;  // value = r^lead * sum q_n r^n

  void build_series() const;
};

void CompiledHyp::Impl::build_series() const {
  // N(r) = sum_i r^i sum_m c_im e^{m r / 2}.  With C_im = L c_im integral,
  // [r^n] N = S_n / (L 2^n n!),  S_n = sum_{i<=n} 2^i n!/(n-i)! sum_m C_im m^{n-i}.
  mpz_class L = 1;
  for (const auto& n : expr.numerator())
    for (const auto& c : n.coefficients())
      if (c != 0) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), c.get_den_mpz_t());
  const int I = static_cast<int>(expr.numerator().size());
  std::vector<std::map<int, mpz_class>> C(I);
  std::set<int> powers;
  for (int i = 0; i < I; ++i) {
    const auto& n = expr.numerator()[i];
    for (int m = n.low(); !n.is_zero() && m <= n.high(); ++m) {
      const Rational c = n.coeff(m);
      if (c == 0) continue;
      C[i][m] = mpz_class(c * L);
      powers.insert(m);
    }
  }
  const LaurentPoly D = expr.denominator();
  std::map<int, mpz_class> Dc;
  for (int m = D.low(); m <= D.high(); ++m)
    if (D.coeff(m) != 0) {
      Dc[m] = mpz_class(D.coeff(m));
      powers.insert(m);
    }

  std::map<int, mpz_class> pw;  // m^k, advanced with k
  for (int m : powers) pw[m] = 1;
  std::vector<std::vector<mpz_class>> T(I);  // T[i][k] = sum_m C_im m^k
  std::vector<mpz_class> SD;                 // sum_m d_m m^k
  auto advance = [&]() {
    for (int i = 0; i < I; ++i) {
      mpz_class s = 0;
      for (const auto& [m, c] : C[i]) s += c * pw[m];
      T[i].push_back(s);
    }
    mpz_class s = 0;
    for (const auto& [m, d] : Dc) s += d * pw[m];
    SD.push_back(s);
    for (auto& [m, p] : pw) p *= m;
  };
  auto S = [&](int n) {
    mpz_class s = 0;
    mpz_class falling = 1;  // n!/(n-i)!
    for (int i = 0; i <= n && i < I; ++i) {
      if (i > 0) falling *= n - i + 1;
      if (!C[i].empty()) s += (mpz_class(1) << i) * falling * T[i][n - i];
    }
    return s;
  };
  // Leading power of the numerator.
  int nu = -1;
  std::vector<mpz_class> Sn;
  for (int n = 0; n < 2000; ++n) {
    advance();
    Sn.push_back(S(n));
    if (Sn.back() != 0) {
      nu = n;
      break;
    }
  }
  if (nu < 0) fail(Errc::PoleAtPoint, "numerator series did not terminate");
  const int a = e1;
  const int nmax = std::max(nu, a) + kSeriesTerms;
  while (static_cast<int>(SD.size()) <= nmax) {
    advance();
    Sn.push_back(S(static_cast<int>(Sn.size())));
  }
  lead = nu - a;
  // [r^n]N = S_n / (L 2^n n!), [r^n]D = SD_n / (2^n n!).
  auto coeff_n = [&](const mpz_class& s, int n, const mpz_class& extra) {
    mpz_class den = extra << n;
    for (int j = 2; j <= n; ++j) den *= j;
    return Rational(s, den);
  };
  const Rational n0 = coeff_n(Sn[nu], nu, L);
  const Rational d0 = coeff_n(SD[a], a, mpz_class(1));
  lead_coefficient = n0 / d0;
  lead_coefficient.canonicalize();

  std::vector<SeriesFloat> nt(kSeriesTerms), dt(kSeriesTerms), qt(kSeriesTerms);
  auto to_float = [](const Rational& r) {
    return SeriesFloat(r.get_num().get_str()) / SeriesFloat(r.get_den().get_str());
  };
  for (int k = 0; k < kSeriesTerms; ++k) {
    nt[k] = to_float(coeff_n(Sn[nu + k], nu + k, L));
    dt[k] = to_float(coeff_n(SD[a + k], a + k, mpz_class(1)));
  }
  q.resize(kSeriesTerms);
  for (int k = 0; k < kSeriesTerms; ++k) {
    SeriesFloat s = nt[k];
    for (int j = 0; j < k; ++j) s -= qt[j] * dt[k - j];
    qt[k] = s / dt[0];
    q[k] = Real(qt[k].str(40, std::ios_base::scientific));
  }
}

CompiledHyp::CompiledHyp() : CompiledHyp(HypExpr()) {}

CompiledHyp::CompiledHyp(const HypExpr& e) {
  auto impl = std::make_shared<Impl>();
  impl->expr = e;
  impl->e1 = e.exp_u_minus_1();
  impl->e2 = e.exp_u_plus_1();
  impl->e3 = e.exp_u2_plus_1();
  bool first = true;
  for (const auto& n : e.numerator()) {
    impl->lo.push_back(n.low());
    impl->hi.push_back(n.high());
    std::vector<Real> c, ac;
    for (const auto& v : n.coefficients()) {
      c.push_back(rational_to_real(v));
      ac.push_back(abs(c.back()));
    }
    impl->coef.push_back(std::move(c));
    impl->abs_coef.push_back(std::move(ac));
    if (!n.is_zero()) {
      impl->top_power = first ? n.high() : std::max(impl->top_power, n.high());
      first = false;
    }
  }
  const Real pi = boost::math::constants::pi<Real>();
  impl->radius = impl->e3 > 0 ? pi : impl->e2 > 0 ? 2 * pi : 4 * pi;
  impl_ = std::move(impl);
}

const HypExpr& CompiledHyp::expr() const { return impl_->expr; }
bool CompiledHyp::is_zero() const { return impl_->expr.is_zero(); }
Real CompiledHyp::series_radius() const { return impl_->radius; }

int CompiledHyp::order_at_zero() const {
  if (is_zero()) fail(Errc::BadParameter, "order of the zero expression");
  std::call_once(impl_->series_once, [this] { impl_->build_series(); });
  return impl_->lead;
}

Rational CompiledHyp::leading_coefficient_at_zero() const {
  if (is_zero()) return 0;
  std::call_once(impl_->series_once, [this] { impl_->build_series(); });
  return impl_->lead_coefficient;
}

HypPoint::HypPoint(const Real& r_) : r(r_), uinv(exp(-r_ / 2)), one_minus_uinv(-expm1(-r_ / 2)) {}

namespace {

Real int_power(Real x, int k) {
  if (k < 0) return 1 / int_power(x, -k);
  Real out = 1;
  while (k) {
    if (k & 1) out *= x;
    x *= x;
    k >>= 1;
  }
  return out;
}

}  // namespace

Real CompiledHyp::direct(const Real& r, Real* condition) const { return direct(HypPoint(r), condition); }

Real CompiledHyp::direct(const HypPoint& p, Real* condition) const {
  const Impl& d = *impl_;
  if (d.expr.is_zero()) {
    if (condition) *condition = 1;
    return 0;
  }
  const Real& uinv = p.uinv;
  Real num = 0, absnum = 0;
  Real rp = 1;
  for (std::size_t i = 0; i < d.coef.size(); ++i, rp *= p.r) {
    const auto& c = d.coef[i];
    if (c.empty()) continue;
    // sum_m c_m u^{m - hi_i} by Horner in 1/u from the lowest power.
    Real s = 0, as = 0;
    for (std::size_t j = 0; j < c.size(); ++j) {
      s = s * uinv + c[j];
      as = as * uinv + d.abs_coef[i][j];
    }
    const Real scale = rp * int_power(uinv, d.top_power - d.hi[i]);
    num += s * scale;
    absnum += as * scale;
  }
  // D = u^{e1+e2+2e3} (1 - 1/u)^{e1} (1 + 1/u)^{e2} (1 + 1/u^2)^{e3}.
  Real den = 1;
  if (d.e1) den *= int_power(p.one_minus_uinv, d.e1);
  if (d.e2) den *= int_power(1 + uinv, d.e2);
  if (d.e3) den *= int_power(1 + uinv * uinv, d.e3);
  const int shift = d.top_power - (d.e1 + d.e2 + 2 * d.e3);
  if (condition) *condition = num == 0 ? std::numeric_limits<Real>::infinity() : absnum / abs(num);
  return int_power(uinv, -shift) * num / den;
}

Real CompiledHyp::series(const Real& r) const {
  std::call_once(impl_->series_once, [this] { impl_->build_series(); });
  const Impl& d = *impl_;
  if (r == 0) {
    if (d.lead < 0) fail(Errc::PoleAtPoint, "pole at r = 0");
    return d.lead == 0 ? d.q[0] : Real(0);
  }
  Real s = 0;
  for (auto it = d.q.rbegin(); it != d.q.rend(); ++it) s = s * r + *it;
  return d.lead == 0 ? s : s * pow(r, d.lead);
}

Real CompiledHyp::operator()(const Real& r) const {
  if (r < 0) fail(Errc::OutOfRange, "radial expressions are evaluated at r >= 0");
  if (is_zero()) return 0;
  if (r == 0) return series(r);
  return (*this)(HypPoint(r));
}

Real CompiledHyp::operator()(const HypPoint& p) const {
  if (p.r < 0) fail(Errc::OutOfRange, "radial expressions are evaluated at r >= 0");
  if (is_zero()) return 0;
  if (p.r == 0) return series(p.r);
  Real cond;
  const Real v = direct(p, &cond);
  if (cond > kSeriesSwitchCondition && p.r <= impl_->radius * Real(0.4)) return series(p.r);
  return v;
}

Real eval_hyp(const HypExpr& e, const Real& r, int precision_bits) {
  if (precision_bits < 2) fail(Errc::BadParameter, "precision_bits must be positive");
  if (precision_bits > kWorkingPrecisionBits)
    return Real(eval_hyp_decimal(e, format_real(r, 40), precision_bits));
  return CompiledHyp(e)(r);
}

std::string eval_hyp_decimal(const HypExpr& e, const std::string& r_text, int precision_bits) {
  using bmp::mpfr_float;
  static std::mutex precision_mutex;  // mpfr_float's default precision is process-global
  std::lock_guard<std::mutex> lock(precision_mutex);
  const unsigned saved = mpfr_float::default_precision();
  const int out_digits = static_cast<int>(std::ceil(precision_bits * 0.30103)) + 2;

  auto evaluate = [&](int bits) {
    mpfr_float::default_precision(static_cast<unsigned>(std::ceil(bits * 0.30103)) + 1);
    const mpfr_float r(r_text);
    if (r < 0) fail(Errc::OutOfRange, "radial expressions are evaluated at r >= 0");
    if (r == 0) {
      CompiledHyp c(e);
      if (e.is_zero()) return mpfr_float(0);
      if (c.order_at_zero() < 0) fail(Errc::PoleAtPoint, "pole at r = 0");
      if (c.order_at_zero() > 0) return mpfr_float(0);
      const Rational q = c.leading_coefficient_at_zero();
      return mpfr_float(q.get_num().get_str()) / mpfr_float(q.get_den().get_str());
    }
    const mpfr_float u = exp(r / 2);
    mpfr_float num = 0;
    mpfr_float rp = 1;
    for (const auto& n : e.numerator()) {
      mpfr_float s = 0;
      for (int m = n.low(); !n.is_zero() && m <= n.high(); ++m) {
        const Rational c = n.coeff(m);
        if (c == 0) continue;
        s += mpfr_float(c.get_num().get_str()) / mpfr_float(c.get_den().get_str()) * pow(u, m);
      }
      num += rp * s;
      rp *= r;
    }
    mpfr_float den = pow(expm1(r / 2), e.exp_u_minus_1()) * pow(u + 1, e.exp_u_plus_1()) *
                     pow(u * u + 1, e.exp_u2_plus_1());
    return mpfr_float(num / den);
  };

  std::string result;
  try {
    int guard = 64;
    mpfr_float prev = evaluate(precision_bits + guard);
    for (int attempt = 0; attempt < 12; ++attempt) {
      guard *= 2;
      const mpfr_float next = evaluate(precision_bits + guard);
      const mpfr_float tol = ldexp(abs(next), -precision_bits - 4);
      if (abs(next - prev) <= tol) {
        result = next.str(out_digits, std::ios_base::scientific);
        break;
      }
      prev = next;
    }
  } catch (...) {
    mpfr_float::default_precision(saved);
    throw;
  }
  mpfr_float::default_precision(saved);
  if (result.empty()) fail(Errc::PoleAtPoint, "multi-precision evaluation did not settle");
  return result;
}

}  // namespace heatdr
