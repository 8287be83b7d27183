#include "heatdr/hyp_expr.hpp"

#include <algorithm>
#include <stdexcept>

namespace heatdr {

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly LaurentPoly::monomial(int power, const Rational& c) {
  LaurentPoly p;
  if (c != 0) {
    p.low_ = power;
    p.c_.push_back(c);
    p.c_.back().canonicalize();
  }
  return p;
}

LaurentPoly LaurentPoly::from_coefficients(int low, std::vector<Rational> c) {
  LaurentPoly p;
  p.low_ = low;
  p.c_ = std::move(c);
  for (auto& x : p.c_) x.canonicalize();
  p.trim();
  return p;
}

void LaurentPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
  std::size_t first = 0;
  while (first < c_.size() && c_[first] == 0) ++first;
  if (first > 0) {
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(first));
    low_ += static_cast<int>(first);
  }
  if (c_.empty()) low_ = 0;
}

Rational LaurentPoly::coeff(int power) const {
  if (c_.empty() || power < low_ || power > high()) return 0;
  return c_[power - low_];
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  const int lo = std::min(low_, o.low_);
  const int hi = std::max(high(), o.high());
  std::vector<Rational> c(hi - lo + 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) c[low_ - lo + i] = c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) c[o.low_ - lo + i] += o.c_[i];
  low_ = lo;
  c_ = std::move(c);
  trim();
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  LaurentPoly neg = o;
  neg *= Rational(-1);
  return *this += neg;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = LaurentPoly();
  std::vector<Rational> c(c_.size() + o.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
  }
  low_ += o.low_;
  c_ = std::move(c);
  trim();
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Rational& s) {
  if (s == 0) return *this = LaurentPoly();
  Rational f = s;
  f.canonicalize();
  for (auto& c : c_) c *= f;
  return *this;
}

LaurentPoly LaurentPoly::euler() const {
  LaurentPoly p = *this;
  for (std::size_t i = 0; i < p.c_.size(); ++i) p.c_[i] *= low_ + static_cast<int>(i);
  p.trim();
  return p;
}

LaurentPoly LaurentPoly::shifted(int by) const {
  LaurentPoly p = *this;
  if (!p.is_zero()) p.low_ += by;
  return p;
}

LaurentPoly LaurentPoly::factor_poly(Factor f) {
  switch (f) {
    case Factor::UMinusOne: return from_coefficients(0, {Rational(-1), Rational(1)});
    case Factor::UPlusOne: return from_coefficients(0, {Rational(1), Rational(1)});
    case Factor::USquarePlusOne: return from_coefficients(0, {Rational(1), Rational(0), Rational(1)});
  }
  throw std::logic_error("bad factor");
}

bool LaurentPoly::try_divide(Factor f, LaurentPoly& quotient) const {
  if (is_zero()) {
    quotient = LaurentPoly();
    return true;
  }
  const int d = static_cast<int>(c_.size()) - 1;
  const auto& c = c_;
  if (f == Factor::USquarePlusOne) {
    if (d < 2) return false;
    std::vector<Rational> q(d - 1, Rational(0));
    for (int i = d; i >= 2; --i) q[i - 2] = c[i] - (i <= d - 2 ? q[i] : Rational(0));
    const Rational r1 = c[1] - (1 <= d - 2 ? q[1] : Rational(0));
    const Rational r0 = c[0] - q[0];
    if (r1 != 0 || r0 != 0) return false;
    quotient = from_coefficients(low_, std::move(q));
    return true;
  }
  if (d < 1) return false;
  const int sign = f == Factor::UMinusOne ? 1 : -1;  // root u = 1 or u = -1
  std::vector<Rational> q(d, Rational(0));
  q[d - 1] = c[d];
  for (int i = d - 1; i >= 1; --i) q[i - 1] = c[i] + sign * q[i];
  if (c[0] + sign * q[0] != 0) return false;
  quotient = from_coefficients(low_, std::move(q));
  return true;
}

std::string LaurentPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    const int m = low_ + static_cast<int>(i);
    Rational a = abs(c_[i]);
    std::string term;
    if (m == 0) {
      term = a.get_str();
    } else {
      if (a != 1) term = a.get_str() + "*";
      term += var;
      if (m != 1) term += "^" + std::to_string(m);
    }
    if (out.empty()) {
      out = (c_[i] < 0 ? "-" : "") + term;
    } else {
      out += (c_[i] < 0 ? " - " : " + ") + term;
    }
  }
  return out;
}

// ---------------------------------------------------------------- HypExpr

namespace {

using F = LaurentPoly::Factor;

LaurentPoly factor_power(F f, int e) {
  LaurentPoly p = LaurentPoly::constant(1);
  const LaurentPoly base = LaurentPoly::factor_poly(f);
  for (int i = 0; i < e; ++i) p *= base;
  return p;
}

}  // namespace

HypExpr HypExpr::from_parts(std::vector<LaurentPoly> numerator, int e1, int e2, int e3) {
  if (e1 < 0 || e2 < 0 || e3 < 0) throw std::invalid_argument("negative denominator exponent");
  HypExpr h;
  h.num_ = std::move(numerator);
  h.e1_ = e1;
  h.e2_ = e2;
  h.e3_ = e3;
  h.canonicalize();
  return h;
}

HypExpr HypExpr::constant(const Rational& c) { return from_parts({LaurentPoly::constant(c)}, 0, 0, 0); }

HypExpr HypExpr::r_power(int i) {
  std::vector<LaurentPoly> n(i + 1);
  n[i] = LaurentPoly::constant(1);
  return from_parts(std::move(n), 0, 0, 0);
}

HypExpr HypExpr::u_power(int m) { return from_parts({LaurentPoly::monomial(m, 1)}, 0, 0, 0); }

HypExpr HypExpr::sinh_r() {
  return from_parts({LaurentPoly::monomial(2, Rational(1, 2)) - LaurentPoly::monomial(-2, Rational(1, 2))}, 0,
                    0, 0);
}

HypExpr HypExpr::cosh_r() {
  return from_parts({LaurentPoly::monomial(2, Rational(1, 2)) + LaurentPoly::monomial(-2, Rational(1, 2))}, 0,
                    0, 0);
}

HypExpr HypExpr::sinh_half() {
  return from_parts({LaurentPoly::monomial(1, Rational(1, 2)) - LaurentPoly::monomial(-1, Rational(1, 2))}, 0,
                    0, 0);
}

HypExpr HypExpr::cosh_half() {
  return from_parts({LaurentPoly::monomial(1, Rational(1, 2)) + LaurentPoly::monomial(-1, Rational(1, 2))}, 0,
                    0, 0);
}

HypExpr HypExpr::coth_half() {
  // (u^2 + 1) / ((u - 1)(u + 1))
  return from_parts({factor_power(F::USquarePlusOne, 1)}, 1, 1, 0);
}

HypExpr HypExpr::tanh_half() {
  // (u^2 - 1) / (u^2 + 1)
  return from_parts({factor_power(F::UMinusOne, 1) * factor_power(F::UPlusOne, 1)}, 0, 0, 1);
}

HypExpr HypExpr::coth_r() {
  // (u^4 + 1) / (u^4 - 1)
  return from_parts({LaurentPoly::monomial(4, 1) + LaurentPoly::constant(1)}, 1, 1, 1);
}

HypExpr HypExpr::inv_sinh_r() {
  // 2 u^2 / (u^4 - 1)
  return from_parts({LaurentPoly::monomial(2, 2)}, 1, 1, 1);
}

HypExpr HypExpr::inv_sinh_half() {
  // 2 u / (u^2 - 1)
  return from_parts({LaurentPoly::monomial(1, 2)}, 1, 1, 0);
}

LaurentPoly HypExpr::denominator() const {
  return factor_power(F::UMinusOne, e1_) * factor_power(F::UPlusOne, e2_) * factor_power(F::USquarePlusOne, e3_);
}

void HypExpr::canonicalize() {
  while (!num_.empty() && num_.back().is_zero()) num_.pop_back();
  if (num_.empty()) {
    e1_ = e2_ = e3_ = 0;
    return;
  }
  const std::pair<F, int*> factors[] = {{F::UMinusOne, &e1_}, {F::UPlusOne, &e2_}, {F::USquarePlusOne, &e3_}};
  for (const auto& [f, e] : factors) {
    while (*e > 0) {
      std::vector<LaurentPoly> q(num_.size());
      bool ok = true;
      for (std::size_t i = 0; i < num_.size() && ok; ++i) ok = num_[i].try_divide(f, q[i]);
      if (!ok) break;
      num_ = std::move(q);
      --*e;
    }
  }
}

void HypExpr::raise_denominator(int e1, int e2, int e3) {
  const LaurentPoly m =
      factor_power(F::UMinusOne, e1 - e1_) * factor_power(F::UPlusOne, e2 - e2_) * factor_power(F::USquarePlusOne, e3 - e3_);
  for (auto& n : num_) n *= m;
  e1_ = e1;
  e2_ = e2;
  e3_ = e3;
}

HypExpr& HypExpr::operator+=(const HypExpr& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  const int e1 = std::max(e1_, o.e1_), e2 = std::max(e2_, o.e2_), e3 = std::max(e3_, o.e3_);
  HypExpr b = o;
  raise_denominator(e1, e2, e3);
  b.raise_denominator(e1, e2, e3);
  if (num_.size() < b.num_.size()) num_.resize(b.num_.size());
  for (std::size_t i = 0; i < b.num_.size(); ++i) num_[i] += b.num_[i];
  canonicalize();
  return *this;
}

HypExpr& HypExpr::operator-=(const HypExpr& o) { return *this += o * Rational(-1); }

HypExpr& HypExpr::operator*=(const HypExpr& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = HypExpr();
  std::vector<LaurentPoly> n(num_.size() + o.num_.size() - 1);
  for (std::size_t i = 0; i < num_.size(); ++i)
    for (std::size_t j = 0; j < o.num_.size(); ++j)
      if (!num_[i].is_zero() && !o.num_[j].is_zero()) n[i + j] += num_[i] * o.num_[j];
  num_ = std::move(n);
  e1_ += o.e1_;
  e2_ += o.e2_;
  e3_ += o.e3_;
  canonicalize();
  return *this;
}

HypExpr& HypExpr::operator*=(const Rational& s) {
  for (auto& n : num_) n *= s;
  canonicalize();
  return *this;
}

HypExpr HypExpr::derivative() const {
  if (is_zero()) return HypExpr();
  // d/dr (N/D) = (N' L - N W) / (D L), where L is the product of the factors
  // present in D and W = L D'/D.  Here d/dr u^m = (m/2) u^m.
  const int p1 = e1_ > 0, p2 = e2_ > 0, p3 = e3_ > 0;
  const LaurentPoly L = factor_power(F::UMinusOne, p1) * factor_power(F::UPlusOne, p2) * factor_power(F::USquarePlusOne, p3);
  LaurentPoly W;
  if (p1) W += factor_power(F::UPlusOne, p2) * factor_power(F::USquarePlusOne, p3) * Rational(e1_);
  if (p2) W += factor_power(F::UMinusOne, p1) * factor_power(F::USquarePlusOne, p3) * Rational(e2_);
  if (p3) W += factor_power(F::UMinusOne, p1) * factor_power(F::UPlusOne, p2) * LaurentPoly::monomial(1, 2 * e3_);
  W = W.shifted(1) * Rational(1, 2);

  std::vector<LaurentPoly> out(num_.size());
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (num_[i].is_zero()) continue;
    LaurentPoly dn = num_[i].euler() * Rational(1, 2);
    out[i] += dn * L;
    if (!W.is_zero()) out[i] -= num_[i] * W;
    if (i > 0) out[i - 1] += num_[i] * L * Rational(static_cast<long>(i));
  }
  return from_parts(std::move(out), e1_ + p1, e2_ + p2, e3_ + p3);
}

std::string HypExpr::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < num_.size(); ++i) {
    const auto& n = num_[i];
    for (int m = n.low(); !n.is_zero() && m <= n.high(); ++m) {
      const Rational c = n.coeff(m);
      if (c == 0) continue;
      std::string term;
      const Rational a = abs(c);
      std::string factors;
      if (i > 0) factors += i == 1 ? "r" : "r^" + std::to_string(i);
      if (m != 0) factors += (factors.empty() ? "" : "*") + std::string(m == 1 ? "u" : "u^" + std::to_string(m));
      if (factors.empty()) {
        term = a.get_str();
      } else {
        term = (a == 1 ? "" : a.get_str() + "*") + factors;
      }
      if (out.empty()) {
        out = (c < 0 ? "-" : "") + term;
      } else {
        out += (c < 0 ? " - " : " + ") + term;
      }
    }
  }
  if (e1_ == 0 && e2_ == 0 && e3_ == 0) return out;
  return "(" + out + ") / (" + denominator().to_string() + ")";
}

HypExpr hyp_differentiate(const HypExpr& e) { return e.derivative(); }

HypExpr pow(const HypExpr& e, int k) {
  if (k < 0) throw std::invalid_argument("negative power of HypExpr");
  HypExpr out = HypExpr::constant(1);
  for (int i = 0; i < k; ++i) out *= e;
  return out;
}

}  // namespace heatdr
