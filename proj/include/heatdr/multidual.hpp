#ifndef HEATDR_MULTIDUAL_HPP
#define HEATDR_MULTIDUAL_HPP

#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace heatdr {

// Truncated Taylor value in k nilpotent directions e_1..e_k with e_i^2 = 0.
// Coefficient c[S] multiplies prod_{i in S} e_i, S encoded as a bitmask.
// Order 0 values act as scalars and combine with any order.
template <class T>
class MultiDual {
 public:
  MultiDual() : coeff_(1, T(0)) {}
  MultiDual(T value) : coeff_(1, std::move(value)) {}  // NOLINT: scalars promote
  MultiDual(int value) : coeff_(1, T(value)) {}        // NOLINT

  static MultiDual constant(int order, T value) {
    MultiDual d;
    d.order_ = order;
    d.coeff_.assign(std::size_t{1} << order, T(0));
    d.coeff_[0] = std::move(value);
    return d;
  }
  // value + e_direction (direction is 0-based).
  static MultiDual variable(int order, int direction, T value) {
    MultiDual d = constant(order, std::move(value));
    d.coeff_[std::size_t{1} << direction] = T(1);
    return d;
  }

  int order() const { return order_; }
  std::size_t size() const { return coeff_.size(); }
  const T& operator[](std::size_t mask) const { return coeff_[mask]; }
  T& operator[](std::size_t mask) { return coeff_[mask]; }
  const T& value() const { return coeff_[0]; }
  // Coefficient of e_1 e_2 ... e_k: the mixed derivative d_1 ... d_k.
  const T& top() const { return coeff_.back(); }

  MultiDual& operator+=(const MultiDual& o) {
    promote(o.order_);
    if (o.order_ == 0) {
      coeff_[0] += o.coeff_[0];
    } else {
      for (std::size_t s = 0; s < coeff_.size(); ++s) coeff_[s] += o.coeff_[s];
    }
    return *this;
  }
  MultiDual& operator-=(const MultiDual& o) {
    promote(o.order_);
    if (o.order_ == 0) {
      coeff_[0] -= o.coeff_[0];
    } else {
      for (std::size_t s = 0; s < coeff_.size(); ++s) coeff_[s] -= o.coeff_[s];
    }
    return *this;
  }
  MultiDual& operator*=(const MultiDual& o) {
    if (o.order_ == 0) {
      for (auto& c : coeff_) c *= o.coeff_[0];
      return *this;
    }
    if (order_ == 0) {
      T s = coeff_[0];
      *this = o;
      for (auto& c : coeff_) c *= s;
      return *this;
    }
    check_same(o.order_);
    std::vector<T> out(coeff_.size(), T(0));
    // Subset convolution: out[S] = sum_{A subset S} a[A] b[S \ A].
    for (std::size_t s = 0; s < coeff_.size(); ++s) {
      for (std::size_t a = s;; a = (a - 1) & s) {
        out[s] += coeff_[a] * o.coeff_[s ^ a];
        if (a == 0) break;
      }
    }
    coeff_ = std::move(out);
    return *this;
  }
  MultiDual& operator/=(const MultiDual& o) { return *this *= reciprocal(o); }

  friend MultiDual operator+(MultiDual a, const MultiDual& b) { return a += b; }
  friend MultiDual operator-(MultiDual a, const MultiDual& b) { return a -= b; }
  friend MultiDual operator*(MultiDual a, const MultiDual& b) { return a *= b; }
  friend MultiDual operator/(MultiDual a, const MultiDual& b) { return a /= b; }
  friend MultiDual operator-(MultiDual a) {
    for (auto& c : a.coeff_) c = -c;
    return a;
  }

  // f(x) for smooth f given derivs[m] = f^{(m)}(x.value()), m = 0..order.
  // Uses f(x0 + d) = sum_m f^{(m)}(x0) d^m / m!, exact since d^{k+1} = 0.
  friend MultiDual compose(const MultiDual& x, const std::vector<T>& derivs) {
    MultiDual delta = x;
    delta.coeff_[0] = T(0);
    MultiDual result = MultiDual::constant(x.order_, derivs.at(0));
    MultiDual power = MultiDual::constant(x.order_, T(1));
    T factorial = T(1);
    const int top = std::min<int>(x.order_, static_cast<int>(derivs.size()) - 1);
    for (int m = 1; m <= top; ++m) {
      power *= delta;
      factorial *= m;
      result += power * MultiDual(derivs[m] / factorial);
    }
    return result;
  }

  friend MultiDual reciprocal(const MultiDual& x) {
    const T x0 = x.value();
    std::vector<T> d(x.order_ + 1);
    T p = T(1) / x0;
    for (int m = 0; m <= x.order_; ++m) {
      d[m] = p;
      p *= -T(m + 1) / x0;
    }
    return compose(x, d);
  }
  // x^alpha for x.value() > 0.
  friend MultiDual pow(const MultiDual& x, const T& alpha) {
    using std::pow;
    const T x0 = x.value();
    std::vector<T> d(x.order_ + 1);
    T c = T(1);
    for (int m = 0; m <= x.order_; ++m) {
      d[m] = c * pow(x0, alpha - m);
      c *= alpha - m;
    }
    return compose(x, d);
  }
  friend MultiDual sqrt(const MultiDual& x) { return pow(x, T(1) / 2); }
  friend MultiDual exp(const MultiDual& x) {
    using std::exp;
    return compose(x, std::vector<T>(x.order_ + 1, exp(x.value())));
  }
  friend MultiDual log(const MultiDual& x) {
    using std::log;
    const T x0 = x.value();
    std::vector<T> d(x.order_ + 1);
    d[0] = log(x0);
    T p = T(1) / x0;
    for (int m = 1; m <= x.order_; ++m) {
      d[m] = p;
      p *= -T(m) / x0;
    }
    return compose(x, d);
  }
  friend MultiDual log1p(const MultiDual& x) {
    using std::log1p;
    const T x0 = x.value();
    std::vector<T> d(x.order_ + 1);
    d[0] = log1p(x0);
    const T inv = T(1) / (T(1) + x0);
    T p = inv;
    for (int m = 1; m <= x.order_; ++m) {
      d[m] = p;
      p *= -T(m) * inv;
    }
    return compose(x, d);
  }

 private:
  void promote(int other) {
    if (other == 0 || other == order_) return;
    if (order_ != 0) check_same(other);
    T v = coeff_[0];
    *this = constant(other, v);
  }
  void check_same(int other) const {
    if (other != order_) throw std::invalid_argument("MultiDual order mismatch");
  }

  int order_ = 0;
  std::vector<T> coeff_;
};

}  // namespace heatdr

#endif
