#ifndef HEATDR_HYP_EXPR_HPP
#define HEATDR_HYP_EXPR_HPP

#include <string>
#include <vector>

#include <gmpxx.h>

namespace heatdr {

using Rational = mpq_class;

// Laurent polynomial in u with exact rational coefficients, stored densely
// from the lowest nonzero power.  The zero polynomial has no coefficients.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  static LaurentPoly monomial(int power, const Rational& c);
  static LaurentPoly constant(const Rational& c) { return monomial(0, c); }
  // Coefficients c[0..] of u^{low}, u^{low+1}, ...
  static LaurentPoly from_coefficients(int low, std::vector<Rational> c);

  bool is_zero() const { return c_.empty(); }
  int low() const { return low_; }
  int high() const { return low_ + static_cast<int>(c_.size()) - 1; }
  Rational coeff(int power) const;
  const std::vector<Rational>& coefficients() const { return c_; }

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  LaurentPoly& operator*=(const Rational& s);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, const LaurentPoly& b) { return a *= b; }
  friend LaurentPoly operator*(LaurentPoly a, const Rational& s) { return a *= s; }
  bool operator==(const LaurentPoly& o) const { return low_ == o.low_ && c_ == o.c_; }

  // u d/du
  LaurentPoly euler() const;
  LaurentPoly shifted(int by) const;  // multiply by u^by

  enum class Factor { UMinusOne, UPlusOne, USquarePlusOne };
  static LaurentPoly factor_poly(Factor f);
  // Exact quotient when divisible, otherwise returns false.
  bool try_divide(Factor f, LaurentPoly& quotient) const;

  std::string to_string(const std::string& var = "u") const;

 private:
  void trim();
  int low_ = 0;
  std::vector<Rational> c_;
};

// Exact radial expression N(r, u) / D(u), u = e^{r/2}:
//   N = sum_i r^i N_i(u) with Laurent N_i,
//   D = (u - 1)^{e1} (u + 1)^{e2} (u^2 + 1)^{e3}.
// Canonical form: no factor of D divides every N_i; trailing zero N_i removed.
class HypExpr {
 public:
  HypExpr() = default;
  static HypExpr constant(const Rational& c);
  static HypExpr r_power(int i);
  static HypExpr u_power(int m);
  static HypExpr sinh_r();
  static HypExpr cosh_r();
  static HypExpr sinh_half();
  static HypExpr cosh_half();
  static HypExpr coth_half();
  static HypExpr tanh_half();
  static HypExpr coth_r();
  static HypExpr inv_sinh_r();
  static HypExpr inv_sinh_half();
  static HypExpr from_parts(std::vector<LaurentPoly> numerator, int e_u_minus_1, int e_u_plus_1,
                            int e_u2_plus_1);

  const std::vector<LaurentPoly>& numerator() const { return num_; }
  int exp_u_minus_1() const { return e1_; }
  int exp_u_plus_1() const { return e2_; }
  int exp_u2_plus_1() const { return e3_; }
  LaurentPoly denominator() const;
  bool is_zero() const { return num_.empty(); }
  int r_degree() const { return static_cast<int>(num_.size()) - 1; }

  HypExpr derivative() const;
  HypExpr& operator+=(const HypExpr& o);
  HypExpr& operator-=(const HypExpr& o);
  HypExpr& operator*=(const HypExpr& o);
  HypExpr& operator*=(const Rational& s);
  friend HypExpr operator+(HypExpr a, const HypExpr& b) { return a += b; }
  friend HypExpr operator-(HypExpr a, const HypExpr& b) { return a -= b; }
  friend HypExpr operator-(HypExpr a) { return a *= Rational(-1); }
  friend HypExpr operator*(HypExpr a, const HypExpr& b) { return a *= b; }
  friend HypExpr operator*(HypExpr a, const Rational& s) { return a *= s; }
  friend HypExpr operator*(const Rational& s, HypExpr a) { return a *= s; }
  bool operator==(const HypExpr& o) const {
    return e1_ == o.e1_ && e2_ == o.e2_ && e3_ == o.e3_ && num_ == o.num_;
  }

  // "N / (D)" with monomials c*r^i*u^m in (i, m) order; "N" when D = 1.
  std::string to_string() const;

 private:
  void raise_denominator(int e1, int e2, int e3);
  void canonicalize();

  std::vector<LaurentPoly> num_;
  int e1_ = 0;
  int e2_ = 0;
  int e3_ = 0;
};

HypExpr hyp_differentiate(const HypExpr& e);
HypExpr pow(const HypExpr& e, int k);

}  // namespace heatdr

#endif
