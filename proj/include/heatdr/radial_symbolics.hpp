#ifndef HEATDR_RADIAL_SYMBOLICS_HPP
#define HEATDR_RADIAL_SYMBOLICS_HPP

#include <string>
#include <vector>

#include "heatdr/hyp_eval.hpp"
#include "heatdr/hyp_expr.hpp"

namespace heatdr {

// d^k/dr^k = sum_{j=1}^k f_{j,k} R^j with R = (1/sinh r) d/dr.
struct RadialExpansion {
  int k = 0;
  std::vector<HypExpr> f;  // f[j-1] = f_{j,k}
  const HypExpr& operator()(int j) const { return f.at(j - 1); }
};

RadialExpansion radial_expansion(int k);

// f_{j,k} as a homogeneous degree-j polynomial in (S, C) = (sinh r, cosh r):
// coefficient[a] multiplies S^a C^{j-a}.  Integer coefficients.
std::vector<std::vector<mpz_class>> radial_expansion_sc(int k);

struct StructuralReport {
  int k = 0;
  std::vector<int> vanishing_order;      // per j, exact order at r = 0
  std::vector<int> expected_order;       // lower bound (exact value in the upper block)
  std::vector<Real> min_on_grid;         // min over (0,10] of f_{j,k} and its first 3 derivatives
  Rational sharp_coefficient;            // lim f_{(k+1)/2,k}/r (odd k) or f_{k/2,k}(0) (even k)
  std::vector<Real> growth_sup;          // sup_{r>=1} f_{j,k} e^{-jr} on the grid
  bool basis_nonnegative = true;         // all S^a C^b coefficients >= 0
  bool basis_pattern = true;             // a = k mod 2 and a >= max(2j - k, 0)
};

// Throws StructuralViolation naming the failing clause.
StructuralReport structural_check(int k);

// R_{p,q} e^{-r^2/4t} = sum_{j=1}^{p+q} a_j(r) t^{-j} e^{-r^2/4t},
// R_{p,q} = (-(1/sinh r) d/dr)^q (-(1/sinh(r/2)) d/dr)^p.
struct GaussianExpansion {
  int p = 0;
  int q = 0;
  std::vector<HypExpr> a;  // a[j-1] = a_j
  const HypExpr& operator()(int j) const { return a.at(j - 1); }
};

GaussianExpansion gaussian_shift(int p, int q);
// 2^{-(p+q)} (r/sinh(r/2))^p (r/sinh r)^q
HypExpr gaussian_top_coefficient(int p, int q);

// sup over r in (0, 50] of |a_j(r)| e^{(p/2+q) r} / (1+r)^j, per j.
std::vector<Real> gaussian_coefficient_bound_check(int p, int q);

// Linear radial differential operator sum_j c_j(r) d^j/dr^j.
struct RadialOperator {
  std::vector<HypExpr> coeff;  // coeff[j] multiplies d^j
  int order() const { return static_cast<int>(coeff.size()) - 1; }
};

RadialOperator derivative_operator(int k);
// (A o B) f = A(B f)
RadialOperator compose(const RadialOperator& A, const RadialOperator& B);

// Coefficient of d/dr in rad(L) = -d^2 - D d, that is -D with
// D(r) = ((mu+nu)/2) coth(r/2) + (nu/2) tanh(r/2).
HypExpr radial_laplacian_drift(int mu, int nu);

// (-1)^m rad(L)^m = d^{2m} + sum_{j=1}^{2m-1} c_{j,m} d^j.
struct RadialLaplacianExpansion {
  int m = 0;
  RadialOperator op;  // op.coeff[j] = c_{j,m}, op.coeff[2m] = 1, op.coeff[0] = 0
  const HypExpr& c(int j) const { return op.coeff.at(j); }
};

RadialLaplacianExpansion radial_laplacian(int mu, int nu, int m);

}  // namespace heatdr

#endif
