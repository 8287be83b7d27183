#ifndef HEATDR_GROUP_MODEL_HPP
#define HEATDR_GROUP_MODEL_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <gmpxx.h>

#include "heatdr/error.hpp"
#include "heatdr/real.hpp"

namespace heatdr {

using RationalMatrix = std::vector<std::vector<mpq_class>>;

// H-type group N = v (+) z with dim v = mu, dim z = nu, and its extension
// S = N x| R^+.  Immutable once constructed.
class HTypeGroup {
 public:
  int mu() const { return mu_; }
  int nu() const { return nu_; }
  int n() const { return mu_ + nu_ + 1; }
  // Q = (mu + 2 nu) / 2; twice_Q is the integer mu + 2 nu.
  int twice_Q() const { return mu_ + 2 * nu_; }
  Real Q() const { return Real(twice_Q()) / 2; }
  const std::vector<Eigen::MatrixXd>& J() const { return J_; }
  // Entry (J_{u_k})_{row,col} at working precision.
  Real J_entry(int k, int row, int col) const { return Real(J_[k](row, col)); }
  const std::string& label() const { return label_; }

 private:
  friend HTypeGroup make_htype_group(int, int, const std::vector<Eigen::MatrixXd>&);
  friend HTypeGroup make_htype_group_exact(int, int, const std::vector<RationalMatrix>&);
  friend HTypeGroup standard_group(const std::string&, int);

  int mu_ = 0;
  int nu_ = 1;
  std::vector<Eigen::MatrixXd> J_;
  std::string label_;
};

// Floating entries are validated to 1e-12.
HTypeGroup make_htype_group(int mu, int nu, const std::vector<Eigen::MatrixXd>& J);
// Exact rational entries are validated exactly.
HTypeGroup make_htype_group_exact(int mu, int nu, const std::vector<RationalMatrix>& J);

// family in {"real_hyperbolic", "heisenberg", "quaternionic"}; for
// real_hyperbolic the parameter is nu, otherwise it is m.
HTypeGroup standard_group(const std::string& family, int m);

template <class T>
struct BasicPoint {
  std::vector<T> x;
  std::vector<T> z;
  T a;
};

using GroupPoint = BasicPoint<Real>;

GroupPoint identity_point(const HTypeGroup& G);
GroupPoint make_point(const HTypeGroup& G, std::vector<Real> x, std::vector<Real> z, Real a);
void check_point(const HTypeGroup& G, const GroupPoint& g);

// (x,z,a)(x',z',a') = (x + sqrt(a) x', z + a z' + 1/2 sqrt(a) sum_k (J_k x, x') u_k, a a').
// Templated so that jets can be pushed through the law; sqrt(a) is supplied
// by the caller-visible overload of sqrt for T.
template <class T>
BasicPoint<T> multiply(const HTypeGroup& G, const BasicPoint<T>& g, const BasicPoint<T>& h) {
  using std::sqrt;
  const int mu = G.mu();
  const int nu = G.nu();
  if (static_cast<int>(g.x.size()) != mu || static_cast<int>(h.x.size()) != mu ||
      static_cast<int>(g.z.size()) != nu || static_cast<int>(h.z.size()) != nu)
    fail(Errc::DimensionMismatch, "point dimensions do not match the group");
  const T sa = sqrt(g.a);
  BasicPoint<T> out{g.x, g.z, g.a * h.a};
  for (int i = 0; i < mu; ++i) out.x[i] += sa * h.x[i];
  for (int k = 0; k < nu; ++k) {
    out.z[k] += g.a * h.z[k];
    if (mu == 0) continue;
    // (J_k x, x') = sum_{i,j} x'_i (J_k)_{ij} x_j
    T pairing = T(0);
    for (int i = 0; i < mu; ++i)
      for (int j = 0; j < mu; ++j)
        if (const double e = G.J()[k](i, j); e != 0.0) pairing += h.x[i] * g.x[j] * Real(e);
    out.z[k] += sa * pairing * Real(0.5);
  }
  return out;
}

GroupPoint inverse(const HTypeGroup& G, const GroupPoint& g);
Real modular_delta(const HTypeGroup& G, const GroupPoint& g);

}  // namespace heatdr

#endif
