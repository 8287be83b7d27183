#include "heatdr/group_model.hpp"

#include <cmath>

namespace heatdr {

namespace {

constexpr double kTol = 1e-12;

void check_shapes(int mu, int nu, std::size_t count, const auto& rows_of, const auto& cols_of) {
  if (mu < 0 || nu < 1) fail(Errc::BadParameter, "need mu >= 0 and nu >= 1");
  if (mu % 2 != 0) fail(Errc::OddMu, "mu must be even, got " + std::to_string(mu));
  const std::size_t expected = mu == 0 ? 0 : static_cast<std::size_t>(nu);
  if (count != expected)
    fail(Errc::DimensionMismatch, "expected " + std::to_string(expected) + " J matrices, got " +
                                      std::to_string(count));
  for (std::size_t k = 0; k < count; ++k)
    if (rows_of(k) != mu || cols_of(k) != mu)
      fail(Errc::DimensionMismatch, "J matrices must be mu x mu");
}

}  // namespace

HTypeGroup make_htype_group(int mu, int nu, const std::vector<Eigen::MatrixXd>& J) {
  check_shapes(
      mu, nu, J.size(), [&](std::size_t k) { return static_cast<int>(J[k].rows()); },
      [&](std::size_t k) { return static_cast<int>(J[k].cols()); });
  for (std::size_t k = 0; k < J.size(); ++k)
    if ((J[k] + J[k].transpose()).cwiseAbs().maxCoeff() > kTol)
      fail(Errc::NotSkew, "J_" + std::to_string(k + 1) + " is not skew-symmetric");
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(mu, mu);
  for (std::size_t i = 0; i < J.size(); ++i)
    for (std::size_t j = i; j < J.size(); ++j) {
      const Eigen::MatrixXd anti = J[i] * J[j] + J[j] * J[i] + (i == j ? 2.0 : 0.0) * I;
      if (anti.cwiseAbs().maxCoeff() > kTol)
        fail(Errc::NotCliffordAnticommuting,
             "J_" + std::to_string(i + 1) + " J_" + std::to_string(j + 1) + " relation fails");
    }
  HTypeGroup G;
  G.mu_ = mu;
  G.nu_ = nu;
  G.J_ = J;
  G.label_ = "(" + std::to_string(mu) + "," + std::to_string(nu) + ")";
  return G;
}

HTypeGroup make_htype_group_exact(int mu, int nu, const std::vector<RationalMatrix>& J) {
  check_shapes(
      mu, nu, J.size(), [&](std::size_t k) { return static_cast<int>(J[k].size()); },
      [&](std::size_t k) {
        for (const auto& row : J[k])
          if (static_cast<int>(row.size()) != mu) return -1;
        return mu;
      });
  for (std::size_t k = 0; k < J.size(); ++k)
    for (int r = 0; r < mu; ++r)
      for (int c = 0; c < mu; ++c)
        if (J[k][r][c] + J[k][c][r] != 0)
          fail(Errc::NotSkew, "J_" + std::to_string(k + 1) + " is not skew-symmetric");
  for (std::size_t i = 0; i < J.size(); ++i)
    for (std::size_t j = i; j < J.size(); ++j)
      for (int r = 0; r < mu; ++r)
        for (int c = 0; c < mu; ++c) {
          mpq_class s = (i == j && r == c) ? 2 : 0;
          for (int l = 0; l < mu; ++l) s += J[i][r][l] * J[j][l][c] + J[j][r][l] * J[i][l][c];
          if (s != 0)
            fail(Errc::NotCliffordAnticommuting,
                 "J_" + std::to_string(i + 1) + " J_" + std::to_string(j + 1) + " relation fails");
        }
  std::vector<Eigen::MatrixXd> Jd;
  for (const auto& m : J) {
    Eigen::MatrixXd M(mu, mu);
    for (int r = 0; r < mu; ++r)
      for (int c = 0; c < mu; ++c) M(r, c) = m[r][c].get_d();
    Jd.push_back(M);
  }
  HTypeGroup G;
  G.mu_ = mu;
  G.nu_ = nu;
  G.J_ = std::move(Jd);
  G.label_ = "(" + std::to_string(mu) + "," + std::to_string(nu) + ")";
  return G;
}

HTypeGroup standard_group(const std::string& family, int m) {
  if (family != "real_hyperbolic" && family != "heisenberg" && family != "quaternionic")
    fail(Errc::UnknownFamily, "unknown family '" + family + "'");
  if (m < 1) fail(Errc::BadParameter, family + " needs parameter >= 1");
  std::vector<RationalMatrix> J;
  int mu = 0;
  int nu = m;
  if (family == "heisenberg") {
    mu = 2 * m;
    nu = 1;
    RationalMatrix S(mu, std::vector<mpq_class>(mu, 0));
    for (int b = 0; b < m; ++b) {
      S[2 * b][2 * b + 1] = -1;
      S[2 * b + 1][2 * b] = 1;
    }
    J.push_back(S);
  } else if (family == "quaternionic") {
    mu = 4 * m;
    nu = 3;
    // Left multiplication by i, j, k on H = R^4 with basis (1, i, j, k).
    const int Li[4][4] = {{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}};
    const int Lj[4][4] = {{0, 0, -1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, -1, 0, 0}};
    const int Lk[4][4] = {{0, 0, 0, -1}, {0, 0, -1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}};
    for (const auto* L : {Li, Lj, Lk}) {
      RationalMatrix M(mu, std::vector<mpq_class>(mu, 0));
      for (int b = 0; b < m; ++b)
        for (int r = 0; r < 4; ++r)
          for (int c = 0; c < 4; ++c) M[4 * b + r][4 * b + c] = L[r][c];
      J.push_back(M);
    }
  }
  HTypeGroup G = make_htype_group_exact(mu, nu, J);
  G.label_ = family + "(" + std::to_string(m) + ")";
  return G;
}

GroupPoint identity_point(const HTypeGroup& G) {
  return GroupPoint{std::vector<Real>(G.mu(), Real(0)), std::vector<Real>(G.nu(), Real(0)), Real(1)};
}

void check_point(const HTypeGroup& G, const GroupPoint& g) {
  if (static_cast<int>(g.x.size()) != G.mu() || static_cast<int>(g.z.size()) != G.nu())
    fail(Errc::DimensionMismatch, "point dimensions do not match the group");
  if (!(g.a > 0)) fail(Errc::BadParameter, "point needs a > 0");
}

GroupPoint make_point(const HTypeGroup& G, std::vector<Real> x, std::vector<Real> z, Real a) {
  GroupPoint g{std::move(x), std::move(z), a};
  check_point(G, g);
  return g;
}

GroupPoint inverse(const HTypeGroup& G, const GroupPoint& g) {
  check_point(G, g);
  const Real sa = sqrt(g.a);
  GroupPoint out{g.x, g.z, 1 / g.a};
  for (auto& v : out.x) v = -v / sa;
  for (auto& v : out.z) v = -v / g.a;
  return out;
}

Real modular_delta(const HTypeGroup& G, const GroupPoint& g) {
  check_point(G, g);
  return pow(g.a, -G.Q());
}

}  // namespace heatdr
