#include "heatdr/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "heatdr/bounds_asymptotics.hpp"
#include "heatdr/distance_calculus.hpp"
#include "heatdr/heat_kernel.hpp"
#include "heatdr/mixed_derivatives.hpp"
#include "heatdr/radial_symbolics.hpp"

namespace heatdr::cli {

namespace {

const char* const kFooter = R"(CSV columns (header row, LF endings, 17 significant digits):
  eval --csv          r,t,k,m,value       value = d_t^m d_r^k h_t(r), or d_t^m X_J h_t at generic_point(r)
  verify <suite>      r,t,lhs,rhs,ratio
    pde               lhs = d_t h, rhs = -rad(L) h (both times e^{r^2/4t}), ratio = relative residual
    mass              lhs = M(t), rhs = M(1), ratio = M(t)/M(1), r = 0
    bounds            lhs = |derivative|, rhs = envelope * h_t, ratio = lhs/rhs (base grid)
    sharpness         as bounds, over the accepted region
    decomposition     lhs = X_J h_t, rhs = decomposition (both times e^{r^2/4t}), ratio = residual
    asymptotics       lhs = exact, rhs = asymptotic expression, ratio = lhs/rhs
    prop-ls           lhs = |d_t h_t|, rhs = (|r^2/4t^2 - Q^2/4| + 1/t) h_t, ratio = lhs/rhs
    ou                lhs = V_t(r), rhs = r^2/16t^2, ratio = lhs/rhs
Exit codes: 0 success, 2 usage, 3 numeric failure, 4 contract violation.
Precedence: defaults < HEATDR_PRECISION_BITS < --config file < flags.)";

// Flag name and config key for the shared run options.
const std::vector<std::pair<std::string, std::string>> kSharedOptions = {
    {"--family", "family"},   {"--m", "m"},
    {"--mu", "mu"},           {"--nu", "nu"},
    {"--jfile", "jfile"},     {"--precision-bits", "precision_bits"},
    {"--r-min", "r_min"},     {"--r-max", "r_max"},
    {"--r-points", "r_points"}, {"--r-scale", "r_scale"},
    {"--t-min", "t_min"},     {"--t-max", "t_max"},
    {"--t-points", "t_points"}, {"--t-scale", "t_scale"},
    {"--rel-tol", "rel_tol"}, {"--abs-tol", "abs_tol"},
    {"--max-panels", "max_panels"}, {"--output", "output"},
};

int parse_int(const std::string& text) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(text, &used);
    if (used != text.size()) fail(Errc::BadParameter, "not an integer: '" + text + "'");
    return v;
  } catch (const std::logic_error&) {
    fail(Errc::BadParameter, "not an integer: '" + text + "'");
  }
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, sep);) parts.push_back(item);
  return parts;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::vector<Real> parse_real_list(const std::string& text) {
  std::vector<Real> v;
  for (const auto& p : split(text, ',')) v.push_back(parse_real(trim(p)));
  if (v.empty()) fail(Errc::BadParameter, "empty list");
  return v;
}

bool parse_scale(const std::string& v) {
  if (v == "log") return true;
  if (v == "linear") return false;
  fail(Errc::BadParameter, "scale must be log or linear, got '" + v + "'");
}

std::string fmt(const Real& x) { return format_real(x, 17); }
std::string brief(const Real& x) { return format_real(x, 6); }

bool finite(const Real& x) { return boost::multiprecision::isfinite(x); }

// CSV goes to cfg.output; the summary goes to err when the CSV takes stdout.
struct Sink {
  const RunConfig& cfg;
  std::ostream& out;
  std::ostream& err;

  std::ostream& info() const { return cfg.output == "-" ? err : out; }
  void csv(const std::string& text) const {
    if (cfg.output.empty()) return;
    if (cfg.output == "-") {
      out << text;
      return;
    }
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f) fail(Errc::BadParameter, "cannot write '" + cfg.output + "'");
    f << text;
  }
};

int contract(const Sink& s, const std::string& suite, bool ok, const std::string& what, const Real& r,
             const Real& t, const Real& value) {
  if (ok) {
    s.info() << suite << ": ok (" << what << ")\n";
    return kOk;
  }
  s.info() << suite << ": contract violated (" << what << "); worst point r=" << brief(r) << " t=" << brief(t)
           << " value=" << brief(value) << "\n";
  return kContract;
}

GroupPoint point_from(const HTypeGroup& G, const std::string& r, const std::string& x, const std::string& z,
                      const std::string& a) {
  if (!r.empty()) return generic_point(G, parse_real(r));
  std::vector<Real> xv(G.mu(), Real(0)), zv(G.nu(), Real(0));
  if (!x.empty()) xv = parse_real_list(x);
  if (!z.empty()) zv = parse_real_list(z);
  return make_point(G, xv, zv, a.empty() ? Real(1) : parse_real(a));
}

struct VerifyArgs {
  std::string suite;
  int k = 1;
  int m = 0;
  std::string J;
  std::string t, r, t_list, radii;
  std::string branch = "large";
  std::string alpha = "1.5", gamma = "50";
  std::string tol;
  bool no_refine = false;
  bool distinguished = false;
};

Real tol_or(const VerifyArgs& a, const char* fallback) {
  return parse_real(a.tol.empty() ? std::string(fallback) : a.tol);
}

int verify_pde(const KernelParams& P, const RunConfig& cfg, const VerifyArgs& a, const Sink& s) {
  const Real tol = tol_or(a, "1e-8");
  BoundReport rep;
  rep.name = "pde";
  const auto rs = cfg.grid.r.values(), ts = cfg.grid.t.values();
  rep.rows.resize(rs.size() * ts.size());
  parallel_for(rep.rows.size(), [&](std::size_t i) {
    const Real& r = rs[i % rs.size()];
    const Real& t = ts[i / rs.size()];
    const Real dt = kernel_channels_scaled(P, 0, 1, t, r, cfg.quad)[0][1];
    const Real rad = radial_laplacian_scaled(P, t, r, cfg.quad);
    rep.rows[i] = {r, t, dt, -rad, abs(dt + rad) / (abs(dt) + abs(rad))};
  });
  summarize(rep);
  s.csv(to_csv(rep));
  s.info() << "pde: max residual " << brief(rep.sup_ratio) << " at r=" << brief(rep.sup_r)
           << " t=" << brief(rep.sup_t) << "\n";
  return contract(s, "pde", finite(rep.sup_ratio) && rep.sup_ratio < tol, "residual < " + brief(tol),
                  rep.sup_r, rep.sup_t, rep.sup_ratio);
}

int verify_mass(const KernelParams& P, const RunConfig& cfg, const VerifyArgs& a, const Sink& s) {
  const Real tol = tol_or(a, "1e-6");
  const auto ts = parse_real_list(a.t_list.empty() ? "0.25,0.5,2,4" : a.t_list);
  const Real M1 = mass_functional(P, Real(1), cfg.quad);
  BoundReport rep;
  rep.name = "mass";
  rep.rows.resize(ts.size());
  parallel_for(ts.size(), [&](std::size_t i) {
    const Real M = mass_functional(P, ts[i], cfg.quad);
    rep.rows[i] = {Real(0), ts[i], M, M1, M / M1};
  });
  summarize(rep);
  s.csv(to_csv(rep));
  Real worst = 0, worst_t = 0;
  for (const auto& row : rep.rows)
    if (abs(row.ratio - 1) >= worst) worst = abs(row.ratio - 1), worst_t = row.t;
  s.info() << "mass: max |M(t)/M(1) - 1| " << brief(worst) << " at t=" << brief(worst_t) << "\n";
  return contract(s, "mass", finite(worst) && worst <= tol, "|M(t)/M(1) - 1| <= " + brief(tol), Real(0), worst_t,
                  worst);
}

int verify_bounds(const KernelParams& P, const RunConfig& cfg, const VerifyArgs& a, const Sink& s) {
  const Real tol = tol_or(a, "0.05");
  auto report = [&](const GridSpec& g) {
    if (!a.J.empty()) return space_bound_report(P, a.m, parse_int_list(a.J), g, a.distinguished, cfg.quad);
    return upper_bound_report(P, a.k, g, cfg.quad);
  };
  const BoundReport base = report(cfg.grid);
  s.csv(to_csv(base));
  s.info() << base.name << ": sup ratio " << brief(base.sup_ratio) << " at r=" << brief(base.sup_r)
           << " t=" << brief(base.sup_t) << "\n";
  bool ok = finite(base.sup_ratio);
  std::string what = "finite sup";
  if (!a.no_refine) {
    const BoundReport fine = report(refined(cfg.grid));
    const Real drift = abs(fine.sup_ratio / base.sup_ratio - 1);
    s.info() << base.name << ": refined sup " << brief(fine.sup_ratio) << ", change " << brief(drift) << "\n";
    ok = ok && finite(fine.sup_ratio) && drift <= tol;
    what += ", stable within " + brief(tol) + " under refinement";
  }
  return contract(s, "bounds", ok, what, base.sup_r, base.sup_t, base.sup_ratio);
}

int verify_sharpness(const KernelParams& P, const RunConfig& cfg, const VerifyArgs& a, const Sink& s) {
  SharpnessBranch branch;
  if (a.branch == "large") branch = SharpnessBranch::LargeR;
  else if (a.branch == "small") branch = SharpnessBranch::SmallR;
  else fail(Errc::BadParameter, "branch must be large or small");
  const auto res = sharpness_report(P, a.k, parse_real(a.alpha), parse_real(a.gamma), branch, cfg.quad);
  s.csv(to_csv(res.base));
  s.info() << "sharpness: k=" << a.k << " gamma=" << brief(res.gamma) << " inf ratio " << brief(res.base.inf_ratio)
           << " (extended " << brief(res.extended.inf_ratio) << ")\n";
  const bool ok = finite(res.base.inf_ratio) && res.base.inf_ratio > 0 && !res.degraded;
  return contract(s, "sharpness", ok, "positive stable inf", res.base.inf_r, res.base.inf_t, res.base.inf_ratio);
}

int verify_decomposition(const KernelParams& P, const RunConfig& cfg, const VerifyArgs& a, const Sink& s) {
  if (a.J.empty()) fail(Errc::BadParameter, "verify decomposition needs --J");
  const MultiIndex J = parse_int_list(a.J);
  const Real tol = tol_or(a, "1e-7");
  const auto ts = parse_real_list(!a.t.empty() ? a.t : a.t_list.empty() ? "0.05,0.5,2" : a.t_list);
  const auto rs = parse_real_list(!a.r.empty() ? a.r : a.radii.empty() ? "0.01,0.1,0.5,1" : a.radii);
  BoundReport rep;
  rep.name = "decomposition";
  rep.rows.resize(rs.size() * ts.size());
  parallel_for(rep.rows.size(), [&](std::size_t i) {
    const Real& r = rs[i % rs.size()];
    const Real& t = ts[i / rs.size()];
    const auto d = decomposition_check(P, J, t, generic_point(P.group, r), cfg.quad);
    rep.rows[i] = {r, t, d.lhs, d.rhs, d.residual};
  });
  summarize(rep);
  s.csv(to_csv(rep));
  s.info() << "decomposition: max residual " << brief(rep.sup_ratio) << "\n";
  return contract(s, "decomposition", finite(rep.sup_ratio) && rep.sup_ratio <= tol, "residual <= " + brief(tol),
                  rep.sup_r, rep.sup_t, rep.sup_ratio);
}

BoundReport from_asymptotic(const std::string& name, const std::vector<AsymptoticRow>& rows) {
  BoundReport rep;
  rep.name = name;
  for (const auto& row : rows) rep.rows.push_back({row.r, row.t, row.exact, row.asymptotic, row.ratio});
  summarize(rep);
  return rep;
}

// |ratio - 1| within tol at the last radius and smaller there than at the first.
int converging(const Sink& s, const std::string& suite, const BoundReport& rep, const Real& tol) {
  for (const auto& row : rep.rows)
    s.info() << suite << ": r=" << brief(row.r) << " ratio " << brief(row.ratio) << "\n";
  const auto& first = rep.rows.front();
  const auto& last = rep.rows.back();
  const Real e_last = abs(last.ratio - 1), e_first = abs(first.ratio - 1);
  const bool ok = finite(last.ratio) && e_last <= tol && (rep.rows.size() < 2 || e_last < e_first);
  return contract(s, suite, ok, "|ratio - 1| <= " + brief(tol) + " at the largest r and decreasing", last.r, last.t,
                  last.ratio);
}

int verify_asymptotics(const KernelParams& P, const RunConfig& cfg, const VerifyArgs& a, const Sink& s) {
  const Real tol = tol_or(a, "0.15");
  const Real t = parse_real(a.t.empty() ? "1" : a.t);
  const auto radii = parse_real_list(a.radii.empty() ? (a.m == 0 ? "25,100" : "30,60") : a.radii);
  const BoundReport rep = a.m == 0 ? from_asymptotic("asymptotics", asymptotic_radial_rows(P, a.k, t, radii, cfg.quad))
                                   : from_asymptotic("asymptotics",
                                                     asymptotic_fixed_t_rows(P, a.m, a.k, t, radii, cfg.quad));
  s.csv(to_csv(rep));
  return converging(s, "asymptotics", rep, tol);
}

int verify_prop_ls(const KernelParams& P, const RunConfig& cfg, const VerifyArgs&, const Sink& s) {
  const BoundReport rep = first_time_derivative_bound(P, cfg.grid, cfg.grid.t.values(), cfg.quad);
  s.csv(to_csv(rep));
  s.info() << "prop-ls: sup ratio " << brief(rep.sup_ratio) << " at r=" << brief(rep.sup_r)
           << " t=" << brief(rep.sup_t) << "\n";
  return contract(s, "prop-ls", finite(rep.sup_ratio), "finite sup including r = Qt", rep.sup_r, rep.sup_t,
                  rep.sup_ratio);
}

int verify_ou(const KernelParams& P, const RunConfig& cfg, const VerifyArgs& a, const Sink& s) {
  const Real tol = tol_or(a, "0.15");
  const Real t = parse_real(a.t.empty() ? "1" : a.t);
  const auto radii = parse_real_list(a.radii.empty() ? "40,80" : a.radii);
  BoundReport rep;
  rep.name = "ou";
  rep.rows.resize(radii.size());
  parallel_for(radii.size(), [&](std::size_t i) {
    const Real& r = radii[i];
    const Real V = ou_potential(P, t, r, cfg.quad);
    const Real model = r * r / (16 * t * t);
    rep.rows[i] = {r, t, V, model, V / model};
  });
  summarize(rep);
  s.csv(to_csv(rep));
  return converging(s, "ou", rep, tol);
}

int verify_structure(const VerifyArgs& a, const Sink& s) {
  for (int k = 1; k <= a.k; ++k) {
    const auto rep = structural_check(k);
    s.info() << "structure: k=" << k << " ok, sharp coefficient " << rep.sharp_coefficient.get_str() << "\n";
  }
  s.info() << "structure: ok (f_{j,k} checks for k <= " << a.k << ")\n";
  return kOk;
}

std::string sc_poly(const std::vector<mpz_class>& c) {
  const int j = static_cast<int>(c.size()) - 1;
  std::string out;
  for (int a = 0; a <= j; ++a) {
    if (c[a] == 0) continue;
    std::string term = c[a] == 1 ? "" : c[a].get_str() + "*";
    std::vector<std::string> f;
    if (a > 0) f.push_back(a == 1 ? "S" : "S^" + std::to_string(a));
    if (j - a > 0) f.push_back(j - a == 1 ? "C" : "C^" + std::to_string(j - a));
    for (std::size_t i = 0; i < f.size(); ++i) term += (i ? "*" : "") + f[i];
    if (f.empty()) term = c[a].get_str();
    out += (out.empty() ? "" : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

}  // namespace

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(Errc::BadParameter, "cannot read config '" + path + "'");
  std::map<std::string, std::string> kv;
  int line_no = 0;
  for (std::string line; std::getline(f, line);) {
    ++line_no;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(Errc::BadParameter, path + ":" + std::to_string(line_no) + ": expected key=value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "family") cfg.family = value;
  else if (key == "m") cfg.m = parse_int(value);
  else if (key == "mu") cfg.mu = parse_int(value);
  else if (key == "nu") cfg.nu = parse_int(value);
  else if (key == "jfile") cfg.jfile = value;
  else if (key == "precision_bits") cfg.precision_bits = cfg.quad.precision_bits = parse_int(value);
  else if (key == "r_min") cfg.grid.r.min = parse_real(value);
  else if (key == "r_max") cfg.grid.r.max = parse_real(value);
  else if (key == "r_points") cfg.grid.r.points = parse_int(value);
  else if (key == "r_scale") cfg.grid.r.log = parse_scale(value);
  else if (key == "t_min") cfg.grid.t.min = parse_real(value);
  else if (key == "t_max") cfg.grid.t.max = parse_real(value);
  else if (key == "t_points") cfg.grid.t.points = parse_int(value);
  else if (key == "t_scale") cfg.grid.t.log = parse_scale(value);
  else if (key == "rel_tol") cfg.quad.rel_tol = parse_real(value);
  else if (key == "abs_tol") cfg.quad.abs_tol = parse_real(value);
  else if (key == "max_panels") cfg.quad.max_panels = parse_int(value);
  else if (key == "output") cfg.output = value;
  else fail(Errc::BadParameter, "unknown setting '" + key + "'");
}

void check_run_config(const RunConfig& cfg) {
  check_grid(cfg.grid);
  check_config(cfg.quad);
}

HTypeGroup read_jfile(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(Errc::BadParameter, "cannot read J file '" + path + "'");
  std::vector<std::string> tokens;
  for (std::string line; std::getline(f, line);) {
    std::istringstream ls(line.substr(0, line.find('#')));
    for (std::string tok; ls >> tok;) tokens.push_back(tok);
  }
  if (tokens.size() < 2) fail(Errc::BadParameter, "J file needs 'mu nu' first");
  const int mu = parse_int(tokens[0]), nu = parse_int(tokens[1]);
  if (mu < 0 || nu < 1) fail(Errc::BadParameter, "J file needs mu >= 0, nu >= 1");
  if (tokens.size() != 2 + static_cast<std::size_t>(nu) * mu * mu)
    fail(Errc::DimensionMismatch, "J file has " + std::to_string(tokens.size() - 2) + " entries, expected " +
                                      std::to_string(nu * mu * mu));
  std::vector<RationalMatrix> J(nu, RationalMatrix(mu, std::vector<mpq_class>(mu)));
  std::size_t idx = 2;
  for (auto& M : J)
    for (auto& row : M)
      for (auto& e : row) {
        try {
          e = mpq_class(tokens[idx]);
        } catch (const std::invalid_argument&) {
          fail(Errc::BadParameter, "J entry is not a rational: '" + tokens[idx] + "'");
        }
        e.canonicalize();
        ++idx;
      }
  return make_htype_group_exact(mu, nu, J);
}

HTypeGroup resolve_group(const RunConfig& cfg) {
  if (!cfg.jfile.empty()) return read_jfile(cfg.jfile);
  if (!cfg.family.empty()) {
    if (cfg.family == "real_hyperbolic") return standard_group(cfg.family, cfg.nu >= 0 ? cfg.nu : cfg.m);
    return standard_group(cfg.family, cfg.m);
  }
  if (cfg.mu >= 0 && cfg.nu >= 1) {
    if (cfg.mu == 0) return standard_group("real_hyperbolic", cfg.nu);
    if (cfg.nu == 1 && cfg.mu % 2 == 0) return standard_group("heisenberg", cfg.mu / 2);
    if (cfg.nu == 3 && cfg.mu % 4 == 0) return standard_group("quaternionic", cfg.mu / 4);
    fail(Errc::UnknownFamily, "no catalog group with mu=" + std::to_string(cfg.mu) + ", nu=" +
                                  std::to_string(cfg.nu) + "; supply --jfile");
  }
  fail(Errc::BadParameter, "no group given: use --family, --mu/--nu or --jfile");
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> v;
  for (const auto& p : split(text, ',')) v.push_back(parse_int(trim(p)));
  if (v.empty()) fail(Errc::BadParameter, "empty list");
  return v;
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::SingularPoint:
    case Errc::IllConditioned:
    case Errc::PoleAtPoint:
    case Errc::QuadratureNoConvergence:
      return kNumeric;
    case Errc::StructuralViolation:
      return kContract;
    default:
      return kUsage;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heat kernels on Damek-Ricci spaces: evaluation and verification", "heatdr"};
  app.footer(kFooter);
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  app.add_option("--config", config_path, "key=value file with shared settings");
  std::map<std::string, std::string> flag_values;
  std::map<std::string, CLI::Option*> flag_options;
  for (const auto& [flag, key] : kSharedOptions)
    flag_options[key] = app.add_option(flag, flag_values[key], "setting '" + key + "'");

  // eval
  auto* eval = app.add_subcommand("eval", "h_t(r) and its derivatives");
  std::string e_t, e_r, e_J;
  int e_k = 0, e_m = 0;
  bool e_csv = false;
  eval->add_option("--t", e_t, "time");
  eval->add_option("--r", e_r, "radius");
  eval->add_option("--deriv-r", e_k, "radial derivative order")->check(CLI::Range(0, 12));
  eval->add_option("--deriv-t", e_m, "time derivative order")->check(CLI::Range(0, 6));
  eval->add_option("--J", e_J, "multi-index for X_J at generic_point(r), e.g. 1,1,3");
  eval->add_flag("--csv", e_csv, "sweep the config grid and print CSV");

  // dist, deriv-r
  std::string p_r, p_x, p_z, p_a, p_J;
  bool p_sigma = false;
  auto* dist = app.add_subcommand("dist", "r(x,z,a) and cosh r");
  auto* deriv_r = app.add_subcommand("deriv-r", "X_J r and optionally sigma_{j,J}");
  for (auto* sub : {dist, deriv_r}) {
    sub->add_option("--r", p_r, "use generic_point at this distance");
    sub->add_option("--x", p_x, "x coordinates, comma separated");
    sub->add_option("--z", p_z, "z coordinates, comma separated");
    sub->add_option("--a", p_a, "a coordinate (> 0)");
  }
  deriv_r->add_option("--J", p_J, "multi-index, e.g. 0,1")->required();
  deriv_r->add_flag("--sigma", p_sigma, "also print sigma_{j,J}");

  // verify
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  VerifyArgs va;
  verify->add_option("suite", va.suite, "suite")
      ->required()
      ->check(CLI::IsMember(
          {"pde", "mass", "bounds", "sharpness", "decomposition", "asymptotics", "prop-ls", "ou", "structure"}));
  verify->add_option("--k", va.k, "derivative order")->check(CLI::Range(0, 12));
  verify->add_option("--deriv-t", va.m, "time derivative order")->check(CLI::Range(0, 6));
  verify->add_option("--J", va.J, "multi-index");
  verify->add_option("--t", va.t, "time (single value)");
  verify->add_option("--r", va.r, "radius (single value)");
  verify->add_option("--t-list", va.t_list, "times, comma separated");
  verify->add_option("--radii", va.radii, "radii, comma separated");
  verify->add_option("--branch", va.branch, "sharpness branch: large or small");
  verify->add_option("--alpha", va.alpha, "small-r exponent in [1, 2)");
  verify->add_option("--gamma", va.gamma, "(1+r)/t threshold");
  verify->add_option("--tol", va.tol, "contract tolerance");
  verify->add_flag("--no-refine", va.no_refine, "skip the refined-grid stability check");
  verify->add_flag("--distinguished", va.distinguished, "bounds for the distinguished Laplacian kernel");

  // table
  auto* table = app.add_subcommand("table", "symbolic tables in canonical text");
  int t_fjk = 0, t_radlap = 0;
  std::string t_aj;
  table->add_option("--fjk", t_fjk, "f_{j,k}, j = 1..k");
  table->add_option("--aj", t_aj, "a_j for R_{p,q}, given as p,q");
  table->add_option("--radlap", t_radlap, "c_{j,m} of (-1)^m rad(L)^m");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    RunConfig cfg;
    if (const char* env = std::getenv("HEATDR_PRECISION_BITS")) apply_setting(cfg, "precision_bits", env);
    if (!config_path.empty())
      for (const auto& [k, v] : read_config_file(config_path)) apply_setting(cfg, k, v);
    for (const auto& [flag, key] : kSharedOptions)
      if (flag_options[key]->count() > 0) apply_setting(cfg, key, flag_values[key]);
    check_run_config(cfg);
    const Sink sink{cfg, out, err};

    if (eval->parsed()) {
      const KernelParams P = make_kernel_params(resolve_group(cfg));
      const MultiIndex J = e_J.empty() ? MultiIndex{} : parse_int_list(e_J);
      auto value = [&](const Real& t, const Real& r) {
        if (!J.empty()) {
          const Real scaled = space_derivative_scaled(P, e_m, J, t, generic_point(P.group, r), cfg.quad);
          return scaled * exp(-r * r / (4 * t));
        }
        if (e_m > 0) return time_derivative(P, e_m, e_k, t, r, cfg.quad);
        return e_k == 0 ? eval_kernel(P, t, r, cfg.quad) : radial_derivative(P, e_k, t, r, cfg.quad);
      };
      if (e_csv) {
        const auto rs = cfg.grid.r.values(), ts = cfg.grid.t.values();
        std::vector<std::string> lines(rs.size() * ts.size());
        parallel_for(lines.size(), [&](std::size_t i) {
          const Real& r = rs[i % rs.size()];
          const Real& t = ts[i / rs.size()];
          lines[i] = fmt(r) + "," + fmt(t) + "," + std::to_string(e_k) + "," + std::to_string(e_m) + "," +
                     fmt(value(t, r)) + "\n";
        });
        std::string csv = "r,t,k,m,value\n";
        for (const auto& l : lines) csv += l;
        RunConfig to_stdout = cfg;
        if (to_stdout.output.empty()) to_stdout.output = "-";
        Sink{to_stdout, out, err}.csv(csv);
        return kOk;
      }
      if (e_t.empty() || e_r.empty()) {
        err << "eval needs --t and --r (or --csv)\n" << eval->help();
        return kUsage;
      }
      out << format_real(value(parse_real(e_t), parse_real(e_r)), 33) << "\n";
      return kOk;
    }

    if (dist->parsed() || deriv_r->parsed()) {
      const HTypeGroup G = resolve_group(cfg);
      const GroupPoint g = point_from(G, p_r, p_x, p_z, p_a);
      if (dist->parsed()) {
        out << "r " << fmt(distance(G, g)) << "\n";
        out << "cosh_r " << fmt(cosh_distance(G, g)) << "\n";
        return kOk;
      }
      const MultiIndex J = parse_int_list(p_J);
      out << "XJ_r " << fmt(distance_derivative(G, J, g)) << "\n";
      if (p_sigma) {
        const SigmaTable S = sigma_table(G, J, g);
        for (int j = 1; j <= static_cast<int>(S.sigma.size()); ++j)
          out << "sigma_" << j << " " << fmt(S(j)) << "\n";
      }
      return kOk;
    }

    if (verify->parsed()) {
      if (va.suite == "structure") return verify_structure(va, sink);
      const KernelParams P = make_kernel_params(resolve_group(cfg));
      using Suite = std::function<int(const KernelParams&, const RunConfig&, const VerifyArgs&, const Sink&)>;
      const std::map<std::string, Suite> suites = {
          {"pde", verify_pde},           {"mass", verify_mass},
          {"bounds", verify_bounds},     {"sharpness", verify_sharpness},
          {"decomposition", verify_decomposition}, {"asymptotics", verify_asymptotics},
          {"prop-ls", verify_prop_ls},   {"ou", verify_ou},
      };
      return suites.at(va.suite)(P, cfg, va, sink);
    }

    if (table->parsed()) {
      const int chosen = (t_fjk != 0) + !t_aj.empty() + (t_radlap != 0);
      if (chosen != 1) {
        err << "table needs exactly one of --fjk, --aj, --radlap\n" << table->help();
        return kUsage;
      }
      if (t_fjk != 0) {
        if (t_fjk < 1 || t_fjk > 12) fail(Errc::BadParameter, "--fjk order must be in 1..12");
        const auto f = radial_expansion_sc(t_fjk);
        out << "# S = sinh r, C = cosh r\n";
        for (int j = 1; j <= t_fjk; ++j)
          out << "f_{" << j << "," << t_fjk << "} = " << sc_poly(f[j - 1]) << "\n";
        return kOk;
      }
      if (!t_aj.empty()) {
        const auto pq = parse_int_list(t_aj);
        if (pq.size() != 2 || pq[0] < 0 || pq[1] < 0 || pq[0] + pq[1] < 1 || pq[0] + pq[1] > 12)
          fail(Errc::BadParameter, "--aj needs p,q >= 0 with 1 <= p+q <= 12");
        const auto A = gaussian_shift(pq[0], pq[1]);
        out << "# R_{" << pq[0] << "," << pq[1] << "}, u = exp(r/2)\n";
        for (int j = 1; j <= static_cast<int>(A.a.size()); ++j) out << "a_" << j << " = " << A(j).to_string() << "\n";
        return kOk;
      }
      if (t_radlap < 1 || t_radlap > 6) fail(Errc::BadParameter, "--radlap order must be in 1..6");
      const HTypeGroup G = resolve_group(cfg);
      const auto L = radial_laplacian(G.mu(), G.nu(), t_radlap);
      out << "# (mu,nu) = (" << G.mu() << "," << G.nu() << "), u = exp(r/2)\n";
      for (int j = 1; j < 2 * t_radlap; ++j)
        out << "c_{" << j << "," << t_radlap << "} = " << L.c(j).to_string() << "\n";
      return kOk;
    }
  } catch (const Error& e) {
    err << "heatdr: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return kUsage;
}

}  // namespace heatdr::cli
