#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "heatdr/cli.hpp"
#include "heatdr/distance_calculus.hpp"
#include "heatdr/heat_kernel.hpp"
#include "support.hpp"

using namespace heatdr;
using namespace heatdr::testing;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path.string();
}

// Value after "key " on its own line.
Real field(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (line.rfind(key + " ", 0) == 0) return parse_real(line.substr(key.size() + 1));
  FAIL("no line for " << key);
  return 0;
}

const std::vector<std::string> kSmallGrid{"--r-min", "0.05", "--r-max", "10", "--r-points", "5",
                                          "--t-min", "0.1",  "--t-max", "5",  "--t-points", "3"};

std::vector<std::string> cat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

TEST_CASE("eval prints the closed form") {
  const auto o = run({"eval", "--family", "real_hyperbolic", "--nu", "2", "--t", "1", "--r", "1"});
  CHECK(o.code == 0);
  const Real want = pow(4 * pi_real(), Real(-1.5)) / sinh(Real(1)) * exp(Real(-1.25));
  CHECK(rel(parse_real(o.out.substr(0, o.out.find('\n'))), want) < 1e-31);
  // Catalog lookup by (mu, nu).
  const auto m = run({"--mu", "0", "--nu", "2", "eval", "--t", "1", "--r", "1"});
  CHECK(m.out == o.out);

  const auto d = run({"eval", "--family", "heisenberg", "--m", "1", "--t", "0.5", "--r", "2", "--deriv-r", "2"});
  REQUIRE(d.code == 0);
  const auto P = make_kernel_params(standard_group("heisenberg", 1));
  CHECK(rel(parse_real(d.out.substr(0, d.out.find('\n'))), radial_derivative(P, 2, Real("0.5"), 2)) < 1e-31);
}

TEST_CASE("deriv-r agrees with the library") {
  const auto o = run({"--family", "heisenberg", "--m", "1", "deriv-r", "--J", "2,2", "--x", "0.3,-0.2", "--z", "0.5",
                      "--a", "1.5", "--sigma"});
  REQUIRE(o.code == 0);
  const auto G = standard_group("heisenberg", 1);
  const auto g = make_point(G, {Real("0.3"), Real("-0.2")}, {Real("0.5")}, Real("1.5"));
  CHECK(rel(field(o.out, "XJ_r"), distance_derivative(G, {2, 2}, g)) < 1e-16);
  const auto s = sigma_table(G, {2, 2}, g);
  CHECK(rel(field(o.out, "sigma_1"), s(1)) < 1e-16);
  CHECK(rel(field(o.out, "sigma_2"), s(2)) < 1e-16);

  const auto d = run({"--family", "heisenberg", "dist", "--x", "1,0", "--z", "0", "--a", "1"});
  CHECK(d.code == 0);
  CHECK(rel(field(d.out, "cosh_r"), Real("1.53125")) < 1e-17);
}

TEST_CASE("verify suites") {
  CHECK(run({"--family", "real_hyperbolic", "--m", "3", "verify", "pde"}).code == 0);
  CHECK(run({"verify", "structure", "--k", "8"}).code == 0);
  CHECK(run({"--family", "heisenberg", "--m", "1", "verify", "decomposition", "--J", "1,1,3"}).code == 0);
  CHECK(run(cat({"--family", "real_hyperbolic", "--m", "2"}, cat(kSmallGrid, {"verify", "prop-ls"}))).code == 0);
  CHECK(run({"--family", "real_hyperbolic", "--m", "2", "verify", "ou"}).code == 0);
}

TEST_CASE("table output matches frozen files") {
  const std::string dir = HEATDR_GOLDEN_DIR;
  CHECK(run({"table", "--fjk", "3"}).out == slurp(dir + "/fjk_3.txt"));
  CHECK(run({"table", "--aj", "1,1"}).out == slurp(dir + "/aj_1_1.txt"));
  CHECK(run({"--family", "heisenberg", "--m", "1", "table", "--radlap", "2"}).out ==
        slurp(dir + "/radlap_2_heisenberg.txt"));
}

TEST_CASE("exit codes") {
  // Usage errors.
  CHECK(run({"eval", "--family", "real_hyperbolic", "--nu", "2", "--r", "1"}).code == 2);
  CHECK(run({"eval", "--family", "octonionic", "--t", "1", "--r", "1"}).code == 2);
  CHECK(run({"verify", "nonsense"}).code == 2);
  CHECK(run({"table", "--fjk", "13"}).code == 2);
  CHECK(run({"--mu", "2", "--nu", "2", "eval", "--t", "1", "--r", "1"}).code == 2);
  CHECK(run({"--help"}).code == 0);
  // Numeric failure: space derivatives are not offered at r < 1e-3.
  CHECK(run({"--family", "heisenberg", "--m", "1", "eval", "--t", "1", "--r", "1e-4", "--J", "1"}).code == 3);
  // Contract violation: quaternionic k = 2 radial asymptotics miss the 0.15 band at r = 100.
  CHECK(run({"--family", "quaternionic", "--m", "1", "verify", "asymptotics", "--k", "2", "--radii", "25,100"}).code ==
        4);
}

TEST_CASE("CSV output is independent of the worker count") {
  const auto args = cat({"--family", "heisenberg", "--m", "1", "--output", "-"}, cat(kSmallGrid, {"verify", "bounds", "--k", "2"}));
  setenv("HEATDR_THREADS", "1", 1);
  const auto a = run(args);
  setenv("HEATDR_THREADS", "3", 1);
  const auto b = run(args);
  unsetenv("HEATDR_THREADS");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("r,t,lhs,rhs,ratio\n", 0) == 0);
  CHECK(a.out.find('\r') == std::string::npos);

  const auto e = run(cat({"--family", "real_hyperbolic", "--m", "2"}, cat(kSmallGrid, {"eval", "--csv", "--deriv-r", "1"})));
  CHECK(e.out.rfind("r,t,k,m,value\n", 0) == 0);
  CHECK(std::count(e.out.begin(), e.out.end(), '\n') == 1 + 5 * 3);
}

TEST_CASE("configuration precedence") {
  const std::string conf = temp_file("heatdr_test.conf", "# shared settings\nfamily = heisenberg\nm = 1\n");
  const auto from_file = run({"--config", conf, "eval", "--t", "1", "--r", "2"});
  const auto from_flags = run({"--family", "heisenberg", "--m", "1", "eval", "--t", "1", "--r", "2"});
  CHECK(from_file.code == 0);
  CHECK(from_file.out == from_flags.out);
  // Flags override the file.
  const auto overridden = run({"--config", conf, "--family", "real_hyperbolic", "--m", "2", "eval", "--t", "1", "--r", "2"});
  CHECK(overridden.out == run({"--family", "real_hyperbolic", "--m", "2", "eval", "--t", "1", "--r", "2"}).out);

  // The environment sits below the file and the flags.
  setenv("HEATDR_PRECISION_BITS", "200", 1);
  CHECK(run({"--family", "heisenberg", "--m", "1", "eval", "--t", "1", "--r", "2"}).code == 2);
  CHECK(run({"--family", "heisenberg", "--m", "1", "--precision-bits", "113", "eval", "--t", "1", "--r", "2"}).code == 0);
  const std::string conf113 = temp_file("heatdr_test113.conf", "family = heisenberg\nprecision_bits = 113\n");
  CHECK(run({"--config", conf113, "eval", "--t", "1", "--r", "2"}).code == 0);
  unsetenv("HEATDR_PRECISION_BITS");
  CHECK(run({"--config", "/nonexistent/heatdr.conf", "eval", "--t", "1", "--r", "2"}).code == 2);
}

TEST_CASE("J files") {
  const std::string jf = temp_file("heatdr_heis.j", "# heisenberg(1)\n2 1\n0 -1\n1 0\n");
  const std::vector<std::string> probe{"deriv-r", "--J", "1,3,0", "--r", "0.7"};
  const auto a = run(cat({"--jfile", jf}, probe));
  const auto b = run(cat({"--family", "heisenberg", "--m", "1"}, probe));
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto c = run({"--jfile", jf, "eval", "--t", "0.5", "--r", "1.2"});
  CHECK(c.out == run({"--family", "heisenberg", "--m", "1", "eval", "--t", "0.5", "--r", "1.2"}).out);

  const std::string bad = temp_file("heatdr_bad.j", "2 1\n0 -2\n2 0\n");
  // Invalid input, not a failed contract.
  CHECK(run({"--jfile", bad, "eval", "--t", "1", "--r", "1"}).code == 2);
  const std::string short_file = temp_file("heatdr_short.j", "2 1\n0 -1\n1\n");
  CHECK(run({"--jfile", short_file, "eval", "--t", "1", "--r", "1"}).code == 2);
}
