#ifndef HEATDR_CLI_HPP
#define HEATDR_CLI_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "heatdr/grid.hpp"
#include "heatdr/group_model.hpp"
#include "heatdr/quadrature.hpp"

namespace heatdr::cli {

enum ExitCode { kOk = 0, kUsage = 2, kNumeric = 3, kContract = 4 };

struct RunConfig {
  // Group: family with parameter m (nu for real_hyperbolic), a catalog
  // (mu, nu) pair, or an explicit J file.
  std::string family;
  int m = 1;
  int mu = -1;
  int nu = -1;
  std::string jfile;
  int precision_bits = kWorkingPrecisionBits;
  GridSpec grid = standard_grid();
  QuadratureConfig quad;
  std::string output;  // CSV path, "-" for stdout, empty for none
};

// key=value lines; '#' starts a comment.  Throws BadParameter on unknown keys.
std::map<std::string, std::string> read_config_file(const std::string& path);
// Applies one key (family, m, mu, nu, jfile, precision_bits, r_min, r_max,
// r_points, r_scale, t_min, t_max, t_points, t_scale, rel_tol, abs_tol,
// max_panels, output).
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);
void check_run_config(const RunConfig& cfg);

// J file: "mu nu" followed by nu matrices of mu x mu rationals, row-major.
HTypeGroup read_jfile(const std::string& path);
HTypeGroup resolve_group(const RunConfig& cfg);

// "1,2,3" -> {1, 2, 3}.
std::vector<int> parse_int_list(const std::string& text);

// Maps library errors to exit codes: usage 2, numeric failure 3, contract 4.
int exit_code_for(Errc code);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace heatdr::cli

#endif
