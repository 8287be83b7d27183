#include "heatdr/real.hpp"

#include <sstream>

#include <boost/math/constants/constants.hpp>

#include "heatdr/error.hpp"

namespace heatdr {

Real pi_real() { return boost::math::constants::pi<Real>(); }

std::string format_real(const Real& x, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << std::scientific << x;
  return os.str();
}

Real parse_real(const std::string& text) {
  try {
    std::size_t used = 0;
    (void)std::stold(text, &used);
    if (used != text.size()) fail(Errc::BadParameter, "not a number: '" + text + "'");
    return Real(text);
  } catch (const std::logic_error&) {
    fail(Errc::BadParameter, "not a number: '" + text + "'");
  }
}

}  // namespace heatdr
