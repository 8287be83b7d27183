#ifndef HEATDR_ERROR_HPP
#define HEATDR_ERROR_HPP

#include <stdexcept>
#include <string>

namespace heatdr {

enum class Errc {
  NotSkew,
  NotCliffordAnticommuting,
  OddMu,
  UnknownFamily,
  BadParameter,
  DimensionMismatch,
  SingularPoint,
  IllConditioned,
  OutOfRange,
  StructuralViolation,
  PoleAtPoint,
  WrongParity,
  QuadratureNoConvergence,
  RegionEmpty,
  NotApplicable,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

}  // namespace heatdr

#endif
