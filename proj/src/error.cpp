#include "heatdr/error.hpp"

namespace heatdr {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::NotSkew: return "NotSkew";
    case Errc::NotCliffordAnticommuting: return "NotCliffordAnticommuting";
    case Errc::OddMu: return "OddMu";
    case Errc::UnknownFamily: return "UnknownFamily";
    case Errc::BadParameter: return "BadParameter";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::SingularPoint: return "SingularPoint";
    case Errc::IllConditioned: return "IllConditioned";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::StructuralViolation: return "StructuralViolation";
    case Errc::PoleAtPoint: return "PoleAtPoint";
    case Errc::WrongParity: return "WrongParity";
    case Errc::QuadratureNoConvergence: return "QuadratureNoConvergence";
    case Errc::RegionEmpty: return "RegionEmpty";
    case Errc::NotApplicable: return "NotApplicable";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace heatdr
