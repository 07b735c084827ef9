#include "ptoral/errors.hpp"

namespace ptl {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::NotNormal: return "NotNormal";
    case Errc::NotPGroup: return "NotPGroup";
    case Errc::WitnessSearchFailed: return "WitnessSearchFailed";
    case Errc::NotAbelian: return "NotAbelian";
    case Errc::ClosureCapExceeded: return "ClosureCapExceeded";
    case Errc::NotSaturated: return "NotSaturated";
    case Errc::LiftSearchFailed: return "LiftSearchFailed";
    case Errc::NotWeaklyClosed: return "NotWeaklyClosed";
    case Errc::SearchFailed: return "SearchFailed";
    case Errc::RuleInvalid: return "RuleInvalid";
    case Errc::NotIncreasing: return "NotIncreasing";
    case Errc::NotStabilized: return "NotStabilized";
    case Errc::BadParameters: return "BadParameters";
    case Errc::ChopBudgetExceeded: return "ChopBudgetExceeded";
    case Errc::RuleNotGroupBacked: return "RuleNotGroupBacked";
    case Errc::SchemaMismatch: return "SchemaMismatch";
    case Errc::NotPSubgroup: return "NotPSubgroup";
  }
  return "Unknown";
}

bool errc_is_spec_error(Errc c) {
  return c == Errc::InvalidSpec || c == Errc::SchemaMismatch || c == Errc::BadParameters ||
         c == Errc::RuleInvalid;
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

void fail(Errc code, const std::string& what) { throw Error(code, what); }

Caps& caps() {
  static Caps c;
  return c;
}

}  // namespace ptl
