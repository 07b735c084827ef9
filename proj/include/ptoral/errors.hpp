#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ptl {

enum class Errc {
  InvalidSpec,
  CapExceeded,
  NotNormal,
  NotPGroup,
  WitnessSearchFailed,
  NotAbelian,
  ClosureCapExceeded,
  NotSaturated,
  LiftSearchFailed,
  NotWeaklyClosed,
  SearchFailed,
  RuleInvalid,
  NotIncreasing,
  NotStabilized,
  BadParameters,
  ChopBudgetExceeded,
  RuleNotGroupBacked,
  SchemaMismatch,
  NotPSubgroup,
};

const char* errc_name(Errc c);

// Spec/parse problems map to exit code 2 in the CLI; everything else is a
// precondition or domain failure (exit 1).
bool errc_is_spec_error(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

// Global limits. The CLI overrides these from --cap-order / --cap-subgroups.
struct Caps {
  std::size_t order = 2'000'000;   // element enumeration
  std::size_t subgroups = 4096;    // full subgroup lattice of a non-filtered search
  std::size_t automorphism = 512;  // |P| for automorphism_group
};

Caps& caps();

}  // namespace ptl
