#pragma once

// JSON artifacts, the fixture catalog, report envelopes and the command-line
// front end over the other modules.

#include "ptoral/fusion.hpp"
#include "ptoral/gate.hpp"
#include "ptoral/pgroup.hpp"
#include "ptoral/tower.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace ptl::cli {

// Keys are kept sorted (std::map), which makes dump() canonical.
using Json = nlohmann::json;

inline constexpr const char* kGroupSchema = "ptl.group/1";
inline constexpr const char* kFusionSchema = "ptl.fusion/1";
inline constexpr const char* kRepSchema = "ptl.rep/1";
inline constexpr const char* kReportSchema = "ptl.report/1";

std::string canonical(const Json& j);  // two-space indent, sorted keys, trailing newline
std::string sha256_hex(const std::string& data);

// --- artifacts ---------------------------------------------------------------------

// Groups are stored as a realization plus generator keys. Quotient
// realizations are written as the left regular permutation representation.
Json group_to_json(const Group& g);
GroupPtr group_from_json(const Json& j);
// A family spec such as {"family": "dihedral", "order": 16}.
GroupPtr group_from_spec(const Json& spec);
// Either an artifact (with "schema") or a family spec.
GroupPtr load_group(const Json& j);

Json fingerprint_to_json(const Fingerprint& fp);
Json class_table(const FusionSystem& f);
// Sylow group, one automizer generating set per class representative and one
// identification map per further S-class in each F-class.
Json fusion_to_json(const FusionSystem& f);
FusionPtr fusion_from_json(const Json& j);

Json modrep_to_json(const ModRep& r);
ModRep modrep_from_json(const Json& j);
Json verdict_to_json(const GateVerdict& v);

// --- specs -----------------------------------------------------------------------------

// {"kind": "sylow"|"inner"|"declared"|"tower_level", ...}
FusionPtr fusion_from_spec(const Json& spec);
FusionPtr load_fusion(const Json& j);
// {"tower": "so3"|"psl3", "exotic": bool, "elementary": "none"|"all"|"base", "n0", "n1"}
TowerSpec tower_from_spec(const Json& spec);
// {"rep": "G"|"weyl"|"ST12"|"ST24"|"ST29"|"ST31"|"cyclotomic"|"matrices", ...}
ModRep modrep_from_spec(const Json& spec);
ModRep load_modrep(const Json& j);

// --- fixtures ----------------------------------------------------------------------------

struct Fixture {
  std::string name;
  std::string kind;  // group, fusion, tower, gate
  std::string description;
  Json spec;
  Json expect;  // documented values checked by tests; may be null
};
const std::vector<Fixture>& fixtures();
const Fixture& fixture(const std::string& name);  // throws InvalidSpec
// Builds the fixture and serializes it (groups, fusion systems, reps); towers
// serialize to their spec.
Json fixture_artifact(const Fixture& f);

// --- srk obstruction ------------------------------------------------------------------------

// A finite group realizing level n of a tower, either enumerable or known by
// name only (then its sectional ranks come from the PSL_2 formula).
struct StandIn {
  std::string name;
  GroupPtr group;           // null when not enumerable
  std::int64_t field_char = 0;  // PSL_2(r^f): r and f; 0 for the level group itself
  int field_degree = 0;
};
// The realizing group of one level of a tower given by its spec; throws
// RuleNotGroupBacked when the tower records none.
StandIn stand_in(const Json& tower_spec, const TruncationLevel& level);

struct SrkLevel {
  int n = 0;
  std::string stand_in;
  std::string evidence;  // "enumerated" or "formula"
  std::vector<std::pair<std::int64_t, int>> srk;  // prime q -> srk_q
  std::optional<bool> formula_agrees;  // enumerated PSL_2 stand-ins against the formula
  std::optional<bool> fusion_matches;  // F_S(stand-in) against the level, when enumerable
  bool exceeds = false;
};
struct SrkReport {
  int n = 0;  // hypothetical ambient dimension
  std::vector<std::pair<std::int64_t, int>> bounds;  // q -> srk_bound(q, n)
  std::vector<SrkLevel> levels;
  std::vector<std::int64_t> growing;  // primes with srk_q strictly increasing over the levels
  std::optional<int> obstruction_level;
  std::string message;
};
// srk_q of PSL_2(r^f) for q prime, r odd.
int srk_psl2(std::int64_t q, std::int64_t r, int f);
SrkReport srk_obstruction_report(const Json& tower_spec, const std::vector<TruncationLevel>& levels, int n,
                                 const std::vector<std::int64_t>& primes);
Json srk_report_to_json(const SrkReport& r);

// --- front end --------------------------------------------------------------------------------

std::string json_to_markdown(const Json& j);
// Parses and runs one command; the report goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ptl::cli
