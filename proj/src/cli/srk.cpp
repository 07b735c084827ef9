#include "ptoral/cli.hpp"

#include "ptoral/families.hpp"

#include <cmath>

namespace ptl::cli {

namespace {

// The SO(3) levels are realized by PSL_2(7^f) with f = 2^{n-2}: the Sylow
// 2-subgroup of PSL_2(7^f) is dihedral of order 2^{3 + v_2(f)}.
constexpr std::int64_t kSo3Field = 7;

}  // namespace

int srk_psl2(std::int64_t q, std::int64_t r, int f) {
  if (!is_prime(q) || !is_prime(r) || r == 2 || f < 1) fail(Errc::BadParameters, "srk_psl2 needs primes q, r with r odd");
  if (q == r) return f;  // the Sylow r-subgroup is elementary abelian of rank f
  if (q == 2) return 2;  // dihedral Sylow 2-subgroups
  // q odd, q != r: cyclic Sylow q-subgroup when q divides r^{2f} - 1
  std::int64_t x = 1;
  for (int i = 0; i < 2 * f; ++i) x = x * (r % q) % q;
  return x == 1 ? 1 : 0;
}

StandIn stand_in(const Json& tower_spec, const TruncationLevel& level) {
  const TowerSpec spec = tower_from_spec(tower_spec);
  if (spec.elementary == EssentialSelection::None)
    return {"S_" + std::to_string(level.n) + " (inner)", level.s, 0, 0};
  if (tower_spec.at("tower") != "so3")
    fail(Errc::RuleNotGroupBacked, "tower " + spec.name + " records no realizing finite groups");
  if (level.n < 2) fail(Errc::RuleNotGroupBacked, "no PSL_2 stand-in below level 2");
  const int f = 1 << (level.n - 2);
  StandIn s{"PSL2(" + std::to_string(kSo3Field) + "^" + std::to_string(f) + ")", nullptr, kSo3Field, f};
  const long double order = std::pow(static_cast<long double>(kSo3Field), f) *
                            (std::pow(static_cast<long double>(kSo3Field), 2 * f) - 1) / 2;
  if (order <= static_cast<long double>(caps().order)) s.group = psl2(kSo3Field, f);
  return s;
}

SrkReport srk_obstruction_report(const Json& tower_spec, const std::vector<TruncationLevel>& levels, int n,
                                 const std::vector<std::int64_t>& primes) {
  SrkReport rep;
  rep.n = n;
  for (auto q : primes) rep.bounds.emplace_back(q, srk_bound(q, n));
  for (const auto& level : levels) {
    const StandIn s = stand_in(tower_spec, level);
    SrkLevel row;
    row.n = level.n;
    row.stand_in = s.name;
    row.evidence = s.group ? "enumerated" : "formula";
    if (s.group && s.field_char) {
      auto f = fusion_of_group(s.group, sylow_subgroup(*s.group, 2));
      row.fusion_matches = fusion_isomorphism(*f, *level.f).has_value();
    }
    for (std::size_t i = 0; i < primes.size(); ++i) {
      const std::int64_t q = primes[i];
      int v = 0;
      if (s.group) {
        v = p_ranks(*s.group, q).srk;
        if (s.field_char) row.formula_agrees = row.formula_agrees.value_or(true) && v == srk_psl2(q, s.field_char, s.field_degree);
      } else {
        v = srk_psl2(q, s.field_char, s.field_degree);
      }
      row.srk.emplace_back(q, v);
      if (v > rep.bounds[i].second) row.exceeds = true;
    }
    if (row.exceeds && !rep.obstruction_level) rep.obstruction_level = row.n;
    rep.levels.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < primes.size(); ++i) {
    bool up = rep.levels.size() >= 2;
    for (std::size_t l = 1; l < rep.levels.size(); ++l) up = up && rep.levels[l].srk[i].second > rep.levels[l - 1].srk[i].second;
    if (up) rep.growing.push_back(primes[i]);
  }
  rep.message = rep.obstruction_level
                    ? "characteristic-0 obstruction witnessed at level " + std::to_string(*rep.obstruction_level)
                    : "no obstruction: sectional ranks stay within the bound for n = " + std::to_string(n);
  return rep;
}

Json srk_report_to_json(const SrkReport& r) {
  auto pairs = [](const std::vector<std::pair<std::int64_t, int>>& v) {
    Json o = Json::object();
    for (const auto& [q, x] : v) o[std::to_string(q)] = x;
    return o;
  };
  Json levels = Json::array();
  for (const auto& l : r.levels) {
    Json row{{"n", l.n}, {"stand_in", l.stand_in}, {"evidence", l.evidence}, {"srk", pairs(l.srk)},
             {"exceeds_bound", l.exceeds}};
    if (l.formula_agrees) row["formula_agrees"] = *l.formula_agrees;
    if (l.fusion_matches) row["fusion_matches_level"] = *l.fusion_matches;
    levels.push_back(row);
  }
  Json j{{"ambient_dimension", r.n}, {"bounds", pairs(r.bounds)}, {"levels", levels}, {"growing", r.growing},
         {"message", r.message}};
  j["obstruction_level"] = r.obstruction_level ? Json(*r.obstruction_level) : Json(nullptr);
  return j;
}

}  // namespace ptl::cli
