#include "doctest.h"

#include "ptoral/cli.hpp"
#include "ptoral/families.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ptl;
using namespace ptl::cli;

namespace {

struct Outcome {
  int code;
  Json report;
  std::string text;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  Outcome o{code, nullptr, out.str()};
  if (!o.text.empty() && o.text.front() == '{') o.report = Json::parse(o.text);
  return o;
}

Json reserialize(const Fixture& f, const Json& art) {
  if (f.kind == "group") return group_to_json(*group_from_json(art));
  if (f.kind == "fusion") return fusion_to_json(*fusion_from_json(art));
  if (f.kind == "gate") return modrep_to_json(modrep_from_json(art));
  tower_from_spec(art);
  return art;
}

}  // namespace

TEST_CASE("every fixture loads and round-trips byte-identically") {
  for (const auto& f : fixtures()) {
    CAPTURE(f.name);
    const Json art = fixture_artifact(f);
    CHECK(canonical(reserialize(f, art)) == canonical(art));
    CHECK(canonical(fixture_artifact(f)) == canonical(art));
  }
  CHECK_THROWS_AS(fixture("no such fixture"), Error);
}

TEST_CASE("group round trip keeps the fingerprint") {
  std::vector<GroupPtr> gs;
  for (const auto& f : fixtures())
    if (f.kind == "group") gs.push_back(load_group(f.spec));
  // a quotient is written through its regular representation
  auto d16 = dihedral_group(16);
  gs.push_back(quotient_group(d16, center(*d16)).group);
  gs.push_back(direct_product({cyclic_group(3), gl2_3()}));
  for (const auto& g : gs) {
    CAPTURE(g->order());
    auto back = group_from_json(group_to_json(*g));
    CHECK(fingerprint(*back) == fingerprint(*g));
    if (g->order() <= 200) CHECK(find_isomorphism(*g, *back));
  }
}

TEST_CASE("fusion round trip keeps the class table") {
  for (const auto& f : fixtures()) {
    if (f.kind != "fusion") continue;
    CAPTURE(f.name);
    auto a = load_fusion(f.spec);
    auto b = fusion_from_json(fusion_to_json(*a));
    CHECK(class_table(*a) == class_table(*b));
    CHECK(a->morphism_count() == b->morphism_count());
    if (a->s().order() <= 16) CHECK(fusion_isomorphism(*a, *b));
  }
}

TEST_CASE("artifacts are validated") {
  Json g = group_to_json(*dihedral_group(8));
  g["order"] = 16;
  CHECK_THROWS_AS(group_from_json(g), Error);
  Json f = fusion_to_json(*load_fusion(fixture("F_D8_S4").spec));
  f["classes"][0]["automizer"] = 7;
  try {
    fusion_from_json(f);
    FAIL("tampered class table accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SchemaMismatch);
  }
  Json r = modrep_to_json(build_ST12());
  r["schema"] = kGroupSchema;
  CHECK_THROWS_AS(modrep_from_json(r), Error);
  CHECK_THROWS_AS(group_from_spec({{"family", "dihedral"}}), Error);
  CHECK_THROWS_AS(load_fusion({{"kind", "inner"}, {"group", {{"family", "symmetric"}, {"n", 3}}}}), Error);
}

TEST_CASE("fixtures reproduce their documented values") {
  for (const auto& f : fixtures()) {
    if (f.expect.is_null()) continue;
    CAPTURE(f.name);
    const Json& e = f.expect;
    if (f.kind == "group") {
      auto g = load_group(f.spec);
      if (e.contains("subexponent")) CHECK(subexponent(*g).value == e["subexponent"].get<std::uint64_t>());
      if (e.contains("subexponent_at_least")) CHECK(subexponent(*g).value >= e["subexponent_at_least"].get<std::uint64_t>());
      if (e.contains("srk_2")) CHECK(p_ranks(*g, 2).srk == e["srk_2"].get<int>());
      if (e.contains("large_abelian_unique")) {
        auto r = find_large_abelian(*g, e["k"].get<int>(), e["e"].get<int>());
        CHECK(r.a);
        CHECK(r.uniqueness_checked);
        CHECK(r.unique);
      }
    } else if (f.kind == "fusion") {
      auto fs = load_fusion(f.spec);
      CHECK(saturation_check(*fs).saturated() == e["saturated"].get<bool>());
      if (e.contains("order")) CHECK(fs->s().order() == e["order"].get<std::size_t>());
    } else if (f.kind == "tower") {
      auto spec = tower_from_spec(f.spec);
      auto levels = build_levels(spec);
      CHECK(verify_tower(spec, levels).increasing == e["increasing"].get<bool>());
      if (e.contains("torus_automizer")) CHECK(torus_automizer(spec, levels).order == e["torus_automizer"].get<std::uint64_t>());
    } else if (f.kind == "gate") {
      const ModRep r = load_modrep(f.spec);
      auto v = gate_classify(r);
      CHECK((v.pass ? "PASS" : "FAIL") == e["verdict"].get<std::string>());
      if (v.pass) CHECK(verify_gate_certificate(r, v));
    }
  }
}

TEST_CASE("command examples") {
  auto a = call({"fusion", "check", "--fixture", "F_D8_S4"});
  CHECK(a.code == 0);
  CHECK(a.report["result"]["saturated"] == true);
  CHECK(a.report["command"] == "fusion check");
  CHECK(a.report["inputs"].size() == 1);

  auto b = call({"gate", "classify", "--fixture", "G_4_4_5_F5"});
  CHECK(b.code == 0);
  CHECK(b.report["result"]["verdict"] == "FAIL");

  auto c = call({"pgroup", "subexp", "--fixture", "SD16"});
  CHECK(c.code == 0);
  CHECK(c.report["result"]["value"] == 4);

  auto d = call({"fusion", "check", "--fixture", "F_broken_C4xC2"});
  CHECK(d.code == 1);
  CHECK(d.report["result"]["saturated"] == false);
  for (const auto& w : d.report["result"]["failures"]) CHECK(w["verified"] == true);

  auto e = call({"pgroup", "ranks", "--fixture", "C4oD8"});
  CHECK(e.report["result"]["srk"] == 3);

  auto q = call({"fusion", "quotient", "--fixture", "F_D8_S4"});
  REQUIRE(q.code == 0);
  for (const auto& row : q.report["result"]["quotients"]) CHECK(row["saturated"] == true);

  auto al = call({"fusion", "alperin", "--fixture", "F_SD16_GL2_3"});
  CHECK(al.report["result"]["complete"] == true);

  auto iso = call({"fusion", "iso", "--fixture", "F_D8_A6", "--fixture", "F_D8_PSL2_7"});
  CHECK(iso.report["result"]["isomorphic"] == true);
  auto noniso = call({"fusion", "iso", "--fixture", "F_D8_A6", "--fixture", "F_D8_S4"});
  CHECK(noniso.report["result"]["isomorphic"] == false);

  auto prod = call({"fusion", "product", "--fixture", "F_D8_S4", "--fixture", "F_D8_inner"});
  CHECK(prod.report["result"]["sylow_order"] == 64);
  CHECK(prod.report["result"]["saturated"] == true);
  CHECK(call({"fusion", "product", "--fixture", "F_C3_S3", "--fixture", "F_D8_inner"}).code == 2);
}

TEST_CASE("artifacts flow between commands") {
  auto made = call({"group", "make", "--spec", R"({"family": "semidihedral", "order": 16})"});
  REQUIRE(made.code == 0);
  auto info = call({"pgroup", "subexp", "--spec", made.text});
  CHECK(info.report["result"]["value"] == 4);
  auto built = call({"fusion", "build", "--fixture", "F_SD16_GL2_3"});
  auto checked = call({"fusion", "check", "--spec", built.text});
  CHECK(checked.report["result"]["saturated"] == true);
  auto dumped = call({"catalog", "dump", "--fixture", "S3_A2_F3"});
  auto gate = call({"gate", "classify", "--spec", dumped.text});
  CHECK(gate.report["result"]["verdict"] == "PASS");
  CHECK(gate.report["result"]["certificate_verified"] == true);
}

TEST_CASE("reports are reproducible") {
  const std::vector<std::string> args{"fusion", "classify", "--fixture", "F_D8_S4", "--seed", "7"};
  auto a = call(args), b = call(args);
  CHECK(a.text == b.text);
  CHECK(a.report["digest"] == b.report["digest"]);
  CHECK(a.report["settings"]["seed"] == 7);
  auto g1 = call({"gate", "classify", "--fixture", "S3_A2_F3", "--seed", "1"});
  auto g2 = call({"gate", "classify", "--fixture", "S3_A2_F3", "--seed", "2"});
  CHECK(g1.report["result"] == g2.report["result"]);
  // timing is kept out of the digest
  auto t = call({"fusion", "classify", "--fixture", "F_D8_S4", "--seed", "7", "--timing"});
  CHECK(t.report.contains("timing"));
  Json hashed = t.report;
  hashed.erase("timing");
  hashed.erase("digest");
  CHECK(sha256_hex(canonical(hashed)) == t.report["digest"]);
}

TEST_CASE("exit codes and reasons") {
  auto none = call({});
  CHECK(none.code == 2);
  CHECK(none.report["error"]["reason"] == "ParseError");
  CHECK(call({"fusion", "explode"}).code == 2);
  auto bad = call({"group", "info", "--spec", R"({"family": "bogus"})"});
  CHECK(bad.code == 2);
  CHECK(bad.report["error"]["reason"] == "InvalidSpec");
  CHECK(call({"group", "info", "--spec", "{not json"}).code == 2);
  CHECK(call({"group", "info", "--fixture", "F_D8_S4"}).code == 2);  // wrong fixture kind
  auto cap = call({"group", "info", "--fixture", "S6", "--cap-order", "100"});
  CHECK(cap.code == 1);
  CHECK(cap.report["error"]["reason"] == "CapExceeded");
  CHECK(caps().order == Caps{}.order);  // restored after the run
  auto unbacked = call({"tower", "report", "--fixture", "PSL3_exotic"});
  CHECK(unbacked.code == 1);
  CHECK(unbacked.report["error"]["reason"] == "RuleNotGroupBacked");
  auto help = call({"--help"});
  CHECK(help.code == 0);
  CHECK(help.text.find("gate") != std::string::npos);
}

TEST_CASE("srk formula against enumerated PSL_2") {
  struct Case {
    std::int64_t r;
    int f;
  };
  for (auto [r, f] : std::vector<Case>{{3, 2}, {5, 1}, {7, 1}, {11, 1}, {13, 1}, {7, 2}}) {
    auto g = psl2(r, f);
    for (std::int64_t q : {2, 3, 5, 7, 11, 13}) {
      CAPTURE(r);
      CAPTURE(f);
      CAPTURE(q);
      CHECK(srk_psl2(q, r, f) == p_ranks(*g, q).srk);
    }
  }
  for (int n = 1; n <= 8; ++n) CHECK(srk_bound(2, n) == 2 * n);
}

TEST_CASE("srk obstruction report") {
  const Json so3 = fixture("SO3").spec;
  auto levels = build_levels(tower_from_spec(so3));
  auto rep = srk_obstruction_report(so3, levels, 3, {2, 3, 7});
  REQUIRE(rep.levels.size() == 5);
  CHECK(rep.growing == std::vector<std::int64_t>{7});
  REQUIRE(rep.obstruction_level);
  CHECK(*rep.obstruction_level == 4);
  for (const auto& l : rep.levels) {
    if (l.evidence == "enumerated") {
      CHECK(l.fusion_matches == true);
      CHECK(l.formula_agrees == true);
    }
  }
  CHECK(rep.levels[0].evidence == "enumerated");
  CHECK(rep.levels[1].evidence == "enumerated");

  const Json inner = fixture("SO3_inner").spec;
  auto ilevels = build_levels(tower_from_spec(inner));
  auto irep = srk_obstruction_report(inner, ilevels, 3, {2, 3, 7});
  CHECK(irep.growing.empty());
  CHECK(!irep.obstruction_level);

  const Json exotic = fixture("PSL3_exotic").spec;
  auto elevels = build_levels(tower_from_spec(exotic));
  CHECK_THROWS_AS(srk_obstruction_report(exotic, elevels, 3, {2}), Error);

  auto cli = call({"tower", "report", "--fixture", "SO3", "--n", "3", "--primes", "2,3,7"});
  CHECK(cli.code == 0);
  CHECK(cli.report["result"]["message"] == "characteristic-0 obstruction witnessed at level 4");
  CHECK(cli.report["result"]["bound_table"]["rows"].size() == 8);
}

TEST_CASE("markdown rendering") {
  Json j{{"a", 1}, {"rows", {{{"x", 1}, {"y", "z"}}}}, {"nested", {{"b", true}}}};
  const auto md = json_to_markdown(j);
  CHECK(md.find("- **a**: 1") != std::string::npos);
  CHECK(md.find("| x | y |") != std::string::npos);
  CHECK(md.find("- **b**: true") != std::string::npos);
  auto rep = call({"pgroup", "ranks", "--fixture", "D8", "--format", "md"});
  CHECK(rep.code == 0);
  CHECK(rep.text.find("- **srk**: 2") != std::string::npos);
}

TEST_CASE("golden artifacts") {
  // Regenerate with PTL_UPDATE_GOLDEN=1 after an intended format change.
  const bool update = std::getenv("PTL_UPDATE_GOLDEN") != nullptr;
  for (const char* name : {"D8", "Z9^2:C3", "F_D8_S4", "F_broken_C4xC2", "F_SO3_n3", "S3_A2_F3", "GL2_3_ST12_F3"}) {
    CAPTURE(name);
    std::string file = name;
    std::replace(file.begin(), file.end(), '^', '_');
    std::replace(file.begin(), file.end(), ':', '_');
    const auto path = std::filesystem::path(PTL_GOLDEN_DIR) / (file + ".json");
    const auto text = canonical(fixture_artifact(fixture(name)));
    if (update) {
      std::ofstream(path) << text;
      continue;
    }
    std::ifstream in(path);
    REQUIRE(in);
    std::stringstream golden;
    golden << in.rdbuf();
    CHECK(golden.str() == text);
  }
}
