#include "ptoral/cli.hpp"

namespace ptl::cli {

namespace {

Json family(const std::string& name, Json params = Json::object()) {
  params["family"] = name;
  return params;
}

Json tame(std::int64_t p, int e, int rank, int w, const Json& action) {
  return family("tame", {{"p", p}, {"e", e}, {"rank", rank}, {"complement", family("cyclic", {{"n", w}})}, {"action", {action}}});
}

const Json kSwap = {{0, 1}, {1, 0}};
const Json kCompanion = {{0, -1}, {1, -1}};  // order 3, fixed-point free

std::vector<Fixture> make_fixtures() {
  std::vector<Fixture> v;
  auto group = [&](std::string name, std::string what, Json spec, Json expect = nullptr) {
    v.push_back({std::move(name), "group", std::move(what), std::move(spec), std::move(expect)});
  };
  auto fusion = [&](std::string name, std::string what, Json spec, Json expect = nullptr) {
    v.push_back({std::move(name), "fusion", std::move(what), std::move(spec), std::move(expect)});
  };
  auto tower = [&](std::string name, std::string what, Json spec, Json expect = nullptr) {
    v.push_back({std::move(name), "tower", std::move(what), std::move(spec), std::move(expect)});
  };
  auto gate = [&](std::string name, std::string what, Json spec, Json expect) {
    v.push_back({std::move(name), "gate", std::move(what), std::move(spec), std::move(expect)});
  };

  group("C2", "cyclic of order 2", family("cyclic", {{"n", 2}}));
  group("C4xC2", "abelian of type (4,2)", family("abelian", {{"orders", {4, 2}}}), {{"subexponent", 4}});
  group("D8", "dihedral of order 8", family("dihedral", {{"order", 8}}), {{"subexponent", 2}});
  group("D16", "dihedral of order 16", family("dihedral", {{"order", 16}}), {{"subexponent", 4}});
  group("D32", "dihedral of order 32", family("dihedral", {{"order", 32}}), {{"subexponent", 8}});
  group("Q8", "quaternion of order 8", family("quaternion", {{"order", 8}}));
  group("Q16", "generalized quaternion of order 16", family("quaternion", {{"order", 16}}), {{"subexponent", 4}});
  group("SD16", "semidihedral of order 16", family("semidihedral", {{"order", 16}}), {{"subexponent", 4}});
  group("SD32", "semidihedral of order 32", family("semidihedral", {{"order", 32}}), {{"subexponent", 8}});
  group("C2wrC2", "C2 wr C2 on 4 points", family("wreath", {{"m", 2}, {"n", 2}}));
  group("C3wrC3", "C3 wr C3 on 9 points", family("wreath", {{"m", 3}, {"n", 3}}));
  group("S3", "symmetric on 3 points", family("symmetric", {{"n", 3}}));
  group("S4", "symmetric on 4 points", family("symmetric", {{"n", 4}}));
  group("S5", "symmetric on 5 points", family("symmetric", {{"n", 5}}));
  group("S6", "symmetric on 6 points", family("symmetric", {{"n", 6}}));
  group("A4", "alternating on 4 points", family("alternating", {{"n", 4}}));
  group("A5", "alternating on 5 points", family("alternating", {{"n", 5}}));
  group("A6", "alternating on 6 points", family("alternating", {{"n", 6}}));
  group("GL2_3", "GL_2(3)", family("gl2_3"));
  group("SL2_3", "SL_2(3)", family("sl2_3"));
  group("E27", "extraspecial 3^{1+2} of exponent 3", family("extraspecial", {{"p", 3}}));
  group("E125", "extraspecial 5^{1+2} of exponent 5", family("extraspecial", {{"p", 5}}));
  group("C4oD8", "central product C4 o D8", family("c4_d8"), {{"srk_2", 3}});
  group("PSL2_7", "PSL_2(7) on the projective line", family("psl2", {{"p", 7}}));
  group("PSL2_49", "PSL_2(49) on the projective line", family("psl2", {{"p", 7}, {"f", 2}}));
  group("Z9^2:C3", "(Z/9)^2 x| C3, fixed-point-free action", tame(3, 2, 2, 3, kCompanion));
  group("Z81^2:C3", "(Z/81)^2 x| C3, fixed-point-free action", tame(3, 4, 2, 3, kCompanion),
        {{"k", 2}, {"e", 4}, {"large_abelian_unique", true}});
  group("Z32^2:C2", "(Z/32)^2 x| C2 by the coordinate swap", tame(2, 5, 2, 2, kSwap),
        {{"k", 2}, {"e", 5}, {"subexponent_at_least", 16}});

  auto spec_of = [&](const std::string& name) {
    for (const auto& f : v)
      if (f.name == name) return f.spec;
    fail(Errc::InvalidSpec, "unknown fixture " + name);
  };
  auto sylow = [&](const char* g, std::int64_t p) { return Json{{"kind", "sylow"}, {"group", spec_of(g)}, {"p", p}}; };
  const Json sat{{"saturated", true}};
  fusion("F_D8_S4", "fusion of S4 at 2", sylow("S4", 2), sat);
  fusion("F_D8_S5", "fusion of S5 at 2", sylow("S5", 2), sat);
  fusion("F_D8_A6", "fusion of A6 at 2", sylow("A6", 2), sat);
  fusion("F_D8_PSL2_7", "fusion of PSL_2(7) at 2", sylow("PSL2_7", 2), sat);
  fusion("F_SD16_GL2_3", "fusion of GL_2(3) at 2", sylow("GL2_3", 2), sat);
  fusion("F_Q8_SL2_3", "fusion of SL_2(3) at 2", sylow("SL2_3", 2), sat);
  fusion("F_C3_SL2_3", "fusion of SL_2(3) at 3", sylow("SL2_3", 3), sat);
  fusion("F_C3_S3", "fusion of S3 at 3", sylow("S3", 3), sat);
  fusion("F_E9_S6", "fusion of S6 at 3", sylow("S6", 3), sat);
  fusion("F_D8_inner", "inner fusion of D8", {{"kind", "inner"}, {"group", spec_of("D8")}}, sat);
  fusion("F_Z9^2:C3_inner", "inner fusion of (Z/9)^2 x| C3", {{"kind", "inner"}, {"group", spec_of("Z9^2:C3")}}, sat);
  // C4 x C2 = <a> x <b> on 6 points: a^2 -> b -> a^2 b on Omega_1 does not extend
  fusion("F_broken_C4xC2", "order-3 automorphism of Omega_1(C4 x C2); fails the extension axiom",
         {{"kind", "declared"},
          {"group", spec_of("C4xC2")},
          {"maps", {{{"gens", {{2, 3, 0, 1, 4, 5}, {0, 1, 2, 3, 5, 4}}}, {"images", {{0, 1, 2, 3, 5, 4}, {2, 3, 0, 1, 5, 4}}}}}}},
         {{"saturated", false}});

  const Json so3{{"tower", "so3"}, {"n0", 2}, {"n1", 6}};
  const Json so3_inner{{"tower", "so3"}, {"n0", 2}, {"n1", 6}, {"elementary", "none"}};
  const Json psl3{{"tower", "psl3"}, {"exotic", false}, {"n0", 2}, {"n1", 3}};
  const Json psl3_exotic{{"tower", "psl3"}, {"exotic", true}, {"n0", 2}, {"n1", 3}};
  tower("SO3", "SO(3) at p = 2, levels 2..6", so3, {{"increasing", true}, {"torus_automizer", 2}});
  tower("SO3_inner", "inner fusion on the SO(3) truncations, levels 2..6", so3_inner, {{"increasing", true}});
  tower("PSL3", "Sylows of PSL_3(q^{3^i}) at p = 3, levels 2..3", psl3, {{"increasing", true}});
  tower("PSL3_exotic", "the exotic variant: SL_2(3) only on the class of Z(S)<x>", psl3_exotic);

  auto level = [](const Json& t, int n) { return Json{{"kind", "tower_level"}, {"tower", t}, {"n", n}}; };
  fusion("F_SO3_n3", "SO(3) tower level 3 (dihedral of order 16)", level(so3, 3), sat);
  fusion("F_PSL3_e2", "realizable PSL_3 level e = 2, order 81", level(psl3, 2), {{"saturated", true}, {"order", 81}});
  fusion("F_PSL3_exotic_e3", "exotic level e = 3, order 729", level(psl3_exotic, 3), {{"saturated", true}, {"order", 729}});
  fusion("F_PSL3_e3", "realizable PSL_3 level e = 3, order 729", level(psl3, 3), {{"saturated", true}, {"order", 729}});

  const Json pass{{"verdict", "PASS"}}, failed{{"verdict", "FAIL"}};
  gate("S3_A2_F3", "W(A2) = S3 on the root lattice over F_3", {{"rep", "weyl"}, {"type", "A"}, {"rank", 2}, {"p", 3}}, pass);
  gate("GL2_3_ST12_F3", "ST12 = GL_2(3) on F_3^2", {{"rep", "ST12"}}, pass);
  gate("G_4_1_5_F5", "G(4,1,5) on F_5^5", {{"rep", "G"}, {"m", 4}, {"k", 1}, {"n", 5}, {"p", 5}}, pass);
  gate("G_4_2_5_F5", "G(4,2,5) on F_5^5", {{"rep", "G"}, {"m", 4}, {"k", 2}, {"n", 5}, {"p", 5}}, pass);
  gate("G_4_4_5_F5", "G(4,4,5) on F_5^5", {{"rep", "G"}, {"m", 4}, {"k", 4}, {"n", 5}, {"p", 5}}, failed);
  gate("ST24_F2", "ST24 = C2 x SL_3(2) on (Z/4)^3", {{"rep", "ST24"}}, failed);
  gate("ST29_F5", "ST29 on F_5^4", {{"rep", "ST29"}}, failed);
  gate("ST31_F5", "ST31 on F_5^4", {{"rep", "ST31"}}, pass);
  gate("C5_C4_F5", "C5 x| C4 on Z[zeta_5]/5", {{"rep", "cyclotomic"}, {"p", 5}}, failed);
  gate("S5_A4_F5", "W(A4) = S5 on the root lattice over F_5", {{"rep", "weyl"}, {"type", "A"}, {"rank", 4}, {"p", 5}}, pass);
  return v;
}

}  // namespace

const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> all = make_fixtures();
  return all;
}

const Fixture& fixture(const std::string& name) {
  for (const auto& f : fixtures())
    if (f.name == name) return f;
  fail(Errc::InvalidSpec, "unknown fixture " + name);
}

Json fixture_artifact(const Fixture& f) {
  if (f.kind == "group") return group_to_json(*load_group(f.spec));
  if (f.kind == "fusion") return fusion_to_json(*load_fusion(f.spec));
  if (f.kind == "gate") return modrep_to_json(load_modrep(f.spec));
  return f.spec;
}

}  // namespace ptl::cli
