#include "doctest.h"

#include "ptoral/families.hpp"
#include "ptoral/fusion.hpp"
#include "ptoral/pgroup.hpp"

#include <algorithm>
#include <random>
#include <set>

using namespace ptl;

namespace {

struct Local {
  GroupPtr g;
  FusionPtr f;
};

Local sylow_fusion(GroupPtr g, std::int64_t p) {
  Subgroup s = sylow_subgroup(*g, p);
  return {g, fusion_of_group(g, s)};
}

// Lattice index of the subgroup of S whose image in G is `elems`.
std::size_t index_in_s(const FusionSystem& f, const std::vector<Elt>& g_elems) {
  const auto& embed = f.origin()->embed;
  Bitset b(f.s().order());
  for (Elt x : g_elems) {
    auto it = std::find(embed.begin(), embed.end(), x);
    REQUIRE(it != embed.end());
    b.set(static_cast<std::size_t>(it - embed.begin()));
  }
  return *f.lattice().index_of(b);
}

std::vector<Elt> fixed_point_free_involutions_and_one(const Group& g) {
  std::vector<Elt> v{0};
  for (Elt x = 1; x < g.order(); ++x) {
    if (g.elt_order(x) != 2) continue;
    bool fpf = true;
    for (int i = 0; i < g.width(); ++i) fpf = fpf && g.key(x)[i] != i;
    if (fpf) v.push_back(x);
  }
  return v;
}

// Oracle: count the distinct maps c_g|P with gPg^-1 <= S, straight from G.
std::uint64_t brute_morphism_count(const Local& l) {
  const Group& g = *l.g;
  const FusionSystem& f = *l.f;
  const auto& embed = f.origin()->embed;
  std::vector<Elt> back(g.order(), ~0u);
  for (Elt i = 0; i < embed.size(); ++i) back[embed[i]] = i;
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < f.lattice().size(); ++i) {
    const Subgroup& p = f.sub(i);
    std::set<std::vector<Elt>> maps;
    for (Elt x = 0; x < g.order(); ++x) {
      std::vector<Elt> img;
      bool in = true;
      for (Elt y : p.elems) {
        Elt c = back[g.conj(x, embed[y])];
        if (c == ~0u) {
          in = false;
          break;
        }
        img.push_back(c);
      }
      if (in) maps.insert(img);
    }
    total += maps.size();
  }
  return total;
}

}  // namespace

TEST_CASE("inner fusion") {
  auto d8 = dihedral_group(8);
  auto f = inner_fusion(d8);
  CHECK(f->class_count() == 8);
  for (std::size_t i = 0; i < f->lattice().size(); ++i) {
    const Subgroup& p = f->sub(i);
    CHECK(f->automizer_order(i) == normalizer(*d8, p).order() / centralizer(*d8, p).order());
  }
  auto rep = saturation_check(*f);
  CHECK(rep.saturated());
  auto sc = strongly_closed_lattice(*f);
  CHECK(f->sub(sc.minsc) == center(*d8));
  CHECK(sc.subgroups.size() == normal_subgroups(*d8).size() - 1);
}

TEST_CASE("F_D8(S4)") {
  auto l = sylow_fusion(symmetric_group(4), 2);
  const FusionSystem& f = *l.f;
  CHECK(f.morphism_count() == brute_morphism_count(l));
  auto v = index_in_s(f, fixed_point_free_involutions_and_one(*l.g));
  CHECK(f.automizer_order(v) == 6);
  CHECK(weakly_closed(f, v));
  CHECK(essential(f, v));
  // The other Klein four <(01),(23)> has N_S4 = D8, so its automizer is
  // Aut_S of order 2 and it is not essential.
  std::vector<std::size_t> kleins;
  for (std::size_t i = 0; i < f.lattice().size(); ++i)
    if (f.sub(i).order() == 4 && exponent(f.s(), f.sub(i)) == 2) kleins.push_back(i);
  REQUIRE(kleins.size() == 2);
  for (auto k : kleins) {
    CHECK(f.automizer_order(k) == (k == v ? 6u : 2u));
    CHECK(essential(f, k) == (k == v));
    CHECK(out_group(f, k)->order() == (k == v ? 6u : 2u));
  }
  for (std::size_t i = 0; i < f.lattice().size(); ++i)
    if (f.sub(i).order() == 4 && exponent(f.s(), f.sub(i)) == 4) CHECK_FALSE(essential(f, i));
  const std::size_t top = f.lattice().size() - 1;
  CHECK_FALSE(essential(f, top));

  auto sat = saturation_check(f);
  CHECK(sat.saturated());
  auto sc = strongly_closed_lattice(f);
  CHECK(sc.subgroups == std::vector<std::uint32_t>{static_cast<std::uint32_t>(v), static_cast<std::uint32_t>(top)});
  CHECK(sc.minsc == v);

  CHECK(hom_classes(f, top, top).size() == 1);
  auto z = f.index_of(center(f.s()));
  CHECK(hom_classes(f, z, top).size() == 2);
  CHECK(hom_classes(f, top, z).empty());
}

namespace {

GeneratorDatum klein_datum(const Subgroup& p) {
  GeneratorDatum d;
  d.subgroup_gens = {p.elems[1], p.elems[2]};
  d.automorphisms.push_back({p.elems[2], p.elems[1]});
  d.automorphisms.push_back({p.elems[2], p.elems[3]});
  return d;
}

}  // namespace

TEST_CASE("generated fusion") {
  auto l = sylow_fusion(symmetric_group(4), 2);
  const FusionSystem& f = *l.f;
  auto v = index_in_s(f, fixed_point_free_involutions_and_one(*l.g));
  auto h = generated_fusion(f.sylow(), {klein_datum(f.sub(v))});
  CHECK(h->morphism_count() == f.morphism_count());
  auto iso = fusion_isomorphism(*h, f);
  REQUIRE(iso);
  CHECK(std::all_of(iso->begin(), iso->end(), [&](Elt x) { return x < f.s().order(); }));
  CHECK(saturation_check(*h).saturated());

  // Aut(V) on both Klein fours gives the fusion of PSL2(7) and of A6.
  std::vector<GeneratorDatum> both;
  for (std::size_t i = 0; i < f.lattice().size(); ++i)
    if (f.sub(i).order() == 4 && exponent(f.s(), f.sub(i)) == 2) both.push_back(klein_datum(f.sub(i)));
  auto h2 = generated_fusion(f.sylow(), both);
  auto l7 = sylow_fusion(psl2(7, 1), 2);
  auto a6 = sylow_fusion(alternating_group(6), 2);
  CHECK(h2->morphism_count() == brute_morphism_count(l7));
  CHECK(fusion_isomorphism(*h2, *l7.f));
  CHECK(fusion_isomorphism(*h2, *a6.f));
  CHECK(saturation_check(*h2).saturated());
  CHECK(generated_fusion(f.sylow(), {})->morphism_count() == inner_fusion(f.sylow())->morphism_count());

  // An invalid datum is rejected.
  GeneratorDatum bad{both[0].subgroup_gens, {{both[0].subgroup_gens[0], both[0].subgroup_gens[0]}}};
  CHECK_THROWS_AS(generated_fusion(f.sylow(), {bad}), Error);
}

TEST_CASE("broken declared system") {
  // C4 x C2 with an automorphism of order 3 on Omega_1: it cannot extend to
  // S, and it fuses a square with a non-square.
  auto s = abelian_group({4, 2});
  Subgroup om = omega_layer(*s, whole_group(*s), 1);
  const auto& e = om.elems;
  GeneratorDatum d{{e[1], e[2]}, {{e[2], e[3]}}};
  auto f = generated_fusion(s, {d});
  auto rep = saturation_check(*f);
  CHECK_FALSE(rep.saturated());
  CHECK_FALSE(rep.extension_axiom);
  REQUIRE_FALSE(rep.failures.empty());
  for (const auto& w : rep.failures) CHECK(verify_failure(*f, w));
  // a fabricated witness does not verify
  SaturationFailure fake{"sylow", "made up", static_cast<std::uint32_t>(f->lattice().size() - 1), {}, {}};
  CHECK_FALSE(verify_failure(*f, fake));
}

TEST_CASE("F_SD16(GL2(3))") {
  auto l = sylow_fusion(gl2_3(), 2);
  const FusionSystem& f = *l.f;
  CHECK(f.s().order() == 16);
  CHECK(f.morphism_count() == brute_morphism_count(l));
  std::size_t q8 = 0;
  for (std::size_t i = 0; i < f.lattice().size(); ++i) {
    const Subgroup& p = f.sub(i);
    if (p.order() != 8) continue;
    // Q8: one involution
    std::size_t inv = 0;
    for (Elt x : p.elems) inv += f.s().elt_order(x) == 2;
    if (inv == 1) q8 = i;
  }
  REQUIRE(q8 != 0);
  CHECK(out_group(f, q8)->order() == 6);
  CHECK(essential(f, q8));
  CHECK(saturation_check(f).saturated());
}

TEST_CASE("saturation across the corpus") {
  std::vector<std::pair<GroupPtr, std::int64_t>> corpus = {
      {symmetric_group(4), 2}, {symmetric_group(5), 2}, {alternating_group(6), 2}, {gl2_3(), 2},
      {sl2_3(), 3},            {symmetric_group(3), 3}, {symmetric_group(6), 3},   {psl2(7, 1), 2},
      {sl2_3(), 2},            {alternating_group(5), 2}};
  for (auto& [g, p] : corpus) {
    auto l = sylow_fusion(g, p);
    CAPTURE(g->order());
    CAPTURE(p);
    auto rep = saturation_check(*l.f);
    CHECK(rep.saturated());
    CHECK(l.f->morphism_count() == brute_morphism_count(l));
    // essential subgroups are centric and radical
    for (const auto& fl : rep.per_class)
      if (fl.essential) CHECK((fl.centric && fl.radical));
  }
}

TEST_CASE("fusion of a non-Sylow p-subgroup") {
  auto g = symmetric_group(4);
  Subgroup c2 = closure(*g, {*g->find(perm_from_cycles(4, {{0, 1}}))});
  auto f = fusion_of_group(g, c2);
  CHECK(f->s().order() == 2);
  Subgroup notp = closure(*g, {*g->find(perm_from_cycles(4, {{0, 1, 2}})), *g->find(perm_from_cycles(4, {{0, 1}}))});
  CHECK_THROWS_AS(fusion_of_group(g, notp), Error);
}

TEST_CASE("strongly p-embedded and Quillen agree") {
  std::vector<std::pair<GroupPtr, std::int64_t>> cases = {
      {symmetric_group(3), 2}, {symmetric_group(4), 2}, {alternating_group(5), 2}, {cyclic_group(6), 2},
      {dihedral_group(10), 2}, {alternating_group(4), 2}, {gl2_3(), 3}, {sl2_3(), 2}, {symmetric_group(3), 3}};
  std::vector<bool> expect = {true, false, true, false, true, false, true, false, false};
  for (std::size_t i = 0; i < cases.size(); ++i) {
    auto& [g, p] = cases[i];
    CAPTURE(i);
    CHECK(has_strongly_p_embedded(*g, p) == expect[i]);
    CHECK(quillen_disconnected(*g, p) == expect[i]);
  }
}

TEST_CASE("Alperin certificates") {
  for (auto gp : {std::pair{symmetric_group(4), 2}, std::pair{gl2_3(), 2}, std::pair{symmetric_group(6), 3}}) {
    auto l = sylow_fusion(gp.first, gp.second);
    const FusionSystem& f = *l.f;
    AlperinData a(f);
    for (auto r : a.subgroups()) {
      CHECK(fully_normalized(f, r));
      if (r != f.lattice().size() - 1) CHECK((centric(f, r) && radical(f, r)));
    }
    for (std::size_t p = 0; p < f.lattice().size(); ++p) {
      auto [reached, total] = a.coverage(static_cast<std::uint32_t>(p));
      CHECK(reached == total);
      for (const auto& phi : hom_classes(f, p, f.lattice().size() - 1)) {
        auto w = a.certificate(phi);
        REQUIRE(w);
        CHECK(a.recompose(*w) == phi);
      }
    }
  }
  // S4: (01)(23) -> (02)(13) passes through the normal Klein four
  auto l = sylow_fusion(symmetric_group(4), 2);
  const FusionSystem& f = *l.f;
  const Group& g = *l.g;
  Elt a = *g.find(perm_from_cycles(4, {{0, 1}, {2, 3}}));
  Elt b = *g.find(perm_from_cycles(4, {{0, 2}, {1, 3}}));
  auto src = index_in_s(f, {0, a});
  auto dst = index_in_s(f, {0, b});
  const auto& embed = f.origin()->embed;
  Elt bs = static_cast<Elt>(std::find(embed.begin(), embed.end(), b) - embed.begin());
  FusionMap phi{static_cast<std::uint32_t>(src), static_cast<std::uint32_t>(dst), {0, bs}};
  AlperinData ad(f);
  auto w = ad.certificate(phi);
  REQUIRE(w);
  auto v = index_in_s(f, fixed_point_free_involutions_and_one(g));
  bool through_v = false;
  for (const auto& st : w->steps) through_v = through_v || st.r == v;
  CHECK(through_v);
  // a map outside F has no certificate
  const std::size_t top = f.lattice().size() - 1;
  auto rnd = identity_map(f, top);
  std::swap(rnd.img[1], rnd.img[2]);
  if (!f.contains(rnd)) CHECK_FALSE(ad.certificate(rnd));
}

TEST_CASE("closure laws") {
  std::mt19937 rng(0);
  for (auto gp : {std::pair{symmetric_group(4), 2}, std::pair{gl2_3(), 2}, std::pair{symmetric_group(6), 3},
                  std::pair{psl2(7, 1), 2}}) {
    auto l = sylow_fusion(gp.first, gp.second);
    const FusionSystem& f = *l.f;
    const std::size_t n = f.lattice().size();
    for (int trial = 0; trial < 200; ++trial) {
      std::size_t p = rng() % n;
      auto ms = morphisms_from(f, p);
      const FusionMap& a = ms[rng() % ms.size()];
      CHECK(f.contains(a));
      CHECK(f.contains(inverse(f, a)));
      for (auto m : f.lattice().maximal(p)) CHECK(f.contains(restrict_to(f, a, m)));
      auto next = morphisms_from(f, a.dst);
      CHECK(f.contains(compose(f, next[rng() % next.size()], a)));
    }
  }
}

TEST_CASE("quotients") {
  auto l = sylow_fusion(symmetric_group(4), 2);
  const FusionSystem& f = *l.f;
  auto v = index_in_s(f, fixed_point_free_involutions_and_one(*l.g));
  auto q = quotient_fusion(f, v);
  CHECK(q.f->s().order() == 2);
  auto s3 = sylow_fusion(symmetric_group(3), 2);
  CHECK(fusion_isomorphism(*q.f, *s3.f));
  CHECK(saturation_check(*q.f).saturated());

  // F/S is trivial
  auto top = quotient_fusion(f, f.lattice().size() - 1);
  CHECK(top.f->s().order() == 1);

  // F_S(S)/Z(S) = F_{S/Z}(S/Z)
  auto d8 = dihedral_group(8);
  auto inner = inner_fusion(d8);
  auto qz = quotient_fusion(*inner, inner->index_of(center(*d8)));
  CHECK(fusion_isomorphism(*qz.f, *inner_fusion(qz.q.group)));

  // not weakly closed
  auto c4 = std::find_if(f.lattice().all().begin(), f.lattice().all().end(),
                         [&](const Subgroup& h) { return h.order() == 2 && !weakly_closed(f, f.index_of(h)); });
  CHECK_THROWS_AS(quotient_fusion(f, f.index_of(*c4)), Error);

  // F(G)/Q = F_{S/Q}(N_G(Q)/Q) for every weakly closed Q, and F/Q is saturated
  for (auto gp : {std::pair{symmetric_group(4), 2}, std::pair{gl2_3(), 2}, std::pair{symmetric_group(6), 3}}) {
    auto lg = sylow_fusion(gp.first, gp.second);
    const FusionSystem& fg = *lg.f;
    const auto& embed = fg.origin()->embed;
    for (std::size_t i = 1; i < fg.lattice().size(); ++i) {
      if (!weakly_closed(fg, i)) continue;
      auto qf = quotient_fusion(fg, i);
      CHECK(saturation_check(*qf.f).saturated());
      std::vector<Elt> qg;
      for (Elt x : fg.sub(i).elems) qg.push_back(embed[x]);
      Subgroup qin = closure(*lg.g, qg);
      Subgroup n = normalizer(*lg.g, qin);
      auto ng = subgroup_as_group(*lg.g, n);
      std::vector<Elt> qn;
      for (Elt x = 0; x < ng.group->order(); ++x)
        if (qin.contains(ng.embed[x])) qn.push_back(x);
      auto bar = quotient_group(ng.group, closure(*ng.group, qn));
      auto other = sylow_fusion(bar.group, gp.second);
      CHECK(fusion_isomorphism(*qf.f, *other.f));
    }
  }
}

TEST_CASE("products") {
  auto a = sylow_fusion(symmetric_group(4), 2);
  auto b = sylow_fusion(symmetric_group(3), 2);
  auto pr = product_fusion(*a.f, *b.f);
  const FusionSystem& f = *pr.f;
  CHECK(f.s().order() == 16);
  CHECK(saturation_check(f).saturated());
  auto img = [&](const std::vector<Elt>& embed, std::size_t n) {
    Bitset bits(f.s().order());
    for (Elt x = 0; x < n; ++x) bits.set(embed[x]);
    return *f.lattice().index_of(bits);
  };
  auto s1 = img(pr.embed1, a.f->s().order());
  auto s2 = img(pr.embed2, b.f->s().order());
  auto sc = strongly_closed_lattice(f);
  CHECK(std::count(sc.subgroups.begin(), sc.subgroups.end(), s1) == 1);
  CHECK(std::count(sc.subgroups.begin(), sc.subgroups.end(), s2) == 1);
  CHECK(fusion_isomorphism(*quotient_fusion(f, s2).f, *a.f));
  CHECK(fusion_isomorphism(*quotient_fusion(f, s1).f, *b.f));
  // same system as the fusion of S4 x S3
  auto direct = sylow_fusion(direct_product({symmetric_group(4), symmetric_group(3)}), 2);
  CHECK(fusion_isomorphism(f, *direct.f));
  CHECK_FALSE(subsystem_violation(*a.f, f, pr.embed1));

  // inner times inner is inner
  auto d8 = dihedral_group(8);
  auto ii = product_fusion(*inner_fusion(d8), *inner_fusion(d8));
  CHECK(fusion_isomorphism(*ii.f, *inner_fusion(ii.f->sylow())));
}

TEST_CASE("isomorphism") {
  auto l = sylow_fusion(symmetric_group(4), 2);
  CHECK(fusion_isomorphism(*l.f, *l.f));
  CHECK_FALSE(fusion_isomorphism(*l.f, *inner_fusion(dihedral_group(8))));
  // S4 on the six 2-subsets of {0,1,2,3}
  auto s4_6 = perm_group(6, {{{0, 3, 5, 2}, {1, 4}}, {{1, 3}, {2, 4}}});
  REQUIRE(s4_6->order() == 24);
  auto m = sylow_fusion(s4_6, 2);
  CHECK(fusion_isomorphism(*l.f, *m.f));
  // the inner system is a subsystem of F_D8(S4) but not conversely
  auto inner = inner_fusion(l.f->sylow());
  std::vector<Elt> id(8);
  for (Elt x = 0; x < 8; ++x) id[x] = x;
  CHECK_FALSE(subsystem_violation(*inner, *l.f, id));
  CHECK(subsystem_violation(*l.f, *inner, id));
}

TEST_CASE("lift and normalizer maps") {
  auto l = sylow_fusion(symmetric_group(4), 2);
  const FusionSystem& f = *l.f;
  const Group& s = f.s();
  auto v = index_in_s(f, fixed_point_free_involutions_and_one(*l.g));
  const Subgroup& vv = f.sub(v);
  for (std::size_t i = 0; i < f.lattice().size(); ++i) {
    const Subgroup& p = f.sub(i);
    if (p.order() != 2 || vv.contains(p.elems[1])) continue;
    for (const auto& phi : morphisms_from(f, i)) {
      auto lift = lift_mod_q(f, phi, v, true);
      CHECK(lift.src == f.index_of(join(s, p, vv)));
      CHECK(f.contains(lift));
      Elt x = p.elems[1];
      Elt y = lift.img[f.sub(lift.src).position(x)];
      CHECK(vv.contains(s.mul(s.inv(phi.img[1]), y)));
    }
  }
  // P >= Q returns phi itself
  const std::size_t top = f.lattice().size() - 1;
  auto id = identity_map(f, top);
  CHECK(lift_mod_q(f, id, v, true) == id);

  for (auto gp : {std::pair{symmetric_group(4), 2}, std::pair{gl2_3(), 2}, std::pair{symmetric_group(6), 3}}) {
    auto lg = sylow_fusion(gp.first, gp.second);
    const FusionSystem& fg = *lg.f;
    for (std::size_t c = 0; c < fg.class_count(); ++c) {
      std::optional<std::uint32_t> p;
      for (auto m : fg.members(c))
        if (!p && fully_normalized(fg, m)) p = m;
      for (auto q : fg.members(c)) {
        auto psi = normalizer_map(fg, *p, q, true);
        CHECK(psi.src == fg.index_of(normalizer(fg.s(), fg.sub(q))));
        CHECK(fg.contains(psi));
        for (Elt x : fg.sub(q).elems) CHECK(fg.sub(*p).contains(psi.img[fg.sub(psi.src).position(x)]));
      }
    }
  }
}
