#include "doctest.h"

#include "ptoral/families.hpp"
#include "ptoral/lattice.hpp"
#include "ptoral/pgroup.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <functional>

using namespace ptl;
using oracle::subexponent_oracle;

namespace {

GroupPtr swap_torus(int e) {
  ZMat swap(2, 2);
  swap << 0, 1, 1, 0;
  return tame_group(2, e, 2, cyclic_group(2), {swap});
}

GroupPtr companion_torus(int e) {
  ZMat comp(2, 2);
  comp << 0, -1, 1, -1;
  return tame_group(3, e, 2, cyclic_group(3), {comp});
}

Subgroup torus_part(const Group& s) {
  std::vector<Elt> t;
  for (Elt x = 0; x < s.order(); ++x)
    if (s.key(x)[s.width() - 1] == 0) t.push_back(x);
  Subgroup h = make_subgroup(s, t, {});
  h.gens = small_generating_set(s, h);
  return h;
}

}  // namespace

TEST_CASE("omega layers") {
  auto z44 = abelian_group({4, 4});
  CHECK(omega_layer(*z44, whole_group(*z44), 0).order() == 1);
  CHECK(omega_layer(*z44, whole_group(*z44), 1).order() == 4);
  auto q8 = quaternion_group(8);
  auto om = omega_layer(*q8, whole_group(*q8), 1);
  CHECK(om.order() == 2);
  CHECK(om == center(*q8));
  CHECK_THROWS_AS(omega_layer(*symmetric_group(3), whole_group(*symmetric_group(3)), 1), Error);
}

TEST_CASE("subexponent values") {
  CHECK(subexponent(*cyclic_group(1)).value == 1);
  CHECK(subexponent(*semidihedral_group(16)).value == 4);
  CHECK(subexponent(*abelian_group({9, 3})).value == 9);
  CHECK(subexponent(*dihedral_group(8)).value == 2);
  CHECK(subexponent(*wreath_cyclic(2, 2)).value == 2);
  CHECK(subexponent(*dihedral_group(16)).value == 4);
  CHECK(subexponent(*quaternion_group(16)).value == 4);
  for (auto g : {dihedral_group(8), quaternion_group(8), semidihedral_group(16), dihedral_group(16),
                 extraspecial_plus(3), central_product_c4_d8(), wreath_cyclic(2, 2), abelian_group({4, 2, 2})}) {
    auto r = subexponent(*g);
    CHECK(r.value == subexponent_oracle(*g));
    // the witness series re-verifies
    REQUIRE(r.series.terms.size() == r.series.witnesses.size() + 1);
    for (std::size_t i = 0; i < r.series.witnesses.size(); ++i) {
      CHECK(is_normal(*g, r.series.terms[i + 1]));
      CHECK(r.series.terms[i + 1].contains(r.series.witnesses[i]));
      CHECK(!r.series.terms[i].contains(r.series.witnesses[i]));
      CHECK(r.series.witness_orders[i] <= r.value);
    }
  }
}

TEST_CASE("subexponent witness") {
  auto d8 = dihedral_group(8);
  Subgroup c4;
  for (const auto& h : enumerate_subgroups(*d8, false, 4))
    if (abelian_invariants(*d8, h) == std::vector<std::uint64_t>{4}) c4 = h;
  Elt x = subexp_witness(*d8, c4, 2);
  CHECK(!c4.contains(x));
  CHECK(d8->elt_order(x) == 2);

  auto s = swap_torus(5);
  auto ex = subexponent(*s).value;
  auto t = torus_part(*s);
  Elt w = subexp_witness(*s, t, ex);
  CHECK(!t.contains(w));
  CHECK(s->elt_order(w) <= ex);

  auto e27 = extraspecial_plus(3);
  for (const auto& a : normal_subgroups(*e27))
    if (a.order() == 9) CHECK(e27->elt_order(subexp_witness(*e27, a, 3)) == 3);
}

TEST_CASE("homocyclic") {
  auto a = abelian_group({4, 4, 4});
  auto h = is_homocyclic(*a, whole_group(*a));
  CHECK(h.homocyclic);
  CHECK(h.rank == 3);
  CHECK(h.exponent == 4);
  auto b = abelian_group({4, 2});
  CHECK(!is_homocyclic(*b, whole_group(*b)).homocyclic);
  auto c = abelian_group({32, 32});
  auto o = is_homocyclic(*c, omega_layer(*c, whole_group(*c), 2));
  CHECK(o.homocyclic);
  CHECK(o.rank == 2);
  CHECK(o.exponent == 4);
  CHECK_THROWS_AS(is_homocyclic(*dihedral_group(8), whole_group(*dihedral_group(8))), Error);
}

TEST_CASE("large abelian") {
  auto s = swap_torus(5);
  auto r = find_large_abelian(*s);
  REQUIRE(r.a);
  CHECK(*r.a == torus_part(*s));
  CHECK(r.uniqueness_checked);
  CHECK(r.unique);
  CHECK(!find_large_abelian(*dihedral_group(16)).a);
  auto h = abelian_group({32, 32});
  auto rh = find_large_abelian(*h);
  REQUIRE(rh.a);
  CHECK(rh.a->order() == h->order());
}

TEST_CASE("ranks") {
  auto q8 = quaternion_group(8);
  CHECK(p_ranks(*q8, 2).rk == 1);
  CHECK(p_ranks(*q8, 2).srk == 2);
  CHECK(p_ranks(*central_product_c4_d8(), 2).srk == 3);
  CHECK(p_ranks(*abelian_group({3, 3, 3}), 3).rk == 3);
  CHECK(p_ranks(*symmetric_group(4), 2).rk == 2);
  CHECK(srk_bound(2, 2) == 4);
  CHECK(srk_bound(3, 6) == 9);
  CHECK(srk_bound(2, 1) == 2);
}

TEST_CASE("upper central pair") {
  auto a = abelian_group({4, 2});
  auto [z, z2] = upper_central_pair(*a);
  CHECK(z.order() == 8);
  CHECK(z2.order() == 8);
  auto d8 = dihedral_group(8);
  auto [zd, zd2] = upper_central_pair(*d8);
  CHECK(zd.order() == 2);
  CHECK(zd2.order() == 8);
  auto e = extraspecial_plus(3);
  auto [ze, ze2] = upper_central_pair(*e);
  CHECK(ze.order() == 3);
  CHECK(ze2.order() == 27);
}
