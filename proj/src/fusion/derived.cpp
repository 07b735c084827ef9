#include "ptoral/families.hpp"
#include "ptoral/fusion.hpp"

#include "builder.hpp"

#include <algorithm>
#include <array>

namespace ptl {

FusionMap lift_mod_q(const FusionSystem& f, const FusionMap& phi, std::size_t q, bool saturated) {
  const Group& s = f.s();
  const Subgroup& qq = f.sub(q);
  const Subgroup& p = f.sub(phi.src);
  if (!is_normal(s, qq) || !strongly_closed(f, q)) fail(Errc::BadParameters, "lift needs Q normal and strongly closed");
  if (!f.contains(phi)) fail(Errc::BadParameters, "lift of a map outside F");
  if (qq.bits.subset_of(p.bits)) return phi;
  const std::size_t pq = f.index_of(join(s, p, qq));
  // phi(g)^-1 psi(g) in Q for every generator g of P
  for (const auto& psi : morphisms_from(f, pq)) {
    const Subgroup& src = f.sub(pq);
    bool ok = true;
    for (Elt g : p.gens) {
      Elt a = phi.img[p.position(g)];
      Elt b = psi.img[src.position(g)];
      if (!qq.contains(s.mul(s.inv(a), b))) {
        ok = false;
        break;
      }
    }
    if (ok) return psi;
  }
  if (!saturated) fail(Errc::NotSaturated, "no lift modulo Q; the system is not known to be saturated");
  fail(Errc::LiftSearchFailed, "no lift modulo Q in a saturated system");
}

FusionMap normalizer_map(const FusionSystem& f, std::size_t p, std::size_t q, bool saturated) {
  const Group& s = f.s();
  if (f.class_of(p) != f.class_of(q)) fail(Errc::BadParameters, "normalizer map between subgroups that are not F-conjugate");
  if (!fully_normalized(f, p)) fail(Errc::BadParameters, "normalizer map needs P fully normalized");
  const Subgroup& pp = f.sub(p);
  const Subgroup& qq = f.sub(q);
  const Subgroup np = normalizer(s, pp);
  const std::size_t nq = f.index_of(normalizer(s, qq));
  const Subgroup& nqs = f.sub(nq);
  for (const auto& psi : morphisms_from(f, nq)) {
    if (!f.sub(psi.dst).bits.subset_of(np.bits)) continue;
    bool ok = true;
    for (Elt x : qq.gens) ok = ok && pp.contains(psi.img[nqs.position(x)]);
    if (ok) return psi;
  }
  if (!saturated) fail(Errc::NotSaturated, "no normalizer map; the system is not known to be saturated");
  fail(Errc::SearchFailed, "no normalizer map in a saturated system");
}

QuotientFusion quotient_fusion(const FusionSystem& f, std::size_t q) {
  if (!weakly_closed(f, q)) fail(Errc::NotWeaklyClosed, "quotient by a subgroup that is not weakly closed");
  const Subgroup& qq = f.sub(q);
  QuotientFusion out;
  out.q = quotient_group(f.sylow(), qq);
  const Group& sq = *out.q.group;
  auto lat = std::make_shared<const SubgroupLattice>(sq, whole_group(sq));
  auto image_index = [&](const Subgroup& m) {
    Bitset b(sq.order());
    for (Elt x : m.elems) b.set(out.q.proj[x]);
    return *lat->index_of(b);
  };
  std::vector<FusionMap> maps;
  // phi/Q: xQ -> phi(x)Q, evaluated on least coset representatives
  auto induced = [&](const FusionMap& m) {
    const Subgroup& src = f.sub(m.src);
    return map_by(*lat, sq.order(), image_index(src),
                  [&](Elt y) { return out.q.proj[m.img[src.position(out.q.reps[y])]]; });
  };
  for (std::size_t c = 0; c < f.class_count(); ++c) {
    const std::uint32_t r = f.rep(c);
    if (!qq.bits.subset_of(f.sub(r).bits)) continue;
    for (const auto& a : f.automizer_gens(c)) maps.push_back(induced(FusionMap{r, r, a}));
    for (auto m : f.members(c))
      if (m != r) maps.push_back(induced(f.iota(m)));
  }
  out.f = generated_by_maps(out.q.group, lat, maps);
  return out;
}

ProductFusion product_fusion(const FusionSystem& f1, const FusionSystem& f2) {
  if (f1.prime() != f2.prime() && f1.s().order() > 1 && f2.s().order() > 1)
    fail(Errc::BadParameters, "product of fusion systems at different primes");
  const Group& s1 = f1.s();
  const Group& s2 = f2.s();
  auto prod = direct_product({f1.sylow(), f2.sylow()});
  const Group& s = *prod;
  const std::size_t n2 = s2.order();
  std::vector<Elt> pair(s1.order() * n2);
  for (Elt a = 0; a < s1.order(); ++a)
    for (Elt b = 0; b < n2; ++b) {
      Key k = s1.key_vec(a);
      Key kb = s2.key_vec(b);
      k.insert(k.end(), kb.begin(), kb.end());
      pair[a * n2 + b] = *s.find(k);
    }
  std::vector<std::pair<Elt, Elt>> split(s.order());
  for (Elt a = 0; a < s1.order(); ++a)
    for (Elt b = 0; b < n2; ++b) split[pair[a * n2 + b]] = {a, b};
  ProductFusion out;
  for (Elt a = 0; a < s1.order(); ++a) out.embed1.push_back(pair[a * n2]);
  for (Elt b = 0; b < n2; ++b) out.embed2.push_back(pair[b]);

  auto lat = std::make_shared<const SubgroupLattice>(s, whole_group(s));
  auto box = [&](const Subgroup& p1, const Subgroup& p2) {
    Bitset bb(s.order());
    for (Elt a : p1.elems)
      for (Elt b : p2.elems) bb.set(pair[a * n2 + b]);
    return *lat->index_of(bb);
  };
  std::vector<FusionMap> maps;
  const Subgroup all1 = whole_group(s1), all2 = whole_group(s2);
  auto left = [&](const FusionMap& m) {
    const Subgroup& src = f1.sub(m.src);
    return map_by(*lat, s.order(), box(src, all2), [&](Elt x) {
      auto [a, b] = split[x];
      return pair[m.img[src.position(a)] * n2 + b];
    });
  };
  auto right = [&](const FusionMap& m) {
    const Subgroup& src = f2.sub(m.src);
    return map_by(*lat, s.order(), box(all1, src), [&](Elt x) {
      auto [a, b] = split[x];
      return pair[a * n2 + m.img[src.position(b)]];
    });
  };
  for (std::size_t c = 0; c < f1.class_count(); ++c) {
    const std::uint32_t r = f1.rep(c);
    for (const auto& a : f1.automizer_gens(c)) maps.push_back(left(FusionMap{r, r, a}));
    for (auto m : f1.members(c))
      if (m != r) maps.push_back(left(f1.iota(m)));
  }
  for (std::size_t c = 0; c < f2.class_count(); ++c) {
    const std::uint32_t r = f2.rep(c);
    for (const auto& a : f2.automizer_gens(c)) maps.push_back(right(FusionMap{r, r, a}));
    for (auto m : f2.members(c))
      if (m != r) maps.push_back(right(f2.iota(m)));
  }
  out.f = generated_by_maps(prod, lat, maps);
  return out;
}

std::vector<std::vector<Elt>> all_isomorphisms(const Group& g1, const Group& g2) {
  std::vector<std::vector<Elt>> out;
  auto iso = find_isomorphism(g1, g2);
  if (!iso) return out;
  auto aut = automorphism_group(g1);
  for (Elt a = 0; a < aut->order(); ++a) {
    const std::int32_t* perm = aut->key(a);
    std::vector<Elt> m(g1.order());
    for (Elt x = 0; x < g1.order(); ++x) m[x] = (*iso)[static_cast<Elt>(perm[x])];
    out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Push m (a morphism of `from`) along the injective homomorphism rho into `to`.
FusionMap transport(const FusionSystem& from, const FusionSystem& to, const std::vector<Elt>& rho, const FusionMap& m) {
  const Subgroup& src = from.sub(m.src);
  Bitset b(to.s().order());
  for (Elt x : src.elems) b.set(rho[x]);
  const std::size_t ti = *to.lattice().index_of(b);
  const Subgroup& tsrc = to.sub(ti);
  FusionMap out{static_cast<std::uint32_t>(ti), 0, std::vector<Elt>(tsrc.order())};
  Bitset d(to.s().order());
  for (std::size_t k = 0; k < src.order(); ++k) {
    Elt y = rho[m.img[k]];
    out.img[tsrc.position(rho[src.elems[k]])] = y;
    d.set(y);
  }
  out.dst = static_cast<std::uint32_t>(*to.lattice().index_of(d));
  return out;
}

std::vector<FusionMap> generating_maps(const FusionSystem& f) {
  std::vector<FusionMap> out;
  for (std::size_t c = 0; c < f.class_count(); ++c) {
    const std::uint32_t r = f.rep(c);
    for (const auto& a : f.automizer_gens(c)) out.push_back({r, r, a});
    for (auto m : f.members(c))
      if (m != r) out.push_back(f.iota(m));
  }
  return out;
}

std::vector<std::array<std::uint64_t, 3>> class_signature(const FusionSystem& f) {
  std::vector<std::array<std::uint64_t, 3>> sig;
  for (std::size_t c = 0; c < f.class_count(); ++c)
    sig.push_back({f.sub(f.rep(c)).order(), f.members(c).size(), f.automizer(c).size()});
  std::sort(sig.begin(), sig.end());
  return sig;
}

}  // namespace

std::optional<std::vector<Elt>> fusion_isomorphism(const FusionSystem& f1, const FusionSystem& f2) {
  if (f1.s().order() != f2.s().order() || f1.morphism_count() != f2.morphism_count() ||
      class_signature(f1) != class_signature(f2))
    return std::nullopt;
  auto gens = generating_maps(f1);
  for (const auto& rho : all_isomorphisms(f1.s(), f2.s())) {
    bool ok = true;
    for (const auto& m : gens)
      if (!f2.contains(transport(f1, f2, rho, m))) {
        ok = false;
        break;
      }
    // rho F1 rho^-1 <= F2 with equal morphism counts, so they coincide
    if (ok) return rho;
  }
  return std::nullopt;
}

std::optional<FusionMap> subsystem_violation(const FusionSystem& small, const FusionSystem& big,
                                             const std::vector<Elt>& embed) {
  for (const auto& m : generating_maps(small))
    if (!big.contains(transport(small, big, embed, m))) return m;
  return std::nullopt;
}

}  // namespace ptl
