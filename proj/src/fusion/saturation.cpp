#include "ptoral/fusion.hpp"
#include "ptoral/pgroup.hpp"

#include <algorithm>
#include <numeric>

namespace ptl {

namespace {

std::uint64_t p_part(std::uint64_t n, std::int64_t p) {
  std::uint64_t r = 1;
  while (p > 1 && n % static_cast<std::uint64_t>(p) == 0) {
    n /= static_cast<std::uint64_t>(p);
    r *= static_cast<std::uint64_t>(p);
  }
  return r;
}

// Aut_S(P) as sorted positional maps.
std::vector<std::vector<Elt>> s_automizer(const Group& s, const Subgroup& p) {
  Subgroup n = normalizer(s, p);
  std::vector<std::vector<Elt>> out;
  for (Elt g : n.elems) {
    std::vector<Elt> img(p.order());
    for (std::size_t k = 0; k < p.order(); ++k) img[k] = s.conj(g, p.elems[k]);
    out.push_back(std::move(img));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// One member per S-conjugacy class among the members of an F-class.
std::vector<std::uint32_t> s_class_reps(const FusionSystem& f, std::size_t c) {
  const Group& s = f.s();
  std::vector<std::uint32_t> out;
  std::vector<bool> seen(f.lattice().size(), false);
  for (auto m : f.members(c)) {
    if (seen[m]) continue;
    out.push_back(m);
    std::vector<std::uint32_t> stack{m};
    seen[m] = true;
    while (!stack.empty()) {
      auto x = stack.back();
      stack.pop_back();
      for (Elt g : s.generators()) {
        auto y = static_cast<std::uint32_t>(f.index_of(conjugate(s, f.sub(x), g)));
        if (!seen[y]) {
          seen[y] = true;
          stack.push_back(y);
        }
      }
    }
  }
  return out;
}

std::vector<Elt> compose_pos(const Subgroup& r, const std::vector<Elt>& a, const std::vector<Elt>& b) {
  std::vector<Elt> c(b.size());
  for (std::size_t k = 0; k < b.size(); ++k) c[k] = a[r.position(b[k])];
  return c;
}

GroupPtr automizer_perm_group(const FusionSystem& f, std::size_t sub) {
  const Subgroup& p = f.sub(sub);
  auto real = std::make_shared<PermRealization>(static_cast<int>(p.order()));
  std::vector<Key> keys;
  for (const auto& a : f.automizer_of(sub)) {
    Key k(p.order());
    for (std::size_t i = 0; i < p.order(); ++i) k[i] = static_cast<std::int32_t>(p.position(a[i]));
    keys.push_back(std::move(k));
  }
  return Group::from_closed_set(real, keys);
}

// Does phi: Q -> P (in F) extend to a morphism of F defined on N_phi?
// Returns N_phi's lattice index on failure.
std::optional<std::uint32_t> extension_gap(const FusionSystem& f, const FusionMap& phi) {
  const Group& s = f.s();
  const Subgroup& q = f.sub(phi.src);
  const Subgroup& p = f.sub(phi.dst);
  auto auts_p = s_automizer(s, p);
  FusionMap phi_inv = inverse(f, phi);
  Subgroup nq = normalizer(s, q);
  std::vector<Elt> nphi;
  for (Elt g : nq.elems) {
    // phi c_g phi^-1 on P
    std::vector<Elt> img(p.order());
    for (std::size_t k = 0; k < p.order(); ++k) {
      Elt y = phi_inv.img[k];
      img[k] = phi.img[q.position(s.conj(g, y))];
    }
    if (std::binary_search(auts_p.begin(), auts_p.end(), img)) nphi.push_back(g);
  }
  Subgroup n = make_subgroup(s, nphi, {});
  const auto ni = static_cast<std::uint32_t>(f.index_of(n));
  if (ni == phi.src) return std::nullopt;
  const Subgroup& nn = f.sub(ni);
  std::vector<std::size_t> qpos;
  for (Elt x : q.gens) qpos.push_back(nn.position(x));
  std::vector<Elt> want;
  for (Elt x : q.gens) want.push_back(phi.img[q.position(x)]);
  const std::uint32_t c = f.class_of(ni);
  const Subgroup& r = f.sub(f.rep(c));
  FusionMap io = f.iota(ni);
  for (auto x : f.members(c)) {
    FusionMap ix_inv = inverse(f, f.iota(x));
    for (const auto& a : f.automizer(c)) {
      bool ok = true;
      for (std::size_t t = 0; t < qpos.size() && ok; ++t) {
        Elt y = a[r.position(io.img[qpos[t]])];
        ok = ix_inv.img[r.position(y)] == want[t];
      }
      if (ok) return std::nullopt;
    }
  }
  return ni;
}

}  // namespace

std::vector<FusionMap> morphisms_from(const FusionSystem& f, std::size_t p) {
  const std::uint32_t c = f.class_of(p);
  FusionMap io = f.iota(p);
  std::vector<FusionMap> out;
  for (auto x : f.members(c)) {
    FusionMap ix_inv = inverse(f, f.iota(x));
    for (const auto& a : f.automizer(c))
      out.push_back(compose(f, ix_inv, compose(f, FusionMap{f.rep(c), f.rep(c), a}, io)));
  }
  return out;
}

std::vector<FusionMap> hom_classes(const FusionSystem& f, std::size_t p, std::size_t q) {
  const Group& s = f.s();
  const Subgroup& qq = f.sub(q);
  const Subgroup& pp = f.sub(p);
  std::vector<std::pair<std::vector<Elt>, FusionMap>> reps;
  for (auto& m : morphisms_from(f, p)) {
    if (!f.sub(m.dst).bits.subset_of(qq.bits)) continue;
    // canonical form modulo Inn(Q): least generator image tuple
    std::vector<Elt> best;
    for (Elt x : qq.elems) {
      std::vector<Elt> key;
      for (Elt g : pp.gens) key.push_back(s.conj(x, m.img[pp.position(g)]));
      if (best.empty() || key < best) best = key;
    }
    reps.emplace_back(std::move(best), std::move(m));
  }
  std::sort(reps.begin(), reps.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<FusionMap> out;
  for (std::size_t i = 0; i < reps.size(); ++i)
    if (i == 0 || reps[i].first != reps[i - 1].first) out.push_back(reps[i].second);
  return out;
}

bool fully_normalized(const FusionSystem& f, std::size_t sub) {
  const Group& s = f.s();
  auto n = normalizer(s, f.sub(sub)).order();
  for (auto m : f.members(f.class_of(sub)))
    if (normalizer(s, f.sub(m)).order() > n) return false;
  return true;
}

bool fully_centralized(const FusionSystem& f, std::size_t sub) {
  const Group& s = f.s();
  auto n = centralizer(s, f.sub(sub)).order();
  for (auto m : f.members(f.class_of(sub)))
    if (centralizer(s, f.sub(m)).order() > n) return false;
  return true;
}

bool fully_automized(const FusionSystem& f, std::size_t sub) {
  const Group& s = f.s();
  const Subgroup& p = f.sub(sub);
  auto as = normalizer(s, p).order() / centralizer(s, p).order();
  return as == p_part(f.automizer_order(sub), f.prime());
}

bool receptive(const FusionSystem& f, std::size_t sub, std::optional<SaturationFailure>* witness) {
  const Group& s = f.s();
  const Subgroup& p = f.sub(sub);
  const std::uint32_t c = f.class_of(sub);
  auto auts_p = s_automizer(s, p);
  auto aut_f = f.automizer_of(sub);
  // Left cosets Aut_S(P) alpha of Aut_F(P).
  std::vector<std::vector<Elt>> coset_reps;
  std::vector<bool> used(aut_f.size(), false);
  for (std::size_t i = 0; i < aut_f.size(); ++i) {
    if (used[i]) continue;
    coset_reps.push_back(aut_f[i]);
    for (const auto& b : auts_p) {
      auto prod = compose_pos(p, b, aut_f[i]);
      used[std::lower_bound(aut_f.begin(), aut_f.end(), prod) - aut_f.begin()] = true;
    }
  }
  FusionMap ip_inv = inverse(f, f.iota(sub));
  for (auto q : s_class_reps(f, c)) {
    FusionMap q_to_p = compose(f, ip_inv, f.iota(q));
    for (const auto& a : coset_reps) {
      FusionMap phi = compose(f, FusionMap{static_cast<std::uint32_t>(sub), static_cast<std::uint32_t>(sub), a}, q_to_p);
      if (auto gap = extension_gap(f, phi)) {
        if (witness)
          *witness = SaturationFailure{"extension", "morphism does not extend to N_phi", static_cast<std::uint32_t>(sub),
                                       phi, *gap};
        return false;
      }
    }
  }
  return true;
}

bool centric(const FusionSystem& f, std::size_t sub) {
  const Group& s = f.s();
  for (auto m : f.members(f.class_of(sub)))
    if (!centralizer(s, f.sub(m)).bits.subset_of(f.sub(m).bits)) return false;
  return true;
}

GroupPtr out_group(const FusionSystem& f, std::size_t sub) {
  const Group& s = f.s();
  const Subgroup& p = f.sub(sub);
  auto aut = automizer_perm_group(f, sub);
  std::vector<Elt> inn;
  for (Elt x : p.gens) {
    Key k(p.order());
    for (std::size_t i = 0; i < p.order(); ++i) k[i] = static_cast<std::int32_t>(p.position(s.conj(x, p.elems[i])));
    inn.push_back(*aut->find(k));
  }
  return quotient_group(aut, closure(*aut, inn)).group;
}

namespace {

Subgroup p_core(const Group& g, std::int64_t p) {
  if (p < 2) return trivial_subgroup(g);
  Subgroup t = sylow_subgroup(g, p);
  Bitset b = t.bits;
  for (Elt x = 0; x < g.order(); ++x) {
    Subgroup c = conjugate(g, t, x);
    for (Elt y : t.elems)
      if (!c.contains(y)) b.reset(y);
  }
  std::vector<Elt> e;
  for (Elt y : t.elems)
    if (b.test(y)) e.push_back(y);
  return closure(g, e);
}

}  // namespace

bool radical(const FusionSystem& f, std::size_t sub) {
  auto out = out_group(f, sub);
  return p_core(*out, f.prime()).order() == 1;
}

bool has_strongly_p_embedded(const Group& g, std::int64_t p) {
  if (p < 2 || g.order() % static_cast<std::uint64_t>(p) != 0) return false;
  for (const auto& h : enumerate_subgroups(g, false)) {
    if (h.order() == g.order() || h.order() % static_cast<std::uint64_t>(p) != 0) continue;
    bool ok = true;
    for (Elt x = 0; x < g.order() && ok; ++x) {
      if (h.contains(x)) continue;
      Subgroup c = conjugate(g, h, x);
      std::size_t meet = 0;
      for (Elt y : h.elems) meet += c.contains(y);
      ok = meet % static_cast<std::size_t>(p) != 0;
    }
    if (ok) return true;
  }
  return false;
}

bool quillen_disconnected(const Group& g, std::int64_t p) {
  // Vertices: subgroups of order p; edges: commuting pairs.
  std::vector<Elt> reps;
  std::vector<bool> seen(g.order(), false);
  for (Elt x = 1; x < g.order(); ++x) {
    if (g.elt_order(x) != static_cast<std::uint64_t>(p) || seen[x]) continue;
    reps.push_back(x);
    for (Elt y = x; !seen[y]; y = g.mul(y, x)) seen[y] = true;
    seen[0] = false;
  }
  if (reps.empty()) return false;
  std::vector<std::size_t> parent(reps.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = i + 1; j < reps.size(); ++j)
      if (g.mul(reps[i], reps[j]) == g.mul(reps[j], reps[i])) parent[find(i)] = find(j);
  std::size_t comps = 0;
  for (std::size_t i = 0; i < reps.size(); ++i) comps += find(i) == i;
  return comps > 1;
}

bool essential(const FusionSystem& f, std::size_t sub) {
  if (f.sub(sub).order() == f.s().order()) return false;
  if (!centric(f, sub) || !fully_normalized(f, sub)) return false;
  return has_strongly_p_embedded(*out_group(f, sub), f.prime());
}

bool weakly_closed(const FusionSystem& f, std::size_t sub) { return f.members(f.class_of(sub)).size() == 1; }

std::vector<std::uint32_t> element_classes(const FusionSystem& f) {
  const std::size_t n = f.s().order();
  std::vector<std::uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  auto unite = [&](Elt a, Elt b) {
    auto x = find(a), y = find(b);
    if (x != y) parent[std::max(x, y)] = std::min(x, y);
  };
  for (std::size_t c = 0; c < f.class_count(); ++c) {
    const Subgroup& r = f.sub(f.rep(c));
    for (auto m : f.members(c)) {
      FusionMap io = f.iota(m);
      const Subgroup& ms = f.sub(m);
      for (std::size_t k = 0; k < ms.order(); ++k) unite(ms.elems[k], io.img[k]);
    }
    for (const auto& a : f.automizer_gens(c))
      for (std::size_t k = 0; k < r.order(); ++k) unite(r.elems[k], a[k]);
  }
  std::vector<std::uint32_t> id(n, 0), out(n);
  std::uint32_t next = 0;
  std::vector<std::int64_t> label(n, -1);
  for (Elt x = 0; x < n; ++x) {
    auto root = find(x);
    if (label[root] < 0) label[root] = next++;
    out[x] = static_cast<std::uint32_t>(label[root]);
  }
  return out;
}

namespace {

bool strongly_closed_with(const FusionSystem& f, std::size_t sub, const std::vector<std::uint32_t>& cls,
                          const std::vector<std::size_t>& sizes) {
  const Subgroup& p = f.sub(sub);
  std::vector<std::size_t> cnt(sizes.size(), 0);
  for (Elt x : p.elems) ++cnt[cls[x]];
  for (Elt x : p.elems)
    if (cnt[cls[x]] != sizes[cls[x]]) return false;
  return true;
}

std::vector<std::size_t> class_sizes(const std::vector<std::uint32_t>& cls) {
  std::vector<std::size_t> sizes(*std::max_element(cls.begin(), cls.end()) + 1, 0);
  for (auto c : cls) ++sizes[c];
  return sizes;
}

}  // namespace

bool strongly_closed(const FusionSystem& f, std::size_t sub) {
  auto cls = element_classes(f);
  return strongly_closed_with(f, sub, cls, class_sizes(cls));
}

StronglyClosed strongly_closed_lattice(const FusionSystem& f) {
  auto cls = element_classes(f);
  auto sizes = class_sizes(cls);
  StronglyClosed out;
  const Group& s = f.s();
  Subgroup meet = whole_group(s);
  for (std::size_t i = 0; i < f.lattice().size(); ++i) {
    if (f.sub(i).order() == 1 || !strongly_closed_with(f, i, cls, sizes)) continue;
    out.subgroups.push_back(static_cast<std::uint32_t>(i));
    meet = intersection(s, meet, f.sub(i));
  }
  out.minsc = static_cast<std::uint32_t>(f.index_of(meet));
  out.minsc_trivial = meet.order() == 1;
  return out;
}

ClassFlags classify_subgroup(const FusionSystem& f, std::size_t sub) {
  ClassFlags fl;
  fl.subgroup = static_cast<std::uint32_t>(sub);
  fl.fully_normalized = fully_normalized(f, sub);
  fl.fully_centralized = fully_centralized(f, sub);
  fl.fully_automized = fully_automized(f, sub);
  fl.receptive = receptive(f, sub);
  fl.centric = centric(f, sub);
  fl.radical = radical(f, sub);
  fl.essential = fl.fully_normalized && fl.centric && f.sub(sub).order() != f.s().order() &&
                 has_strongly_p_embedded(*out_group(f, sub), f.prime());
  fl.weakly_closed = weakly_closed(f, sub);
  fl.strongly_closed = strongly_closed(f, sub);
  return fl;
}

SaturationReport saturation_check(const FusionSystem& f) {
  SaturationReport rep;
  const Group& s = f.s();
  auto cls = element_classes(f);
  auto sizes = class_sizes(cls);
  for (std::size_t c = 0; c < f.class_count(); ++c) {
    auto reps = s_class_reps(f, c);
    std::size_t best_n = 0, best_c = 0;
    for (auto m : reps) {
      best_n = std::max(best_n, normalizer(s, f.sub(m)).order());
      best_c = std::max(best_c, centralizer(s, f.sub(m)).order());
    }
    std::optional<std::uint32_t> shown;
    for (auto m : reps) {
      const Subgroup& pm = f.sub(m);
      const std::size_t nm = normalizer(s, pm).order();
      const std::size_t cm = centralizer(s, pm).order();
      if (nm == best_n) {
        if (!shown) shown = m;
        if (cm != best_c) {
          rep.sylow_axiom = false;
          rep.failures.push_back({"sylow", "fully normalized but not fully centralized", m, std::nullopt, std::nullopt});
        } else if (nm / cm != p_part(f.automizer_order(m), f.prime())) {
          rep.sylow_axiom = false;
          rep.failures.push_back({"sylow", "fully normalized but not fully automized", m, std::nullopt, std::nullopt});
        }
      }
      if (cm == best_c) {
        std::optional<SaturationFailure> w;
        if (!receptive(f, m, &w)) {
          rep.extension_axiom = false;
          rep.failures.push_back(*w);
        }
      }
    }
    ClassFlags fl;
    const std::uint32_t m = *shown;
    fl.subgroup = m;
    fl.fully_normalized = true;
    fl.fully_centralized = centralizer(s, f.sub(m)).order() == best_c;
    fl.fully_automized = fully_automized(f, m);
    fl.receptive = fl.fully_centralized ? receptive(f, m) : false;
    fl.centric = centric(f, m);
    auto out = out_group(f, m);
    fl.radical = p_core(*out, f.prime()).order() == 1;
    fl.essential = fl.centric && f.sub(m).order() != s.order() && has_strongly_p_embedded(*out, f.prime());
    fl.weakly_closed = f.members(c).size() == 1;
    fl.strongly_closed = strongly_closed_with(f, m, cls, sizes);
    rep.per_class.push_back(fl);
  }
  return rep;
}

bool verify_failure(const FusionSystem& f, const SaturationFailure& w) {
  const Group& s = f.s();
  const Subgroup& p = f.sub(w.subgroup);
  if (w.axiom == "sylow") {
    const std::size_t n = normalizer(s, p).order();
    const std::size_t cp = centralizer(s, p).order();
    for (auto m : f.members(f.class_of(w.subgroup)))
      if (normalizer(s, f.sub(m)).order() > n) return false;  // P is not fully normalized
    std::size_t best_c = 0;
    for (auto m : f.members(f.class_of(w.subgroup))) best_c = std::max(best_c, centralizer(s, f.sub(m)).order());
    if (cp < best_c) return true;
    return n / cp != p_part(f.automizer_of(w.subgroup).size(), f.prime());
  }
  if (w.axiom != "extension" || !w.morphism || !w.n_phi) return false;
  const FusionMap& phi = *w.morphism;
  if (!f.contains(phi) || phi.dst != w.subgroup) return false;
  // N_phi recomputed from scratch.
  const Subgroup& q = f.sub(phi.src);
  std::vector<Elt> nphi;
  for (Elt g = 0; g < s.order(); ++g) {
    if (!normalizes(s, g, q)) continue;
    // phi c_g phi^-1 must be conjugation by some h in N_S(P)
    std::vector<Elt> img(p.order());
    FusionMap inv = inverse(f, phi);
    for (std::size_t k = 0; k < p.order(); ++k) img[k] = phi.img[q.position(s.conj(g, inv.img[k]))];
    bool found = false;
    for (Elt h = 0; h < s.order() && !found; ++h) {
      bool ok = true;
      for (std::size_t k = 0; k < p.order() && ok; ++k) ok = s.conj(h, p.elems[k]) == img[k];
      found = ok;
    }
    if (found) nphi.push_back(g);
  }
  if (nphi.size() != f.sub(*w.n_phi).order()) return false;
  for (const auto& m : morphisms_from(f, *w.n_phi)) {
    bool ext = true;
    const Subgroup& n = f.sub(*w.n_phi);
    for (std::size_t k = 0; k < q.order() && ext; ++k) ext = m.img[n.position(q.elems[k])] == phi.img[k];
    if (ext) return false;
  }
  return true;
}

}  // namespace ptl
