#include "ptoral/fusion.hpp"

#include "builder.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_map>

namespace ptl {

namespace {

std::uint64_t hash_images(const std::vector<Elt>& v) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (Elt x : v) {
    h ^= x;
    h *= 0x100000001b3ull;
  }
  return h;
}

// A set of positional automorphisms of one subgroup, closed under
// composition whenever `close` is used to add generators.
class AutSet {
 public:
  explicit AutSet(std::vector<Elt> identity) { insert(std::move(identity)); }
  bool contains(const std::vector<Elt>& a) const {
    auto [lo, hi] = idx_.equal_range(hash_images(a));
    for (auto it = lo; it != hi; ++it)
      if (elems_[it->second] == a) return true;
    return false;
  }
  bool insert(std::vector<Elt> a) {
    if (contains(a)) return false;
    idx_.emplace(hash_images(a), static_cast<std::uint32_t>(elems_.size()));
    elems_.push_back(std::move(a));
    return true;
  }
  std::vector<std::vector<Elt>>& elems() { return elems_; }
  std::vector<std::vector<Elt>>& gens() { return gens_; }

  // Add generators and re-close. `compose(a, b)` returns a after b.
  template <class F>
  void close(const std::vector<std::vector<Elt>>& fresh, F compose, std::size_t cap) {
    std::vector<std::vector<Elt>> added;
    for (const auto& g : fresh)
      if (!contains(g)) added.push_back(g);
    if (added.empty()) return;
    const std::size_t old = elems_.size();
    for (auto& g : added) gens_.push_back(g);
    // Old elements times the new generators, then everything new times all
    // generators.
    for (std::size_t i = 0; i < old; ++i)
      for (const auto& g : added) insert(compose(elems_[i], g));
    for (std::size_t i = old; i < elems_.size(); ++i) {
      if (elems_.size() > cap) fail(Errc::ClosureCapExceeded, "automizer closure exceeds the cap");
      for (std::size_t j = 0; j < gens_.size(); ++j) {
        auto c = compose(elems_[i], gens_[j]);
        insert(std::move(c));
      }
    }
  }

 private:
  std::vector<std::vector<Elt>> elems_;
  std::vector<std::vector<Elt>> gens_;
  std::unordered_multimap<std::uint64_t, std::uint32_t> idx_;
};

FusionMap compose_in(const SubgroupLattice& lat, const FusionMap& a, const FusionMap& b) {
  // a after b; requires b.dst == a.src
  const Subgroup& mid = lat[a.src];
  FusionMap r{b.src, a.dst, std::vector<Elt>(b.img.size())};
  for (std::size_t k = 0; k < b.img.size(); ++k) r.img[k] = a.img[mid.position(b.img[k])];
  return r;
}

FusionMap inverse_in(const SubgroupLattice& lat, const FusionMap& a) {
  const Subgroup& src = lat[a.src];
  const Subgroup& dst = lat[a.dst];
  FusionMap r{a.dst, a.src, std::vector<Elt>(a.img.size())};
  for (std::size_t k = 0; k < a.img.size(); ++k) r.img[dst.position(a.img[k])] = src.elems[k];
  return r;
}

FusionMap restrict_in(const SubgroupLattice& lat, std::size_t order, const FusionMap& a, std::size_t sub) {
  const Subgroup& src = lat[a.src];
  const Subgroup& to = lat[sub];
  FusionMap r{static_cast<std::uint32_t>(sub), 0, std::vector<Elt>(to.order())};
  Bitset b(order);
  for (std::size_t k = 0; k < to.order(); ++k) {
    r.img[k] = a.img[src.position(to.elems[k])];
    b.set(r.img[k]);
  }
  r.dst = static_cast<std::uint32_t>(*lat.index_of(b));
  return r;
}

// positional composition of automorphisms of one subgroup
std::vector<Elt> compose_pos(const Subgroup& r, const std::vector<Elt>& a, const std::vector<Elt>& b) {
  std::vector<Elt> c(b.size());
  for (std::size_t k = 0; k < b.size(); ++k) c[k] = a[r.position(b[k])];
  return c;
}

}  // namespace

class FusionBuilder {
 public:
  FusionBuilder(GroupPtr s, std::shared_ptr<const SubgroupLattice> lat) {
    f_ = std::make_shared<FusionSystem>();
    f_->s_ = std::move(s);
    f_->lat_ = std::move(lat);
    f_->p_ = f_->s_->order() > 1 ? prime_of_p_group(f_->s_->order()) : 0;
    const auto& L = *f_->lat_;
    const std::size_t n = L.size();
    f_->cls_of_.resize(n);
    f_->iota_.resize(n);
    members_.resize(n);
    auts_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      f_->cls_of_[i] = static_cast<std::uint32_t>(i);
      f_->iota_[i] = L[i].elems;
      members_[i] = {static_cast<std::uint32_t>(i)};
      reps_.push_back(static_cast<std::uint32_t>(i));
      auts_.emplace_back(L[i].elems);
    }
  }

  const SubgroupLattice& lat() const { return *f_->lat_; }
  const Group& s() const { return *f_->s_; }

  void push(FusionMap m) { work_.push_back(std::move(m)); }

  void push_inner() {
    const Group& g = s();
    const std::uint32_t top = static_cast<std::uint32_t>(lat().size() - 1);
    for (Elt x : g.generators()) {
      FusionMap m{top, top, std::vector<Elt>(g.order())};
      for (Elt y = 0; y < g.order(); ++y) m.img[y] = g.conj(x, y);
      push(std::move(m));
    }
  }

  void run() {
    std::size_t processed = 0;
    while (!work_.empty()) {
      FusionMap m = std::move(work_.front());
      work_.pop_front();
      if (++processed > kWorkCap) fail(Errc::ClosureCapExceeded, "fusion closure exceeded its work budget");
      if (absorb(m))
        for (auto a : lat().maximal(m.src)) push(restrict_in(lat(), s().order(), m, a));
    }
  }

  FusionPtr finish(std::optional<GroupOrigin> origin) {
    run();
    auto& f = *f_;
    const auto& L = lat();
    f.origin_ = std::move(origin);
    std::vector<std::uint32_t> live;
    for (std::uint32_t c = 0; c < members_.size(); ++c)
      if (!members_[c].empty()) live.push_back(c);
    // classes ordered by least member
    for (auto c : live) std::sort(members_[c].begin(), members_[c].end());
    std::sort(live.begin(), live.end(), [&](auto a, auto b) { return members_[a].front() < members_[b].front(); });
    f.classes_.resize(live.size());
    for (std::uint32_t ci = 0; ci < live.size(); ++ci) {
      const std::uint32_t c = live[ci];
      auto& cls = f.classes_[ci];
      cls.members = members_[c];
      cls.rep = cls.members.front();
      const Subgroup& r = L[cls.rep];
      // Re-root at the least member.
      FusionMap psi = inverse_in(L, FusionMap{cls.rep, reps_[c], f.iota_[cls.rep]});
      FusionMap psi_inv = inverse_in(L, psi);
      std::vector<std::vector<Elt>> aut;
      aut.reserve(auts_[c].elems().size());
      for (const auto& a : auts_[c].elems())
        aut.push_back(compose_in(L, psi, compose_in(L, FusionMap{reps_[c], reps_[c], a}, psi_inv)).img);
      std::sort(aut.begin(), aut.end());
      for (auto m : cls.members) {
        f.cls_of_[m] = ci;
        FusionMap io = compose_in(L, psi, FusionMap{m, reps_[c], f.iota_[m]});
        if (m == cls.rep) {
          f.iota_[m] = r.elems;
          continue;
        }
        // Least identification by images of the member's generators.
        const Subgroup& mem = L[m];
        std::vector<std::size_t> gpos;
        for (Elt x : mem.gens) gpos.push_back(mem.position(x));
        const std::vector<Elt>* best = nullptr;
        std::vector<Elt> best_key, key(gpos.size());
        for (const auto& a : aut) {
          for (std::size_t t = 0; t < gpos.size(); ++t) key[t] = a[r.position(io.img[gpos[t]])];
          if (!best || key < best_key) {
            best = &a;
            best_key = key;
          }
        }
        f.iota_[m] = compose_pos(r, *best, io.img);
      }
      cls.gens = canonical_generators(r, aut);
      cls.aut = std::move(aut);
    }
    return f_;
  }

 private:
  static constexpr std::size_t kWorkCap = 50'000'000;

  // Returns true when m was new to the groupoid.
  bool absorb(const FusionMap& m) {
    const auto& L = lat();
    const std::uint32_t cp = f_->cls_of_[m.src], cq = f_->cls_of_[m.dst];
    FusionMap ip{m.src, reps_[cp], f_->iota_[m.src]};
    FusionMap iq{m.dst, reps_[cq], f_->iota_[m.dst]};
    if (cp == cq) {
      // alpha = iota_Q . m . iota_P^-1 in Aut(rep)
      FusionMap a = compose_in(L, iq, compose_in(L, m, inverse_in(L, ip)));
      if (auts_[cp].contains(a.img)) return false;
      add_aut(cp, {a.img});
      return true;
    }
    // psi: rep(cq) -> rep(cp)
    FusionMap psi = compose_in(L, ip, compose_in(L, inverse_in(L, m), inverse_in(L, iq)));
    std::uint32_t keep = cp, drop = cq;
    if (members_[cp].size() < members_[cq].size()) {
      std::swap(keep, drop);
      psi = inverse_in(L, psi);
    }
    FusionMap psi_inv = inverse_in(L, psi);
    for (auto mem : members_[drop]) {
      f_->iota_[mem] = compose_in(L, psi, FusionMap{mem, reps_[drop], f_->iota_[mem]}).img;
      f_->cls_of_[mem] = keep;
      members_[keep].push_back(mem);
    }
    members_[drop].clear();
    std::vector<std::vector<Elt>> fresh;
    for (const auto& a : auts_[drop].gens())
      fresh.push_back(compose_in(L, psi, compose_in(L, FusionMap{reps_[drop], reps_[drop], a}, psi_inv)).img);
    auts_[drop] = AutSet(L[reps_[drop]].elems);
    add_aut(keep, fresh);
    return true;
  }

  void add_aut(std::uint32_t c, const std::vector<std::vector<Elt>>& fresh) {
    const Subgroup& r = lat()[reps_[c]];
    auts_[c].close(fresh, [&](const std::vector<Elt>& a, const std::vector<Elt>& b) { return compose_pos(r, a, b); },
                   caps().order);
  }

  static std::vector<std::vector<Elt>> canonical_generators(const Subgroup& r, const std::vector<std::vector<Elt>>& sorted) {
    AutSet cur(r.elems);
    std::vector<std::vector<Elt>> gens;
    for (const auto& a : sorted) {
      if (cur.elems().size() == sorted.size()) break;
      if (cur.contains(a)) continue;
      gens.push_back(a);
      cur.close({a}, [&](const std::vector<Elt>& x, const std::vector<Elt>& y) { return compose_pos(r, x, y); },
                ~std::size_t{0});
    }
    return gens;
  }

  std::shared_ptr<FusionSystem> f_;
  std::vector<std::vector<std::uint32_t>> members_;
  std::vector<std::uint32_t> reps_;
  std::vector<AutSet> auts_;
  std::deque<FusionMap> work_;
};

// --- FusionSystem queries ------------------------------------------------------

bool FusionSystem::contains(const FusionMap& m) const {
  const std::uint32_t c = cls_of_[m.src];
  if (cls_of_[m.dst] != c) return false;
  const auto& L = *lat_;
  const std::uint32_t r = classes_[c].rep;
  FusionMap a = compose_in(L, FusionMap{m.dst, r, iota_[m.dst]},
                           compose_in(L, m, inverse_in(L, FusionMap{m.src, r, iota_[m.src]})));
  return std::binary_search(classes_[c].aut.begin(), classes_[c].aut.end(), a.img);
}

std::vector<std::vector<Elt>> FusionSystem::automizer_of(std::size_t sub) const {
  const auto& L = *lat_;
  const std::uint32_t c = cls_of_[sub];
  const std::uint32_t r = classes_[c].rep;
  FusionMap io{static_cast<std::uint32_t>(sub), r, iota_[sub]};
  FusionMap ii = inverse_in(L, io);
  std::vector<std::vector<Elt>> out;
  out.reserve(classes_[c].aut.size());
  for (const auto& a : classes_[c].aut) out.push_back(compose_in(L, ii, compose_in(L, FusionMap{r, r, a}, io)).img);
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t FusionSystem::morphism_count() const {
  std::uint64_t n = 0;
  for (const auto& c : classes_) n += c.members.size() * c.members.size() * c.aut.size();
  return n;
}

// --- morphism helpers ------------------------------------------------------------

FusionMap compose(const FusionSystem& f, const FusionMap& a, const FusionMap& b) { return compose_in(f.lattice(), a, b); }
FusionMap inverse(const FusionSystem& f, const FusionMap& a) { return inverse_in(f.lattice(), a); }
FusionMap restrict_to(const FusionSystem& f, const FusionMap& a, std::size_t sub) {
  return restrict_in(f.lattice(), f.s().order(), a, sub);
}
FusionMap identity_map(const FusionSystem& f, std::size_t sub) {
  return {static_cast<std::uint32_t>(sub), static_cast<std::uint32_t>(sub), f.sub(sub).elems};
}
Elt apply(const FusionSystem& f, const FusionMap& a, Elt x) { return a.img[f.sub(a.src).position(x)]; }

namespace {

std::optional<FusionMap> map_on(const Group& s, const SubgroupLattice& lat, std::size_t sub,
                                const std::vector<Elt>& gens, const std::vector<Elt>& images) {
  const Subgroup& p = lat[sub];
  if (gens.size() != images.size()) return std::nullopt;
  constexpr Elt kNone = 0xffffffffu;
  std::vector<Elt> img(s.order(), kNone);
  Bitset hit(s.order());
  img[0] = 0;
  hit.set(0);
  std::vector<Elt> queue{0};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    Elt x = queue[qi];
    for (std::size_t t = 0; t < gens.size(); ++t) {
      Elt y = s.mul(x, gens[t]);
      Elt v = s.mul(img[x], images[t]);
      if (img[y] == kNone) {
        if (hit.test(v)) return std::nullopt;
        img[y] = v;
        hit.set(v);
        queue.push_back(y);
      } else if (img[y] != v) {
        return std::nullopt;
      }
    }
  }
  if (queue.size() != p.order()) return std::nullopt;
  FusionMap m{static_cast<std::uint32_t>(sub), 0, std::vector<Elt>(p.order())};
  for (std::size_t k = 0; k < p.order(); ++k) {
    if (img[p.elems[k]] == kNone) return std::nullopt;
    m.img[k] = img[p.elems[k]];
  }
  auto d = lat.index_of(hit);
  if (!d) return std::nullopt;
  m.dst = static_cast<std::uint32_t>(*d);
  return m;
}

}  // namespace

std::optional<FusionMap> map_from_gen_images(const FusionSystem& f, std::size_t sub, const std::vector<Elt>& images) {
  return map_on(f.s(), f.lattice(), sub, f.sub(sub).gens, images);
}

// --- construction ---------------------------------------------------------------

FusionPtr fusion_of_group(const GroupPtr& gp, const Subgroup& s) {
  const Group& g = *gp;
  const std::int64_t p = prime_of_p_group(s.order());
  if (s.order() > 1 && p == 0) fail(Errc::NotPSubgroup, "fusion_of_group needs a p-subgroup");
  auto sg = subgroup_as_group(g, s);
  const Group& sgrp = *sg.group;
  constexpr Elt kNone = 0xffffffffu;
  std::vector<Elt> back(g.order(), kNone);
  for (Elt i = 0; i < sgrp.order(); ++i) back[sg.embed[i]] = i;

  auto lat = std::make_shared<const SubgroupLattice>(sgrp, whole_group(sgrp));
  FusionBuilder b(sg.group, lat);
  b.push_inner();
  // One conjugation per double coset S g S, on its largest domain S ∩ S^g.
  Bitset done(g.order());
  for (Elt x = 0; x < g.order(); ++x) {
    if (done.test(x)) continue;
    for (Elt a : s.elems) {
      Elt ax = g.mul(a, x);
      for (Elt c : s.elems) done.set(g.mul(ax, c));
    }
    std::vector<Elt> dom, img;
    for (Elt y = 0; y < sgrp.order(); ++y) {
      Elt c = back[g.conj(x, sg.embed[y])];
      if (c != kNone) {
        dom.push_back(y);
        img.push_back(c);
      }
    }
    Bitset db(sgrp.order()), ib(sgrp.order());
    for (Elt y : dom) db.set(y);
    for (Elt y : img) ib.set(y);
    FusionMap m{static_cast<std::uint32_t>(*lat->index_of(db)), static_cast<std::uint32_t>(*lat->index_of(ib)), img};
    b.push(std::move(m));
  }
  return b.finish(GroupOrigin{gp, sg.embed});
}

FusionPtr generated_fusion(const GroupPtr& s, std::shared_ptr<const SubgroupLattice> lat,
                           const std::vector<GeneratorDatum>& data) {
  if (s->order() > 1 && prime_of_p_group(s->order()) == 0) fail(Errc::NotPGroup, "fusion system over a non-p-group");
  FusionBuilder b(s, lat);
  b.push_inner();
  for (const auto& d : data) {
    for (Elt x : d.subgroup_gens)
      if (x >= s->order()) fail(Errc::InvalidSpec, "generator datum names an element outside S");
    Subgroup p = closure(*s, d.subgroup_gens);
    const std::size_t pi = *lat->index_of(p);
    for (const auto& im : d.automorphisms) {
      for (Elt x : im)
        if (x >= s->order()) fail(Errc::InvalidSpec, "generator datum image outside S");
      auto m = map_on(*s, *lat, pi, d.subgroup_gens, im);
      if (!m || m->dst != pi) fail(Errc::InvalidSpec, "generator datum is not an automorphism of its subgroup");
      b.push(std::move(*m));
    }
  }
  return b.finish(std::nullopt);
}

FusionPtr generated_fusion(const GroupPtr& s, const std::vector<GeneratorDatum>& data) {
  auto lat = std::make_shared<const SubgroupLattice>(*s, whole_group(*s));
  return generated_fusion(s, lat, data);
}

FusionPtr inner_fusion(const GroupPtr& s) { return generated_fusion(s, {}); }

FusionPtr generated_by_maps(const GroupPtr& s, std::shared_ptr<const SubgroupLattice> lat,
                            const std::vector<FusionMap>& maps, std::optional<GroupOrigin> origin) {
  FusionBuilder b(s, std::move(lat));
  b.push_inner();
  for (const auto& m : maps) b.push(m);
  return b.finish(std::move(origin));
}

FusionPtr fusion_from_maps(const GroupPtr& s, const std::vector<MapDatum>& data) {
  if (s->order() > 1 && prime_of_p_group(s->order()) == 0) fail(Errc::NotPGroup, "fusion system over a non-p-group");
  auto lat = std::make_shared<const SubgroupLattice>(*s, whole_group(*s));
  std::vector<FusionMap> maps;
  for (const auto& d : data) {
    for (Elt x : d.gens)
      if (x >= s->order()) fail(Errc::InvalidSpec, "map datum names an element outside S");
    for (Elt x : d.images)
      if (x >= s->order()) fail(Errc::InvalidSpec, "map datum image outside S");
    const std::size_t pi = *lat->index_of(closure(*s, d.gens));
    auto m = map_on(*s, *lat, pi, d.gens, d.images);
    if (!m) fail(Errc::InvalidSpec, "map datum is not an injective homomorphism");
    maps.push_back(std::move(*m));
  }
  return generated_by_maps(s, lat, maps);
}

}  // namespace ptl
