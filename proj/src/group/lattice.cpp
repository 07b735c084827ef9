#include "ptoral/lattice.hpp"

#include <algorithm>
#include <numeric>

namespace ptl {

namespace {

// Breadth-first image propagation along `gens` from the identity. Fails on
// an inconsistent edge or (when `injective`) a repeated image. On success
// `img` holds the map on <gens> and `reached` the visited elements.
bool propagate(const Group& src, const std::vector<Elt>& gens, const Group& dst, const std::vector<Elt>& images,
               bool injective, std::vector<Elt>& img, std::vector<Elt>& reached) {
  constexpr Elt kNone = 0xffffffffu;
  img.assign(src.order(), kNone);
  Bitset hit(dst.order());
  img[0] = 0;
  hit.set(0);
  reached.assign(1, 0);
  for (std::size_t qi = 0; qi < reached.size(); ++qi) {
    Elt x = reached[qi];
    for (std::size_t s = 0; s < gens.size(); ++s) {
      Elt y = src.mul(x, gens[s]);
      Elt v = dst.mul(img[x], images[s]);
      if (img[y] == kNone) {
        if (injective && hit.test(v)) return false;
        img[y] = v;
        hit.set(v);
        reached.push_back(y);
      } else if (img[y] != v) {
        return false;
      }
    }
  }
  return true;
}

// Cheap word-order invariants on a pair of generator images.
bool word_orders_match(const Group& a, Elt a0, Elt a1, const Group& b, Elt b0, Elt b1) {
  if (a.elt_order(a.mul(a0, a1)) != b.elt_order(b.mul(b0, b1))) return false;
  if (a.elt_order(a.comm(a0, a1)) != b.elt_order(b.comm(b0, b1))) return false;
  if (a.elt_order(a.mul(a.mul(a0, a0), a1)) != b.elt_order(b.mul(b.mul(b0, b0), b1))) return false;
  if (a.elt_order(a.mul(a0, a.mul(a1, a1))) != b.elt_order(b.mul(b0, b.mul(b1, b1)))) return false;
  return true;
}

struct HomSearch {
  const Group& src;
  const Group& dst;
  std::vector<Elt> gens;
  std::vector<std::vector<Elt>> candidates;
  std::vector<Elt> images;
  std::vector<Elt> img, reached;
  bool want_all;
  std::vector<std::vector<Elt>> found;

  void run(std::size_t i) {
    if (!want_all && !found.empty()) return;
    if (i == gens.size()) {
      if (reached.size() == src.order()) found.push_back(img);
      return;
    }
    for (Elt c : candidates[i]) {
      if (i > 0 && !word_orders_match(src, gens[i - 1], gens[i], dst, images[i - 1], c)) continue;
      images.push_back(c);
      std::vector<Elt> g(gens.begin(), gens.begin() + static_cast<std::ptrdiff_t>(i + 1));
      if (propagate(src, g, dst, images, true, img, reached)) run(i + 1);
      images.pop_back();
      if (!want_all && !found.empty()) return;
    }
  }
};

std::vector<std::uint64_t> invariants_mod(const Group& g, const std::vector<Elt>& elems, const Subgroup* n) {
  std::size_t nsize = n ? n->order() : 1;
  std::size_t q = elems.size() / nsize;
  std::vector<std::uint64_t> out;
  if (q <= 1) return out;
  for (auto [p, e] : factorize(static_cast<std::int64_t>(q))) {
    // counts[j] = log_p #{cosets of order dividing p^j}
    std::vector<int> logs{0};
    for (int j = 1; logs.back() < e; ++j) {
      std::int64_t pj = ipow(p, j);
      std::size_t c = 0;
      for (Elt x : elems) {
        Elt y = g.pow(x, pj);
        if (n ? n->contains(y) : y == 0) ++c;
      }
      c /= nsize;
      int l = vp(static_cast<std::int64_t>(c), p);
      logs.push_back(l);
    }
    // #{i : e_i >= j} = logs[j] - logs[j-1]
    const int top = static_cast<int>(logs.size()) - 1;
    for (int j = 1; j <= top; ++j) {
      int ge_j = logs[j] - logs[j - 1];
      int ge_next = j < top ? logs[j + 1] - logs[j] : 0;
      for (int t = 0; t < ge_j - ge_next; ++t) out.push_back(static_cast<std::uint64_t>(ipow(p, j)));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

SubgroupLattice::SubgroupLattice(const Group& g, const Subgroup& within, std::uint64_t max_order) {
  if (max_order == 0 && within.order() > caps().subgroups)
    fail(Errc::CapExceeded, "subgroup lattice of a group of order " + std::to_string(within.order()) +
                                " exceeds the cap " + std::to_string(caps().subgroups));
  const std::uint64_t limit = max_order ? max_order : within.order();
  const std::int64_t p = prime_of_p_group(within.order());

  std::vector<Subgroup> subs{trivial_subgroup(g)};
  std::vector<std::vector<std::uint32_t>> maxl(1);
  std::unordered_multimap<std::uint64_t, std::uint32_t> idx;
  idx.emplace(subs[0].bits.hash(), 0);
  auto lookup = [&](const Subgroup& h) -> std::optional<std::uint32_t> {
    auto [lo, hi] = idx.equal_range(h.bits.hash());
    for (auto it = lo; it != hi; ++it)
      if (subs[it->second].bits == h.bits) return it->second;
    return std::nullopt;
  };
  auto insert = [&](Subgroup h) -> std::uint32_t {
    if (auto f = lookup(h)) return *f;
    auto i = static_cast<std::uint32_t>(subs.size());
    idx.emplace(h.bits.hash(), i);
    subs.push_back(std::move(h));
    maxl.emplace_back();
    return i;
  };

  if (p != 0) {
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (subs[i].order() * static_cast<std::uint64_t>(p) > limit) continue;
      Bitset covered = subs[i].bits;
      for (Elt x : within.elems) {
        if (covered.test(x)) continue;
        const Subgroup& k = subs[i];
        if (!k.contains(g.pow(x, p)) || !normalizes(g, x, k)) continue;
        Subgroup h = cyclic_extension(g, k, x);
        for (Elt y : h.elems) covered.set(y);
        std::uint32_t j = insert(std::move(h));
        maxl[j].push_back(static_cast<std::uint32_t>(i));
      }
    }
  } else {
    std::vector<Elt> cyc_gens;
    Bitset done(g.order());
    for (Elt x : within.elems) {
      if (x == 0 || done.test(x)) continue;
      // every generator of <x> yields the same cyclic subgroup
      for (Elt y : closure(g, {x}).elems)
        if (g.elt_order(y) == g.elt_order(x)) done.set(y);
      cyc_gens.push_back(x);
    }
    for (std::size_t i = 0; i < subs.size(); ++i) {
      for (Elt x : cyc_gens) {
        const Subgroup& h = subs[i];
        if (h.contains(x)) continue;
        Subgroup j;
        if (normalizes(g, x, h)) {
          j = cyclic_extension(g, h, x);
        } else {
          std::vector<Elt> gens = h.gens;
          gens.push_back(x);
          j = closure(g, gens);
        }
        if (j.order() > limit) continue;
        insert(std::move(j));
      }
    }
    // Maximal lists from containment.
    for (std::size_t j = 0; j < subs.size(); ++j) {
      std::vector<std::uint32_t> below;
      for (std::size_t i = 0; i < subs.size(); ++i)
        if (i != j && subs[i].order() < subs[j].order() && subs[j].order() % subs[i].order() == 0 &&
            subs[i].bits.subset_of(subs[j].bits))
          below.push_back(static_cast<std::uint32_t>(i));
      for (auto a : below) {
        bool is_max = true;
        for (auto b : below)
          if (a != b && subs[a].order() < subs[b].order() && subs[a].bits.subset_of(subs[b].bits)) {
            is_max = false;
            break;
          }
        if (is_max) maxl[j].push_back(a);
      }
    }
  }

  // Canonical order.
  std::vector<std::uint32_t> perm(subs.size());
  std::iota(perm.begin(), perm.end(), 0u);
  std::sort(perm.begin(), perm.end(), [&](auto a, auto b) { return subs[a] < subs[b]; });
  std::vector<std::uint32_t> where(subs.size());
  for (std::uint32_t k = 0; k < perm.size(); ++k) where[perm[k]] = k;
  subs_.reserve(subs.size());
  maximal_.resize(subs.size());
  for (std::uint32_t k = 0; k < perm.size(); ++k) {
    subs_.push_back(std::move(subs[perm[k]]));
    for (auto m : maxl[perm[k]]) maximal_[k].push_back(where[m]);
    std::sort(maximal_[k].begin(), maximal_[k].end());
    index_.emplace(subs_.back().bits.hash(), k);
  }
}

std::optional<std::size_t> SubgroupLattice::index_of(const Bitset& b) const {
  auto [lo, hi] = index_.equal_range(b.hash());
  for (auto it = lo; it != hi; ++it)
    if (subs_[it->second].bits == b) return it->second;
  return std::nullopt;
}

std::vector<Subgroup> conjugacy_class_reps(const Group& g, const std::vector<Subgroup>& subs) {
  std::vector<Subgroup> reps;
  std::unordered_multimap<std::uint64_t, std::size_t> seen;  // hash -> index into `orbit_all`
  std::vector<Subgroup> orbit_all;
  auto known = [&](const Subgroup& h) {
    auto [lo, hi] = seen.equal_range(h.bits.hash());
    for (auto it = lo; it != hi; ++it)
      if (orbit_all[it->second].bits == h.bits) return true;
    return false;
  };
  for (const auto& h : subs) {
    if (known(h)) continue;
    std::vector<Subgroup> orbit{h};
    seen.emplace(h.bits.hash(), orbit_all.size());
    orbit_all.push_back(h);
    for (std::size_t i = 0; i < orbit.size(); ++i)
      for (Elt s : g.generators()) {
        Subgroup c = conjugate(g, orbit[i], s);
        if (known(c)) continue;
        seen.emplace(c.bits.hash(), orbit_all.size());
        orbit_all.push_back(c);
        orbit.push_back(std::move(c));
      }
    reps.push_back(*std::min_element(orbit.begin(), orbit.end()));
  }
  std::sort(reps.begin(), reps.end());
  return reps;
}

std::vector<Subgroup> enumerate_subgroups(const Group& g, bool up_to_conjugacy, std::optional<std::uint64_t> order_filter) {
  Subgroup all = whole_group(g);
  SubgroupLattice lat(g, all, order_filter.value_or(0));
  std::vector<Subgroup> out;
  for (const auto& h : lat.all())
    if (!order_filter || h.order() == *order_filter) out.push_back(h);
  if (up_to_conjugacy) out = conjugacy_class_reps(g, out);
  return out;
}

std::vector<Subgroup> normal_subgroups(const Group& g) {
  auto cc = conjugacy_classes(g);
  std::vector<Subgroup> base;
  auto contains = [](const std::vector<Subgroup>& v, const Subgroup& h) {
    return std::find(v.begin(), v.end(), h) != v.end();
  };
  for (const auto& cls : cc.classes) {
    if (cls.front() == 0) continue;
    Subgroup n = normal_closure(g, closure(g, {cls.front()}));
    if (!contains(base, n)) base.push_back(std::move(n));
  }
  std::vector<Subgroup> out{trivial_subgroup(g)};
  for (const auto& b : base)
    if (!contains(out, b)) out.push_back(b);
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& b : base) {
      if (b.bits.subset_of(out[i].bits) || out[i].bits.subset_of(b.bits)) continue;
      Subgroup j = join(g, out[i], b);
      if (!contains(out, j)) out.push_back(std::move(j));
    }
  std::sort(out.begin(), out.end());
  return out;
}

GroupPtr automorphism_group(const Group& p) {
  if (p.order() > caps().automorphism)
    fail(Errc::CapExceeded, "automorphism group of a group of order " + std::to_string(p.order()) +
                                " exceeds the cap " + std::to_string(caps().automorphism));
  const int n = static_cast<int>(p.order());
  auto real = std::make_shared<PermRealization>(n);
  if (n == 1) return Group::generate(real, {});
  HomSearch hs{p, p, small_generating_set(p, whole_group(p)), {}, {}, {}, {}, true, {}};
  for (Elt s : hs.gens) {
    std::vector<Elt> c;
    for (Elt y = 0; y < p.order(); ++y)
      if (p.elt_order(y) == p.elt_order(s)) c.push_back(y);
    hs.candidates.push_back(std::move(c));
  }
  hs.run(0);
  std::vector<Key> keys;
  keys.reserve(hs.found.size());
  for (const auto& m : hs.found) keys.emplace_back(m.begin(), m.end());
  return Group::from_closed_set(real, keys);
}

std::optional<std::vector<Elt>> find_isomorphism(const Group& g1, const Group& g2) {
  if (g1.order() != g2.order()) return std::nullopt;
  if (g1.order() == 1) return std::vector<Elt>{0};
  // Same realization and g1's generators lie in g2: the identity on keys.
  if (g1.width() == g2.width() && g1.realization().kind() == g2.realization().kind()) {
    bool inside = true;
    for (Elt s : g1.generators())
      if (!g2.find(g1.key(s))) inside = false;
    if (inside) {
      std::vector<Elt> m(g1.order());
      bool ok = true;
      for (Elt x = 0; x < g1.order() && ok; ++x) {
        auto f = g2.find(g1.key(x));
        if (!f) ok = false;
        else m[x] = *f;
      }
      if (ok) return m;
    }
  }
  std::map<std::uint64_t, std::uint64_t> h1, h2;
  for (Elt x = 0; x < g1.order(); ++x) ++h1[g1.elt_order(x)];
  for (Elt x = 0; x < g2.order(); ++x) ++h2[g2.elt_order(x)];
  if (h1 != h2) return std::nullopt;

  HomSearch hs{g1, g2, small_generating_set(g1, whole_group(g1)), {}, {}, {}, {}, false, {}};
  // The first image may be taken up to conjugacy in g2.
  auto cc = conjugacy_classes(g2);
  for (std::size_t i = 0; i < hs.gens.size(); ++i) {
    std::vector<Elt> c;
    std::uint64_t o = g1.elt_order(hs.gens[i]);
    if (i == 0) {
      for (const auto& cls : cc.classes)
        if (g2.elt_order(cls.front()) == o) c.push_back(cls.front());
    } else {
      for (Elt y = 0; y < g2.order(); ++y)
        if (g2.elt_order(y) == o) c.push_back(y);
    }
    hs.candidates.push_back(std::move(c));
  }
  hs.run(0);
  if (hs.found.empty()) return std::nullopt;
  return hs.found.front();
}

std::vector<std::uint64_t> abelian_invariants(const Group& g, const Subgroup& a) {
  for (Elt x : a.gens)
    for (Elt y : a.gens)
      if (g.mul(x, y) != g.mul(y, x)) fail(Errc::NotAbelian, "abelian invariants of a nonabelian group");
  return invariants_mod(g, a.elems, nullptr);
}

Fingerprint fingerprint(const Group& g) {
  Fingerprint f;
  f.order = g.order();
  auto cc = conjugacy_classes(g);
  for (const auto& c : cc.classes) ++f.class_sizes[c.size()];
  Subgroup all = whole_group(g);
  Subgroup d = derived_subgroup(g, all);
  f.abelianization = invariants_mod(g, all.elems, &d);
  Subgroup cur = all;
  int len = 0;
  while (cur.order() > 1) {
    Subgroup nxt = derived_subgroup(g, cur);
    if (nxt.order() == cur.order()) {
      len = -1;
      break;
    }
    cur = std::move(nxt);
    ++len;
  }
  f.derived_length = len;
  for (Elt x = 0; x < g.order(); ++x) ++f.order_histogram[g.elt_order(x)];
  return f;
}

}  // namespace ptl
