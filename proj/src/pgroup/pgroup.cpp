#include "ptoral/pgroup.hpp"

#include "ptoral/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace ptl {

namespace {

// Elements of S sorted by (order, index): the canonical witness order.
std::vector<Elt> by_order(const Group& s) {
  std::vector<Elt> v(s.order());
  std::iota(v.begin(), v.end(), 0u);
  std::stable_sort(v.begin(), v.end(), [&](Elt a, Elt b) { return s.elt_order(a) < s.elt_order(b); });
  return v;
}

std::vector<CentralStep> steps_from(const Group& s, std::int64_t p, const std::vector<Elt>& sorted,
                                    const Subgroup& n, std::uint64_t max_order, bool abelian_only) {
  std::vector<CentralStep> out;
  Bitset covered = n.bits;
  for (Elt x : sorted) {
    if (max_order && s.elt_order(x) > max_order) break;
    if (covered.test(x)) continue;
    if (!n.contains(s.pow(x, p))) continue;
    bool ok = true;
    for (Elt g : s.generators())
      if (!n.contains(s.comm(x, g))) {
        ok = false;
        break;
      }
    if (ok && abelian_only) ok = centralizes(s, x, n);
    if (!ok) continue;
    Subgroup m = cyclic_extension(s, n, x);
    for (Elt y : m.elems) covered.set(y);
    out.push_back({std::move(m), x});
  }
  return out;
}

class SubgroupSet {
 public:
  std::optional<std::size_t> find(const Subgroup& h) const {
    auto [lo, hi] = idx_.equal_range(h.bits.hash());
    for (auto it = lo; it != hi; ++it)
      if (items_[it->second].bits == h.bits) return it->second;
    return std::nullopt;
  }
  std::size_t insert(Subgroup h) {
    if (auto f = find(h)) return *f;
    idx_.emplace(h.bits.hash(), items_.size());
    items_.push_back(std::move(h));
    return items_.size() - 1;
  }
  std::vector<Subgroup>& items() { return items_; }

 private:
  std::vector<Subgroup> items_;
  std::unordered_multimap<std::uint64_t, std::size_t> idx_;
};

std::vector<Subgroup> normal_closed_family(const Group& s, bool abelian_only) {
  const std::int64_t p = require_p_group(s);
  auto sorted = by_order(s);
  SubgroupSet set;
  set.insert(trivial_subgroup(s));
  for (std::size_t i = 0; i < set.items().size(); ++i) {
    Subgroup n = set.items()[i];
    for (auto& st : steps_from(s, p, sorted, n, 0, abelian_only)) set.insert(std::move(st.m));
  }
  auto out = std::move(set.items());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::int64_t require_p_group(const Group& s) {
  std::int64_t p = prime_of_p_group(s.order());
  if (p == 0) fail(Errc::NotPGroup, "group of order " + std::to_string(s.order()) + " is not a nontrivial p-group");
  return p;
}

Subgroup omega_layer(const Group& s, const Subgroup& p, int n) {
  if (p.order() == 1 || n <= 0) return trivial_subgroup(s);
  std::int64_t q = prime_of_p_group(p.order());
  if (q == 0) fail(Errc::NotPGroup, "omega layer of a subgroup that is not a p-group");
  const std::uint64_t bound = static_cast<std::uint64_t>(ipow(q, n));
  std::vector<Elt> gens;
  for (Elt x : p.elems)
    if (bound % s.elt_order(x) == 0) gens.push_back(x);
  return closure(s, gens);
}

std::vector<CentralStep> central_steps(const Group& s, const Subgroup& n, std::uint64_t max_order, bool abelian_only) {
  return steps_from(s, require_p_group(s), by_order(s), n, max_order, abelian_only);
}

std::vector<Subgroup> normal_subgroups_p(const Group& s) { return normal_closed_family(s, false); }

Subexponent subexponent(const Group& s) {
  Subexponent out;
  if (s.order() == 1) {
    out.series.terms.push_back(trivial_subgroup(s));
    return out;
  }
  const std::int64_t p = require_p_group(s);
  auto sorted = by_order(s);
  // Raise the bound t through the powers of p; the first t for which S is
  // reachable from 1 by index-p normal steps, each with a witness of order
  // <= t, is the subexponent.
  for (std::uint64_t t = static_cast<std::uint64_t>(p);; t *= static_cast<std::uint64_t>(p)) {
    SubgroupSet set;
    std::vector<std::pair<std::size_t, Elt>> parent{{0, 0}};
    set.insert(trivial_subgroup(s));
    std::optional<std::size_t> top;
    for (std::size_t i = 0; i < set.items().size() && !top; ++i) {
      Subgroup n = set.items()[i];
      for (auto& st : steps_from(s, p, sorted, n, t, false)) {
        bool full = st.m.order() == s.order();
        std::size_t before = set.items().size();
        std::size_t j = set.insert(std::move(st.m));
        if (j == before) parent.emplace_back(i, st.witness);
        if (full) {
          top = j;
          break;
        }
      }
    }
    if (!top) continue;
    std::vector<std::size_t> chain;
    for (std::size_t c = *top; c != 0; c = parent[c].first) chain.push_back(c);
    chain.push_back(0);
    std::reverse(chain.begin(), chain.end());
    for (std::size_t i = 0; i < chain.size(); ++i) {
      out.series.terms.push_back(set.items()[chain[i]]);
      if (i > 0) {
        Elt w = parent[chain[i]].second;
        out.series.witnesses.push_back(w);
        out.series.witness_orders.push_back(s.elt_order(w));
      }
    }
    out.value = *std::max_element(out.series.witness_orders.begin(), out.series.witness_orders.end());
    return out;
  }
}

Elt subexp_witness(const Group& s, const Subgroup& a, std::uint64_t ex) {
  const std::int64_t p = require_p_group(s);
  int n = 0;
  for (std::uint64_t t = 1; t < ex; t *= static_cast<std::uint64_t>(p)) ++n;
  Subgroup om = omega_layer(s, a, n);
  for (Elt x = 0; x < s.order(); ++x) {
    if (a.contains(x) || s.elt_order(x) > ex) continue;
    bool ok = true;
    for (Elt g : s.generators())
      if (!om.contains(s.comm(x, g))) {
        ok = false;
        break;
      }
    if (ok) return x;
  }
  fail(Errc::WitnessSearchFailed, "no element x outside A with |x| <= ex(S) and [x,S] <= Omega_n(A)");
}

HomocyclicType is_homocyclic(const Group& s, const Subgroup& a) {
  auto inv = abelian_invariants(s, a);
  HomocyclicType t;
  t.rank = static_cast<int>(inv.size());
  t.exponent = inv.empty() ? 1 : inv.back();
  t.homocyclic = inv.empty() || inv.front() == inv.back();
  if (!inv.empty() && prime_of_p_group(a.order()) == 0) t.homocyclic = false;
  return t;
}

LargeAbelianReport find_large_abelian(const Group& s, int k, int e) {
  LargeAbelianReport r;
  r.k = k;
  r.e = e;
  const std::int64_t p = require_p_group(s);
  const std::uint64_t pe = static_cast<std::uint64_t>(ipow(p, e));
  auto family = normal_closed_family(s, true);
  r.normal_abelian_examined = family.size();
  std::vector<std::size_t> self_centralizing;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const Subgroup& a = family[i];
    if (centralizer(s, omega_layer(s, a, k)) == a) self_centralizing.push_back(i);
  }
  for (std::size_t i : self_centralizing) {
    const Subgroup& a = family[i];
    auto h = is_homocyclic(s, omega_layer(s, a, e));
    if (h.homocyclic && h.exponent == pe) {
      r.a = a;
      r.centralizer_ok = true;
      r.homocyclic_ok = true;
      r.transcript.push_back("A of order " + std::to_string(a.order()) + ": C_S(Omega_" + std::to_string(k) +
                             "(A)) = A verified on " + std::to_string(s.order()) + " elements");
      r.transcript.push_back("Omega_" + std::to_string(e) + "(A) homocyclic of rank " + std::to_string(h.rank) +
                             " and exponent " + std::to_string(h.exponent));
      break;
    }
  }
  if (!r.a) {
    r.transcript.push_back("no normal abelian subgroup qualifies among " + std::to_string(family.size()));
    return r;
  }
  r.subexponent_lower_bound = static_cast<std::uint64_t>(ipow(p, e - k + 1));
  if (e >= 2 * k) {
    r.uniqueness_checked = true;
    r.unique = true;
    for (std::size_t i : self_centralizing)
      if (!(family[i] == *r.a)) r.unique = false;
    r.transcript.push_back(std::to_string(self_centralizing.size()) +
                           " normal abelian subgroup(s) B with C_S(Omega_k(B)) = B; unique: " +
                           (r.unique ? "yes" : "no"));
  }
  return r;
}

Subgroup frattini_subgroup(const Group& g, const Subgroup& q) {
  if (q.order() == 1) return q;
  std::int64_t p = prime_of_p_group(q.order());
  if (p == 0) fail(Errc::NotPGroup, "Frattini subgroup requested for a non-p-group");
  std::vector<Elt> gens;
  for (Elt x : q.elems) gens.push_back(g.pow(x, p));
  Subgroup d = derived_subgroup(g, q);
  gens.insert(gens.end(), d.gens.begin(), d.gens.end());
  return closure(g, gens);
}

PRanks p_ranks(const Group& g, std::int64_t p) {
  if (!is_prime(p)) fail(Errc::InvalidSpec, "p_ranks needs a prime");
  Subgroup syl = sylow_subgroup(g, p);
  PRanks r;
  if (syl.order() == 1) return r;
  auto sg = subgroup_as_group(g, syl);
  const Group& s = *sg.group;
  if (s.is_abelian()) {
    r.rk = r.srk = static_cast<int>(abelian_invariants(s, whole_group(s)).size());
    return r;
  }
  SubgroupLattice lat(s, whole_group(s));
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const Subgroup& q = lat[i];
    if (q.order() == 1) continue;
    // A p-group with d generators has (p^d - 1)/(p - 1) maximal subgroups.
    std::int64_t m = static_cast<std::int64_t>(lat.maximal(i).size());
    std::int64_t total = m * (p - 1) + 1;
    int d = vp(total, p);
    r.srk = std::max(r.srk, d);
    bool elementary = exponent(s, q) == static_cast<std::uint64_t>(p);
    for (Elt x : q.gens) elementary = elementary && centralizes(s, x, q);
    if (elementary) r.rk = std::max(r.rk, vp(static_cast<std::int64_t>(q.order()), p));
  }
  return r;
}

int srk_bound(std::int64_t p, int n) {
  if (!is_prime(p) || n < 1) fail(Errc::BadParameters, "srk_bound needs a prime p and n >= 1");
  return static_cast<int>((p * n) / (p - 1));
}

std::pair<Subgroup, Subgroup> upper_central_pair(const Group& s) {
  Subgroup z = center(s);
  std::vector<Elt> z2;
  for (Elt x = 0; x < s.order(); ++x) {
    bool ok = true;
    for (Elt g : s.generators())
      if (!z.contains(s.comm(x, g))) {
        ok = false;
        break;
      }
    if (ok) z2.push_back(x);
  }
  Subgroup z2s = make_subgroup(s, z2, {});
  z2s.gens = small_generating_set(s, z2s);
  return {z, z2s};
}

}  // namespace ptl
