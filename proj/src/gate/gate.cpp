#include "ptoral/gate.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <sstream>
#include <thread>

namespace ptl {

namespace {

constexpr std::uint64_t kIsoLimit = 100000;       // above this, fingerprint evidence only
constexpr std::uint64_t kDecompositionLimit = 20000;  // normal subgroups of H for ell > 1

std::string join_dims(const std::vector<int>& v) {
  std::ostringstream s;
  s << "{";
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
  s << "}";
  return s.str();
}

std::vector<int> repeat(const std::vector<int>& v, int ell) {
  std::vector<int> out;
  for (int i = 0; i < ell; ++i) out.insert(out.end(), v.begin(), v.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t ipow_u(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > (std::uint64_t{1} << 62) / std::max<std::uint64_t>(b, 1)) return 0;
    r *= b;
  }
  return r;
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

std::vector<ZMat> mod_p(const std::vector<ZMat>& gens, std::int64_t p) {
  std::vector<ZMat> out;
  for (const auto& g : gens) out.push_back(reduce(g, p));
  return out;
}

}  // namespace

Fingerprint group_fingerprint(const ModRep& r) { return fingerprint(*r.group); }

Subgroup op_prime_residual(const Group& w, std::int64_t p) {
  const auto cc = conjugacy_classes(w);
  std::vector<Elt> gens;
  for (const auto& cls : cc.classes) {
    const std::uint64_t o = w.elt_order(cls.front());
    if (o > 1 && is_p_group_order(o, p)) gens.push_back(cls.front());
  }
  Subgroup n = normal_closure(w, closure(w, gens));
  n.gens = small_generating_set(w, n);
  return n;
}

std::vector<Subgroup> coprime_normal_subgroups(const Group& w, std::int64_t p) {
  // every such subgroup contains O^{p'}(W); work in the p'-quotient
  const Subgroup o = op_prime_residual(w, p);
  GroupPtr wp(std::shared_ptr<const Group>{}, &w);
  const Quotient q = quotient_group(wp, o);
  std::vector<Subgroup> out;
  for (const auto& nbar : normal_subgroups(*q.group)) {
    std::vector<Elt> elems;
    for (Elt x = 0; x < w.order(); ++x)
      if (nbar.contains(q.proj[x])) elems.push_back(x);
    Subgroup h = make_subgroup(w, elems, {});
    h.gens = small_generating_set(w, h);
    out.push_back(std::move(h));
  }
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) { return b < a; });
  return out;
}

// --- catalog --------------------------------------------------------------------------------

Catalog::Catalog(std::int64_t p, int max_rank, bool include_large_exceptional) : p_(p) {
  if (!is_prime(p)) fail(Errc::BadParameters, "catalog prime is not prime");
  const int k = p == 2 ? 2 : 1;
  auto add = [&](CatalogEntry e) {
    e.p = p;
    e.buildable = e.order <= caps().order;
    entries_.push_back(std::move(e));
  };
  // (a) Weyl groups of simple compact Lie groups on their lattices
  struct TypeRank {
    LieType t;
    int n;
  };
  std::vector<TypeRank> types;
  for (int n = 1; n <= max_rank; ++n) {
    types.push_back({LieType::A, n});
    if (n >= 2) types.push_back({LieType::B, n});
    if (n >= 3) types.push_back({LieType::C, n});
    if (n >= 4) types.push_back({LieType::D, n});
  }
  if (max_rank >= 2) types.push_back({LieType::G2, 2});
  if (max_rank >= 4) types.push_back({LieType::F4, 4});
  for (LieType t : {LieType::E6, LieType::E7, LieType::E8}) {
    const int n = t == LieType::E6 ? 6 : t == LieType::E7 ? 7 : 8;
    if (max_rank >= n) types.push_back({t, n});
  }
  for (const auto& [t, n] : types) {
    const bool large = t == LieType::E6 || t == LieType::E7 || t == LieType::E8;
    const auto lats = weyl_lattices(t, n);
    for (std::size_t li = 0; li < lats.size(); ++li) {
      CatalogEntry e;
      e.label = "a";
      e.name = "W(" + lie_name(t, n) + ")";
      e.params = lats[li].name;
      e.rank = n;
      e.order = weyl_order(t, n);
      e.large_exceptional = large;
      e.build = [t, n, p, k, li] { return build_weyl_classical(t, n, p, k, li); };
      add(std::move(e));
      if (large && !include_large_exceptional) entries_.back().buildable = false;
    }
  }
  // (b) G(m,1,n), 3 <= m | p - 1, n >= p; (c) G(2m,2,n), 2 <= m | (p - 1)/2, n >= p
  if (p > 2)
    for (int n = static_cast<int>(p); n <= max_rank; ++n) {
      for (int m = 3; m <= p - 1; ++m)
        if ((p - 1) % m == 0) {
          CatalogEntry e;
          e.label = "b";
          e.name = "G(" + std::to_string(m) + ",1," + std::to_string(n) + ")";
          e.params = "m=" + std::to_string(m) + ",n=" + std::to_string(n);
          e.rank = n;
          e.order = ipow_u(static_cast<std::uint64_t>(m), n) * factorial(n);
          e.build = [p, m, n] { return build_G_m_k_n(p, m, 1, n); };
          add(std::move(e));
        }
      for (int m = 2; m <= (p - 1) / 2; ++m)
        if ((p - 1) / 2 % m == 0) {
          CatalogEntry e;
          e.label = "c";
          e.name = "G(" + std::to_string(2 * m) + ",2," + std::to_string(n) + ")";
          e.params = "m=" + std::to_string(m) + ",n=" + std::to_string(n);
          e.rank = n;
          e.order = ipow_u(static_cast<std::uint64_t>(2 * m), n) * factorial(n) / 2;
          e.build = [p, m, n] { return build_G_m_k_n(p, 2 * m, 2, n); };
          add(std::move(e));
        }
    }
  if (p == 3 && max_rank >= 2) {
    CatalogEntry e;
    e.label = "d";
    e.name = "ST12";
    e.params = "GL2(3)";
    e.rank = 2;
    e.order = 48;
    e.build = [] { return build_ST12(); };
    add(std::move(e));
  }
  if (p == 5 && max_rank >= 4) {
    CatalogEntry e;
    e.label = "e";
    e.name = "ST31";
    e.params = "(C4oD8oD8).S6";
    e.rank = 4;
    e.order = 46080;
    e.build = [] { return build_ST31(); };
    add(std::move(e));
  }
  cache_.resize(entries_.size());
}

const MaterializedEntry& Catalog::materialize(std::size_t i) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (i >= entries_.size()) fail(Errc::InvalidSpec, "catalog index out of range");
  if (!cache_[i]) {
    const auto& e = entries_[i];
    if (!e.buildable) fail(Errc::CapExceeded, e.name + " is beyond the build cap");
    auto m = std::make_unique<MaterializedEntry>();
    m->rep = e.build();
    m->fp = fingerprint(*m->rep.group);
    m->factors = composition_factors(mod_p(m->rep.gens, p_), m->rep.rank, p_);
    cache_[i] = std::move(m);
  }
  return *cache_[i];
}

std::string obstruction_name(Obstruction o) {
  switch (o) {
    case Obstruction::None: return "none";
    case Obstruction::NoMatchingSubgroup: return "no coprime-index normal subgroup matches any entry";
    case Obstruction::ModuleMismatch: return "module factors mismatch";
    case Obstruction::NotTransitive: return "ell-transitivity fails";
  }
  return "?";
}

// --- gate -------------------------------------------------------------------------------------

namespace {

struct Decomposition {
  std::vector<Subgroup> factors;  // in W
  bool transitive = false;
};

// H = H_1 x .. x H_ell inside W with each H_i of the given order and
// fingerprint; searched among the normal subgroups of H.
std::optional<Decomposition> decompose(const Group& w, const Subgroup& h, int ell, std::uint64_t factor_order,
                                       const Fingerprint& fp) {
  auto sg = subgroup_as_group(w, h);
  const Group& hg = *sg.group;
  std::vector<Subgroup> cands;
  for (const auto& n : normal_subgroups(hg))
    if (n.order() == factor_order && fingerprint(*subgroup_as_group(hg, n).group) == fp) cands.push_back(n);
  auto commute = [&](const Subgroup& a, const Subgroup& b) {
    for (Elt x : a.gens)
      for (Elt y : b.gens)
        if (hg.mul(x, y) != hg.mul(y, x)) return false;
    return true;
  };
  for (auto& c : cands) c.gens = small_generating_set(hg, c);
  std::vector<std::size_t> chosen;
  std::function<bool(std::size_t, const Subgroup&)> pick = [&](std::size_t from, const Subgroup& prod) {
    if (static_cast<int>(chosen.size()) == ell) return prod.order() == hg.order();
    for (std::size_t i = from; i < cands.size(); ++i) {
      bool ok = intersection(hg, prod, cands[i]).order() == 1;
      for (std::size_t j : chosen) ok = ok && commute(cands[j], cands[i]);
      if (!ok) continue;
      chosen.push_back(i);
      if (pick(i + 1, join(hg, prod, cands[i]))) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!pick(0, trivial_subgroup(hg))) return std::nullopt;
  Decomposition d;
  for (std::size_t i : chosen) {
    std::vector<Elt> elems;
    for (Elt x : cands[i].elems) elems.push_back(sg.embed[x]);
    std::sort(elems.begin(), elems.end());
    Subgroup s = make_subgroup(w, elems, {});
    s.gens = small_generating_set(w, s);
    d.factors.push_back(std::move(s));
  }
  // W-conjugation permutes the factors transitively
  std::vector<std::size_t> orbit{0};
  std::vector<bool> seen(d.factors.size(), false);
  seen[0] = true;
  bool permuted = true;
  for (std::size_t i = 0; i < orbit.size(); ++i)
    for (Elt g : w.generators()) {
      const Subgroup c = conjugate(w, d.factors[orbit[i]], g);
      auto it = std::find(d.factors.begin(), d.factors.end(), c);
      if (it == d.factors.end()) {
        permuted = false;
        continue;
      }
      const auto j = static_cast<std::size_t>(it - d.factors.begin());
      if (!seen[j]) {
        seen[j] = true;
        orbit.push_back(j);
      }
    }
  d.transitive = permuted && orbit.size() == d.factors.size();
  return d;
}

int rank_order(Obstruction o) {
  switch (o) {
    case Obstruction::None: return 0;
    case Obstruction::NoMatchingSubgroup: return 1;
    case Obstruction::ModuleMismatch: return 2;
    case Obstruction::NotTransitive: return 3;  // group and module both matched
  }
  return 0;
}

std::vector<int> factors_of(const ModRep& in, const Subgroup& h, std::uint64_t seed) {
  return composition_factors(mod_p(subgroup_matrices(in, h), in.p), in.rank, in.p, seed);
}

bool same_group(const Group& a, const Group& b, std::string& evidence) {
  if (a.order() <= kIsoLimit) {
    evidence = "isomorphism";
    return find_isomorphism(a, b).has_value();
  }
  evidence = "fingerprint";
  return true;
}

}  // namespace

GateVerdict gate_classify(const ModRep& input, bool opprime_irreducible, std::uint64_t seed) {
  const std::int64_t p = input.p;
  const int want_k = p == 2 ? 2 : 1;
  if (input.k != want_k)
    fail(Errc::BadParameters, "the gate needs k = " + std::to_string(want_k) + " for p = " + std::to_string(p));
  GateVerdict v;
  v.p = p;
  v.w_order = input.group->order();
  v.ell_one_only = opprime_irreducible;
  v.input_factors = composition_factors(mod_p(input.gens, p), input.rank, p, seed);
  v.obstruction = Obstruction::NoMatchingSubgroup;
  auto note = [&](Obstruction o, const std::string& what) {
    v.transcript.push_back(what);
    if (rank_order(o) > rank_order(v.obstruction)) {
      v.obstruction = o;
      v.detail = what;
    }
  };

  const Group& w = *input.group;
  const Catalog cat(p, input.rank);
  const auto hs = coprime_normal_subgroups(w, p);
  for (const auto& h : hs) {
    for (int ell = 1; ell <= input.rank; ++ell) {
      if (input.rank % ell) continue;
      if (ell > 1 && opprime_irreducible) continue;
      for (std::size_t i = 0; i < cat.entries().size(); ++i) {
        const auto& e = cat.entries()[i];
        if (e.rank != input.rank / ell || ipow_u(e.order, ell) != h.order()) continue;
        ++v.candidates_examined;
        const std::string tag = e.name + "[" + e.params + "] ell=" + std::to_string(ell) + " |H|=" + std::to_string(h.order());
        if (!e.buildable) {
          v.transcript.push_back(tag + ": order matches an entry beyond the build cap");
          continue;
        }
        const auto& me = cat.materialize(i);
        auto hg = subgroup_as_group(w, h);
        std::string evidence;
        std::vector<Subgroup> parts;
        bool transitive = true;
        if (ell == 1) {
          if (fingerprint(*hg.group) != me.fp) {
            v.transcript.push_back(tag + ": fingerprint differs");
            continue;
          }
          if (!same_group(*hg.group, *me.rep.group, evidence)) {
            v.transcript.push_back(tag + ": not isomorphic");
            continue;
          }
        } else {
          if (h.order() > kDecompositionLimit) {
            v.transcript.push_back(tag + ": decomposition beyond the cap");
            continue;
          }
          auto d = decompose(w, h, ell, e.order, me.fp);
          if (!d) {
            v.transcript.push_back(tag + ": no direct decomposition");
            continue;
          }
          transitive = d->transitive;
          evidence = "fingerprint";
          parts = d->factors;
        }
        const auto hf = factors_of(input, h, seed);
        const auto ef = repeat(me.factors, ell);
        if (hf != ef) {
          note(Obstruction::ModuleMismatch, tag + ": factors " + join_dims(hf) + " vs " + join_dims(ef));
          continue;
        }
        if (ell > 1 && !transitive) {
          note(Obstruction::NotTransitive, tag + ": factors not permuted transitively by W");
          continue;
        }
        v.pass = true;
        v.obstruction = Obstruction::None;
        v.detail.clear();
        v.entry = e.name + "[" + e.params + "]";
        v.label = e.label;
        v.ell = ell;
        v.h_order = h.order();
        v.h_index = w.order() / h.order();
        v.h_generators = subgroup_matrices(input, h);
        for (const auto& f : parts) v.factor_generators.push_back(subgroup_matrices(input, f));
        v.evidence = evidence;
        v.entry_factors = ef;
        v.transcript.push_back(tag + ": match");
        return v;
      }
    }
  }
  if (v.obstruction == Obstruction::NoMatchingSubgroup)
    v.detail = std::to_string(hs.size()) + " coprime-index normal subgroups, none matches";
  return v;
}

bool verify_gate_certificate(const ModRep& input, const GateVerdict& v) {
  if (!v.pass) return false;
  const Group& w = *input.group;
  const auto& mr = dynamic_cast<const MatrixRealization&>(w.realization());
  std::vector<Elt> gens;
  for (const auto& m : v.h_generators) {
    auto x = w.find(mr.encode(reduce(m, mr.modulus())));
    if (!x) return false;
    gens.push_back(*x);
  }
  const Subgroup h = closure(w, gens);
  if (h.order() != v.h_order || !is_normal(w, h)) return false;
  if (gcd64(static_cast<std::int64_t>(w.order() / h.order()), input.p) != 1) return false;
  const Catalog cat(input.p, input.rank);
  for (std::size_t i = 0; i < cat.entries().size(); ++i) {
    const auto& e = cat.entries()[i];
    if (e.name + "[" + e.params + "]" != v.entry) continue;
    if (ipow_u(e.order, v.ell) != h.order()) return false;
    const auto& me = cat.materialize(i);
    if (v.ell == 1) {
      auto hg = subgroup_as_group(w, h);
      if (fingerprint(*hg.group) != me.fp) return false;
      if (h.order() <= kIsoLimit && !find_isomorphism(*hg.group, *me.rep.group)) return false;
    } else {
      if (static_cast<int>(v.factor_generators.size()) != v.ell) return false;
      std::vector<Subgroup> parts;
      Subgroup prod = trivial_subgroup(w);
      for (const auto& fg : v.factor_generators) {
        std::vector<Elt> fe;
        for (const auto& m : fg) fe.push_back(*w.find(mr.encode(reduce(m, mr.modulus()))));
        Subgroup f = closure(w, fe);
        if (f.order() != e.order || !f.bits.subset_of(h.bits)) return false;
        if (fingerprint(*subgroup_as_group(w, f).group) != me.fp) return false;
        for (const auto& q : parts)
          for (Elt a : q.gens)
            for (Elt b : f.gens)
              if (w.mul(a, b) != w.mul(b, a)) return false;
        prod = join(w, prod, f);
        parts.push_back(f);
      }
      if (!(prod == h)) return false;
      for (const auto& f : parts)
        for (Elt g : w.generators())
          if (std::find(parts.begin(), parts.end(), conjugate(w, f, g)) == parts.end()) return false;
    }
    return factors_of(input, h, 0) == repeat(me.factors, v.ell);
  }
  return false;
}

std::vector<TableRow> verdict_table(VerdictTable which, int threads) {
  std::vector<std::pair<TableRow, std::function<ModRep()>>> jobs;
  std::vector<TableRow> fixed;
  auto add = [&](TableRow row, std::function<ModRep()> build) { jobs.emplace_back(std::move(row), std::move(build)); };
  if (which == VerdictTable::PCompact) {
    add({5, "G(4,1,5)", "3 <= m | p-1, n >= p", 5, "realized", false, {}, false, ""}, [] { return build_G_m_k_n(5, 4, 1, 5); });
    add({5, "G(4,2,5)", "2 <= m | (p-1)/2, n >= p", 5, "realized", false, {}, false, ""},
        [] { return build_G_m_k_n(5, 4, 2, 5); });
    add({5, "G(4,4,5)", "k >= 3", 5, "not seq. real.", false, {}, false, ""}, [] { return build_G_m_k_n(5, 4, 4, 5); });
    add({3, "ST12", "", 2, "realized (2F4)", false, {}, false, ""}, [] { return build_ST12(); });
    add({2, "ST24", "", 3, "not seq. real.", false, {}, false, ""}, [] { return build_ST24(); });
    add({5, "ST29", "", 4, "not seq. real.", false, {}, false, ""}, [] { return build_ST29(); });
    add({5, "ST31", "", 4, "realized (E8)", false, {}, false, ""}, [] { return build_ST31(); });
    fixed.push_back({7, "ST34", "", 6, "not seq. real.", false, {}, false,
                     "not evaluated: order 39191040 exceeds the enumeration cap"});
  } else {
    add({5, "S5", "{T} u H", 4, "PSL5", false, {}, false, ""}, [] { return build_weyl_classical(LieType::A, 4, 5, 1, 0); });
    add({3, "ST12", "{T} u B", 2, "2F4", false, {}, false, ""}, [] { return build_ST12(); });
    add({3, "ST12", "{T} u H", 2, "not seq. real.", false, {}, false, ""}, [] { return build_ST12(); });
    add({5, "ST31", "{T} u B", 4, "E8", false, {}, false, ""}, [] { return build_ST31(); });
    add({5, "ST31", "{T} u H", 4, "not seq. real.", false, {}, false, ""}, [] { return build_ST31(); });
  }
  auto run = [](TableRow& row, const std::function<ModRep()>& build) {
    try {
      const ModRep r = build();
      row.evaluated = true;
      row.verdict = gate_classify(r);
      const bool realized = row.expected.rfind("realized", 0) == 0 || row.expected.rfind("PSL", 0) == 0 ||
                            row.expected.rfind("E8", 0) == 0 || row.expected.rfind("2F4", 0) == 0;
      if (row.verdict->pass && realized) row.consistent = true;
      else if (!row.verdict->pass && !realized) row.consistent = true;
      else if (row.verdict->pass && !realized) {
        row.consistent = true;
        row.note = "the gate is a necessary condition only; the obstruction is not visible in (W, M)";
      } else
        row.consistent = false;
    } catch (const Error& e) {
      row.evaluated = false;
      row.note = std::string("not evaluated: ") + e.what();
    }
  };
  // rows are independent; each worker takes the next unclaimed one
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < jobs.size();) run(jobs[i].first, jobs[i].second);
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < std::max(threads, 1); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::vector<TableRow> rows;
  for (auto& j : jobs) rows.push_back(std::move(j.first));
  for (auto& r : fixed) rows.push_back(std::move(r));
  return rows;
}

}  // namespace ptl
