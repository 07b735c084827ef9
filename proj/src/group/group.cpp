#include "ptoral/group.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <numeric>

namespace ptl {

namespace {

constexpr std::size_t kTableMax = 2200;
constexpr std::uint32_t kEmpty = 0xffffffffu;

thread_local std::vector<std::int32_t> scratch;

std::int32_t* scratch_buf(int width) {
  if (scratch.size() < static_cast<std::size_t>(width)) scratch.resize(static_cast<std::size_t>(width) * 2);
  return scratch.data();
}

}  // namespace

std::uint64_t Group::hash_key(const std::int32_t* k) const {
  std::uint64_t h = 1469598103934665603ull;
  for (int i = 0; i < width_; ++i) {
    h ^= static_cast<std::uint32_t>(k[i]);
    h *= 1099511628211ull;
    h ^= h >> 29;
  }
  return h;
}

void Group::index_insert(Elt i) {
  if ((n_ + 1) * 2 > slots_.size()) {
    std::size_t cap = std::max<std::size_t>(64, slots_.size() * 2);
    slots_.assign(cap, kEmpty);
    mask_ = cap - 1;
    for (Elt j = 0; j < i; ++j) {
      std::size_t s = hash_key(key(j)) & mask_;
      while (slots_[s] != kEmpty) s = (s + 1) & mask_;
      slots_[s] = j;
    }
  }
  std::size_t s = hash_key(key(i)) & mask_;
  while (slots_[s] != kEmpty) s = (s + 1) & mask_;
  slots_[s] = i;
}

std::optional<Elt> Group::find(const std::int32_t* k) const {
  if (slots_.empty()) return std::nullopt;
  std::size_t s = hash_key(k) & mask_;
  while (slots_[s] != kEmpty) {
    if (std::memcmp(key(slots_[s]), k, sizeof(std::int32_t) * width_) == 0) return slots_[s];
    s = (s + 1) & mask_;
  }
  return std::nullopt;
}

GroupPtr Group::generate(RealizationPtr r, const std::vector<Key>& gens) {
  auto g = std::shared_ptr<Group>(new Group());
  g->real_ = std::move(r);
  g->width_ = g->real_->width();
  const int w = g->width_;
  const std::size_t cap = caps().order;

  std::vector<Key> gk;
  for (const auto& k : gens) {
    if (static_cast<int>(k.size()) != w) fail(Errc::InvalidSpec, "generator has wrong width");
    gk.push_back(k);
  }
  g->data_.resize(static_cast<std::size_t>(w));
  g->real_->identity(g->data_.data());
  g->n_ = 0;
  g->index_insert(0);
  g->n_ = 1;

  const std::size_t ng = gk.size();
  std::vector<std::vector<Elt>> rgen(ng);
  std::vector<std::pair<Elt, std::uint32_t>> parent{{0, 0}};
  std::vector<std::int32_t> buf(static_cast<std::size_t>(w));
  for (std::size_t qi = 0; qi < g->n_; ++qi) {
    for (std::size_t s = 0; s < ng; ++s) {
      g->real_->multiply(g->key(static_cast<Elt>(qi)), gk[s].data(), buf.data());
      auto f = g->find(buf.data());
      Elt y;
      if (f) {
        y = *f;
      } else {
        if (g->n_ >= cap) fail(Errc::CapExceeded, "group order exceeds enumeration cap " + std::to_string(cap));
        y = static_cast<Elt>(g->n_);
        g->data_.insert(g->data_.end(), buf.begin(), buf.end());
        g->index_insert(y);
        ++g->n_;
        parent.emplace_back(static_cast<Elt>(qi), static_cast<std::uint32_t>(s));
      }
      rgen[s].push_back(y);
    }
  }
  for (const auto& k : gk) {
    Elt e = *g->find(k.data());
    if (e != 0 && std::find(g->gens_.begin(), g->gens_.end(), e) == g->gens_.end()) g->gens_.push_back(e);
  }
  const std::size_t n = g->n_;
  if (n <= kTableMax) {
    g->table_.assign(n * n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      std::uint16_t* row = g->table_.data() + a * n;
      row[0] = static_cast<std::uint16_t>(a);
      for (std::size_t b = 1; b < n; ++b) row[b] = static_cast<std::uint16_t>(rgen[parent[b].second][row[parent[b].first]]);
    }
  }
  g->finish();
  return g;
}

void Group::finish() {
  inv_.resize(n_);
  std::vector<std::int32_t> buf(static_cast<std::size_t>(width_));
  for (Elt i = 0; i < n_; ++i) {
    real_->inverse(key(i), buf.data());
    auto f = find(buf.data());
    if (!f) fail(Errc::InvalidSpec, "inverse not found: realization is not closed");
    inv_[i] = *f;
  }
}

GroupPtr Group::from_closed_set(RealizationPtr r, const std::vector<Key>& elems) {
  // Index the set, then pick generators greedily and regenerate so that the
  // element order is the canonical BFS order.
  auto tmp = std::shared_ptr<Group>(new Group());
  tmp->real_ = r;
  tmp->width_ = r->width();
  std::vector<std::int32_t> id(static_cast<std::size_t>(tmp->width_));
  r->identity(id.data());
  tmp->data_ = id;
  tmp->index_insert(0);
  tmp->n_ = 1;
  for (const auto& k : elems) {
    if (tmp->find(k.data())) continue;
    Elt i = static_cast<Elt>(tmp->n_);
    tmp->data_.insert(tmp->data_.end(), k.begin(), k.end());
    tmp->index_insert(i);
    ++tmp->n_;
  }
  const std::size_t n = tmp->n_;
  std::vector<Key> gens;
  std::vector<char> in(n, 0);
  in[0] = 1;
  std::vector<Elt> cur{0};
  std::vector<std::int32_t> buf(static_cast<std::size_t>(tmp->width_));
  for (Elt x = 1; x < n && cur.size() < n; ++x) {
    if (in[x]) continue;
    gens.push_back(tmp->key_vec(x));
    // Re-close under all generators chosen so far.
    std::fill(in.begin(), in.end(), 0);
    cur.assign(1, 0);
    in[0] = 1;
    for (std::size_t qi = 0; qi < cur.size(); ++qi)
      for (const auto& gk : gens) {
        r->multiply(tmp->key(cur[qi]), gk.data(), buf.data());
        auto f = tmp->find(buf.data());
        if (!f) fail(Errc::InvalidSpec, "from_closed_set: element set is not closed");
        if (!in[*f]) {
          in[*f] = 1;
          cur.push_back(*f);
        }
      }
  }
  GroupPtr g = generate(r, gens);
  if (g->order() != n) fail(Errc::InvalidSpec, "from_closed_set: regenerated order mismatch");
  return g;
}

Elt Group::mul(Elt a, Elt b) const {
  if (!table_.empty()) return table_[static_cast<std::size_t>(a) * n_ + b];
  std::int32_t* buf = scratch_buf(width_);
  real_->multiply(key(a), key(b), buf);
  auto f = find(buf);
  return *f;
}

Elt Group::pow(Elt a, std::int64_t n) const {
  if (n < 0) {
    a = inv_[a];
    n = -n;
  }
  Elt r = 0;
  Elt b = a;
  while (n > 0) {
    if (n & 1) r = mul(r, b);
    b = mul(b, b);
    n >>= 1;
  }
  return r;
}

std::uint64_t Group::elt_order(Elt a) const {
  std::call_once(orders_once_, [this] {
    orders_.assign(n_, 0);
    orders_[0] = 1;
    for (Elt x = 1; x < n_; ++x) {
      if (orders_[x]) continue;
      // Walk the cyclic group <x> once and label every power.
      std::vector<Elt> pw{x};
      Elt y = x;
      while (y != 0) {
        y = mul(y, x);
        if (y != 0) pw.push_back(y);
      }
      const std::uint32_t m = static_cast<std::uint32_t>(pw.size() + 1);
      for (std::size_t i = 0; i < pw.size(); ++i)
        if (!orders_[pw[i]]) orders_[pw[i]] = m / static_cast<std::uint32_t>(std::gcd<std::uint64_t>(i + 1, m));
    }
  });
  return orders_[a];
}

bool Group::is_abelian() const {
  for (Elt a : gens_)
    for (Elt b : gens_)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

// --- Bitset ------------------------------------------------------------------

std::size_t Bitset::count() const {
  std::size_t c = 0;
  for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool Bitset::subset_of(const Bitset& o) const {
  for (std::size_t i = 0; i < w_.size(); ++i)
    if (w_[i] & ~o.w_[i]) return false;
  return true;
}

std::uint64_t Bitset::hash() const {
  std::uint64_t h = 0x9e3779b97f4a7c15ull;
  for (auto w : w_) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

// --- Subgroups -------------------------------------------------------------

bool Subgroup::operator<(const Subgroup& o) const {
  if (elems.size() != o.elems.size()) return elems.size() < o.elems.size();
  return elems < o.elems;
}

std::size_t Subgroup::position(Elt x) const {
  return static_cast<std::size_t>(std::lower_bound(elems.begin(), elems.end(), x) - elems.begin());
}

Subgroup make_subgroup(const Group& g, std::vector<Elt> elems, std::vector<Elt> gens) {
  Subgroup s;
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  s.bits = Bitset(g.order());
  for (Elt x : elems) s.bits.set(x);
  s.elems = std::move(elems);
  for (Elt x : gens)
    if (x != 0 && std::find(s.gens.begin(), s.gens.end(), x) == s.gens.end()) s.gens.push_back(x);
  return s;
}

Subgroup closure(const Group& g, const std::vector<Elt>& gens) {
  Bitset seen(g.order());
  std::vector<Elt> list{0};
  seen.set(0);
  std::vector<Elt> gg;
  for (Elt x : gens)
    if (x != 0) gg.push_back(x);
  for (std::size_t i = 0; i < list.size(); ++i)
    for (Elt s : gg) {
      Elt y = g.mul(list[i], s);
      if (!seen.test(y)) {
        seen.set(y);
        list.push_back(y);
      }
    }
  return make_subgroup(g, std::move(list), gg);
}

Subgroup whole_group(const Group& g) {
  std::vector<Elt> all(g.order());
  std::iota(all.begin(), all.end(), 0);
  return make_subgroup(g, std::move(all), g.generators());
}

Subgroup trivial_subgroup(const Group& g) { return make_subgroup(g, {0}, {}); }

Subgroup cyclic_extension(const Group& g, const Subgroup& h, Elt x) {
  std::vector<Elt> out = h.elems;
  Elt c = x;
  while (!h.contains(c)) {
    for (Elt y : h.elems) out.push_back(g.mul(c, y));
    c = g.mul(c, x);
  }
  std::vector<Elt> gens = h.gens;
  gens.push_back(x);
  return make_subgroup(g, std::move(out), std::move(gens));
}

Subgroup join(const Group& g, const Subgroup& a, const Subgroup& b) {
  std::vector<Elt> gens = a.gens;
  gens.insert(gens.end(), b.gens.begin(), b.gens.end());
  return closure(g, gens);
}

namespace {

std::vector<Elt> greedy_gens(const Group& g, const std::vector<Elt>& elems) {
  if (elems.size() <= 1) return {};
  std::vector<Elt> order_sorted = elems;
  std::stable_sort(order_sorted.begin(), order_sorted.end(),
                   [&](Elt a, Elt b) { return g.elt_order(a) > g.elt_order(b); });
  std::vector<Elt> gens;
  Subgroup cur = trivial_subgroup(g);
  for (Elt x : order_sorted) {
    if (cur.order() == elems.size()) break;
    if (cur.contains(x)) continue;
    gens.push_back(x);
    cur = closure(g, gens);
  }
  return gens;
}

}  // namespace

std::vector<Elt> small_generating_set(const Group& g, const Subgroup& h) { return greedy_gens(g, h.elems); }

Subgroup intersection(const Group& g, const Subgroup& a, const Subgroup& b) {
  std::vector<Elt> out;
  std::set_intersection(a.elems.begin(), a.elems.end(), b.elems.begin(), b.elems.end(), std::back_inserter(out));
  auto gens = greedy_gens(g, out);
  return make_subgroup(g, std::move(out), std::move(gens));
}

Subgroup conjugate(const Group& g, const Subgroup& h, Elt x) {
  std::vector<Elt> out;
  out.reserve(h.order());
  for (Elt y : h.elems) out.push_back(g.conj(x, y));
  std::vector<Elt> gens;
  for (Elt y : h.gens) gens.push_back(g.conj(x, y));
  return make_subgroup(g, std::move(out), std::move(gens));
}

bool normalizes(const Group& g, Elt x, const Subgroup& h) {
  for (Elt y : h.gens)
    if (!h.contains(g.conj(x, y))) return false;
  return true;
}

bool centralizes(const Group& g, Elt x, const Subgroup& h) {
  for (Elt y : h.gens)
    if (g.mul(x, y) != g.mul(y, x)) return false;
  return true;
}

Subgroup centralizer(const Group& g, const Subgroup& h) {
  std::vector<Elt> out;
  for (Elt x = 0; x < g.order(); ++x)
    if (centralizes(g, x, h)) out.push_back(x);
  auto gens = greedy_gens(g, out);
  return make_subgroup(g, std::move(out), std::move(gens));
}

Subgroup normalizer(const Group& g, const Subgroup& h) {
  std::vector<Elt> out;
  for (Elt x = 0; x < g.order(); ++x)
    if (normalizes(g, x, h)) out.push_back(x);
  auto gens = greedy_gens(g, out);
  return make_subgroup(g, std::move(out), std::move(gens));
}

Subgroup center(const Group& g) { return centralizer(g, whole_group(g)); }

bool is_normal(const Group& g, const Subgroup& h) {
  for (Elt s : g.generators())
    if (!normalizes(g, s, h)) return false;
  return true;
}

Subgroup normal_closure(const Group& g, const Subgroup& h) {
  Subgroup cur = h;
  bool changed = true;
  while (changed) {
    changed = false;
    for (Elt s : g.generators()) {
      for (Elt t : cur.gens) {
        Elt c = g.conj(s, t);
        if (!cur.contains(c)) {
          std::vector<Elt> gens = cur.gens;
          gens.push_back(c);
          cur = closure(g, gens);
          changed = true;
          break;
        }
      }
      if (changed) break;
    }
  }
  return cur;
}

Subgroup derived_subgroup(const Group& g, const Subgroup& h) {
  std::vector<Elt> cs;
  for (std::size_t i = 0; i < h.gens.size(); ++i)
    for (std::size_t j = i + 1; j < h.gens.size(); ++j) {
      Elt c = g.comm(h.gens[i], h.gens[j]);
      if (c != 0) cs.push_back(c);
    }
  Subgroup cur = closure(g, cs);
  // Normal closure inside h.
  bool changed = true;
  while (changed) {
    changed = false;
    for (Elt s : h.gens) {
      for (Elt t : cur.gens) {
        Elt c = g.conj(s, t);
        if (!cur.contains(c)) {
          std::vector<Elt> gens = cur.gens;
          gens.push_back(c);
          cur = closure(g, gens);
          changed = true;
          break;
        }
      }
      if (changed) break;
    }
  }
  return cur;
}

bool is_p_group_order(std::uint64_t n, std::int64_t p) {
  if (n == 0) return false;
  while (n % static_cast<std::uint64_t>(p) == 0) n /= static_cast<std::uint64_t>(p);
  return n == 1;
}

std::int64_t prime_of_p_group(std::uint64_t n) {
  if (n < 2) return 0;
  auto f = factorize(static_cast<std::int64_t>(n));
  return f.size() == 1 ? f[0].first : 0;
}

std::uint64_t exponent(const Group& g, const Subgroup& h) {
  std::uint64_t e = 1;
  for (Elt x : h.elems) e = static_cast<std::uint64_t>(lcm64(static_cast<std::int64_t>(e), static_cast<std::int64_t>(g.elt_order(x))));
  return e;
}

SubgroupGroup subgroup_as_group(const Group& parent, const Subgroup& h) {
  std::vector<Key> gens;
  for (Elt x : h.gens) gens.push_back(parent.key_vec(x));
  SubgroupGroup out;
  out.group = Group::generate(parent.realization_ptr(), gens);
  out.embed.resize(out.group->order());
  for (Elt i = 0; i < out.group->order(); ++i) out.embed[i] = *parent.find(out.group->key(i));
  return out;
}

ConjugacyClasses conjugacy_classes(const Group& g) {
  const std::size_t n = g.order();
  std::vector<std::uint32_t> uf(n);
  std::iota(uf.begin(), uf.end(), 0u);
  auto findr = [&](std::uint32_t x) {
    while (uf[x] != x) {
      uf[x] = uf[uf[x]];
      x = uf[x];
    }
    return x;
  };
  for (Elt x = 0; x < n; ++x)
    for (Elt s : g.generators()) {
      std::uint32_t a = findr(x), b = findr(g.conj(s, x));
      if (a != b) uf[std::max(a, b)] = std::min(a, b);
    }
  ConjugacyClasses cc;
  cc.class_of.assign(n, 0);
  std::vector<std::int64_t> idx(n, -1);
  for (Elt x = 0; x < n; ++x) {
    std::uint32_t r = findr(x);
    if (idx[r] < 0) {
      idx[r] = static_cast<std::int64_t>(cc.classes.size());
      cc.classes.emplace_back();
    }
    cc.class_of[x] = static_cast<std::uint32_t>(idx[r]);
    cc.classes[static_cast<std::size_t>(idx[r])].push_back(x);
  }
  return cc;
}

Quotient quotient_group(const GroupPtr& g, const Subgroup& n) {
  if (!is_normal(*g, n)) fail(Errc::NotNormal, "quotient by a non-normal subgroup");
  const std::size_t ord = g->order();
  std::vector<std::uint32_t> coset(ord, 0xffffffffu);
  std::vector<Elt> reps;
  for (Elt x = 0; x < ord; ++x) {
    if (coset[x] != 0xffffffffu) continue;
    std::uint32_t c = static_cast<std::uint32_t>(reps.size());
    reps.push_back(x);
    for (Elt y : n.elems) coset[g->mul(x, y)] = c;
  }
  auto real = std::make_shared<QuotientRealization>(g, reps, coset);
  std::vector<Key> gens;
  for (Elt s : g->generators()) gens.push_back(Key{static_cast<std::int32_t>(coset[s])});
  Quotient q;
  q.group = Group::generate(real, gens);
  std::vector<Elt> cidx(reps.size());
  for (Elt i = 0; i < q.group->order(); ++i) cidx[static_cast<std::size_t>(q.group->key(i)[0])] = i;
  q.proj.resize(ord);
  for (Elt x = 0; x < ord; ++x) q.proj[x] = cidx[coset[x]];
  q.reps.resize(reps.size());
  for (std::size_t c = 0; c < reps.size(); ++c) q.reps[cidx[c]] = reps[c];
  return q;
}

Subgroup sylow_subgroup(const Group& g, std::int64_t p) {
  const std::uint64_t target = static_cast<std::uint64_t>(p_part(static_cast<std::int64_t>(g.order()), p));
  Subgroup cur = trivial_subgroup(g);
  while (cur.order() < target) {
    Subgroup nrm = normalizer(g, cur);
    // Least element of N(P) \ P whose p-th power falls back into P.
    Elt pick = 0;
    bool found = false;
    for (Elt x : nrm.elems) {
      if (cur.contains(x)) continue;
      if (cur.contains(g.pow(x, p))) {
        pick = x;
        found = true;
        break;
      }
    }
    if (!found) fail(Errc::SearchFailed, "Sylow ascent stalled");
    cur = cyclic_extension(g, cur, pick);
  }
  return cur;
}

std::optional<std::vector<Elt>> extend_hom(const Group& src, const std::vector<Elt>& src_gens, const Group& dst,
                                           const std::vector<Elt>& images) {
  const std::size_t n = src.order();
  std::vector<Elt> img(n, 0xffffffffu);
  img[0] = dst.identity();
  std::vector<Elt> queue{0};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    Elt x = queue[qi];
    for (std::size_t s = 0; s < src_gens.size(); ++s) {
      Elt y = src.mul(x, src_gens[s]);
      Elt v = dst.mul(img[x], images[s]);
      if (img[y] == 0xffffffffu) {
        img[y] = v;
        queue.push_back(y);
      } else if (img[y] != v) {
        return std::nullopt;
      }
    }
  }
  if (queue.size() != n) return std::nullopt;
  return img;
}

}  // namespace ptl
