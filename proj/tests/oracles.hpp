#pragma once

// Brute-force oracles and random generators shared by the unit tests and the acceptance run.

#include "ptoral/lattice.hpp"

#include <algorithm>
#include <functional>
#include <random>

namespace ptl::oracle {

// --- brute-force module oracle over F_p^d, vectors as base-p codes ------------------

// Subspaces of F_p^d as sets of base-p codes, with addition and the
// generators tabulated.
struct Space {
  std::int64_t p;
  int d;
  int n;
  std::vector<int> add;                 // n * n
  std::vector<std::vector<int>> apply;  // per generator

  Space(std::int64_t p_, int d_, const std::vector<ZMat>& gens) : p(p_), d(d_), n(static_cast<int>(ipow(p_, d_))) {
    add.resize(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        auto x = vec(a), y = vec(b);
        for (int i = 0; i < d; ++i) x[i] += y[i];
        add[static_cast<std::size_t>(a) * n + b] = code(x);
      }
    for (const auto& g : gens) {
      std::vector<int> t(n);
      for (int a = 0; a < n; ++a) {
        auto x = vec(a);
        std::vector<std::int64_t> y(d, 0);
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) y[i] += g(i, j) * x[j];
        t[a] = code(y);
      }
      apply.push_back(std::move(t));
    }
  }
  std::vector<std::int64_t> vec(int c) const {
    std::vector<std::int64_t> v(d);
    for (int i = 0; i < d; ++i) {
      v[i] = c % p;
      c /= static_cast<int>(p);
    }
    return v;
  }
  int code(const std::vector<std::int64_t>& v) const {
    int c = 0;
    for (int i = d; i-- > 0;) c = c * static_cast<int>(p) + static_cast<int>(modq(v[i], p));
    return c;
  }
};

// Smallest set containing `base` and v closed under + and the generators;
// gives up (returns empty) once it reaches `limit` elements.
inline std::vector<int> invariant_closure(const Space& s, const std::vector<int>& base, int v, std::size_t limit) {
  std::vector<char> in(s.n, 0);
  std::vector<int> members, todo;
  auto push = [&](int x) {
    if (!in[x]) {
      in[x] = 1;
      members.push_back(x);
      todo.push_back(x);
    }
  };
  for (int x : base) push(x);
  todo.clear();
  push(v);
  while (!todo.empty()) {
    if (members.size() >= limit) return {};
    const int x = todo.back();
    todo.pop_back();
    for (const auto& t : s.apply) push(t[x]);
    for (std::size_t i = 0; i < members.size(); ++i) push(s.add[static_cast<std::size_t>(x) * s.n + members[i]]);
  }
  return members;
}

inline int dim_of(std::size_t size, std::int64_t p) {
  int d = 0;
  while (size > 1) {
    size /= static_cast<std::size_t>(p);
    ++d;
  }
  return d;
}

// Composition factor dimensions from a maximal chain of invariant subspaces.
inline std::vector<int> brute_factors(const std::vector<ZMat>& gens, int d, std::int64_t p) {
  const Space s(p, d, gens);
  std::vector<int> cur{0};
  std::vector<int> out;
  while (static_cast<int>(cur.size()) < s.n) {
    std::vector<char> in(s.n, 0);
    for (int x : cur) in[x] = 1;
    std::vector<int> best;
    std::size_t limit = static_cast<std::size_t>(s.n) + 1;
    for (int v = 1; v < s.n; ++v) {
      if (in[v]) continue;
      auto c = invariant_closure(s, cur, v, limit);
      if (!c.empty() && c.size() < limit) {
        best = c;
        limit = c.size();
      }
    }
    out.push_back(dim_of(best.size(), p) - dim_of(cur.size(), p));
    cur = best;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Oracle: minimise over every maximal chain of normal subgroups, using the
// general normal-subgroup enumeration, the largest per-step least order.
inline std::uint64_t subexponent_oracle(const Group& s) {
  auto normals = normal_subgroups(s);
  std::uint64_t best = ~0ull;
  std::function<void(std::size_t, std::uint64_t)> dfs = [&](std::size_t i, std::uint64_t worst) {
    if (worst >= best) return;
    if (normals[i].order() == s.order()) {
      best = worst;
      return;
    }
    for (std::size_t j = 0; j < normals.size(); ++j) {
      const auto& m = normals[j];
      if (m.order() == normals[i].order() * static_cast<std::size_t>(prime_of_p_group(s.order())) &&
          normals[i].bits.subset_of(m.bits)) {
        std::uint64_t least = ~0ull;
        for (Elt x : m.elems)
          if (!normals[i].contains(x)) least = std::min(least, s.elt_order(x));
        dfs(j, std::max(worst, least));
      }
    }
  };
  if (s.order() == 1) return 1;
  dfs(0, 1);
  return best;
}

// --- generators ----------------------------------------------------------------------

inline ZMat random_invertible(std::mt19937& rng, int d, std::int64_t p) {
  std::uniform_int_distribution<std::int64_t> e(0, p - 1);
  for (;;) {
    ZMat m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i, j) = e(rng);
    if (rank_mod_p(m, p) == d) return m;
  }
}

// Block upper triangular with the given diagonal block sizes, then a random
// change of basis.
inline std::vector<ZMat> random_module(std::mt19937& rng, const std::vector<int>& blocks, int ngens, std::int64_t p) {
  int d = 0;
  for (int b : blocks) d += b;
  std::uniform_int_distribution<std::int64_t> e(0, p - 1);
  const ZMat c = random_invertible(rng, d, p);
  const ZMat ci = *inverse_mod(c, p, p);
  std::vector<ZMat> out;
  for (int g = 0; g < ngens; ++g) {
    ZMat m = ZMat::Zero(d, d);
    int off = 0;
    for (int b : blocks) {
      m.block(off, off, b, b) = random_invertible(rng, b, p);
      for (int i = off; i < off + b; ++i)
        for (int j = off + b; j < d; ++j) m(i, j) = e(rng);
      off += b;
    }
    out.push_back(mul_mod(mul_mod(c, m, p), ci, p));
  }
  return out;
}

}  // namespace ptl::oracle
