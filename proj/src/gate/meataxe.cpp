#include "ptoral/gate.hpp"

#include <algorithm>
#include <random>

namespace ptl {

namespace {

using Poly = std::vector<std::int64_t>;  // low degree first, monic when it matters

void trim(Poly& f) {
  while (f.size() > 1 && f.back() == 0) f.pop_back();
}

// Remainder and quotient of f by monic g.
std::pair<Poly, Poly> divmod(Poly f, const Poly& g, std::int64_t p) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  if (f.size() - 1 < dg) return {{0}, f};
  Poly q(f.size() - dg, 0);
  for (std::size_t i = f.size(); i-- > dg;) {
    const std::int64_t c = f[i];
    if (c == 0) continue;
    q[i - dg] = c;
    for (std::size_t j = 0; j <= dg; ++j) f[i - dg + j] = modq(f[i - dg + j] - c * g[j], p);
  }
  f.resize(std::max<std::size_t>(dg, 1));
  trim(f);
  return {q, f};
}

// Characteristic polynomial via the Hessenberg form.
Poly charpoly(ZMat a, std::int64_t p) {
  const int n = static_cast<int>(a.rows());
  for (int m = 1; m + 1 < n; ++m) {
    int piv = -1;
    for (int i = m; i < n; ++i)
      if (a(i, m - 1) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != m) {
      a.row(piv).swap(a.row(m));
      a.col(piv).swap(a.col(m));
    }
    const std::int64_t inv = *inv_mod(a(m, m - 1), p);
    for (int i = m + 1; i < n; ++i) {
      const std::int64_t u = a(i, m - 1) * inv % p;
      if (u == 0) continue;
      for (int j = 0; j < n; ++j) a(i, j) = modq(a(i, j) - u * a(m, j), p);
      for (int j = 0; j < n; ++j) a(j, m) = modq(a(j, m) + u * a(j, i), p);
    }
  }
  // c_k = charpoly of the leading k x k block
  std::vector<Poly> c(n + 1);
  c[0] = {1};
  for (int k = 1; k <= n; ++k) {
    Poly ck(k + 1, 0);
    // (x - a_kk) c_{k-1}
    for (int i = 0; i < k; ++i) {
      ck[i + 1] = modq(ck[i + 1] + c[k - 1][i], p);
      ck[i] = modq(ck[i] - a(k - 1, k - 1) * c[k - 1][i], p);
    }
    std::int64_t prod = 1;
    for (int i = k - 1; i >= 1; --i) {
      prod = prod * a(i, i - 1) % p;
      const std::int64_t coef = prod * a(i - 1, k - 1) % p;
      if (coef == 0) continue;
      for (std::size_t j = 0; j < c[i - 1].size(); ++j) ck[j] = modq(ck[j] - coef * c[i - 1][j], p);
    }
    c[k] = ck;
  }
  return c[n];
}

// Distinct monic irreducible factors, by trial division in increasing degree.
std::vector<Poly> irreducible_factors(Poly f, std::int64_t p) {
  std::vector<Poly> out;
  trim(f);
  for (std::size_t d = 1; f.size() - 1 >= 2 * d || (f.size() - 1 >= d && d == 1); ++d) {
    const std::int64_t count = ipow(p, static_cast<int>(d));
    for (std::int64_t code = 0; code < count && f.size() > 1; ++code) {
      Poly g(d + 1, 0);
      g[d] = 1;
      std::int64_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = c % p;
        c /= p;
      }
      bool used = false;
      for (;;) {
        auto [q, r] = divmod(f, g, p);
        if (!(r.size() == 1 && r[0] == 0)) break;
        f = q;
        used = true;
      }
      if (used) out.push_back(g);
    }
    if (f.size() == 1) break;
  }
  if (f.size() > 1) out.push_back(f);
  return out;
}

ZMat poly_at(const Poly& f, const ZMat& a, std::int64_t p) {
  const auto n = a.rows();
  ZMat acc = ZMat::Zero(n, n);
  for (std::size_t i = f.size(); i-- > 0;) {
    acc = mul_mod(acc, a, p);
    for (Eigen::Index j = 0; j < n; ++j) acc(j, j) = modq(acc(j, j) + f[i], p);
  }
  return acc;
}

// Incremental echelon basis over F_p.
class Echelon {
 public:
  Echelon(int dim, std::int64_t p) : dim_(dim), p_(p) {}
  // Adds v if independent; returns whether it was.
  bool insert(const ZVec& v) {
    ZVec w = v.unaryExpr([this](std::int64_t x) { return modq(x, p_); });
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const std::int64_t c = w(pivots_[i]);
      if (c) w = (w - c * rows_[i]).unaryExpr([this](std::int64_t x) { return modq(x, p_); });
    }
    int piv = -1;
    for (int i = 0; i < dim_; ++i)
      if (w(i)) {
        piv = i;
        break;
      }
    if (piv < 0) return false;
    w = (w * *inv_mod(w(piv), p_)).unaryExpr([this](std::int64_t x) { return modq(x, p_); });
    rows_.push_back(w);
    pivots_.push_back(piv);
    original_.push_back(v);
    return true;
  }
  int size() const { return static_cast<int>(rows_.size()); }
  const std::vector<ZVec>& vectors() const { return original_; }

 private:
  int dim_;
  std::int64_t p_;
  std::vector<ZVec> rows_;
  std::vector<int> pivots_;
  std::vector<ZVec> original_;
};

ZMat columns(const std::vector<ZVec>& vs, int dim) {
  ZMat m(dim, static_cast<Eigen::Index>(vs.size()));
  for (std::size_t i = 0; i < vs.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = vs[i];
  return m;
}

std::vector<ZVec> spin_vectors(const ZVec& v, const std::vector<ZMat>& gens, std::int64_t p) {
  const int d = static_cast<int>(v.size());
  Echelon e(d, p);
  if (!e.insert(v)) return {};
  for (int i = 0; i < e.size(); ++i) {
    const ZVec b = e.vectors()[i];
    for (const auto& g : gens) e.insert((g * b).unaryExpr([p](std::int64_t x) { return modq(x, p); }));
  }
  return e.vectors();
}

struct Splitting {
  std::vector<ZMat> sub, quot;
};

// Change of basis to [U | complement]: the top-left block is the submodule.
Splitting split(const std::vector<ZMat>& gens, const std::vector<ZVec>& u, std::int64_t p) {
  const int d = static_cast<int>(gens.front().rows());
  const int s = static_cast<int>(u.size());
  Echelon e(d, p);
  for (const auto& v : u) e.insert(v);
  for (int i = 0; i < d; ++i) e.insert(ZVec::Unit(d, i));
  const ZMat b = columns(e.vectors(), d);
  const ZMat bi = *inverse_mod(b, p, p);
  Splitting out;
  for (const auto& g : gens) {
    const ZMat c = mul_mod(mul_mod(bi, g, p), b, p);
    out.sub.push_back(c.topLeftCorner(s, s));
    out.quot.push_back(c.bottomRightCorner(d - s, d - s));
  }
  return out;
}

class Chopper {
 public:
  Chopper(std::int64_t p, std::uint64_t seed, int budget) : p_(p), rng_(seed), budget_(budget) {}

  void chop(std::vector<ZMat> gens, int dim, std::vector<ModuleFactor>& out) {
    if (dim == 1) {
      out.push_back({1, std::move(gens)});
      return;
    }
    std::vector<ZMat> pool = gens;
    for (;;) {
      if (budget_-- <= 0) fail(Errc::ChopBudgetExceeded, "composition factor search ran out of random elements");
      const ZMat a = random_element(pool, dim);
      const auto factors = irreducible_factors(charpoly(a, p_), p_);
      for (const auto& f : factors) {
        const int deg = static_cast<int>(f.size()) - 1;
        const ZMat fa = poly_at(f, a, p_);
        const ZMat nul = nullspace_mod_p(fa, p_);
        if (nul.cols() == 0) continue;
        for (Eigen::Index j = 0; j < nul.cols(); ++j) {
          auto sub = spin_vectors(nul.col(j), gens, p_);
          if (static_cast<int>(sub.size()) < dim) return recurse(gens, sub, dim, out);
        }
        if (nul.cols() != deg) continue;
        // Norton: spin in the dual; a proper result gives its annihilator.
        std::vector<ZMat> tgens;
        for (const auto& g : gens) tgens.push_back(g.transpose());
        const ZMat tnul = nullspace_mod_p(fa.transpose(), p_);
        auto dual = spin_vectors(tnul.col(0), tgens, p_);
        if (static_cast<int>(dual.size()) == dim) {
          out.push_back({dim, std::move(gens)});
          return;
        }
        const ZMat ann = nullspace_mod_p(columns(dual, dim).transpose(), p_);
        std::vector<ZVec> sub;
        for (Eigen::Index j = 0; j < ann.cols(); ++j) sub.push_back(ann.col(j));
        return recurse(gens, sub, dim, out);
      }
    }
  }

 private:
  void recurse(const std::vector<ZMat>& gens, const std::vector<ZVec>& sub, int dim, std::vector<ModuleFactor>& out) {
    auto s = split(gens, sub, p_);
    const int k = static_cast<int>(sub.size());
    chop(std::move(s.sub), k, out);
    chop(std::move(s.quot), dim - k, out);
  }

  // a random combination over a growing pool of products, as in Holt-Rees
  ZMat random_element(std::vector<ZMat>& pool, int dim) {
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    pool.push_back(mul_mod(pool[pick(rng_)], pool[pick(rng_)], p_));
    std::uniform_int_distribution<std::int64_t> coef(0, p_ - 1);
    ZMat a = ZMat::Zero(dim, dim);
    for (const auto& w : pool) a = reduce(a + coef(rng_) * w, p_);
    return a;
  }

  std::int64_t p_;
  std::mt19937_64 rng_;
  int budget_;
};

}  // namespace

ZMat spin(const ZVec& v, const std::vector<ZMat>& gens, std::int64_t p) {
  return columns(spin_vectors(v, gens, p), static_cast<int>(v.size()));
}

std::vector<ModuleFactor> chop_module(const std::vector<ZMat>& gens, int dim, std::int64_t p, std::uint64_t seed,
                                      int budget) {
  if (!is_prime(p)) fail(Errc::InvalidSpec, "composition factors need a prime field");
  if (dim < 1) fail(Errc::InvalidSpec, "module dimension must be positive");
  std::vector<ZMat> g;
  for (const auto& m : gens) {
    if (m.rows() != dim || m.cols() != dim) fail(Errc::InvalidSpec, "module generator has the wrong shape");
    g.push_back(reduce(m, p));
  }
  if (g.empty()) g.push_back(ZMat::Identity(dim, dim));
  std::vector<ModuleFactor> out;
  Chopper(p, seed, budget).chop(std::move(g), dim, out);
  return out;
}

std::vector<int> composition_factors(const std::vector<ZMat>& gens, int dim, std::int64_t p, std::uint64_t seed) {
  std::vector<int> dims;
  for (const auto& f : chop_module(gens, dim, p, seed)) dims.push_back(f.dim);
  std::sort(dims.begin(), dims.end());
  return dims;
}

std::vector<int> composition_factors(const ModRep& r, std::uint64_t seed) {
  return composition_factors(r.gens, r.rank, r.p, seed);
}

}  // namespace ptl
