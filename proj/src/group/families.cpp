#include "ptoral/families.hpp"

#include <numeric>

namespace ptl {

Key perm_from_cycles(int degree, const Cycles& cycles) {
  Key k(static_cast<std::size_t>(degree));
  std::iota(k.begin(), k.end(), 0);
  std::vector<bool> used(static_cast<std::size_t>(degree), false);
  for (const auto& c : cycles) {
    for (int x : c) {
      if (x < 0 || x >= degree) fail(Errc::InvalidSpec, "cycle point out of range");
      if (used[x]) fail(Errc::InvalidSpec, "cycles are not disjoint");
      used[x] = true;
    }
    for (std::size_t i = 0; i < c.size(); ++i) k[c[i]] = c[(i + 1) % c.size()];
  }
  return k;
}

GroupPtr perm_group(int degree, const std::vector<Cycles>& gens) {
  std::vector<Key> keys;
  for (const auto& c : gens) keys.push_back(perm_from_cycles(degree, c));
  return perm_group_images(degree, keys);
}

GroupPtr perm_group_images(int degree, const std::vector<Key>& gens) {
  for (const auto& k : gens) {
    if (static_cast<int>(k.size()) != degree) fail(Errc::InvalidSpec, "permutation has wrong degree");
    std::vector<bool> hit(static_cast<std::size_t>(degree), false);
    for (int x : k) {
      if (x < 0 || x >= degree || hit[x]) fail(Errc::InvalidSpec, "image list is not a permutation");
      hit[x] = true;
    }
  }
  return Group::generate(std::make_shared<PermRealization>(degree), gens);
}

GroupPtr matrix_group(int n, std::int64_t p, int k, const std::vector<ZMat>& gens) {
  auto r = std::make_shared<MatrixRealization>(n, p, k);
  std::vector<Key> keys;
  for (const auto& m : gens) {
    if (m.rows() != n || m.cols() != n) fail(Errc::InvalidSpec, "matrix generator has wrong shape");
    if (!inverse_mod(m, p, r->modulus())) fail(Errc::InvalidSpec, "matrix generator not invertible mod p");
    keys.push_back(r->encode(m));
  }
  return Group::generate(r, keys);
}

GroupPtr cyclic_group(int n) {
  Key k(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) k[i] = (i + 1) % n;
  return perm_group_images(n, {k});
}

GroupPtr abelian_group(const std::vector<int>& orders) {
  int deg = std::accumulate(orders.begin(), orders.end(), 0);
  std::vector<Key> gens;
  int off = 0;
  for (int n : orders) {
    Key k(static_cast<std::size_t>(deg));
    std::iota(k.begin(), k.end(), 0);
    for (int i = 0; i < n; ++i) k[off + i] = off + (i + 1) % n;
    gens.push_back(k);
    off += n;
  }
  return perm_group_images(std::max(deg, 1), deg ? gens : std::vector<Key>{});
}

namespace {

// Z/n extended by the multiplier x -> m x.
GroupPtr affine_cyclic(int n, int m) {
  Key a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    a[i] = (i + 1) % n;
    b[i] = static_cast<int>(modq(static_cast<std::int64_t>(m) * i, n));
  }
  return perm_group_images(n, {a, b});
}

}  // namespace

GroupPtr dihedral_group(int order) {
  if (order < 4 || order % 2) fail(Errc::InvalidSpec, "dihedral group needs even order >= 4");
  if (order == 4) return abelian_group({2, 2});
  return affine_cyclic(order / 2, -1);
}

GroupPtr semidihedral_group(int order) {
  if (order < 16 || (order & (order - 1))) fail(Errc::InvalidSpec, "semidihedral group needs order 2^k, k >= 4");
  int n = order / 2;
  return affine_cyclic(n, n / 2 - 1);
}

GroupPtr quaternion_group(int order) {
  if (order < 8 || (order & (order - 1))) fail(Errc::InvalidSpec, "quaternion group needs order 2^k, k >= 3");
  const std::int64_t n = order / 2;
  std::int64_t l = n + 1;
  while (!is_prime(l)) l += n;
  // an element of order exactly n in F_l^*
  std::int64_t z = 2;
  for (;; ++z) {
    std::int64_t g = 1;
    for (std::int64_t i = 0; i < (l - 1) / n; ++i) g = g * z % l;
    std::int64_t t = g, ord = 1;
    while (t != 1) {
      t = t * g % l;
      ++ord;
    }
    if (ord == n) {
      z = g;
      break;
    }
  }
  ZMat a(2, 2), b(2, 2);
  a << z, 0, 0, *inv_mod(z, l);
  b << 0, l - 1, 1, 0;
  return matrix_group(2, l, 1, {a, b});
}

GroupPtr symmetric_group(int n) {
  if (n < 1) fail(Errc::InvalidSpec, "symmetric group needs n >= 1");
  if (n == 1) return perm_group_images(1, {});
  Cycles c;
  std::vector<int> cyc(static_cast<std::size_t>(n));
  std::iota(cyc.begin(), cyc.end(), 0);
  return perm_group(n, {{cyc}, {{0, 1}}});
}

GroupPtr alternating_group(int n) {
  if (n < 3) return perm_group_images(std::max(n, 1), {});
  std::vector<Cycles> gens;
  for (int i = 0; i + 2 < n; ++i) gens.push_back({{i, i + 1, i + 2}});
  return perm_group(n, gens);
}

GroupPtr gl2_3() {
  ZMat t(2, 2), s(2, 2);
  t << 1, 1, 0, 1;
  s << 0, 1, 1, 0;
  return matrix_group(2, 3, 1, {t, s});
}

GroupPtr sl2_3() {
  ZMat u(2, 2), l(2, 2);
  u << 1, 1, 0, 1;
  l << 1, 0, 1, 1;
  return matrix_group(2, 3, 1, {u, l});
}

GroupPtr extraspecial_plus(std::int64_t p) {
  ZMat a = ZMat::Identity(3, 3), b = ZMat::Identity(3, 3);
  a(0, 1) = 1;
  b(1, 2) = 1;
  return matrix_group(3, p, 1, {a, b});
}

GroupPtr central_product_c4_d8() {
  // Pauli matrices over F_5, where 2 is a square root of -1.
  ZMat x(2, 2), z(2, 2), i(2, 2);
  x << 0, 1, 1, 0;
  z << 1, 0, 0, 4;
  i << 2, 0, 0, 2;
  return matrix_group(2, 5, 1, {x, z, i});
}

GroupPtr wreath_cyclic(int m, int n) {
  const int deg = m * n;
  Key base(static_cast<std::size_t>(deg)), top(static_cast<std::size_t>(deg));
  std::iota(base.begin(), base.end(), 0);
  for (int i = 0; i < m; ++i) base[i] = (i + 1) % m;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i) top[j * m + i] = ((j + 1) % n) * m + i;
  return perm_group_images(deg, {base, top});
}

GaloisField::GaloisField(std::int64_t p, int f) : p_(p), f_(f), q_(ipow(p, f)) {
  if (!is_prime(p) || f < 1) fail(Errc::InvalidSpec, "GF(p^f) needs a prime p and f >= 1");
  auto digits = [&](std::int64_t a) {
    std::vector<std::int64_t> d(static_cast<std::size_t>(f_), 0);
    for (int i = 0; i < f_; ++i) {
      d[i] = a % p_;
      a /= p_;
    }
    return d;
  };
  auto pack = [&](const std::vector<std::int64_t>& d) {
    std::int64_t a = 0;
    for (int i = f_ - 1; i >= 0; --i) a = a * p_ + d[i];
    return a;
  };
  // Try monic modulus polynomials x^f + c(x) in increasing order of c until
  // multiplication has no zero divisors.
  for (std::int64_t c = 0; c < q_; ++c) {
    auto low = digits(c);
    std::vector<std::int64_t> table(static_cast<std::size_t>(q_ * q_));
    bool field = true;
    for (std::int64_t a = 0; a < q_ && field; ++a) {
      auto da = digits(a);
      for (std::int64_t b = 0; b < q_; ++b) {
        auto db = digits(b);
        std::vector<std::int64_t> prod(static_cast<std::size_t>(2 * f_), 0);
        for (int i = 0; i < f_; ++i)
          for (int j = 0; j < f_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
        for (int d = 2 * f_ - 1; d >= f_; --d) {
          std::int64_t co = prod[d];
          if (!co) continue;
          prod[d] = 0;
          for (int i = 0; i < f_; ++i) prod[d - f_ + i] = modq(prod[d - f_ + i] - co * low[i], p_);
        }
        std::int64_t r = pack(std::vector<std::int64_t>(prod.begin(), prod.begin() + f_));
        if (a && b && r == 0) {
          field = false;
          break;
        }
        table[a * q_ + b] = r;
      }
    }
    if (!field) continue;
    mul_ = std::move(table);
    break;
  }
  inv_.assign(static_cast<std::size_t>(q_), 0);
  for (std::int64_t a = 1; a < q_; ++a)
    for (std::int64_t b = 1; b < q_; ++b)
      if (mul(a, b) == 1) inv_[a] = b;
  for (std::int64_t g = 1; g < q_; ++g) {
    std::int64_t x = g, ord = 1;
    while (x != 1) {
      x = mul(x, g);
      ++ord;
    }
    if (ord == q_ - 1) {
      prim_ = g;
      break;
    }
  }
}

std::int64_t GaloisField::add(std::int64_t a, std::int64_t b) const {
  std::int64_t r = 0, base = 1;
  for (int i = 0; i < f_; ++i) {
    r += ((a % p_ + b % p_) % p_) * base;
    a /= p_;
    b /= p_;
    base *= p_;
  }
  return r;
}

std::int64_t GaloisField::neg(std::int64_t a) const {
  std::int64_t r = 0, base = 1;
  for (int i = 0; i < f_; ++i) {
    r += ((p_ - a % p_) % p_) * base;
    a /= p_;
    base *= p_;
  }
  return r;
}

std::int64_t GaloisField::inv(std::int64_t a) const {
  if (a == 0) fail(Errc::InvalidSpec, "inverse of zero in a finite field");
  return inv_[a];
}

GroupPtr psl2(std::int64_t p, int f) {
  GaloisField k(p, f);
  const std::int64_t q = k.size();
  const int deg = static_cast<int>(q + 1);
  const std::int64_t inf = q;
  Key t(static_cast<std::size_t>(deg)), m(static_cast<std::size_t>(deg)), s(static_cast<std::size_t>(deg));
  const std::int64_t w = p == 2 ? k.primitive() : k.mul(k.primitive(), k.primitive());
  for (std::int64_t x = 0; x < q; ++x) {
    t[x] = static_cast<std::int32_t>(k.add(x, 1));
    m[x] = static_cast<std::int32_t>(k.mul(w, x));
    s[x] = static_cast<std::int32_t>(x == 0 ? inf : k.neg(k.inv(x)));
  }
  t[inf] = m[inf] = static_cast<std::int32_t>(inf);
  s[inf] = 0;
  return perm_group_images(deg, {t, m, s});
}

GroupPtr direct_product(const std::vector<GroupPtr>& factors) {
  std::vector<RealizationPtr> reals;
  for (const auto& f : factors) reals.push_back(f->realization_ptr());
  auto r = std::make_shared<ProductRealization>(reals);
  Key id(static_cast<std::size_t>(r->width()));
  r->identity(id.data());
  std::vector<Key> gens;
  for (std::size_t i = 0; i < factors.size(); ++i)
    for (Elt g : factors[i]->generators()) {
      Key k = id;
      const std::int32_t* src = factors[i]->key(g);
      std::copy(src, src + factors[i]->width(), k.begin() + r->offset(i));
      gens.push_back(k);
    }
  return Group::generate(r, gens);
}

GroupPtr tame_group(std::int64_t p, int e, int r, GroupPtr w, const std::vector<ZMat>& matrices) {
  auto real = std::make_shared<TameRealization>(p, e, r, w, matrices);
  std::vector<Key> gens;
  for (int i = 0; i < r; ++i) {
    Key k(static_cast<std::size_t>(r + 1), 0);
    k[i] = 1;
    gens.push_back(k);
  }
  for (Elt g : w->generators()) {
    Key k(static_cast<std::size_t>(r + 1), 0);
    k[r] = static_cast<std::int32_t>(g);
    gens.push_back(k);
  }
  return Group::generate(real, gens);
}

}  // namespace ptl
