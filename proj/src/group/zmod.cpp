#include "ptoral/zmod.hpp"

#include <algorithm>
#include <cstdlib>

namespace ptl {

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

int vp(std::int64_t n, std::int64_t p) {
  int v = 0;
  n = std::llabs(n);
  while (n != 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::int64_t p_part(std::int64_t n, std::int64_t p) { return ipow(p, vp(n, p)); }

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  a = std::llabs(a);
  b = std::llabs(b);
  while (b) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) { return a / gcd64(a, b) * b; }

std::optional<std::int64_t> inv_mod(std::int64_t a, std::int64_t q) {
  std::int64_t old_r = modq(a, q), r = q, old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t t = old_r / r;
    std::swap(old_r, r);
    r -= t * old_r;
    std::swap(old_s, s);
    s -= t * old_s;
  }
  if (old_r != 1) return std::nullopt;
  return modq(old_s, q);
}

ZMat reduce(const ZMat& m, std::int64_t q) {
  return m.unaryExpr([q](std::int64_t x) { return modq(x, q); });
}

ZMat mul_mod(const ZMat& a, const ZMat& b, std::int64_t q) {
  ZMat c = ZMat::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      std::int64_t x = a(i, k);
      if (x == 0) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j) c(i, j) = (c(i, j) + x * b(k, j)) % q;
    }
  return reduce(c, q);
}

ZMat pow_mod(const ZMat& a, std::int64_t e, std::int64_t q) {
  ZMat r = ZMat::Identity(a.rows(), a.cols());
  ZMat b = reduce(a, q);
  while (e > 0) {
    if (e & 1) r = mul_mod(r, b, q);
    b = mul_mod(b, b, q);
    e >>= 1;
  }
  return r;
}

std::optional<ZMat> inverse_mod(const ZMat& m, std::int64_t p, std::int64_t q) {
  const Eigen::Index n = m.rows();
  ZMat a = reduce(m, q);
  ZMat inv = ZMat::Identity(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = c; r < n; ++r)
      if (a(r, c) % p != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return std::nullopt;
    a.row(c).swap(a.row(piv));
    inv.row(c).swap(inv.row(piv));
    std::int64_t u = *inv_mod(a(c, c), q);
    a.row(c) = reduce(a.row(c) * u, q);
    inv.row(c) = reduce(inv.row(c) * u, q);
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      std::int64_t f = a(r, c);
      a.row(r) = reduce(a.row(r) - f * a.row(c), q);
      inv.row(r) = reduce(inv.row(r) - f * inv.row(c), q);
    }
  }
  return inv;
}

bool is_identity_mod(const ZMat& m, std::int64_t q) {
  return reduce(m, q) == ZMat::Identity(m.rows(), m.cols());
}

std::vector<int> rref_mod_p(ZMat& m, std::int64_t p) {
  m = reduce(m, p);
  std::vector<int> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index c = 0; c < m.cols() && row < m.rows(); ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = row; r < m.rows(); ++r)
      if (m(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    m.row(row).swap(m.row(piv));
    std::int64_t u = *inv_mod(m(row, c), p);
    m.row(row) = reduce(m.row(row) * u, p);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, c) == 0) continue;
      std::int64_t f = m(r, c);
      m.row(r) = reduce(m.row(r) - f * m.row(row), p);
    }
    pivots.push_back(static_cast<int>(c));
    ++row;
  }
  return pivots;
}

int rank_mod_p(ZMat m, std::int64_t p) { return static_cast<int>(rref_mod_p(m, p).size()); }

ZMat nullspace_mod_p(const ZMat& m, std::int64_t p) {
  ZMat r = m;
  std::vector<int> piv = rref_mod_p(r, p);
  const Eigen::Index n = m.cols();
  std::vector<bool> is_piv(n, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<Eigen::Index> free;
  for (Eigen::Index c = 0; c < n; ++c)
    if (!is_piv[c]) free.push_back(c);
  ZMat basis = ZMat::Zero(n, static_cast<Eigen::Index>(free.size()));
  for (std::size_t j = 0; j < free.size(); ++j) {
    basis(free[j], j) = 1;
    for (std::size_t i = 0; i < piv.size(); ++i)
      basis(piv[i], j) = modq(-r(static_cast<Eigen::Index>(i), free[j]), p);
  }
  return basis;
}

std::vector<int> local_smith_valuations(const ZMat& m0, std::int64_t p, int k) {
  const std::int64_t q = ipow(p, k);
  ZMat a = reduce(m0, q);
  const Eigen::Index rows = a.rows(), cols = a.cols();
  std::vector<int> vals;
  Eigen::Index t = 0;
  while (t < std::min(rows, cols)) {
    int best = k;
    Eigen::Index br = -1, bc = -1;
    for (Eigen::Index r = t; r < rows; ++r)
      for (Eigen::Index c = t; c < cols; ++c)
        if (a(r, c) != 0) {
          int v = vp(a(r, c), p);
          if (v < best) {
            best = v;
            br = r;
            bc = c;
          }
        }
    if (br < 0) break;
    a.row(t).swap(a.row(br));
    a.col(t).swap(a.col(bc));
    // a(t,t) = p^best * unit; clear its row and column.
    std::int64_t unit = a(t, t) / ipow(p, best);
    std::int64_t uinv = *inv_mod(unit, q);
    for (Eigen::Index r = t + 1; r < rows; ++r) {
      if (a(r, t) == 0) continue;
      std::int64_t f = modq((a(r, t) / ipow(p, best)) * uinv, q);
      a.row(r) = reduce(a.row(r) - f * a.row(t), q);
    }
    for (Eigen::Index c = t + 1; c < cols; ++c) {
      if (a(t, c) == 0) continue;
      std::int64_t f = modq((a(t, c) / ipow(p, best)) * uinv, q);
      a.col(c) = reduce(a.col(c) - f * a.col(t), q);
    }
    vals.push_back(best);
    ++t;
  }
  while (static_cast<Eigen::Index>(vals.size()) < cols) vals.push_back(k);
  return vals;
}

}  // namespace ptl
