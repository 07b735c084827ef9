#pragma once

// Integer and Z/p^k matrix helpers shared by the group kernel, the tower
// engine and the gate.

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace ptl {

using ZMat = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using ZVec = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

inline std::int64_t modq(std::int64_t a, std::int64_t q) {
  std::int64_t r = a % q;
  return r < 0 ? r + q : r;
}

std::int64_t ipow(std::int64_t b, int e);
int vp(std::int64_t n, std::int64_t p);  // p-adic valuation, n != 0
bool is_prime(std::int64_t n);
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);
std::int64_t p_part(std::int64_t n, std::int64_t p);
std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);
// Inverse of a mod q; nullopt when gcd(a, q) != 1.
std::optional<std::int64_t> inv_mod(std::int64_t a, std::int64_t q);

ZMat reduce(const ZMat& m, std::int64_t q);
ZMat mul_mod(const ZMat& a, const ZMat& b, std::int64_t q);
ZMat pow_mod(const ZMat& a, std::int64_t e, std::int64_t q);
// Inverse over Z/p^k (q = p^k); nullopt when not invertible mod p.
std::optional<ZMat> inverse_mod(const ZMat& m, std::int64_t p, std::int64_t q);
bool is_identity_mod(const ZMat& m, std::int64_t q);

// Linear algebra over the prime field F_p.
int rank_mod_p(ZMat m, std::int64_t p);
// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref_mod_p(ZMat& m, std::int64_t p);
// Basis of the right null space {v : m v = 0}, as columns.
ZMat nullspace_mod_p(const ZMat& m, std::int64_t p);

// Smith-style diagonalisation over the local ring Z/p^k: returns the
// p-adic valuations of the elementary divisors (k for zero entries), padded
// with k for the rank deficiency, one per column.
std::vector<int> local_smith_valuations(const ZMat& m, std::int64_t p, int k);

}  // namespace ptl
