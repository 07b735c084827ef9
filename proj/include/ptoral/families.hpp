#pragma once

// Constructors for the standard small groups used as fixtures and test
// corpus.

#include "ptoral/group.hpp"

namespace ptl {

using Cycles = std::vector<std::vector<int>>;

// (0 1 2 3) maps 0 -> 1 -> 2 -> 3 -> 0.
Key perm_from_cycles(int degree, const Cycles& cycles);
GroupPtr perm_group(int degree, const std::vector<Cycles>& gens);
GroupPtr perm_group_images(int degree, const std::vector<Key>& gens);
GroupPtr matrix_group(int n, std::int64_t p, int k, const std::vector<ZMat>& gens);

GroupPtr cyclic_group(int n);
GroupPtr abelian_group(const std::vector<int>& cyclic_orders);
GroupPtr dihedral_group(int order);       // order 2n, n >= 2
GroupPtr semidihedral_group(int order);   // order 2^k, k >= 4
GroupPtr quaternion_group(int order);     // order 2^k, k >= 3
GroupPtr symmetric_group(int n);
GroupPtr alternating_group(int n);
GroupPtr gl2_3();
GroupPtr sl2_3();
GroupPtr extraspecial_plus(std::int64_t p);   // p^{1+2}, exponent p for p odd
GroupPtr central_product_c4_d8();
GroupPtr wreath_cyclic(int m, int n);         // C_m wr C_n acting on m*n points
GroupPtr psl2(std::int64_t p, int f);         // PSL_2(p^f) on the projective line
GroupPtr direct_product(const std::vector<GroupPtr>& factors);
GroupPtr tame_group(std::int64_t p, int e, int r, GroupPtr w, const std::vector<ZMat>& matrices);

// GF(p^f); element a in 0..q-1 is the polynomial with base-p digits of a,
// reduced modulo the least monic irreducible of degree f.
class GaloisField {
 public:
  GaloisField(std::int64_t p, int f);
  std::int64_t size() const { return q_; }
  std::int64_t add(std::int64_t a, std::int64_t b) const;
  std::int64_t neg(std::int64_t a) const;
  std::int64_t mul(std::int64_t a, std::int64_t b) const { return mul_[a * q_ + b]; }
  std::int64_t inv(std::int64_t a) const;
  std::int64_t primitive() const { return prim_; }

 private:
  std::int64_t p_;
  int f_;
  std::int64_t q_;
  std::vector<std::int64_t> mul_;
  std::vector<std::int64_t> inv_;
  std::int64_t prim_ = 1;
};

}  // namespace ptl
