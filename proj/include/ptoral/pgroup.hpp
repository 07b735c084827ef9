#pragma once

// Invariants of finite p-groups. Functions taking a Group treat the whole
// group as the p-group S.

#include "ptoral/group.hpp"

namespace ptl {

// p when |S| is a power of p (> 1), otherwise throws NotPGroup.
std::int64_t require_p_group(const Group& s);

Subgroup omega_layer(const Group& s, const Subgroup& p, int n);

// Normal subgroups M of S with N < M, |M:N| = p. The witness is the least
// element of M \ N by (order, index). With `max_order` > 0 only steps that
// have a witness of order <= max_order are returned; `abelian_only` keeps
// only abelian M.
struct CentralStep {
  Subgroup m;
  Elt witness;
};
std::vector<CentralStep> central_steps(const Group& s, const Subgroup& n, std::uint64_t max_order = 0,
                                       bool abelian_only = false);
std::vector<Subgroup> normal_subgroups_p(const Group& s);

struct ChiefSeries {
  std::vector<Subgroup> terms;            // 1 = S_0 < ... < S_k = S
  std::vector<Elt> witnesses;             // witnesses[i] in S_{i+1} \ S_i
  std::vector<std::uint64_t> witness_orders;
};
struct Subexponent {
  std::uint64_t value = 1;
  ChiefSeries series;
};
Subexponent subexponent(const Group& s);

// x in S \ A with |x| <= p^n and [x, S] <= Omega_n(A), least by index.
Elt subexp_witness(const Group& s, const Subgroup& a, std::uint64_t ex);

struct HomocyclicType {
  bool homocyclic = false;
  int rank = 0;
  std::uint64_t exponent = 1;
};
HomocyclicType is_homocyclic(const Group& s, const Subgroup& a);

struct LargeAbelianReport {
  std::optional<Subgroup> a;
  int k = 2;
  int e = 5;
  bool centralizer_ok = false;
  bool homocyclic_ok = false;
  bool uniqueness_checked = false;  // only when e >= 2k
  bool unique = false;
  std::size_t normal_abelian_examined = 0;
  std::vector<std::string> transcript;
  // p^{e-k+1} when A exists: a lower bound for the subexponent.
  std::optional<std::uint64_t> subexponent_lower_bound;
};
LargeAbelianReport find_large_abelian(const Group& s, int k = 2, int e = 5);

struct PRanks {
  int rk = 0;
  int srk = 0;
};
PRanks p_ranks(const Group& g, std::int64_t p);
int srk_bound(std::int64_t p, int n);

std::pair<Subgroup, Subgroup> upper_central_pair(const Group& s);
Subgroup frattini_subgroup(const Group& g, const Subgroup& q);

}  // namespace ptl
