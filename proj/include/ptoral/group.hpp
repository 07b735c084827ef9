#pragma once

// Exact finite-group arithmetic. A Group owns an enumerated element table
// over some Realization; every structural algorithm then works on element
// indices (Elt) and never touches the realization again.

#include "ptoral/errors.hpp"
#include "ptoral/zmod.hpp"

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace ptl {

using Elt = std::uint32_t;
using Key = std::vector<std::int32_t>;

class Group;
using GroupPtr = std::shared_ptr<const Group>;

class Realization {
 public:
  virtual ~Realization() = default;
  virtual int width() const = 0;
  virtual void identity(std::int32_t* out) const = 0;
  virtual void multiply(const std::int32_t* a, const std::int32_t* b, std::int32_t* out) const = 0;
  virtual void inverse(const std::int32_t* a, std::int32_t* out) const = 0;
  virtual std::string kind() const = 0;
};
using RealizationPtr = std::shared_ptr<const Realization>;

// Permutations of {0..d-1}; (ab)(i) = a(b(i)).
class PermRealization final : public Realization {
 public:
  explicit PermRealization(int degree) : degree_(degree) {}
  int width() const override { return degree_; }
  void identity(std::int32_t* out) const override;
  void multiply(const std::int32_t* a, const std::int32_t* b, std::int32_t* out) const override;
  void inverse(const std::int32_t* a, std::int32_t* out) const override;
  std::string kind() const override { return "perm"; }
  int degree() const { return degree_; }

 private:
  int degree_;
};

// n x n matrices over Z/q with q = p^k, stored row-major.
class MatrixRealization final : public Realization {
 public:
  MatrixRealization(int n, std::int64_t p, int k);
  int width() const override { return n_ * n_; }
  void identity(std::int32_t* out) const override;
  void multiply(const std::int32_t* a, const std::int32_t* b, std::int32_t* out) const override;
  void inverse(const std::int32_t* a, std::int32_t* out) const override;
  std::string kind() const override { return "matrix"; }
  int dim() const { return n_; }
  std::int64_t p() const { return p_; }
  int k() const { return k_; }
  std::int64_t modulus() const { return q_; }
  Key encode(const ZMat& m) const;
  ZMat decode(const std::int32_t* key) const;

 private:
  int n_;
  std::int64_t p_;
  int k_;
  std::int64_t q_;
};

// (Z/p^e)^r x| W. Elements are (v_0..v_{r-1}, w) with w an element index of
// the complement group; (v1,w1)(v2,w2) = (v1 + M(w1) v2, w1 w2).
class TameRealization final : public Realization {
 public:
  // `gen_matrices` gives one r x r matrix per generator of W; the action is
  // extended to all of W along the Cayley graph and verified there.
  TameRealization(std::int64_t p, int e, int r, GroupPtr w, const std::vector<ZMat>& gen_matrices);
  int width() const override { return r_ + 1; }
  void identity(std::int32_t* out) const override;
  void multiply(const std::int32_t* a, const std::int32_t* b, std::int32_t* out) const override;
  void inverse(const std::int32_t* a, std::int32_t* out) const override;
  std::string kind() const override { return "tame"; }

  std::int64_t p() const { return p_; }
  int e() const { return e_; }
  int rank() const { return r_; }
  std::int64_t modulus() const { return q_; }
  const GroupPtr& complement() const { return w_; }
  const std::vector<ZMat>& generator_matrices() const { return gen_mats_; }
  ZMat action(Elt w) const;

 private:
  std::int64_t p_;
  int e_;
  int r_;
  std::int64_t q_;
  GroupPtr w_;
  std::vector<ZMat> gen_mats_;
  std::vector<std::int32_t> mats_;  // |W| * r * r
};

class ProductRealization final : public Realization {
 public:
  explicit ProductRealization(std::vector<RealizationPtr> factors);
  int width() const override { return width_; }
  void identity(std::int32_t* out) const override;
  void multiply(const std::int32_t* a, const std::int32_t* b, std::int32_t* out) const override;
  void inverse(const std::int32_t* a, std::int32_t* out) const override;
  std::string kind() const override { return "product"; }
  const std::vector<RealizationPtr>& factors() const { return factors_; }
  int offset(std::size_t i) const { return offsets_[i]; }

 private:
  std::vector<RealizationPtr> factors_;
  std::vector<int> offsets_;
  int width_ = 0;
};

// Cosets of a normal subgroup; the key is the coset number.
class QuotientRealization final : public Realization {
 public:
  QuotientRealization(GroupPtr parent, std::vector<Elt> reps, std::vector<std::uint32_t> coset_of);
  int width() const override { return 1; }
  void identity(std::int32_t* out) const override { out[0] = 0; }
  void multiply(const std::int32_t* a, const std::int32_t* b, std::int32_t* out) const override;
  void inverse(const std::int32_t* a, std::int32_t* out) const override;
  std::string kind() const override { return "quotient"; }
  const GroupPtr& parent() const { return parent_; }
  const std::vector<Elt>& reps() const { return reps_; }

 private:
  GroupPtr parent_;
  std::vector<Elt> reps_;
  std::vector<std::uint32_t> coset_of_;
};

class Group {
 public:
  // Breadth-first closure of `gens` from the identity. Element 0 is the
  // identity; the order of the remaining elements is the BFS order, which is
  // the canonical element enumeration used everywhere downstream.
  static GroupPtr generate(RealizationPtr r, const std::vector<Key>& gens);
  // Build from an element list already known to be closed (e.g. the set of
  // all automorphisms of a group). Generators are chosen greedily.
  static GroupPtr from_closed_set(RealizationPtr r, const std::vector<Key>& elems);

  std::size_t order() const { return n_; }
  int width() const { return width_; }
  const Realization& realization() const { return *real_; }
  const RealizationPtr& realization_ptr() const { return real_; }

  const std::int32_t* key(Elt i) const { return data_.data() + static_cast<std::size_t>(i) * width_; }
  Key key_vec(Elt i) const { return Key(key(i), key(i) + width_); }
  std::optional<Elt> find(const std::int32_t* k) const;
  std::optional<Elt> find(const Key& k) const { return find(k.data()); }

  Elt identity() const { return 0; }
  Elt mul(Elt a, Elt b) const;
  Elt inv(Elt a) const { return inv_[a]; }
  Elt pow(Elt a, std::int64_t n) const;
  Elt conj(Elt g, Elt x) const { return mul(mul(g, x), inv_[g]); }  // g x g^-1
  Elt comm(Elt a, Elt b) const { return mul(mul(a, b), mul(inv_[a], inv_[b])); }
  std::uint64_t elt_order(Elt a) const;

  const std::vector<Elt>& generators() const { return gens_; }
  bool has_table() const { return !table_.empty(); }
  bool is_abelian() const;

 private:
  Group() = default;
  void index_insert(Elt i);
  void finish();
  std::uint64_t hash_key(const std::int32_t* k) const;

  RealizationPtr real_;
  int width_ = 0;
  std::size_t n_ = 0;
  std::vector<std::int32_t> data_;
  std::vector<std::uint32_t> slots_;
  std::size_t mask_ = 0;
  std::vector<Elt> gens_;
  std::vector<Elt> inv_;
  std::vector<std::uint16_t> table_;

  mutable std::once_flag orders_once_;
  mutable std::vector<std::uint32_t> orders_;
};

// --- Subgroups -------------------------------------------------------------

class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}
  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { w_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  std::size_t size() const { return n_; }
  std::size_t count() const;
  bool subset_of(const Bitset& o) const;
  std::uint64_t hash() const;
  bool operator==(const Bitset& o) const { return w_ == o.w_; }
  const std::vector<std::uint64_t>& words() const { return w_; }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

struct Subgroup {
  std::vector<Elt> elems;  // sorted
  Bitset bits;
  std::vector<Elt> gens;   // a generating set (not necessarily minimal)

  std::size_t order() const { return elems.size(); }
  bool contains(Elt x) const { return bits.test(x); }
  bool operator==(const Subgroup& o) const { return elems == o.elems; }
  // Canonical order: by order, then lexicographically on elements.
  bool operator<(const Subgroup& o) const;
  std::size_t position(Elt x) const;  // index of x in elems
};

Subgroup make_subgroup(const Group& g, std::vector<Elt> elems, std::vector<Elt> gens);
Subgroup closure(const Group& g, const std::vector<Elt>& gens);
Subgroup whole_group(const Group& g);
Subgroup trivial_subgroup(const Group& g);
// <H, x> when x normalizes H and x^m in H: union of cosets, no closure needed.
Subgroup cyclic_extension(const Group& g, const Subgroup& h, Elt x);
Subgroup join(const Group& g, const Subgroup& a, const Subgroup& b);
Subgroup intersection(const Group& g, const Subgroup& a, const Subgroup& b);
Subgroup conjugate(const Group& g, const Subgroup& h, Elt x);  // x H x^-1
Subgroup centralizer(const Group& g, const Subgroup& h);
Subgroup normalizer(const Group& g, const Subgroup& h);
Subgroup center(const Group& g);
Subgroup normal_closure(const Group& g, const Subgroup& h);
Subgroup derived_subgroup(const Group& g, const Subgroup& h);
bool is_normal(const Group& g, const Subgroup& h);
bool normalizes(const Group& g, Elt x, const Subgroup& h);
bool centralizes(const Group& g, Elt x, const Subgroup& h);
bool is_p_group_order(std::uint64_t n, std::int64_t p);
std::int64_t prime_of_p_group(std::uint64_t n);  // 0 if not a prime power > 1
std::uint64_t exponent(const Group& g, const Subgroup& h);
// A small generating set of h, chosen greedily by decreasing element order.
std::vector<Elt> small_generating_set(const Group& g, const Subgroup& h);

// The subgroup as a Group in its own right, plus the embedding of its
// element indices into the parent.
struct SubgroupGroup {
  GroupPtr group;
  std::vector<Elt> embed;  // group index -> parent index
};
SubgroupGroup subgroup_as_group(const Group& parent, const Subgroup& h);

// --- Classes, quotients, Sylow ---------------------------------------------

struct ConjugacyClasses {
  std::vector<std::uint32_t> class_of;
  std::vector<std::vector<Elt>> classes;  // each sorted; ordered by least member
};
ConjugacyClasses conjugacy_classes(const Group& g);

struct Quotient {
  GroupPtr group;
  std::vector<Elt> proj;  // parent index -> quotient index
  std::vector<Elt> reps;  // quotient index -> least parent element of the coset
};
Quotient quotient_group(const GroupPtr& g, const Subgroup& n);

Subgroup sylow_subgroup(const Group& g, std::int64_t p);

// --- Homomorphisms ---------------------------------------------------------

// Extend an assignment on generators of `src` to a full element map into
// `dst`, verifying multiplicativity on every Cayley-graph edge. Returns
// nullopt if the assignment does not define a homomorphism.
std::optional<std::vector<Elt>> extend_hom(const Group& src, const std::vector<Elt>& src_gens,
                                           const Group& dst, const std::vector<Elt>& images);

}  // namespace ptl
