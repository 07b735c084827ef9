#pragma once

// Subgroup lattices, automorphism groups, isomorphism search and cheap
// isomorphism invariants.

#include "ptoral/group.hpp"

#include <map>
#include <unordered_map>

namespace ptl {

class SubgroupLattice {
 public:
  // All subgroups of `within` (a subgroup of g), in canonical order.
  // p-subgroups use normalizer ascent and record index-p covers, so
  // `maximal(i)` is exact; general groups fall back to cyclic joins and
  // compute maximal lists from containment.
  // A nonzero `max_order` stops the enumeration above that order and lifts
  // the size cap.
  SubgroupLattice(const Group& g, const Subgroup& within, std::uint64_t max_order = 0);

  std::size_t size() const { return subs_.size(); }
  const Subgroup& operator[](std::size_t i) const { return subs_[i]; }
  const std::vector<Subgroup>& all() const { return subs_; }
  std::optional<std::size_t> index_of(const Bitset& b) const;
  std::optional<std::size_t> index_of(const Subgroup& h) const { return index_of(h.bits); }
  const std::vector<std::uint32_t>& maximal(std::size_t i) const { return maximal_[i]; }

 private:
  std::vector<Subgroup> subs_;
  std::vector<std::vector<std::uint32_t>> maximal_;
  std::unordered_multimap<std::uint64_t, std::uint32_t> index_;
};

// Cap: |within| <= caps().subgroups unless an order filter is given.
std::vector<Subgroup> enumerate_subgroups(const Group& g, bool up_to_conjugacy,
                                          std::optional<std::uint64_t> order_filter = std::nullopt);
std::vector<Subgroup> normal_subgroups(const Group& g);

// Least (canonical) conjugate of each subgroup's class under conjugation by g.
std::vector<Subgroup> conjugacy_class_reps(const Group& g, const std::vector<Subgroup>& subs);

// Aut(P) as permutations of P's element indices (a PermRealization of degree |P|).
GroupPtr automorphism_group(const Group& p);

// Isomorphism g1 -> g2 as a full element map, or nullopt.
std::optional<std::vector<Elt>> find_isomorphism(const Group& g1, const Group& g2);

// Elementary divisors p^e of an abelian subgroup, sorted ascending.
std::vector<std::uint64_t> abelian_invariants(const Group& g, const Subgroup& a);

struct Fingerprint {
  std::uint64_t order = 0;
  std::map<std::uint64_t, std::uint64_t> class_sizes;   // size -> multiplicity
  std::vector<std::uint64_t> abelianization;            // elementary divisors
  int derived_length = 0;                               // -1 when not solvable
  std::map<std::uint64_t, std::uint64_t> order_histogram;
  bool operator==(const Fingerprint&) const = default;
};
Fingerprint fingerprint(const Group& g);

}  // namespace ptl
