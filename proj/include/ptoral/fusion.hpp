#pragma once

// Fusion systems over a finite p-group S. Morphisms are isomorphisms
// between subgroups of S, stored positionally: img[k] is the image of the
// k-th (sorted) element of the source subgroup. Hom sets are kept as one
// automizer per F-class representative plus one identification iso per
// class member; everything else is reconstructed on demand.

#include "ptoral/lattice.hpp"

#include <memory>
#include <string>

namespace ptl {

struct FusionMap {
  std::uint32_t src = 0;  // lattice index
  std::uint32_t dst = 0;  // lattice index of the image
  std::vector<Elt> img;
  bool operator==(const FusionMap&) const = default;
};

struct GeneratorDatum {
  std::vector<Elt> subgroup_gens;                // generators of P in S
  std::vector<std::vector<Elt>> automorphisms;   // images of subgroup_gens
};

struct GroupOrigin {
  GroupPtr g;
  std::vector<Elt> embed;  // S index -> G index
};

class FusionSystem {
 public:
  std::int64_t prime() const { return p_; }
  const GroupPtr& sylow() const { return s_; }
  const Group& s() const { return *s_; }
  const SubgroupLattice& lattice() const { return *lat_; }
  const Subgroup& sub(std::size_t i) const { return (*lat_)[i]; }
  std::size_t index_of(const Subgroup& h) const { return *lat_->index_of(h); }

  std::size_t class_count() const { return classes_.size(); }
  std::uint32_t class_of(std::size_t sub) const { return cls_of_[sub]; }
  std::uint32_t rep(std::size_t c) const { return classes_[c].rep; }
  const std::vector<std::uint32_t>& members(std::size_t c) const { return classes_[c].members; }
  // Aut_F(rep) as positional maps of the representative, sorted.
  const std::vector<std::vector<Elt>>& automizer(std::size_t c) const { return classes_[c].aut; }
  const std::vector<std::vector<Elt>>& automizer_gens(std::size_t c) const { return classes_[c].gens; }
  // Identification iso member -> representative.
  FusionMap iota(std::size_t sub) const { return {static_cast<std::uint32_t>(sub), classes_[cls_of_[sub]].rep, iota_[sub]}; }

  bool contains(const FusionMap& f) const;
  // Aut_F(P) for an arbitrary subgroup, transported from its representative.
  std::vector<std::vector<Elt>> automizer_of(std::size_t sub) const;
  std::uint64_t automizer_order(std::size_t sub) const { return classes_[cls_of_[sub]].aut.size(); }
  // Total number of morphisms (isomorphisms between subgroups) in F.
  std::uint64_t morphism_count() const;

  const std::optional<GroupOrigin>& origin() const { return origin_; }

  friend class FusionBuilder;

 private:
  struct Class {
    std::uint32_t rep = 0;
    std::vector<std::uint32_t> members;
    std::vector<std::vector<Elt>> aut;
    std::vector<std::vector<Elt>> gens;
  };
  std::int64_t p_ = 0;
  GroupPtr s_;
  std::shared_ptr<const SubgroupLattice> lat_;
  std::vector<std::uint32_t> cls_of_;
  std::vector<std::vector<Elt>> iota_;
  std::vector<Class> classes_;
  std::optional<GroupOrigin> origin_;
};

using FusionPtr = std::shared_ptr<const FusionSystem>;

// --- construction ------------------------------------------------------------

FusionPtr fusion_of_group(const GroupPtr& g, const Subgroup& s);
FusionPtr generated_fusion(const GroupPtr& s, const std::vector<GeneratorDatum>& data);
// Same, reusing an already built lattice of S.
FusionPtr generated_fusion(const GroupPtr& s, std::shared_ptr<const SubgroupLattice> lat,
                           const std::vector<GeneratorDatum>& data);
FusionPtr inner_fusion(const GroupPtr& s);

// Generated by Hom_S and injective maps P -> S, each given by the images of
// generators of P. Used to reload serialized systems.
struct MapDatum {
  std::vector<Elt> gens;
  std::vector<Elt> images;
};
FusionPtr fusion_from_maps(const GroupPtr& s, const std::vector<MapDatum>& data);

// --- morphism helpers ----------------------------------------------------------

FusionMap compose(const FusionSystem& f, const FusionMap& a, const FusionMap& b);  // a after b
FusionMap inverse(const FusionSystem& f, const FusionMap& a);
FusionMap restrict_to(const FusionSystem& f, const FusionMap& a, std::size_t sub);
FusionMap identity_map(const FusionSystem& f, std::size_t sub);
// The homomorphism P -> S given by images of P's generators, if it is an
// injective homomorphism.
std::optional<FusionMap> map_from_gen_images(const FusionSystem& f, std::size_t sub, const std::vector<Elt>& images);
Elt apply(const FusionSystem& f, const FusionMap& a, Elt x);

// Hom_F(P, Q) modulo Inn(Q): one representative per class.
std::vector<FusionMap> hom_classes(const FusionSystem& f, std::size_t p, std::size_t q);
// All isomorphisms in F with source P.
std::vector<FusionMap> morphisms_from(const FusionSystem& f, std::size_t p);

// --- saturation and subgroup classification -----------------------------------

struct SaturationFailure {
  std::string axiom;        // "sylow" or "extension"
  std::string reason;
  std::uint32_t subgroup = 0;
  std::optional<FusionMap> morphism;
  std::optional<std::uint32_t> n_phi;
};

struct ClassFlags {
  std::uint32_t subgroup = 0;
  bool fully_normalized = false;
  bool fully_centralized = false;
  bool fully_automized = false;
  bool receptive = false;
  bool centric = false;
  bool radical = false;
  bool essential = false;
  bool weakly_closed = false;
  bool strongly_closed = false;
};

struct SaturationReport {
  bool sylow_axiom = true;
  bool extension_axiom = true;
  bool continuity_axiom = true;  // vacuous over a finite S
  bool saturated() const { return sylow_axiom && extension_axiom; }
  std::vector<SaturationFailure> failures;
  std::vector<ClassFlags> per_class;  // flags for each class representative
};

SaturationReport saturation_check(const FusionSystem& f);
// Re-verify a failure witness independently of the checker.
bool verify_failure(const FusionSystem& f, const SaturationFailure& w);

bool fully_normalized(const FusionSystem& f, std::size_t sub);
bool fully_centralized(const FusionSystem& f, std::size_t sub);
bool fully_automized(const FusionSystem& f, std::size_t sub);
bool receptive(const FusionSystem& f, std::size_t sub, std::optional<SaturationFailure>* witness = nullptr);
bool centric(const FusionSystem& f, std::size_t sub);
bool radical(const FusionSystem& f, std::size_t sub);
bool has_strongly_p_embedded(const Group& g, std::int64_t p);
bool quillen_disconnected(const Group& g, std::int64_t p);
bool essential(const FusionSystem& f, std::size_t sub);
bool weakly_closed(const FusionSystem& f, std::size_t sub);
bool strongly_closed(const FusionSystem& f, std::size_t sub);
ClassFlags classify_subgroup(const FusionSystem& f, std::size_t sub);

// Out_F(P) = Aut_F(P)/Inn(P) as an abstract group.
GroupPtr out_group(const FusionSystem& f, std::size_t sub);

// F-conjugacy classes of elements: class id per element of S.
std::vector<std::uint32_t> element_classes(const FusionSystem& f);

struct StronglyClosed {
  std::vector<std::uint32_t> subgroups;  // nontrivial strongly closed, lattice indices
  std::uint32_t minsc = 0;               // lattice index of the intersection
  bool minsc_trivial = false;
};
StronglyClosed strongly_closed_lattice(const FusionSystem& f);

// --- Alperin -------------------------------------------------------------------

struct AlperinStep {
  std::uint32_t r = 0;          // fully normalized centric-radical subgroup (or S)
  std::uint32_t generator = 0;  // index into alperin_generators(r)
  std::uint32_t applied_to = 0; // subgroup the restriction is taken on
};
struct AlperinWord {
  std::uint32_t src = 0;
  std::vector<AlperinStep> steps;
};

class AlperinData {
 public:
  explicit AlperinData(const FusionSystem& f);
  const std::vector<std::uint32_t>& subgroups() const { return subs_; }
  const std::vector<std::vector<Elt>>& generators(std::uint32_t r) const;
  std::optional<AlperinWord> certificate(const FusionMap& phi) const;
  FusionMap recompose(const AlperinWord& w) const;
  // Morphisms with source P reachable by words, versus |Hom_F(P, S)|.
  std::pair<std::uint64_t, std::uint64_t> coverage(std::uint32_t p) const;

 private:
  const FusionSystem& f_;
  std::vector<std::uint32_t> subs_;
  std::vector<std::vector<std::vector<Elt>>> gens_;  // per lattice index, empty unless in subs_
};

// --- derived systems --------------------------------------------------------------

FusionMap lift_mod_q(const FusionSystem& f, const FusionMap& phi, std::size_t q, bool saturated);
FusionMap normalizer_map(const FusionSystem& f, std::size_t p, std::size_t q, bool saturated);

struct QuotientFusion {
  FusionPtr f;
  Quotient q;  // S -> S/Q
};
QuotientFusion quotient_fusion(const FusionSystem& f, std::size_t q);

struct ProductFusion {
  FusionPtr f;
  std::vector<Elt> embed1, embed2;  // S_i -> S_1 x S_2
};
ProductFusion product_fusion(const FusionSystem& f1, const FusionSystem& f2);

// All isomorphisms g1 -> g2 (as full element maps).
std::vector<std::vector<Elt>> all_isomorphisms(const Group& g1, const Group& g2);
std::optional<std::vector<Elt>> fusion_isomorphism(const FusionSystem& f1, const FusionSystem& f2);

// Every generating morphism of `small`, pushed along the injective
// homomorphism `embed` (S_small -> S_big), lies in `big`. On failure the
// offending morphism of `small` is returned.
std::optional<FusionMap> subsystem_violation(const FusionSystem& small, const FusionSystem& big,
                                             const std::vector<Elt>& embed);

}  // namespace ptl
