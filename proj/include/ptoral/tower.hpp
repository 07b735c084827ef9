#pragma once

// Finite truncations S_n = Omega_n(T) x| W of a discrete p-toral group, with
// a fusion system per level generated by a rule that is uniform in n.

#include "ptoral/fusion.hpp"

#include <array>
#include <string>

namespace ptl {

// An automorphism of every S_n: (v, w) -> (B v, phi(w)), phi given on the
// generators of W as exponent vectors in W's generators.
struct NormalizerRule {
  ZMat matrix;
  std::vector<std::vector<int>> complement_images;
};

enum class EssentialSelection { None, All, Base };

struct TowerSpec {
  std::int64_t p = 2;
  int rank = 1;
  GroupPtr complement;           // W
  std::vector<ZMat> action;      // one integral matrix per generator of W
  // Optional: divide level n by <p^{n-1} v> (a W-fixed vector).
  std::optional<std::vector<std::int64_t>> torus_quotient;
  std::vector<NormalizerRule> normalizer;
  // SL_2(p) on the subgroups E = C_p x C_p with E ∩ T_n = Z(S_n): on every
  // S-class, or only on the class of Z(S_n)<x> for x the first generator of W.
  EssentialSelection elementary = EssentialSelection::None;
  int n0 = 1;
  int n1 = 1;
  std::string name;
};

struct TruncationLevel {
  int n = 0;
  GroupPtr cover;               // (Z/p^n)^r x| W before any quotient
  GroupPtr s;
  std::vector<Elt> proj;        // cover -> s
  std::vector<Elt> reps;        // s -> cover
  Subgroup torus;
  std::shared_ptr<const SubgroupLattice> lattice;
  FusionPtr f;
};

TruncationLevel build_level(const TowerSpec& spec, int n);
std::vector<TruncationLevel> build_levels(const TowerSpec& spec);
// Inclusion S_lo -> S_hi: (v, w) -> (p^{hi-lo} v, w).
std::vector<Elt> inclusion(const TowerSpec& spec, const TruncationLevel& lo, const TruncationLevel& hi);

struct Threshold {
  std::optional<int> value;
  bool confirmed = false;  // holds at the threshold level and two more built levels
};

struct StabilizationReport {
  std::vector<int> levels;
  bool increasing = true;
  Threshold centralizer;   // least n with C_{S_N}(Omega_n(T_N)) = T_N for every built N >= n
  Threshold injectivity;   // least n with Aut_{F_N}(T_N) -> Aut(Omega_n(T_N)) injective
  Threshold automizer;     // least i with Aut_{F_j}(T_j) constant and compatible for j >= i
  std::vector<std::uint64_t> torus_automizer_orders;
  std::vector<bool> automizer_compatible;  // restriction from level j+1 equals level j
};

// Throws NotIncreasing (witness in the message) when some F_n is not
// contained in F_{n+1}.
StabilizationReport verify_tower(const TowerSpec& spec, const std::vector<TruncationLevel>& levels);

struct TorusAutomizer {
  int level = 0;
  std::int64_t modulus = 0;
  std::uint64_t order = 0;
  std::vector<ZMat> matrices;  // all elements, sorted; empty for quotient towers
  bool stable = false;
};
// Throws NotStabilized if the automizer threshold is not confirmed.
TorusAutomizer torus_automizer(const TowerSpec& spec, const std::vector<TruncationLevel>& levels);

struct MinscEntry {
  int n = 0;
  std::uint64_t minsc_order = 0;
  bool minsc_is_s = false;
  bool minsc_trivial = false;
  std::vector<std::uint64_t> strongly_closed_orders;
  bool outside_fused_into_torus = false;
  bool proper_over_torus_strongly_closed = false;
};
struct MinscChain {
  std::vector<MinscEntry> entries;
  std::optional<int> threshold;  // S_n ⊇ Omega_1(Z(S)) and C_S(S_n) = Z(S), measured in the top level
  bool monotone = true;          // image of minsc(F_i) <= minsc(F_{i+1}) past the threshold
  std::uint64_t union_order = 0;
};
MinscChain minsc_tower(const TowerSpec& spec, const std::vector<TruncationLevel>& levels);

// --- torus action at truncation --------------------------------------------------

// All elements of the matrix group generated by `gens` modulo p^k.
std::vector<ZMat> matrix_group_elements(const std::vector<ZMat>& gens, std::int64_t p, int k);

struct SubtorusProfile {
  std::vector<int> max_proper_rank;  // index k-1, for k = 1..k_max
  bool stably_none = false;          // 0 for every level from some k on (and at k_max)
  std::optional<int> none_from;
};
SubtorusProfile invariant_subtorus_profile(const std::vector<ZMat>& gens, std::int64_t p, int rank, int k_max);

struct CentralizerLevel {
  int k = 0;
  std::uint64_t order = 1;
  std::uint64_t exponent = 1;
};
struct CentralizerVerdict {
  std::vector<CentralizerLevel> levels;
  int ell = 0;                 // v_p(|W|)
  bool stabilizing = false;    // order constant over the last three levels
  bool growing = false;        // order strictly increasing over the last three levels
  bool dichotomy_holds = true; // stabilizing implies exponent <= p^ell
};
CentralizerVerdict centralizer_exponent_check(const std::vector<ZMat>& gens, std::int64_t p, int rank, int k_max);

// Elements A ≡ I mod p^m of GL_r(Z/p^k), A != I, where p^j || (A - I): the
// finite shadow of faithfulness is that every such A has order exactly
// p^{k-j}, so no lift to a finite-order matrix over Z_p exists. For p = 2
// the check is run with m = 1 (where -I violates it) and m = 2.
struct FaithfulnessVerdict {
  std::int64_t p = 0;
  int rank = 0;
  int k = 0;
  int m = 1;
  std::uint64_t checked = 0;
  bool faithful = true;
  std::uint64_t violations = 0;
  std::vector<std::pair<ZMat, std::uint64_t>> counterexamples;  // matrix, order (at most a few kept)
};
FaithfulnessVerdict faithfulness_check(std::int64_t p, int rank, int k, int m = 1);

// --- fixtures ------------------------------------------------------------------------

// SO(3) at p = 2: T = Z/2^inf, W = C_2 by inversion, both Klein-four classes
// carrying GL_2(2).
TowerSpec so3_tower(int n0, int n1);
// Sylows of PSL_3(q^{3^i}) for p = 3: ((Z/3^n)^2 x| C_3)/<3^{n-1}(1,1)>, with
// the Weyl transposition on the torus; `exotic` keeps SL_2(3) only on the
// class of Z(S)<x>.
TowerSpec psl3_tower(int n0, int n1, bool exotic);

// F0 (realizable, level e) ⊆ F1 (exotic, level e+1) ⊆ F2 (realizable, level e+1).
struct RealExoChain {
  TruncationLevel f0, f1, f2;
  bool f0_in_f1 = false;
  bool f1_in_f2 = false;
  bool proper = false;  // both inclusions strict on morphism counts
  std::array<bool, 3> saturated{};
};
RealExoChain real_exo_chain(int e = 2);

}  // namespace ptl
