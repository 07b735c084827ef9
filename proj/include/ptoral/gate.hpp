#pragma once

// Matrix representations over Z/p^k, composition factors mod p, the catalog
// of allowed (W, M) pairs and the sequential-realizability gate on a torus
// automizer.

#include "ptoral/lattice.hpp"

#include <functional>
#include <memory>
#include <mutex>
#include <string>

namespace ptl {

struct ModRep {
  std::int64_t p = 0;
  int k = 1;
  int rank = 0;
  std::vector<ZMat> gens;  // reduced mod p^k
  GroupPtr group;          // the matrix group they generate
  std::string name;
  // Optional abstract group with the images of its generators being `gens`.
  GroupPtr abstract;
};

// Validates (generators invertible mod p, shapes, group within caps) and
// builds the matrix group; with `abstract`, checks that its generators map
// to `gens` homomorphically.
ModRep make_modrep(std::int64_t p, int k, std::vector<ZMat> gens, std::string name, GroupPtr abstract = nullptr);
ModRep reduce_rep(const ModRep& r, int k);
// Generators of a subgroup of r.group, as matrices.
std::vector<ZMat> subgroup_matrices(const ModRep& r, const Subgroup& h);
ZMat element_matrix(const ModRep& r, Elt x);

// k | m | p - 1, n >= 2: monomial matrices over F_p whose entries are m-th
// roots of unity with product an (m/k)-th root.
ModRep build_G_m_k_n(std::int64_t p, int m, int k, int n);

enum class LieType { A, B, C, D, G2, F4, E6, E7, E8 };
LieType parse_lie_type(const std::string& s);
std::string lie_name(LieType t, int rank);
std::uint64_t weyl_order(LieType t, int rank);
ZMat cartan_matrix(LieType t, int rank);

// Lattices between the root lattice Q and the weight lattice P, as column
// bases in fundamental-weight coordinates; index 0 is Q, the last is P.
struct WeylLattice {
  std::string name;  // "root", "weight", or "Q+<w_i,...>"
  ZMat basis;
  std::uint64_t index_over_root = 1;
};
std::vector<WeylLattice> weyl_lattices(LieType t, int rank);
ModRep build_weyl_classical(LieType t, int rank, std::int64_t p, int k, std::size_t lattice = 0);

ModRep build_ST12();
ModRep build_ST31();
// The index-6 reflection subgroup of ST31 with quotient S_5 by C_4 o 2^{1+4}.
ModRep build_ST29();
// C_2 x SL_3(2) on (Z/4)^3, lifted from the natural module.
ModRep build_ST24();
// C_p x| C_{p-1} on Z_p[zeta]/p^k: multiplication by zeta and the Galois group.
ModRep build_cyclotomic_affine(std::int64_t p, int k = 1);

// --- composition factors ------------------------------------------------------------

struct ModuleFactor {
  int dim = 0;
  std::vector<ZMat> gens;  // the action on the factor, over F_p
};
// Composition factors of F_p^d under `gens`, found by splitting on null
// spaces of pseudo-random algebra elements. Throws ChopBudgetExceeded.
std::vector<ModuleFactor> chop_module(const std::vector<ZMat>& gens, int dim, std::int64_t p,
                                      std::uint64_t seed = 0, int budget = 400);
std::vector<int> composition_factors(const ModRep& r, std::uint64_t seed = 0);
std::vector<int> composition_factors(const std::vector<ZMat>& gens, int dim, std::int64_t p, std::uint64_t seed = 0);
// Basis (columns) of the submodule spanned by v.
ZMat spin(const ZVec& v, const std::vector<ZMat>& gens, std::int64_t p);

// --- fingerprints and normal subgroups --------------------------------------------------

Fingerprint group_fingerprint(const ModRep& r);
// O^{p'}(W): the subgroup generated by the elements of p-power order.
Subgroup op_prime_residual(const Group& w, std::int64_t p);
// Normal subgroups of index prime to p (including W), largest first.
std::vector<Subgroup> coprime_normal_subgroups(const Group& w, std::int64_t p);

// --- catalog -------------------------------------------------------------------------------

struct CatalogEntry {
  std::string label;  // a..e
  std::string name;
  std::string params;
  std::int64_t p = 0;
  int rank = 0;
  std::uint64_t order = 0;  // by formula
  bool buildable = true;    // false above the order cap
  bool large_exceptional = false;
  std::function<ModRep()> build;
};

struct MaterializedEntry {
  ModRep rep;
  Fingerprint fp;
  std::vector<int> factors;  // mod p
};

// Entries for the prime p whose rank is at most max_rank.
class Catalog {
 public:
  Catalog(std::int64_t p, int max_rank, bool include_large_exceptional = false);
  const std::vector<CatalogEntry>& entries() const { return entries_; }
  const MaterializedEntry& materialize(std::size_t i) const;
  std::int64_t prime() const { return p_; }
  int k() const { return p_ == 2 ? 2 : 1; }

 private:
  std::int64_t p_;
  std::vector<CatalogEntry> entries_;
  mutable std::vector<std::unique_ptr<MaterializedEntry>> cache_;
  mutable std::mutex mu_;
};

// --- gate ------------------------------------------------------------------------------------

enum class Obstruction { None, NoMatchingSubgroup, ModuleMismatch, NotTransitive };
std::string obstruction_name(Obstruction o);

struct GateVerdict {
  bool pass = false;
  std::int64_t p = 0;
  std::uint64_t w_order = 0;
  std::vector<int> input_factors;
  // on pass
  std::string entry;
  std::string label;
  int ell = 0;
  std::uint64_t h_order = 0;
  std::uint64_t h_index = 0;
  std::vector<ZMat> h_generators;
  std::vector<std::vector<ZMat>> factor_generators;  // when ell > 1
  std::string evidence;  // "isomorphism" or "fingerprint"
  std::vector<int> entry_factors;
  // on fail
  Obstruction obstruction = Obstruction::None;
  std::string detail;
  std::vector<std::string> transcript;
  std::size_t candidates_examined = 0;
  bool ell_one_only = false;
};

// `seed` drives the composition factor search; the verdict does not depend on it.
GateVerdict gate_classify(const ModRep& input, bool opprime_irreducible = false, std::uint64_t seed = 0);
// Independent re-verification of a PASS certificate.
bool verify_gate_certificate(const ModRep& input, const GateVerdict& v);

enum class VerdictTable { PCompact, IndexP };
struct TableRow {
  std::int64_t p = 0;
  std::string w;
  std::string conditions;
  int rank = 0;
  std::string expected;  // the recorded verdict column
  bool evaluated = false;
  std::optional<GateVerdict> verdict;
  bool consistent = false;  // gate verdict does not contradict the recorded column
  std::string note;
};
// Rows are evaluated on up to `threads` worker threads.
std::vector<TableRow> verdict_table(VerdictTable which, int threads = 1);

}  // namespace ptl
