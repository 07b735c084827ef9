#include "ptoral/cli.hpp"

#include "ptoral/families.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <numeric>
#include <iomanip>
#include <set>
#include <sstream>

namespace ptl::cli {

namespace {

constexpr std::size_t kRegularLimit = 4096;

const Json& req(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(Errc::InvalidSpec, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

template <class T>
T get(const Json& j, const char* key) {
  try {
    return req(j, key).get<T>();
  } catch (const Json::exception&) {
    fail(Errc::InvalidSpec, std::string("field \"") + key + "\" has the wrong type");
  }
}

template <class T>
T get_or(const Json& j, const char* key, T fallback) {
  return j.is_object() && j.contains(key) ? get<T>(j, key) : fallback;
}

Json matrix_json(const ZMat& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(row);
  }
  return rows;
}

ZMat matrix_from(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) fail(Errc::InvalidSpec, "a matrix is a non-empty array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  const auto c = static_cast<Eigen::Index>(j[0].size());
  ZMat m(n, c);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!j[i].is_array() || static_cast<Eigen::Index>(j[i].size()) != c) fail(Errc::InvalidSpec, "ragged matrix");
    for (Eigen::Index k = 0; k < c; ++k) {
      if (!j[i][k].is_number_integer()) fail(Errc::InvalidSpec, "matrix entries must be integers");
      m(i, k) = j[i][k].get<std::int64_t>();
    }
  }
  return m;
}

std::vector<ZMat> matrices_from(const Json& j) {
  if (!j.is_array()) fail(Errc::InvalidSpec, "expected an array of matrices");
  std::vector<ZMat> out;
  for (const auto& m : j) out.push_back(matrix_from(m));
  return out;
}

bool plain(const Realization& r) {
  if (r.kind() == "quotient") return false;
  if (auto* pr = dynamic_cast<const ProductRealization*>(&r))
    return std::all_of(pr->factors().begin(), pr->factors().end(), [](const auto& f) { return plain(*f); });
  if (auto* t = dynamic_cast<const TameRealization*>(&r)) return plain(t->complement()->realization());
  return true;
}

Json realization_json(const Realization& r) {
  if (auto* p = dynamic_cast<const PermRealization*>(&r)) return {{"kind", "perm"}, {"degree", p->degree()}};
  if (auto* m = dynamic_cast<const MatrixRealization*>(&r))
    return {{"kind", "matrix"}, {"dim", m->dim()}, {"p", m->p()}, {"k", m->k()}};
  if (auto* t = dynamic_cast<const TameRealization*>(&r)) {
    Json action = Json::array();
    for (const auto& a : t->generator_matrices()) action.push_back(matrix_json(a));
    return {{"kind", "tame"}, {"p", t->p()}, {"e", t->e()}, {"rank", t->rank()},
            {"complement", group_to_json(*t->complement())}, {"action", action}};
  }
  if (auto* pr = dynamic_cast<const ProductRealization*>(&r)) {
    Json fs = Json::array();
    for (const auto& f : pr->factors()) fs.push_back(realization_json(*f));
    return {{"kind", "product"}, {"factors", fs}};
  }
  fail(Errc::SchemaMismatch, "realization kind " + r.kind() + " has no serialized form");
}

RealizationPtr realization_from(const Json& j) {
  const auto kind = get<std::string>(j, "kind");
  if (kind == "perm") return std::make_shared<PermRealization>(get<int>(j, "degree"));
  if (kind == "matrix") return std::make_shared<MatrixRealization>(get<int>(j, "dim"), get<std::int64_t>(j, "p"), get<int>(j, "k"));
  if (kind == "tame")
    return std::make_shared<TameRealization>(get<std::int64_t>(j, "p"), get<int>(j, "e"), get<int>(j, "rank"),
                                             group_from_json(req(j, "complement")), matrices_from(req(j, "action")));
  if (kind == "product") {
    std::vector<RealizationPtr> fs;
    for (const auto& f : req(j, "factors")) fs.push_back(realization_from(f));
    return std::make_shared<ProductRealization>(fs);
  }
  fail(Errc::SchemaMismatch, "unknown realization kind " + kind);
}

// Left regular permutation representation: g acts by x -> g x.
GroupPtr regular(const Group& g) {
  if (g.order() > kRegularLimit) fail(Errc::CapExceeded, "regular representation above 4096 elements");
  std::vector<Key> gens;
  for (Elt s : g.generators()) {
    Key k(g.order());
    for (Elt x = 0; x < g.order(); ++x) k[x] = static_cast<std::int32_t>(g.mul(s, x));
    gens.push_back(k);
  }
  return perm_group_images(static_cast<int>(g.order()), gens);
}

std::vector<Elt> elts_from(const Json& j, std::size_t n) {
  if (!j.is_array()) fail(Errc::InvalidSpec, "expected an array of element indices");
  std::vector<Elt> v;
  for (const auto& x : j) {
    if (!x.is_number_unsigned() || x.get<std::uint64_t>() >= n) fail(Errc::SchemaMismatch, "element index out of range");
    v.push_back(x.get<Elt>());
  }
  return v;
}

// Positional maps of P: (a b)[k] = a[pos(b[k])].
std::vector<std::vector<Elt>> canonical_generators(const Subgroup& p, const std::vector<std::vector<Elt>>& aut) {
  std::set<std::vector<Elt>> reached{p.elems};
  std::vector<std::vector<Elt>> gens;
  for (const auto& a : aut) {
    if (reached.count(a)) continue;
    gens.push_back(a);
    std::vector<std::vector<Elt>> queue(reached.begin(), reached.end());
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (const auto& g : gens) {
        std::vector<Elt> c(p.order());
        for (std::size_t k = 0; k < p.order(); ++k) c[k] = g[p.position(queue[i][k])];
        if (reached.insert(c).second) queue.push_back(std::move(c));
      }
  }
  return gens;
}

}  // namespace

std::string canonical(const Json& j) { return j.dump(2) + "\n"; }

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream s;
  for (unsigned int i = 0; i < len; ++i) s << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return s.str();
}

// --- groups ---------------------------------------------------------------------------

Json group_to_json(const Group& g) {
  if (!plain(g.realization())) return group_to_json(*regular(g));
  Json gens = Json::array();
  for (Elt x : g.generators()) gens.push_back(g.key_vec(x));
  return {{"schema", kGroupSchema}, {"order", g.order()}, {"realization", realization_json(g.realization())},
          {"generators", gens}};
}

GroupPtr group_from_json(const Json& j) {
  if (get<std::string>(j, "schema") != kGroupSchema) fail(Errc::SchemaMismatch, "not a group artifact");
  auto r = realization_from(req(j, "realization"));
  std::vector<Key> gens;
  for (const auto& k : req(j, "generators")) {
    Key key = k.get<Key>();
    if (static_cast<int>(key.size()) != r->width()) fail(Errc::SchemaMismatch, "generator key has the wrong width");
    gens.push_back(std::move(key));
  }
  auto g = Group::generate(r, gens);
  if (g->order() != get<std::size_t>(j, "order")) fail(Errc::SchemaMismatch, "group order does not match the artifact");
  return g;
}

GroupPtr group_from_spec(const Json& s) {
  const auto fam = get<std::string>(s, "family");
  if (fam == "cyclic") return cyclic_group(get<int>(s, "n"));
  if (fam == "abelian") return abelian_group(get<std::vector<int>>(s, "orders"));
  if (fam == "dihedral") return dihedral_group(get<int>(s, "order"));
  if (fam == "semidihedral") return semidihedral_group(get<int>(s, "order"));
  if (fam == "quaternion") return quaternion_group(get<int>(s, "order"));
  if (fam == "symmetric") return symmetric_group(get<int>(s, "n"));
  if (fam == "alternating") return alternating_group(get<int>(s, "n"));
  if (fam == "gl2_3") return gl2_3();
  if (fam == "sl2_3") return sl2_3();
  if (fam == "c4_d8") return central_product_c4_d8();
  if (fam == "extraspecial") return extraspecial_plus(get<std::int64_t>(s, "p"));
  if (fam == "wreath") return wreath_cyclic(get<int>(s, "m"), get<int>(s, "n"));
  if (fam == "psl2") return psl2(get<std::int64_t>(s, "p"), get_or<int>(s, "f", 1));
  if (fam == "tame")
    return tame_group(get<std::int64_t>(s, "p"), get<int>(s, "e"), get<int>(s, "rank"), load_group(req(s, "complement")),
                      matrices_from(req(s, "action")));
  if (fam == "product") {
    std::vector<GroupPtr> fs;
    for (const auto& f : req(s, "factors")) fs.push_back(load_group(f));
    return direct_product(fs);
  }
  if (fam == "perm") return perm_group_images(get<int>(s, "degree"), get<std::vector<Key>>(s, "generators"));
  if (fam == "matrix")
    return matrix_group(get<int>(s, "dim"), get<std::int64_t>(s, "p"), get<int>(s, "k"), matrices_from(req(s, "generators")));
  fail(Errc::InvalidSpec, "unknown group family " + fam);
}

GroupPtr load_group(const Json& j) { return j.contains("schema") ? group_from_json(j) : group_from_spec(j); }

Json fingerprint_to_json(const Fingerprint& fp) {
  auto hist = [](const std::map<std::uint64_t, std::uint64_t>& m) {
    Json a = Json::array();
    for (const auto& [k, v] : m) a.push_back({k, v});
    return a;
  };
  return {{"order", fp.order},
          {"class_sizes", hist(fp.class_sizes)},
          {"abelianization", fp.abelianization},
          {"derived_length", fp.derived_length},
          {"element_orders", hist(fp.order_histogram)}};
}

// --- fusion systems ------------------------------------------------------------------------

Json class_table(const FusionSystem& f) {
  // independent of the element labelling: (order, members, automizer) sorted
  std::vector<std::array<std::uint64_t, 3>> rows;
  for (std::size_t c = 0; c < f.class_count(); ++c)
    rows.push_back({f.sub(f.rep(c)).order(), f.members(c).size(), f.automizer(c).size()});
  std::sort(rows.begin(), rows.end());
  Json t = Json::array();
  for (const auto& r : rows) t.push_back({{"order", r[0]}, {"members", r[1]}, {"automizer", r[2]}});
  return t;
}

Json fusion_to_json(const FusionSystem& f) {
  const Group& s = f.s();
  // element indices as seen by the serialized Sylow group
  GroupPtr written = f.sylow();
  std::vector<Elt> label(s.order());
  std::iota(label.begin(), label.end(), Elt{0});
  if (!plain(s.realization())) {
    written = regular(s);
    for (Elt x = 0; x < s.order(); ++x) {
      Key k(s.order());
      for (Elt y = 0; y < s.order(); ++y) k[y] = static_cast<std::int32_t>(s.mul(x, y));
      label[x] = *written->find(k);
    }
  }
  auto relabel = [&](const std::vector<Elt>& v) {
    std::vector<Elt> out;
    for (Elt x : v) out.push_back(label[x]);
    return out;
  };
  Json maps = Json::array();
  for (std::size_t c = 0; c < f.class_count(); ++c) {
    const Subgroup& p = f.sub(f.rep(c));
    for (const auto& a : canonical_generators(p, f.automizer(c))) {
      std::vector<Elt> images;
      for (Elt x : p.gens) images.push_back(a[p.position(x)]);
      maps.push_back({{"gens", relabel(p.gens)}, {"images", relabel(images)}});
    }
    // one identification per S-class other than the representative's
    std::set<std::vector<Elt>> seen{conjugacy_class_reps(s, {p}).front().elems};
    for (std::uint32_t m : f.members(c)) {
      const Subgroup& q = f.sub(m);
      if (!seen.insert(conjugacy_class_reps(s, {q}).front().elems).second) continue;
      const FusionMap iota = f.iota(m);
      std::vector<Elt> images;
      for (Elt x : q.gens) images.push_back(iota.img[q.position(x)]);
      maps.push_back({{"gens", relabel(q.gens)}, {"images", relabel(images)}});
    }
  }
  return {{"schema", kFusionSchema},
          {"p", f.prime()},
          {"sylow", group_to_json(*written)},
          {"maps", maps},
          {"classes", class_table(f)},
          {"morphisms", f.morphism_count()}};
}

FusionPtr fusion_from_json(const Json& j) {
  if (get<std::string>(j, "schema") != kFusionSchema) fail(Errc::SchemaMismatch, "not a fusion artifact");
  auto s = group_from_json(req(j, "sylow"));
  std::vector<MapDatum> data;
  for (const auto& m : req(j, "maps"))
    data.push_back({elts_from(req(m, "gens"), s->order()), elts_from(req(m, "images"), s->order())});
  auto f = fusion_from_maps(s, data);
  if (f->prime() != get<std::int64_t>(j, "p") && s->order() > 1) fail(Errc::SchemaMismatch, "prime does not match");
  if (j.contains("classes") && class_table(*f) != j.at("classes"))
    fail(Errc::SchemaMismatch, "reloaded fusion system has a different class table");
  return f;
}

FusionPtr fusion_from_spec(const Json& s) {
  const auto kind = get<std::string>(s, "kind");
  if (kind == "sylow") {
    auto g = load_group(req(s, "group"));
    return fusion_of_group(g, sylow_subgroup(*g, get<std::int64_t>(s, "p")));
  }
  if (kind == "inner") return inner_fusion(load_group(req(s, "group")));
  if (kind == "declared") {
    auto g = load_group(req(s, "group"));
    auto find = [&](const Json& keys) {
      std::vector<Elt> v;
      for (const auto& k : keys) {
        auto x = g->find(k.get<Key>());
        if (!x) fail(Errc::InvalidSpec, "declared map names an element outside S");
        v.push_back(*x);
      }
      return v;
    };
    std::vector<MapDatum> data;
    for (const auto& m : req(s, "maps")) data.push_back({find(req(m, "gens")), find(req(m, "images"))});
    return fusion_from_maps(g, data);
  }
  if (kind == "tower_level") return build_level(tower_from_spec(req(s, "tower")), get<int>(s, "n")).f;
  fail(Errc::InvalidSpec, "unknown fusion spec kind " + kind);
}

FusionPtr load_fusion(const Json& j) { return j.contains("schema") ? fusion_from_json(j) : fusion_from_spec(j); }

TowerSpec tower_from_spec(const Json& s) {
  const auto name = get<std::string>(s, "tower");
  const int n0 = get<int>(s, "n0"), n1 = get<int>(s, "n1");
  TowerSpec t;
  if (name == "so3") t = so3_tower(n0, n1);
  else if (name == "psl3") t = psl3_tower(n0, n1, get_or<bool>(s, "exotic", false));
  else fail(Errc::InvalidSpec, "unknown tower " + name);
  if (s.contains("elementary")) {
    const auto e = get<std::string>(s, "elementary");
    if (e == "none") t.elementary = EssentialSelection::None;
    else if (e == "all") t.elementary = EssentialSelection::All;
    else if (e == "base") t.elementary = EssentialSelection::Base;
    else fail(Errc::InvalidSpec, "elementary must be none, all or base");
  }
  return t;
}

// --- representations --------------------------------------------------------------------------

Json modrep_to_json(const ModRep& r) {
  Json gens = Json::array();
  for (const auto& g : r.gens) gens.push_back(matrix_json(g));
  return {{"schema", kRepSchema}, {"p", r.p}, {"k", r.k}, {"rank", r.rank}, {"name", r.name}, {"generators", gens}};
}

ModRep modrep_from_json(const Json& j) {
  if (get<std::string>(j, "schema") != kRepSchema) fail(Errc::SchemaMismatch, "not a representation artifact");
  auto r = make_modrep(get<std::int64_t>(j, "p"), get<int>(j, "k"), matrices_from(req(j, "generators")),
                       get_or<std::string>(j, "name", ""));
  if (r.rank != get<int>(j, "rank")) fail(Errc::SchemaMismatch, "rank does not match the generators");
  return r;
}

ModRep modrep_from_spec(const Json& s) {
  const auto kind = get<std::string>(s, "rep");
  if (kind == "G") return build_G_m_k_n(get<std::int64_t>(s, "p"), get<int>(s, "m"), get<int>(s, "k"), get<int>(s, "n"));
  if (kind == "weyl") {
    const auto p = get<std::int64_t>(s, "p");
    return build_weyl_classical(parse_lie_type(get<std::string>(s, "type")), get<int>(s, "rank"), p,
                                get_or<int>(s, "k", p == 2 ? 2 : 1), get_or<std::size_t>(s, "lattice", 0));
  }
  if (kind == "ST12") return build_ST12();
  if (kind == "ST24") return build_ST24();
  if (kind == "ST29") return build_ST29();
  if (kind == "ST31") return build_ST31();
  if (kind == "cyclotomic") return build_cyclotomic_affine(get<std::int64_t>(s, "p"), get_or<int>(s, "k", 1));
  if (kind == "matrices")
    return make_modrep(get<std::int64_t>(s, "p"), get<int>(s, "k"), matrices_from(req(s, "generators")),
                       get_or<std::string>(s, "name", ""));
  fail(Errc::InvalidSpec, "unknown representation kind " + kind);
}

ModRep load_modrep(const Json& j) { return j.contains("schema") ? modrep_from_json(j) : modrep_from_spec(j); }

Json verdict_to_json(const GateVerdict& v) {
  Json j{{"verdict", v.pass ? "PASS" : "FAIL"},
         {"p", v.p},
         {"w_order", v.w_order},
         {"input_factors", v.input_factors},
         {"candidates_examined", v.candidates_examined},
         {"ell_one_only", v.ell_one_only},
         {"transcript", v.transcript}};
  if (v.pass) {
    Json hg = Json::array();
    for (const auto& m : v.h_generators) hg.push_back(matrix_json(m));
    Json fg = Json::array();
    for (const auto& f : v.factor_generators) {
      Json one = Json::array();
      for (const auto& m : f) one.push_back(matrix_json(m));
      fg.push_back(one);
    }
    j["certificate"] = {{"entry", v.entry},     {"label", v.label},         {"ell", v.ell},
                        {"h_order", v.h_order}, {"h_index", v.h_index},     {"h_generators", hg},
                        {"factor_generators", fg}, {"evidence", v.evidence}, {"entry_factors", v.entry_factors}};
  } else {
    j["obstruction"] = obstruction_name(v.obstruction);
    j["detail"] = v.detail;
  }
  return j;
}

}  // namespace ptl::cli
