#include "ptoral/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace ptl::cli {

namespace {

struct Inputs {
  std::vector<std::string> fixtures, files, specs;
};

struct Context {
  Json inputs = Json::array();
  std::uint64_t seed = 0;
  int threads = 1;
  int exit_code = 0;
};

Json read_file(const std::string& path) {
  std::stringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) fail(Errc::InvalidSpec, "cannot open " + path);
    ss << in.rdbuf();
  }
  return Json::parse(ss.str());
}

// A report produced by an earlier run stands for the artifact it carries.
Json unwrap(Json doc) {
  if (doc.is_object() && doc.contains("schema_version")) {
    if (!doc.contains("result") || !doc["result"].is_object() || !doc["result"].contains("artifact"))
      fail(Errc::SchemaMismatch, "report carries no artifact");
    return doc["result"]["artifact"];
  }
  return doc;
}

// All inputs in order fixtures, files, inline specs; `kind` restricts fixtures.
std::vector<Json> take(Context& ctx, const Inputs& in, const std::string& kind) {
  std::vector<Json> docs;
  auto record = [&](const std::string& source, const Json& doc) {
    ctx.inputs.push_back({{"source", source}, {"sha256", sha256_hex(canonical(doc))}});
    docs.push_back(doc);
  };
  for (const auto& name : in.fixtures) {
    const Fixture& f = fixture(name);
    if (f.kind != kind) fail(Errc::InvalidSpec, "fixture " + name + " is a " + f.kind + " fixture, expected " + kind);
    record("fixture:" + name, f.spec);
  }
  for (const auto& path : in.files) record("file:" + path, unwrap(read_file(path)));
  for (const auto& s : in.specs) record("spec", unwrap(Json::parse(s)));
  if (docs.empty()) fail(Errc::InvalidSpec, "no input: give --fixture, --input or --spec");
  return docs;
}

Json one(Context& ctx, const Inputs& in, const std::string& kind) {
  auto docs = take(ctx, in, kind);
  if (docs.size() != 1) fail(Errc::InvalidSpec, "expected exactly one input");
  return docs.front();
}

Json sub_json(const FusionSystem& f, std::size_t i) { return {{"subgroup", i}, {"order", f.sub(i).order()}}; }

// --- group and pgroup ---------------------------------------------------------------------

Json group_info(const Group& g) {
  const std::int64_t p = prime_of_p_group(g.order());
  return {{"order", g.order()},
          {"realization", g.realization().kind()},
          {"generators", g.generators().size()},
          {"abelian", g.is_abelian()},
          {"prime", p ? Json(p) : Json(nullptr)},
          {"exponent", exponent(g, whole_group(g))},
          {"center_order", center(g).order()},
          {"fingerprint", fingerprint_to_json(fingerprint(g))}};
}

Json subexp_json(const Group& g) {
  auto s = subexponent(g);
  Json orders = Json::array();
  for (const auto& t : s.series.terms) orders.push_back(t.order());
  return {{"value", s.value}, {"chief_series_orders", orders}, {"witness_orders", s.series.witness_orders}};
}

Json large_abelian_json(const Group& g, int k, int e) {
  auto r = find_large_abelian(g, k, e);
  Json j{{"k", r.k},
         {"e", r.e},
         {"found", r.a.has_value()},
         {"centralizer_ok", r.centralizer_ok},
         {"homocyclic_ok", r.homocyclic_ok},
         {"uniqueness_checked", r.uniqueness_checked},
         {"unique", r.unique},
         {"normal_abelian_examined", r.normal_abelian_examined},
         {"transcript", r.transcript}};
  if (r.a) {
    j["order"] = r.a->order();
    j["invariants"] = abelian_invariants(g, *r.a);
  }
  j["subexponent_lower_bound"] = r.subexponent_lower_bound ? Json(*r.subexponent_lower_bound) : Json(nullptr);
  return j;
}

// --- fusion -------------------------------------------------------------------------------

Json check_json(const FusionSystem& f, Context& ctx) {
  auto rep = saturation_check(f);
  Json failures = Json::array();
  for (const auto& w : rep.failures) {
    Json one{{"axiom", w.axiom}, {"reason", w.reason}, {"verified", verify_failure(f, w)}};
    one.update(sub_json(f, w.subgroup));
    if (w.morphism) one["morphism_image"] = sub_json(f, w.morphism->dst);
    failures.push_back(one);
  }
  if (!rep.saturated()) ctx.exit_code = 1;
  return {{"saturated", rep.saturated()},
          {"sylow_axiom", rep.sylow_axiom},
          {"extension_axiom", rep.extension_axiom},
          {"continuity_axiom", rep.continuity_axiom},
          {"failures", failures}};
}

Json classify_json(const FusionSystem& f) {
  Json rows = Json::array();
  for (std::size_t c = 0; c < f.class_count(); ++c) {
    const auto fl = classify_subgroup(f, f.rep(c));
    rows.push_back({{"class", c},
                    {"rep", f.rep(c)},
                    {"order", f.sub(f.rep(c)).order()},
                    {"members", f.members(c).size()},
                    {"automizer", f.automizer(c).size()},
                    {"fully_normalized", fl.fully_normalized},
                    {"fully_centralized", fl.fully_centralized},
                    {"fully_automized", fl.fully_automized},
                    {"receptive", fl.receptive},
                    {"centric", fl.centric},
                    {"radical", fl.radical},
                    {"essential", fl.essential},
                    {"weakly_closed", fl.weakly_closed},
                    {"strongly_closed", fl.strongly_closed}});
  }
  return {{"classes", rows}};
}

std::vector<std::size_t> weakly_closed_list(const FusionSystem& f) {
  std::vector<std::size_t> v;
  for (std::size_t i = 0; i < f.lattice().size(); ++i)
    if (f.sub(i).order() > 1 && weakly_closed(f, i)) v.push_back(i);
  return v;
}

Json closed_json(const FusionSystem& f) {
  auto sc = strongly_closed_lattice(f);
  Json strong = Json::array(), weak = Json::array();
  for (auto i : sc.subgroups) strong.push_back(sub_json(f, i));
  for (auto i : weakly_closed_list(f)) weak.push_back(sub_json(f, i));
  return {{"strongly_closed", strong}, {"minsc", sub_json(f, sc.minsc)}, {"minsc_trivial", sc.minsc_trivial}, {"weakly_closed", weak}};
}

Json quotient_json(const FusionSystem& f, std::vector<std::size_t> targets) {
  if (targets.empty()) targets = weakly_closed_list(f);
  Json rows = Json::array();
  for (auto q : targets) {
    if (q >= f.lattice().size()) fail(Errc::InvalidSpec, "subgroup index out of range");
    auto qf = quotient_fusion(f, q);
    Json row = sub_json(f, q);
    row.update({{"quotient_order", qf.f->s().order()},
                {"saturated", saturation_check(*qf.f).saturated()},
                {"classes", class_table(*qf.f)}});
    rows.push_back(row);
  }
  return {{"quotients", rows}};
}

Json alperin_json(const FusionSystem& f) {
  AlperinData ad(f);
  Json gens = Json::array(), cov = Json::array();
  for (auto r : ad.subgroups()) gens.push_back(sub_json(f, r));
  bool complete = true;
  for (std::size_t c = 0; c < f.class_count(); ++c) {
    auto [reached, total] = ad.coverage(f.rep(c));
    complete = complete && reached == total;
    Json row = sub_json(f, f.rep(c));
    row.update({{"reached", reached}, {"total", total}});
    cov.push_back(row);
  }
  return {{"generating_subgroups", gens}, {"coverage", cov}, {"complete", complete}};
}

// --- tower ----------------------------------------------------------------------------------

Json threshold_json(const Threshold& t) {
  return {{"value", t.value ? Json(*t.value) : Json(nullptr)}, {"confirmed", t.confirmed}};
}

Json tower_run_json(const TowerSpec& spec) {
  auto levels = build_levels(spec);
  Json lv = Json::array();
  for (const auto& l : levels)
    lv.push_back({{"n", l.n}, {"order", l.s->order()}, {"morphisms", l.f->morphism_count()}, {"classes", l.f->class_count()}});
  auto sr = verify_tower(spec, levels);
  Json j{{"name", spec.name},
         {"p", spec.p},
         {"levels", lv},
         {"increasing", sr.increasing},
         {"thresholds",
          {{"centralizer", threshold_json(sr.centralizer)},
           {"injectivity", threshold_json(sr.injectivity)},
           {"automizer", threshold_json(sr.automizer)}}},
         {"torus_automizer_orders", sr.torus_automizer_orders},
         {"automizer_compatible", sr.automizer_compatible}};
  try {
    auto ta = torus_automizer(spec, levels);
    j["torus_automizer"] = {{"level", ta.level}, {"modulus", ta.modulus}, {"order", ta.order}, {"stable", ta.stable}};
  } catch (const Error& e) {
    if (e.code() != Errc::NotStabilized) throw;
    j["torus_automizer"] = {{"error", errc_name(e.code())}, {"message", e.what()}};
  }
  auto mc = minsc_tower(spec, levels);
  Json entries = Json::array();
  for (const auto& m : mc.entries)
    entries.push_back({{"n", m.n},
                       {"minsc_order", m.minsc_order},
                       {"minsc_is_s", m.minsc_is_s},
                       {"minsc_trivial", m.minsc_trivial},
                       {"strongly_closed_orders", m.strongly_closed_orders},
                       {"outside_fused_into_torus", m.outside_fused_into_torus}});
  j["minsc"] = {{"entries", entries},
                {"threshold", mc.threshold ? Json(*mc.threshold) : Json(nullptr)},
                {"monotone", mc.monotone},
                {"union_order", mc.union_order}};
  return j;
}

// --- gate -------------------------------------------------------------------------------------

Json table_json(const std::vector<TableRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    Json j{{"p", r.p},           {"w", r.w},       {"conditions", r.conditions}, {"rank", r.rank},
           {"expected", r.expected},  {"evaluated", r.evaluated}, {"consistent", r.consistent}, {"note", r.note}};
    if (r.verdict) {
      j["verdict"] = r.verdict->pass ? "PASS" : "FAIL";
      j["entry"] = r.verdict->pass ? Json(r.verdict->entry + "[" + r.verdict->label + "]") : Json(nullptr);
      j["obstruction"] = obstruction_name(r.verdict->obstruction);
    } else {
      j["verdict"] = nullptr;
    }
    out.push_back(j);
  }
  return out;
}

Json catalog_entry_json(const CatalogEntry& e) {
  return {{"label", e.label}, {"name", e.name}, {"params", e.params}, {"p", e.p},
          {"rank", e.rank},   {"order", e.order}, {"buildable", e.buildable}, {"large_exceptional", e.large_exceptional}};
}

}  // namespace

std::string json_to_markdown(const Json& j) {
  std::ostringstream out;
  auto scalar = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  auto flat = [](const Json& v) {
    return std::all_of(v.begin(), v.end(), [](const Json& x) { return !x.is_structured(); });
  };
  std::function<void(const Json&, int)> render = [&](const Json& v, int depth) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      const Json& x = it.value();
      if (!x.is_structured() || (x.is_array() && flat(x))) {
        out << "- **" << it.key() << "**: " << scalar(x) << "\n";
        continue;
      }
      out << "\n" << std::string(static_cast<std::size_t>(std::min(depth, 5)), '#') << " " << it.key() << "\n\n";
      if (x.is_object()) {
        render(x, depth + 1);
      } else if (!x.empty() && std::all_of(x.begin(), x.end(), [&](const Json& r) { return r.is_object() && flat(r); })) {
        std::vector<std::string> cols;
        for (auto c = x[0].begin(); c != x[0].end(); ++c) cols.push_back(c.key());
        out << "|";
        for (const auto& c : cols) out << " " << c << " |";
        out << "\n|";
        for (std::size_t i = 0; i < cols.size(); ++i) out << " --- |";
        out << "\n";
        for (const auto& r : x) {
          out << "|";
          for (const auto& c : cols) out << " " << (r.contains(c) ? scalar(r[c]) : "") << " |";
          out << "\n";
        }
      } else {
        out << "```json\n" << x.dump(2) << "\n```\n";
      }
    }
  };
  if (j.is_object()) render(j, 2);
  else out << "```json\n" << j.dump(2) << "\n```\n";
  return out.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const Caps saved = caps();
  Context ctx;
  std::string format = "json";
  bool timing = false;
  std::size_t cap_order = saved.order, cap_subgroups = saved.subgroups;

  CLI::App app{"Finite truncations of discrete p-toral groups: fusion, towers and the realizability gate", "ptl"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--cap-order", cap_order, "largest group enumerated")->capture_default_str();
  app.add_option("--cap-subgroups", cap_subgroups, "largest unfiltered subgroup lattice")->capture_default_str();
  app.add_option("--seed", ctx.seed, "seed for randomized searches")->capture_default_str();
  app.add_option("--threads", ctx.threads, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "md"}))->capture_default_str();
  app.add_flag("--timing", timing, "add wall-clock timing to the report (breaks byte reproducibility)");

  struct Leaf {
    CLI::App* app;
    std::string name;
    std::function<Json()> handler;
  };
  std::vector<Leaf> leaves;
  std::vector<std::unique_ptr<Inputs>> inputs;
  auto group_cmd = [&](const char* name, const char* help) {
    auto* c = app.add_subcommand(name, help);
    c->require_subcommand(1);
    c->fallthrough();
    return c;
  };
  auto leaf = [&](CLI::App* parent, const char* name, const char* help, bool with_inputs, const char* input_names = "--input,-i") {
    auto* c = parent->add_subcommand(name, help);
    c->fallthrough();
    inputs.push_back(std::make_unique<Inputs>());
    Inputs* in = inputs.back().get();
    if (with_inputs) {
      c->add_option("--fixture", in->fixtures, "named fixture (repeatable)");
      c->add_option(input_names, in->files, "JSON file (- for stdin): artifact, spec or earlier report (repeatable)");
      c->add_option("--spec", in->specs, "inline JSON artifact or spec (repeatable)");
    }
    return std::pair{c, in};
  };
  auto on = [&](CLI::App* c, std::string name, std::function<Json()> h) { leaves.push_back({c, std::move(name), std::move(h)}); };

  // group
  auto* group = group_cmd("group", "finite groups");
  {
    auto [c, in] = leaf(group, "info", "order, fingerprint and basic invariants", true);
    on(c, "group info", [&, in = in] { return group_info(*load_group(one(ctx, *in, "group"))); });
  }
  {
    auto [c, in] = leaf(group, "make", "build a group from a spec and emit its artifact", true);
    on(c, "group make", [&, in = in] {
      auto g = load_group(one(ctx, *in, "group"));
      return Json{{"order", g->order()}, {"artifact", group_to_json(*g)}};
    });
  }

  // pgroup
  auto* pgroup = group_cmd("pgroup", "invariants of finite p-groups");
  {
    auto [c, in] = leaf(pgroup, "subexp", "subexponent and a witnessing chief series", true);
    on(c, "pgroup subexp", [&, in = in] { return subexp_json(*load_group(one(ctx, *in, "group"))); });
  }
  int la_k = 2, la_e = 5;
  {
    auto [c, in] = leaf(pgroup, "large-abelian", "the large abelian normal subgroup and its uniqueness", true);
    c->add_option("--k", la_k, "index parameter k")->capture_default_str();
    c->add_option("--e", la_e, "exponent parameter e")->capture_default_str();
    on(c, "pgroup large-abelian", [&, in = in] { return large_abelian_json(*load_group(one(ctx, *in, "group")), la_k, la_e); });
  }
  std::int64_t rank_p = 0;
  {
    auto [c, in] = leaf(pgroup, "ranks", "p-rank and sectional p-rank", true);
    c->add_option("--p", rank_p, "prime (default: the prime of a p-group)");
    on(c, "pgroup ranks", [&, in = in] {
      auto g = load_group(one(ctx, *in, "group"));
      std::int64_t p = rank_p ? rank_p : prime_of_p_group(g->order());
      if (!p) fail(Errc::BadParameters, "give --p for a group that is not a p-group");
      auto r = p_ranks(*g, p);
      return Json{{"p", p}, {"rk", r.rk}, {"srk", r.srk}};
    });
  }

  // fusion
  auto* fusion = group_cmd("fusion", "fusion systems over finite p-groups");
  auto fusion_leaf = [&](const char* name, const char* help, std::function<Json(const FusionSystem&)> h) {
    auto [c, in] = leaf(fusion, name, help, true);
    on(c, std::string("fusion ") + name, [&, in = in, h] { return h(*load_fusion(one(ctx, *in, "fusion"))); });
    return c;
  };
  fusion_leaf("build", "build a fusion system and emit its artifact", [](const FusionSystem& f) {
    return Json{{"p", f.prime()}, {"sylow_order", f.s().order()}, {"morphisms", f.morphism_count()},
                {"classes", class_table(f)}, {"artifact", fusion_to_json(f)}};
  });
  fusion_leaf("check", "saturation check with verified witnesses", [&](const FusionSystem& f) { return check_json(f, ctx); });
  fusion_leaf("classify", "centric, radical, essential and closure flags per class", classify_json);
  fusion_leaf("closed", "strongly and weakly closed subgroups, minsc", closed_json);
  std::vector<std::size_t> quotient_targets;
  auto* qc = fusion_leaf("quotient", "quotients by weakly closed subgroups",
                         [&](const FusionSystem& f) { return quotient_json(f, quotient_targets); });
  qc->add_option("--subgroup", quotient_targets, "lattice index of Q (default: every nontrivial weakly closed subgroup)");
  fusion_leaf("alperin", "Alperin generating subgroups and coverage", alperin_json);
  {
    auto [c, in] = leaf(fusion, "product", "product of two fusion systems", true);
    on(c, "fusion product", [&, in = in] {
      auto docs = take(ctx, *in, "fusion");
      if (docs.size() != 2) fail(Errc::InvalidSpec, "fusion product needs two inputs");
      auto pf = product_fusion(*load_fusion(docs[0]), *load_fusion(docs[1]));
      return Json{{"sylow_order", pf.f->s().order()}, {"morphisms", pf.f->morphism_count()},
                  {"classes", class_table(*pf.f)}, {"saturated", saturation_check(*pf.f).saturated()}};
    });
  }
  {
    auto [c, in] = leaf(fusion, "iso", "isomorphism between two fusion systems", true);
    on(c, "fusion iso", [&, in = in] {
      auto docs = take(ctx, *in, "fusion");
      if (docs.size() != 2) fail(Errc::InvalidSpec, "fusion iso needs two inputs");
      auto iso = fusion_isomorphism(*load_fusion(docs[0]), *load_fusion(docs[1]));
      return Json{{"isomorphic", iso.has_value()}, {"map", iso ? Json(*iso) : Json(nullptr)}};
    });
  }

  // tower
  auto* tower = group_cmd("tower", "towers of truncations");
  {
    auto [c, in] = leaf(tower, "run", "build the levels and verify the tower", true);
    on(c, "tower run", [&, in = in] { return tower_run_json(tower_from_spec(one(ctx, *in, "tower"))); });
  }
  int srk_n = 3;
  std::int64_t bound_prime = 2;
  std::vector<std::int64_t> srk_primes{2, 3, 7};
  {
    auto [c, in] = leaf(tower, "report", "sectional rank obstruction over the realizing groups", true);
    c->add_option("--n", srk_n, "hypothetical ambient dimension")->capture_default_str()->check(CLI::PositiveNumber);
    c->add_option("--primes", srk_primes, "candidate primes q")->delimiter(',')->capture_default_str();
    c->add_option("--bound-prime", bound_prime, "prime of the srk_bound table")->capture_default_str();
    on(c, "tower report", [&, in = in] {
      const Json spec = one(ctx, *in, "tower");
      auto levels = build_levels(tower_from_spec(spec));
      Json j = srk_report_to_json(srk_obstruction_report(spec, levels, srk_n, srk_primes));
      Json table = Json::array();
      for (int n = 1; n <= 8; ++n) table.push_back({{"n", n}, {"bound", srk_bound(bound_prime, n)}});
      j["bound_table"] = {{"q", bound_prime}, {"rows", table}};
      return j;
    });
  }

  // gate
  auto* gate = group_cmd("gate", "the sequential-realizability gate on (W, M)");
  bool opprime = false;
  {
    auto [c, in] = leaf(gate, "classify", "classify one representation", true, "--rep,--input,-i");
    c->add_flag("--opprime-irreducible", opprime, "only the one-factor case");
    on(c, "gate classify", [&, in = in] {
      ModRep r = load_modrep(one(ctx, *in, "gate"));
      auto v = gate_classify(r, opprime, ctx.seed);
      Json j = verdict_to_json(v);
      j["input"] = {{"name", r.name}, {"p", r.p}, {"k", r.k}, {"rank", r.rank}};
      j["certificate_verified"] = v.pass ? Json(verify_gate_certificate(r, v)) : Json(nullptr);
      return j;
    });
  }
  std::string which = "all";
  {
    auto [c, in] = leaf(gate, "tables", "evaluate the verdict tables", false);
    c->add_option("--table", which, "p-compact, index-p or all")->check(CLI::IsMember({"p-compact", "index-p", "all"}))->capture_default_str();
    on(c, "gate tables", [&] {
      Json j = Json::object();
      if (which != "index-p") j["p-compact"] = table_json(verdict_table(VerdictTable::PCompact, ctx.threads));
      if (which != "p-compact") j["index-p"] = table_json(verdict_table(VerdictTable::IndexP, ctx.threads));
      return j;
    });
  }

  // catalog
  auto* catalog = group_cmd("catalog", "fixtures and the gate catalog");
  std::string kind_filter;
  std::int64_t gate_p = 0;
  int max_rank = 4;
  bool large = false;
  auto gate_options = [&](CLI::App* c) {
    c->add_option("--kind", kind_filter, "group, fusion, tower or gate")->check(CLI::IsMember({"group", "fusion", "tower", "gate"}));
    c->add_option("--gate-prime", gate_p, "list the gate catalog for this prime instead of the fixtures");
    c->add_option("--max-rank", max_rank, "largest rank in the gate catalog")->capture_default_str();
    c->add_flag("--large-exceptional", large, "build E6 as well");
  };
  {
    auto [c, in] = leaf(catalog, "list", "list fixtures or gate catalog entries", false);
    gate_options(c);
    on(c, "catalog list", [&] {
      Json rows = Json::array();
      if (gate_p) {
        Catalog cat(gate_p, max_rank, large);
        for (const auto& e : cat.entries()) rows.push_back(catalog_entry_json(e));
        return Json{{"entries", rows}};
      }
      for (const auto& f : fixtures())
        if (kind_filter.empty() || f.kind == kind_filter)
          rows.push_back({{"name", f.name}, {"kind", f.kind}, {"description", f.description}});
      return Json{{"fixtures", rows}};
    });
  }
  {
    auto [c, in] = leaf(catalog, "dump", "emit fixture artifacts or materialized gate catalog entries", false);
    gate_options(c);
    c->add_option("--fixture", in->fixtures, "fixture to dump (repeatable)");
    on(c, "catalog dump", [&, in = in] {
      if (gate_p) {
        Catalog cat(gate_p, max_rank, large);
        Json rows = Json::array();
        for (std::size_t i = 0; i < cat.entries().size(); ++i) {
          Json row = catalog_entry_json(cat.entries()[i]);
          if (cat.entries()[i].buildable) {
            const auto& m = cat.materialize(i);
            row["fingerprint"] = fingerprint_to_json(m.fp);
            row["factors"] = m.factors;
          }
          rows.push_back(row);
        }
        return Json{{"entries", rows}};
      }
      std::vector<const Fixture*> chosen;
      for (const auto& n : in->fixtures) chosen.push_back(&fixture(n));
      if (chosen.empty())
        for (const auto& f : fixtures())
          if (!kind_filter.empty() && f.kind == kind_filter) chosen.push_back(&f);
      if (chosen.empty()) fail(Errc::InvalidSpec, "give --fixture or --kind");
      Json arts = Json::object();
      for (const auto* f : chosen) {
        ctx.inputs.push_back({{"source", "fixture:" + f->name}, {"sha256", sha256_hex(canonical(f->spec))}});
        arts[f->name] = fixture_artifact(*f);
      }
      Json j{{"artifacts", arts}};
      if (chosen.size() == 1) j["artifact"] = arts[chosen.front()->name];
      return j;
    });
  }

  Json report{{"schema_version", kReportSchema}, {"argv", args}};
  auto emit = [&](int code) {
    caps() = saved;
    report["exit_code"] = code;
    Json hashed = report;
    hashed.erase("timing");
    report["digest"] = sha256_hex(canonical(hashed));
    out << (format == "md" ? json_to_markdown(report) : canonical(report));
    return code;
  };
  auto error = [&](const std::string& reason, const std::string& message, int code) {
    report["status"] = "error";
    report["error"] = {{"reason", reason}, {"message", message}};
    err << "ptl: " << message << "\n";
    return emit(code);
  };

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    return error("ParseError", e.what(), 2);
  }

  const Leaf* chosen = nullptr;
  for (const auto& l : leaves)
    if (l.app->parsed()) chosen = &l;
  if (!chosen) return error("ParseError", "no command given", 2);
  report["command"] = chosen->name;
  report["settings"] = {{"cap_order", cap_order}, {"cap_subgroups", cap_subgroups}, {"seed", ctx.seed}, {"threads", ctx.threads}};

  const auto t0 = std::chrono::steady_clock::now();
  try {
    caps().order = cap_order;
    caps().subgroups = cap_subgroups;
    Json result = chosen->handler();
    report["inputs"] = ctx.inputs;
    report["status"] = "ok";
    report["result"] = std::move(result);
  } catch (const Error& e) {
    report["inputs"] = ctx.inputs;
    return error(errc_name(e.code()), e.what(), errc_is_spec_error(e.code()) ? 2 : 1);
  } catch (const Json::exception& e) {
    report["inputs"] = ctx.inputs;
    return error("ParseError", e.what(), 2);
  }
  if (timing)
    report["timing"] = {{"wall_ms", std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count()}};
  return emit(ctx.exit_code);
}

}  // namespace ptl::cli
