#include "ptoral/tower.hpp"

#include "ptoral/families.hpp"
#include "ptoral/pgroup.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace ptl {

namespace {

Elt at(const TruncationLevel& l, Key k) {
  const auto* tame = dynamic_cast<const TameRealization*>(&l.cover->realization());
  const std::int64_t q = tame->modulus();
  for (int i = 0; i < tame->rank(); ++i) k[i] = static_cast<std::int32_t>(modq(k[i], q));
  return l.proj[*l.cover->find(k)];
}

Key coords(const TruncationLevel& l, Elt y) { return l.cover->key_vec(l.reps[y]); }

void validate(const TowerSpec& spec) {
  if (!is_prime(spec.p)) fail(Errc::InvalidSpec, "tower prime is not prime");
  if (spec.rank < 1) fail(Errc::InvalidSpec, "tower rank must be positive");
  if (!spec.complement) fail(Errc::InvalidSpec, "tower has no complement");
  if (spec.action.size() != spec.complement->generators().size())
    fail(Errc::InvalidSpec, "tower needs one action matrix per complement generator");
  if (spec.n0 < 1 || spec.n1 < spec.n0) fail(Errc::InvalidSpec, "tower level range is empty");
  if (spec.torus_quotient && static_cast<int>(spec.torus_quotient->size()) != spec.rank)
    fail(Errc::InvalidSpec, "torus quotient vector has the wrong length");
}

ZVec to_vec(const std::vector<std::int64_t>& v) {
  ZVec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

// v spans a line mod p that m maps into itself.
bool preserves_line(const ZMat& m, const ZVec& v, std::int64_t p) {
  ZMat two(v.size(), 2);
  two.col(0) = v;
  two.col(1) = m * v;
  return rank_mod_p(two, p) == 1;
}

GeneratorDatum normalizer_datum(const TowerSpec& spec, const TruncationLevel& l, const NormalizerRule& rule) {
  const Group& w = *spec.complement;
  const Group& s = *l.s;
  const int r = spec.rank;
  const std::int64_t q = ipow(spec.p, l.n);
  if (rule.matrix.rows() != r || rule.matrix.cols() != r)
    fail(Errc::InvalidSpec, "normalizer matrix has the wrong shape");
  if (!inverse_mod(rule.matrix, spec.p, q)) fail(Errc::RuleInvalid, "normalizer matrix is not invertible mod p");
  const auto& wg = w.generators();
  if (rule.complement_images.size() != wg.size())
    fail(Errc::InvalidSpec, "normalizer needs one complement image per generator");
  std::vector<Elt> imgs;
  for (const auto& ex : rule.complement_images) {
    if (ex.size() != wg.size()) fail(Errc::InvalidSpec, "complement image has the wrong length");
    Elt x = 0;
    for (std::size_t j = 0; j < wg.size(); ++j) x = w.mul(x, w.pow(wg[j], ex[j]));
    imgs.push_back(x);
  }
  auto phi = extend_hom(w, wg, w, imgs);
  if (!phi || std::set<Elt>(phi->begin(), phi->end()).size() != w.order())
    fail(Errc::RuleInvalid, "complement images do not define an automorphism of W");
  const auto* tame = dynamic_cast<const TameRealization*>(&l.cover->realization());
  for (std::size_t i = 0; i < wg.size(); ++i) {
    ZMat lhs = mul_mod(rule.matrix, tame->action(wg[i]), q);
    ZMat rhs = mul_mod(tame->action((*phi)[wg[i]]), rule.matrix, q);
    if (lhs != rhs) fail(Errc::RuleInvalid, "normalizer matrix does not intertwine the W-action");
  }
  if (spec.torus_quotient && !preserves_line(rule.matrix, to_vec(*spec.torus_quotient), spec.p))
    fail(Errc::RuleInvalid, "normalizer matrix does not preserve the torus quotient");
  GeneratorDatum d{s.generators(), {{}}};
  for (Elt y : s.generators()) {
    Key k = coords(l, y);
    ZVec v(r);
    for (int i = 0; i < r; ++i) v(i) = k[i];
    ZVec bv = rule.matrix * v;
    Key nk(k.size());
    for (int i = 0; i < r; ++i) nk[i] = static_cast<std::int32_t>(modq(bv(i), q));
    nk[r] = static_cast<std::int32_t>((*phi)[static_cast<Elt>(k[r])]);
    d.automorphisms[0].push_back(at(l, nk));
  }
  return d;
}

std::vector<GeneratorDatum> elementary_data(const TowerSpec& spec, const TruncationLevel& l,
                                            EssentialSelection sel) {
  std::vector<GeneratorDatum> out;
  if (sel == EssentialSelection::None) return out;
  const Group& s = *l.s;
  const auto& lat = *l.lattice;
  const Subgroup z = center(s);
  const auto p = static_cast<std::uint64_t>(spec.p);
  if (z.order() != p) fail(Errc::RuleInvalid, "elementary rule needs |Z(S_n)| = p");
  std::vector<std::size_t> cand;
  for (std::size_t i = 0; i < lat.size(); ++i) {
    const Subgroup& h = lat[i];
    if (h.order() != p * p || exponent(s, h) != p) continue;
    if (!(intersection(s, h, l.torus).bits == z.bits)) continue;
    cand.push_back(i);
  }
  // S-classes by conjugating with the generators of S
  std::map<std::size_t, std::size_t> cls;
  for (auto i : cand) {
    if (cls.contains(i)) continue;
    std::vector<std::size_t> orbit{i};
    cls[i] = i;
    for (std::size_t k = 0; k < orbit.size(); ++k)
      for (Elt g : s.generators()) {
        auto j = *lat.index_of(conjugate(s, lat[orbit[k]], g));
        if (cls.emplace(j, i).second) orbit.push_back(j);
      }
  }
  std::set<std::size_t> chosen;
  if (sel == EssentialSelection::All) {
    for (auto& [i, c] : cls) chosen.insert(c);
  } else {
    Key k(static_cast<std::size_t>(spec.rank + 1), 0);
    k[spec.rank] = static_cast<std::int32_t>(spec.complement->generators().at(0));
    Subgroup base = closure(s, {z.gens.empty() ? z.elems[1] : z.gens[0], at(l, k)});
    auto bi = lat.index_of(base);
    if (!bi || !cls.contains(*bi)) fail(Errc::RuleInvalid, "Z(S)<x> is not an elementary subgroup meeting T in Z(S)");
    chosen.insert(cls[*bi]);
  }
  const Elt u = z.elems[1];
  for (auto i : chosen) {
    const Subgroup& e = lat[i];
    Elt v = 0;
    for (Elt y : e.elems)
      if (!z.contains(y)) {
        v = y;
        break;
      }
    const Elt uv = s.mul(u, v);
    out.push_back({{u, v}, {{u, uv}, {uv, v}}});
  }
  return out;
}

FusionPtr level_fusion(const TowerSpec& spec, const TruncationLevel& l) {
  std::vector<GeneratorDatum> data;
  for (const auto& rule : spec.normalizer) data.push_back(normalizer_datum(spec, l, rule));
  for (auto& d : elementary_data(spec, l, spec.elementary)) data.push_back(std::move(d));
  return generated_fusion(l.s, l.lattice, data);
}

Subgroup image_of(const Group& g, const std::vector<Elt>& emb, const Subgroup& h) {
  std::vector<Elt> e;
  for (Elt x : h.elems) e.push_back(emb[x]);
  std::sort(e.begin(), e.end());
  Subgroup out = make_subgroup(g, e, {});
  out.gens = small_generating_set(g, out);
  return out;
}

Threshold confirm(std::optional<int> v, const std::vector<TruncationLevel>& levels) {
  Threshold t{v, false};
  if (!v) return t;
  int above = 0;
  for (const auto& l : levels) above += l.n >= *v;
  t.confirmed = above >= 3;
  return t;
}

}  // namespace

TruncationLevel build_level(const TowerSpec& spec, int n) {
  validate(spec);
  if (n < 1) fail(Errc::InvalidSpec, "tower level must be positive");
  const int r = spec.rank;
  TruncationLevel l;
  l.n = n;
  l.cover = tame_group(spec.p, n, r, spec.complement, spec.action);
  const std::size_t order = l.cover->order();
  if (spec.torus_quotient) {
    const ZVec v = to_vec(*spec.torus_quotient);
    if (rank_mod_p(ZMat(v), spec.p) != 1) fail(Errc::InvalidSpec, "torus quotient vector is zero mod p");
    const auto* tame = dynamic_cast<const TameRealization*>(&l.cover->realization());
    for (Elt g : spec.complement->generators()) {
      ZVec mv = tame->action(g) * v - v;
      for (Eigen::Index i = 0; i < mv.size(); ++i)
        if (modq(mv(i), spec.p) != 0) fail(Errc::RuleInvalid, "torus quotient vector is not W-fixed mod p");
    }
    Key k(static_cast<std::size_t>(r + 1), 0);
    const std::int64_t q = ipow(spec.p, n);
    for (int i = 0; i < r; ++i) k[i] = static_cast<std::int32_t>(modq(ipow(spec.p, n - 1) * v(i), q));
    auto quo = quotient_group(l.cover, closure(*l.cover, {*l.cover->find(k)}));
    l.s = quo.group;
    l.proj = std::move(quo.proj);
    l.reps = std::move(quo.reps);
  } else {
    l.s = l.cover;
    l.proj.resize(order);
    std::iota(l.proj.begin(), l.proj.end(), 0);
    l.reps = l.proj;
  }
  std::vector<Elt> t;
  for (Elt y = 0; y < l.s->order(); ++y)
    if (coords(l, y)[r] == 0) t.push_back(y);
  l.torus = make_subgroup(*l.s, t, {});
  l.torus.gens = small_generating_set(*l.s, l.torus);
  l.lattice = std::make_shared<const SubgroupLattice>(*l.s, whole_group(*l.s));
  l.f = level_fusion(spec, l);
  return l;
}

std::vector<TruncationLevel> build_levels(const TowerSpec& spec) {
  validate(spec);
  std::vector<TruncationLevel> out;
  for (int n = spec.n0; n <= spec.n1; ++n) out.push_back(build_level(spec, n));
  return out;
}

std::vector<Elt> inclusion(const TowerSpec& spec, const TruncationLevel& lo, const TruncationLevel& hi) {
  if (hi.n < lo.n) fail(Errc::BadParameters, "inclusion runs from a lower to a higher level");
  const std::int64_t f = ipow(spec.p, hi.n - lo.n);
  std::vector<Elt> out(lo.s->order());
  for (Elt y = 0; y < lo.s->order(); ++y) {
    Key k = coords(lo, y);
    for (int i = 0; i < spec.rank; ++i) k[i] = static_cast<std::int32_t>(k[i] * f);
    out[y] = at(hi, k);
  }
  return out;
}

StabilizationReport verify_tower(const TowerSpec& spec, const std::vector<TruncationLevel>& levels) {
  StabilizationReport rep;
  for (const auto& l : levels) rep.levels.push_back(l.n);
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    const auto emb = inclusion(spec, levels[i], levels[i + 1]);
    if (auto bad = subsystem_violation(*levels[i].f, *levels[i + 1].f, emb)) {
      rep.increasing = false;
      const Subgroup& src = levels[i].f->sub(bad->src);
      fail(Errc::NotIncreasing, "F_" + std::to_string(levels[i].n) + " is not contained in F_" +
                                    std::to_string(levels[i + 1].n) + ": a morphism on a subgroup of order " +
                                    std::to_string(src.order()) + " (lattice index " + std::to_string(bad->src) +
                                    ") has no image");
    }
  }

  auto least = [&](auto&& holds) -> std::optional<int> {
    for (const auto& cand : levels) {
      bool ok = true;
      for (const auto& l : levels)
        if (l.n >= cand.n && !holds(cand.n, l)) {
          ok = false;
          break;
        }
      if (ok) return cand.n;
    }
    return std::nullopt;
  };
  rep.centralizer = confirm(least([&](int n, const TruncationLevel& l) {
                              Subgroup om = omega_layer(*l.s, l.torus, n);
                              return centralizer(*l.s, om).bits == l.torus.bits;
                            }),
                            levels);
  rep.injectivity = confirm(least([&](int n, const TruncationLevel& l) {
                              Subgroup om = omega_layer(*l.s, l.torus, n);
                              const auto auts = l.f->automizer_of(l.f->index_of(l.torus));
                              std::set<std::vector<Elt>> restricted;
                              for (const auto& a : auts) {
                                std::vector<Elt> m;
                                for (Elt x : om.elems) m.push_back(a[l.torus.position(x)]);
                                restricted.insert(std::move(m));
                              }
                              return restricted.size() == auts.size();
                            }),
                            levels);

  for (const auto& l : levels) rep.torus_automizer_orders.push_back(l.f->automizer_order(l.f->index_of(l.torus)));
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    const auto& lo = levels[i];
    const auto& hi = levels[i + 1];
    const auto emb = inclusion(spec, lo, hi);
    std::vector<std::int64_t> back(hi.s->order(), -1);
    for (Elt y = 0; y < lo.s->order(); ++y) back[emb[y]] = y;
    std::set<std::vector<Elt>> down;
    bool ok = true;
    for (const auto& a : hi.f->automizer_of(hi.f->index_of(hi.torus))) {
      std::vector<Elt> m;
      for (Elt x : lo.torus.elems) {
        auto b = back[a[hi.torus.position(emb[x])]];
        if (b < 0) {
          ok = false;
          break;
        }
        m.push_back(static_cast<Elt>(b));
      }
      if (!ok) break;
      down.insert(std::move(m));
    }
    const auto mine = lo.f->automizer_of(lo.f->index_of(lo.torus));
    ok = ok && down == std::set<std::vector<Elt>>(mine.begin(), mine.end());
    rep.automizer_compatible.push_back(ok);
  }
  std::optional<int> at_level;
  for (std::size_t i = levels.size(); i-- > 0;) {
    if (i + 1 < levels.size() &&
        (!rep.automizer_compatible[i] || rep.torus_automizer_orders[i] != rep.torus_automizer_orders[i + 1]))
      break;
    at_level = levels[i].n;
  }
  rep.automizer = confirm(at_level, levels);
  return rep;
}

TorusAutomizer torus_automizer(const TowerSpec& spec, const std::vector<TruncationLevel>& levels) {
  auto rep = verify_tower(spec, levels);
  if (!rep.automizer.confirmed)
    fail(Errc::NotStabilized, "torus automizer does not stabilize within the built levels");
  const auto& top = levels.back();
  TorusAutomizer out;
  out.level = top.n;
  out.modulus = ipow(spec.p, top.n);
  const auto auts = top.f->automizer_of(top.f->index_of(top.torus));
  out.order = auts.size();
  out.stable = true;
  if (spec.torus_quotient) return out;
  const int r = spec.rank;
  std::vector<std::vector<std::int64_t>> flat;
  for (const auto& a : auts) {
    std::vector<std::int64_t> m(static_cast<std::size_t>(r * r));
    for (int j = 0; j < r; ++j) {
      Key e(static_cast<std::size_t>(r + 1), 0);
      e[j] = 1;
      Key img = coords(top, a[top.torus.position(at(top, e))]);
      for (int i = 0; i < r; ++i) m[static_cast<std::size_t>(i * r + j)] = img[i];
    }
    flat.push_back(std::move(m));
  }
  std::sort(flat.begin(), flat.end());
  for (const auto& m : flat) {
    ZMat z(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) z(i, j) = m[static_cast<std::size_t>(i * r + j)];
    out.matrices.push_back(z);
  }
  return out;
}

MinscChain minsc_tower(const TowerSpec& spec, const std::vector<TruncationLevel>& levels) {
  MinscChain out;
  const auto& top = levels.back();
  const Group& st = *top.s;
  const Subgroup zt = center(st);
  const Subgroup om1 = omega_layer(st, zt, 1);
  std::vector<Subgroup> minsc_img;
  for (const auto& l : levels) {
    const auto& f = *l.f;
    const Group& s = *l.s;
    MinscEntry e;
    e.n = l.n;
    auto sc = strongly_closed_lattice(f);
    const Subgroup& m = f.sub(sc.minsc);
    e.minsc_order = m.order();
    e.minsc_is_s = m.order() == s.order();
    e.minsc_trivial = sc.minsc_trivial;
    for (auto i : sc.subgroups) {
      const Subgroup& h = f.sub(i);
      e.strongly_closed_orders.push_back(h.order());
      if (l.torus.bits.subset_of(h.bits) && h.order() < s.order()) e.proper_over_torus_strongly_closed = true;
    }
    std::sort(e.strongly_closed_orders.begin(), e.strongly_closed_orders.end());
    const auto ec = element_classes(f);
    std::set<std::uint32_t> torus_classes;
    for (Elt x : l.torus.elems) torus_classes.insert(ec[x]);
    for (Elt x = 0; x < s.order(); ++x)
      if (!l.torus.contains(x) && torus_classes.contains(ec[x])) e.outside_fused_into_torus = true;
    out.entries.push_back(std::move(e));
    minsc_img.push_back(image_of(st, inclusion(spec, l, top), m));
  }
  for (std::size_t i = levels.size(); i-- > 0;) {
    const Subgroup img = image_of(st, inclusion(spec, levels[i], top), whole_group(*levels[i].s));
    if (!om1.bits.subset_of(img.bits) || !(centralizer(st, img).bits == zt.bits)) break;
    out.threshold = levels[i].n;
  }
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    if (!out.threshold || levels[i].n < *out.threshold) continue;
    if (!minsc_img[i].bits.subset_of(minsc_img[i + 1].bits)) out.monotone = false;
  }
  Subgroup u = trivial_subgroup(st);
  for (const auto& m : minsc_img) u = join(st, u, m);
  out.union_order = u.order();
  return out;
}

// --- torus action ---------------------------------------------------------------------

std::vector<ZMat> matrix_group_elements(const std::vector<ZMat>& gens, std::int64_t p, int k) {
  const std::int64_t q = ipow(p, k);
  auto flat = [](const ZMat& m) { return std::vector<std::int64_t>(m.data(), m.data() + m.size()); };
  if (gens.empty()) return {};
  const auto n = gens[0].rows();
  std::map<std::vector<std::int64_t>, ZMat> seen;
  std::vector<ZMat> queue{ZMat::Identity(n, n)};
  seen.emplace(flat(queue[0]), queue[0]);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (const auto& g : gens) {
      ZMat m = mul_mod(queue[i], g, q);
      if (seen.emplace(flat(m), m).second) {
        queue.push_back(m);
        if (queue.size() > caps().order) fail(Errc::CapExceeded, "matrix group exceeds the order cap");
      }
    }
  }
  std::vector<ZMat> out;
  for (auto& [k2, m] : seen) out.push_back(m);
  return out;
}

SubtorusProfile invariant_subtorus_profile(const std::vector<ZMat>& gens, std::int64_t p, int rank, int k_max) {
  SubtorusProfile out;
  std::vector<ZMat> tg;
  for (const auto& g : gens) tg.push_back(ZMat(g.transpose()));
  for (int k = 1; k <= k_max; ++k) {
    const std::int64_t q = ipow(p, k);
    if (static_cast<double>(rank) * k * std::log2(static_cast<double>(p)) > 22)
      fail(Errc::CapExceeded, "subtorus profile: too many dual vectors");
    const auto group = tg.empty() ? std::vector<ZMat>{ZMat::Identity(rank, rank)} : matrix_group_elements(tg, p, k);
    // Annihilators of invariant subtori are invariant summands of the dual; the
    // least one through u has rank at least the number of unit-or-less divisors.
    int least = rank;
    ZVec u = ZVec::Zero(rank);
    const std::int64_t total = ipow(q, rank);
    for (std::int64_t code = 0; code < total && least > 1; ++code) {
      std::int64_t c = code;
      int first_unit = -1;
      for (int i = 0; i < rank; ++i) {
        u(i) = c % q;
        c /= q;
        if (first_unit < 0 && u(i) % p != 0) first_unit = i;
      }
      if (first_unit < 0 || u(first_unit) != 1) continue;
      ZMat span(static_cast<Eigen::Index>(group.size()), rank);
      for (std::size_t j = 0; j < group.size(); ++j) span.row(static_cast<Eigen::Index>(j)) = (group[j] * u).transpose();
      auto vals = local_smith_valuations(span, p, k);
      int rk = 0;
      for (int v : vals) rk += v < k;
      least = std::min(least, rk);
    }
    out.max_proper_rank.push_back(rank - least);
  }
  for (int k = k_max; k >= 1 && out.max_proper_rank[k - 1] == 0; --k) out.none_from = k;
  out.stably_none = out.none_from && *out.none_from < k_max;
  return out;
}

CentralizerVerdict centralizer_exponent_check(const std::vector<ZMat>& gens, std::int64_t p, int rank, int k_max) {
  CentralizerVerdict out;
  if (!gens.empty()) {
    auto w = matrix_group_elements(gens, p, k_max);
    out.ell = vp(static_cast<std::int64_t>(w.size()), p);
  }
  for (int k = 1; k <= k_max; ++k) {
    ZMat stack(static_cast<Eigen::Index>(std::max<std::size_t>(gens.size(), 1)) * rank, rank);
    stack.setZero();
    for (std::size_t i = 0; i < gens.size(); ++i)
      stack.block(static_cast<Eigen::Index>(i) * rank, 0, rank, rank) = gens[i] - ZMat::Identity(rank, rank);
    CentralizerLevel c{k, 1, 1};
    int top = 0;
    for (int v : local_smith_valuations(stack, p, k)) {
      c.order *= static_cast<std::uint64_t>(ipow(p, v));
      top = std::max(top, v);
    }
    c.exponent = static_cast<std::uint64_t>(ipow(p, top));
    out.levels.push_back(c);
  }
  const auto& lv = out.levels;
  if (lv.size() >= 3) {
    const auto a = lv[lv.size() - 3].order, b = lv[lv.size() - 2].order, c = lv.back().order;
    out.stabilizing = a == b && b == c;
    out.growing = a < b && b < c;
  }
  out.dichotomy_holds = out.growing ||
                        (out.stabilizing && lv.back().exponent <= static_cast<std::uint64_t>(ipow(p, out.ell)));
  return out;
}

FaithfulnessVerdict faithfulness_check(std::int64_t p, int rank, int k, int m) {
  if (!is_prime(p) || rank < 1 || k < 1 || m < 1 || m > k) fail(Errc::BadParameters, "faithfulness check parameters");
  FaithfulnessVerdict out;
  out.p = p;
  out.rank = rank;
  out.k = k;
  out.m = m;
  const std::int64_t q = ipow(p, k);
  const std::int64_t step = ipow(p, m);
  const std::int64_t per = ipow(p, k - m);
  const int cells = rank * rank;
  if (static_cast<double>(cells) * (k - m) * std::log2(static_cast<double>(p)) > 23)
    fail(Errc::CapExceeded, "faithfulness check: too many matrices");
  const std::int64_t total = ipow(per, cells);
  const ZMat id = ZMat::Identity(rank, rank);
  for (std::int64_t code = 1; code < total; ++code) {
    ZMat n(rank, rank);
    std::int64_t c = code;
    for (int i = 0; i < cells; ++i) {
      n(i / rank, i % rank) = c % per;
      c /= per;
    }
    const ZMat a = reduce(id + step * n, q);
    int j = k;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      const std::int64_t d = modq((a - id)(i), q);
      if (d != 0) j = std::min(j, vp(d, p));
    }
    int t = 0;
    for (ZMat b = a; !is_identity_mod(b, q); b = pow_mod(b, p, q)) ++t;
    ++out.checked;
    if (t != k - j) {
      out.faithful = false;
      ++out.violations;
      if (out.counterexamples.size() < 4 || a == reduce(-id, q))
        out.counterexamples.emplace_back(a, static_cast<std::uint64_t>(ipow(p, t)));
    }
  }
  return out;
}

// --- fixtures ---------------------------------------------------------------------------

TowerSpec so3_tower(int n0, int n1) {
  TowerSpec t;
  t.p = 2;
  t.rank = 1;
  t.complement = cyclic_group(2);
  t.action = {ZMat::Constant(1, 1, -1)};
  t.elementary = EssentialSelection::All;
  t.n0 = n0;
  t.n1 = n1;
  t.name = "SO(3)";
  return t;
}

TowerSpec psl3_tower(int n0, int n1, bool exotic) {
  TowerSpec t;
  t.p = 3;
  t.rank = 2;
  t.complement = cyclic_group(3);
  ZMat m(2, 2);
  m << -1, -1, 1, 0;
  t.action = {m};
  t.torus_quotient = std::vector<std::int64_t>{1, 1};
  ZMat swap(2, 2);
  swap << 0, 1, 1, 0;
  t.normalizer = {{swap, {{2}}}};
  t.elementary = exotic ? EssentialSelection::Base : EssentialSelection::All;
  t.n0 = n0;
  t.n1 = n1;
  t.name = exotic ? "PSL3 exotic" : "PSL3";
  return t;
}

RealExoChain real_exo_chain(int e) {
  RealExoChain c;
  const TowerSpec real = psl3_tower(e, e + 1, false);
  const TowerSpec exo = psl3_tower(e, e + 1, true);
  c.f0 = build_level(real, e);
  c.f1 = build_level(exo, e + 1);
  c.f2 = c.f1;
  c.f2.f = level_fusion(real, c.f2);
  c.f0_in_f1 = !subsystem_violation(*c.f0.f, *c.f1.f, inclusion(real, c.f0, c.f1));
  std::vector<Elt> id(c.f1.s->order());
  std::iota(id.begin(), id.end(), 0);
  c.f1_in_f2 = !subsystem_violation(*c.f1.f, *c.f2.f, id);
  c.proper = c.f0.f->morphism_count() < c.f1.f->morphism_count() &&
             c.f1.f->morphism_count() < c.f2.f->morphism_count();
  c.saturated = {saturation_check(*c.f0.f).saturated(), saturation_check(*c.f1.f).saturated(),
                 saturation_check(*c.f2.f).saturated()};
  return c;
}

}  // namespace ptl
