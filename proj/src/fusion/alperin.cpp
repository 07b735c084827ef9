#include "ptoral/fusion.hpp"

#include <algorithm>
#include <map>

namespace ptl {

AlperinData::AlperinData(const FusionSystem& f) : f_(f), gens_(f.lattice().size()) {
  const std::uint32_t top = static_cast<std::uint32_t>(f.lattice().size() - 1);
  for (std::size_t c = 0; c < f.class_count(); ++c) {
    // least fully normalized member of each centric radical class, and S
    for (auto m : f.members(c)) {
      if (!fully_normalized(f, m)) continue;
      if (m == top || (centric(f, m) && radical(f, m))) subs_.push_back(m);
      break;
    }
  }
  std::sort(subs_.begin(), subs_.end());
  for (auto r : subs_) {
    FusionMap io = f.iota(r);
    FusionMap ii = inverse(f, io);
    const std::uint32_t rep = f.rep(f.class_of(r));
    for (const auto& a : f.automizer_gens(f.class_of(r)))
      gens_[r].push_back(compose(f, ii, compose(f, FusionMap{rep, rep, a}, io)).img);
  }
}

const std::vector<std::vector<Elt>>& AlperinData::generators(std::uint32_t r) const { return gens_[r]; }

namespace {

struct Node {
  std::int64_t parent = -1;
  AlperinStep step;
  FusionMap map;
};

}  // namespace

// Breadth-first search over morphisms with source P; each edge applies one
// generator of Aut_F(R) restricted to the current image.
static std::vector<Node> explore(const FusionSystem& f, const std::vector<std::uint32_t>& subs,
                                 const std::vector<std::vector<std::vector<Elt>>>& gens, std::uint32_t p,
                                 const FusionMap* target) {
  std::vector<Node> nodes;
  std::map<std::vector<Elt>, std::size_t> seen;
  nodes.push_back({-1, {}, identity_map(f, p)});
  seen.emplace(nodes[0].map.img, 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (target && nodes[i].map == *target) break;
    const std::uint32_t x = nodes[i].map.dst;
    for (auto r : subs) {
      if (!f.sub(x).bits.subset_of(f.sub(r).bits)) continue;
      for (std::uint32_t gi = 0; gi < gens[r].size(); ++gi) {
        FusionMap g = restrict_to(f, FusionMap{r, r, gens[r][gi]}, x);
        FusionMap next = compose(f, g, nodes[i].map);
        if (seen.contains(next.img)) continue;
        seen.emplace(next.img, nodes.size());
        nodes.push_back({static_cast<std::int64_t>(i), {r, gi, x}, std::move(next)});
      }
    }
  }
  return nodes;
}

std::optional<AlperinWord> AlperinData::certificate(const FusionMap& phi) const {
  if (!f_.contains(phi)) return std::nullopt;
  auto nodes = explore(f_, subs_, gens_, phi.src, &phi);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!(nodes[i].map == phi)) continue;
    AlperinWord w{phi.src, {}};
    for (std::int64_t j = static_cast<std::int64_t>(i); nodes[j].parent >= 0; j = nodes[j].parent)
      w.steps.push_back(nodes[j].step);
    std::reverse(w.steps.begin(), w.steps.end());
    return w;
  }
  return std::nullopt;
}

FusionMap AlperinData::recompose(const AlperinWord& w) const {
  FusionMap m = identity_map(f_, w.src);
  for (const auto& st : w.steps) {
    if (st.applied_to != m.dst || st.generator >= gens_[st.r].size())
      fail(Errc::InvalidSpec, "Alperin word does not compose");
    m = compose(f_, restrict_to(f_, FusionMap{st.r, st.r, gens_[st.r][st.generator]}, m.dst), m);
  }
  return m;
}

std::pair<std::uint64_t, std::uint64_t> AlperinData::coverage(std::uint32_t p) const {
  auto nodes = explore(f_, subs_, gens_, p, nullptr);
  const std::uint32_t c = f_.class_of(p);
  return {nodes.size(), f_.members(c).size() * f_.automizer(c).size()};
}

}  // namespace ptl
