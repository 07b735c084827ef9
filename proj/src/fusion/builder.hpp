#pragma once

#include "ptoral/fusion.hpp"

namespace ptl {

// Closure of Hom_S together with arbitrary morphisms between subgroups of S.
FusionPtr generated_by_maps(const GroupPtr& s, std::shared_ptr<const SubgroupLattice> lat,
                            const std::vector<FusionMap>& maps, std::optional<GroupOrigin> origin = std::nullopt);

// The morphism with source lat[src] given elementwise by `fn`.
template <class Fn>
FusionMap map_by(const SubgroupLattice& lat, std::size_t n, std::size_t src, Fn fn) {
  const Subgroup& p = lat[src];
  FusionMap m{static_cast<std::uint32_t>(src), 0, std::vector<Elt>(p.order())};
  Bitset b(n);
  for (std::size_t k = 0; k < p.order(); ++k) {
    m.img[k] = fn(p.elems[k]);
    b.set(m.img[k]);
  }
  auto d = lat.index_of(b);
  if (!d) fail(Errc::SearchFailed, "image of a subgroup map is not a subgroup");
  m.dst = static_cast<std::uint32_t>(*d);
  return m;
}

}  // namespace ptl
