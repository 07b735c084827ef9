#include "ptoral/gate.hpp"

#include "ptoral/families.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <set>

namespace ptl {

namespace {

const MatrixRealization& matrix_real(const ModRep& r) {
  const auto* m = dynamic_cast<const MatrixRealization*>(&r.group->realization());
  if (!m) fail(Errc::InvalidSpec, "representation group is not a matrix group");
  return *m;
}

std::int64_t primitive_root(std::int64_t p) {
  for (std::int64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (const auto& f : factorize(p - 1)) {
      std::int64_t x = 1;
      for (std::int64_t i = 0; i < (p - 1) / f.first; ++i) x = x * g % p;
      if (x == 1) ok = false;
    }
    if (ok) return g;
  }
  return 1;
}

ZMat perm_matrix(int n, const std::vector<int>& img) {
  ZMat m = ZMat::Zero(n, n);
  for (int i = 0; i < n; ++i) m(img[i], i) = 1;
  return m;
}

// Column Hermite normal form of an integer matrix of full row rank n.
ZMat hnf_basis(ZMat a) {
  const Eigen::Index n = a.rows();
  Eigen::Index col = 0;
  for (Eigen::Index r = 0; r < n; ++r) {
    // Euclid on the columns col.. in row r
    for (;;) {
      Eigen::Index piv = -1;
      for (Eigen::Index c = col; c < a.cols(); ++c)
        if (a(r, c) != 0 && (piv < 0 || std::llabs(a(r, c)) < std::llabs(a(r, piv)))) piv = c;
      if (piv < 0) fail(Errc::InvalidSpec, "lattice generators do not span");
      a.col(col).swap(a.col(piv));
      bool done = true;
      for (Eigen::Index c = col + 1; c < a.cols(); ++c) {
        std::int64_t qt = a(r, c) / a(r, col);
        a.col(c) -= qt * a.col(col);
        if (a(r, c) != 0) done = false;
      }
      if (done) break;
    }
    if (a(r, col) < 0) a.col(col) = -a.col(col);
    for (Eigen::Index c = 0; c < col; ++c) {
      const std::int64_t qt = (a(r, c) - modq(a(r, c), a(r, col))) / a(r, col);
      a.col(c) -= qt * a.col(col);
    }
    ++col;
  }
  return a.leftCols(n);
}

std::int64_t det_int(const ZMat& m) {
  Eigen::MatrixXd d = m.cast<double>();
  return static_cast<std::int64_t>(std::llround(d.determinant()));
}

// B^-1 S B, exactly.
ZMat conjugate_integral(const ZMat& b, const ZMat& s) {
  Eigen::MatrixXd bd = b.cast<double>();
  Eigen::MatrixXd x = bd.fullPivLu().solve((s * b).cast<double>());
  ZMat out = x.unaryExpr([](double v) { return static_cast<std::int64_t>(std::llround(v)); });
  if (b * out != s * b) fail(Errc::InvalidSpec, "lattice is not stable under the Weyl group");
  return out;
}

}  // namespace

ModRep make_modrep(std::int64_t p, int k, std::vector<ZMat> gens, std::string name, GroupPtr abstract) {
  if (!is_prime(p)) fail(Errc::InvalidSpec, "representation prime is not prime");
  if (k < 1) fail(Errc::InvalidSpec, "representation needs k >= 1");
  if (gens.empty()) fail(Errc::InvalidSpec, "representation needs at least one generator");
  const int r = static_cast<int>(gens.front().rows());
  if (r < 1) fail(Errc::InvalidSpec, "representation rank must be positive");
  const std::int64_t q = ipow(p, k);
  for (auto& g : gens) {
    if (g.rows() != r || g.cols() != r) fail(Errc::InvalidSpec, "generators must be square of equal size");
    g = reduce(g, q);
  }
  ModRep out;
  out.p = p;
  out.k = k;
  out.rank = r;
  out.gens = gens;
  out.name = std::move(name);
  out.group = matrix_group(r, p, k, gens);
  if (abstract) {
    const auto& mr = matrix_real(out);
    const auto& ag = abstract->generators();
    if (ag.size() != gens.size()) fail(Errc::InvalidSpec, "abstract group has a different number of generators");
    std::vector<Elt> images;
    for (const auto& g : gens) images.push_back(*out.group->find(mr.encode(g)));
    if (!extend_hom(*abstract, ag, *out.group, images))
      fail(Errc::InvalidSpec, "generator matrices do not define a homomorphism from the abstract group");
    out.abstract = std::move(abstract);
  }
  return out;
}

ModRep reduce_rep(const ModRep& r, int k) {
  if (k > r.k) fail(Errc::InvalidSpec, "cannot raise the precision of a representation");
  return make_modrep(r.p, k, r.gens, r.name);
}

ZMat element_matrix(const ModRep& r, Elt x) { return matrix_real(r).decode(r.group->key(x)); }

std::vector<ZMat> subgroup_matrices(const ModRep& r, const Subgroup& h) {
  std::vector<Elt> gens = h.gens.empty() ? small_generating_set(*r.group, h) : h.gens;
  std::vector<ZMat> out;
  for (Elt g : gens) out.push_back(element_matrix(r, g));
  if (out.empty()) out.push_back(ZMat::Identity(r.rank, r.rank));
  return out;
}

ModRep build_G_m_k_n(std::int64_t p, int m, int k, int n) {
  if (!is_prime(p) || m < 1 || k < 1 || m % k != 0 || (p - 1) % m != 0 || n < 2)
    fail(Errc::BadParameters, "G(m,k,n) needs k | m | p - 1 and n >= 2");
  const std::int64_t zeta = [&] {
    const std::int64_t g = primitive_root(p);
    std::int64_t z = 1;
    for (std::int64_t i = 0; i < (p - 1) / m; ++i) z = z * g % p;
    return z;
  }();
  std::vector<ZMat> gens;
  std::vector<int> swap(n), cyc(n);
  for (int i = 0; i < n; ++i) {
    swap[i] = i;
    cyc[i] = (i + 1) % n;
  }
  std::swap(swap[0], swap[1]);
  gens.push_back(perm_matrix(n, swap));
  if (n > 2) gens.push_back(perm_matrix(n, cyc));
  if (m > 1) {
    ZMat d = ZMat::Identity(n, n);
    d(0, 0) = zeta;
    d(1, 1) = *inv_mod(zeta, p);
    gens.push_back(d);
    if (k < m) {
      ZMat e = ZMat::Identity(n, n);
      e(0, 0) = 1;
      for (int i = 0; i < k; ++i) e(0, 0) = e(0, 0) * zeta % p;
      gens.push_back(e);
    }
  }
  auto r = make_modrep(p, 1, gens, "G(" + std::to_string(m) + "," + std::to_string(k) + "," + std::to_string(n) + ")");
  std::uint64_t expect = 1;
  for (int i = 0; i < n; ++i) expect *= static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(i + 1);
  expect /= static_cast<std::uint64_t>(k);
  if (r.group->order() != expect) fail(Errc::InvalidSpec, "G(m,k,n) has the wrong order");
  return r;
}

LieType parse_lie_type(const std::string& s) {
  static const std::pair<const char*, LieType> names[] = {{"A", LieType::A},   {"B", LieType::B},   {"C", LieType::C},
                                                         {"D", LieType::D},   {"G2", LieType::G2}, {"F4", LieType::F4},
                                                         {"E6", LieType::E6}, {"E7", LieType::E7}, {"E8", LieType::E8},
                                                         {"G", LieType::G2},  {"F", LieType::F4}};
  for (const auto& [n, t] : names)
    if (s == n) return t;
  fail(Errc::InvalidSpec, "unknown Lie type " + s);
}

std::string lie_name(LieType t, int rank) {
  switch (t) {
    case LieType::A: return "A" + std::to_string(rank);
    case LieType::B: return "B" + std::to_string(rank);
    case LieType::C: return "C" + std::to_string(rank);
    case LieType::D: return "D" + std::to_string(rank);
    case LieType::G2: return "G2";
    case LieType::F4: return "F4";
    case LieType::E6: return "E6";
    case LieType::E7: return "E7";
    case LieType::E8: return "E8";
  }
  return "?";
}

namespace {

int fixed_rank(LieType t) {
  switch (t) {
    case LieType::G2: return 2;
    case LieType::F4: return 4;
    case LieType::E6: return 6;
    case LieType::E7: return 7;
    case LieType::E8: return 8;
    default: return 0;
  }
}

void check_rank(LieType t, int rank) {
  const int f = fixed_rank(t);
  if (f && rank != f) fail(Errc::BadParameters, lie_name(t, f) + " has rank " + std::to_string(f));
  const int least = t == LieType::A ? 1 : t == LieType::B ? 2 : t == LieType::C ? 2 : t == LieType::D ? 3 : f;
  if (rank < least) fail(Errc::BadParameters, "rank too small for the Lie type");
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

}  // namespace

std::uint64_t weyl_order(LieType t, int n) {
  check_rank(t, n);
  switch (t) {
    case LieType::A: return factorial(n + 1);
    case LieType::B:
    case LieType::C: return (std::uint64_t{1} << n) * factorial(n);
    case LieType::D: return (std::uint64_t{1} << (n - 1)) * factorial(n);
    case LieType::G2: return 12;
    case LieType::F4: return 1152;
    case LieType::E6: return 51840;
    case LieType::E7: return 2903040;
    case LieType::E8: return 696729600;
  }
  return 0;
}

// A(i, j) = <alpha_i, alpha_j^vee>, Bourbaki numbering.
ZMat cartan_matrix(LieType t, int n) {
  check_rank(t, n);
  ZMat a = ZMat::Zero(n, n);
  for (int i = 0; i < n; ++i) a(i, i) = 2;
  auto link = [&](int i, int j) { a(i, j) = a(j, i) = -1; };
  switch (t) {
    case LieType::A:
    case LieType::B:
    case LieType::C:
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      if (t == LieType::B) a(n - 2, n - 1) = -2;
      if (t == LieType::C) a(n - 1, n - 2) = -2;
      break;
    case LieType::D:
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
      link(n - 3, n - 1);
      break;
    case LieType::G2:
      a(0, 1) = -1;
      a(1, 0) = -3;
      break;
    case LieType::F4:
      link(0, 1);
      link(1, 2);
      link(2, 3);
      a(1, 2) = -2;
      break;
    case LieType::E6:
    case LieType::E7:
    case LieType::E8:
      // 1-3-4-5-6-7-8 with 2 attached to 4
      link(0, 2);
      link(1, 3);
      for (int i = 2; i + 1 < n; ++i) link(i, i + 1);
      break;
  }
  return a;
}

std::vector<WeylLattice> weyl_lattices(LieType t, int rank) {
  const ZMat a = cartan_matrix(t, rank);
  const ZMat q = hnf_basis(a.transpose());
  const std::int64_t det = std::llabs(det_int(q));
  std::vector<WeylLattice> out;
  std::set<std::vector<std::int64_t>> seen;
  auto add = [&](const std::string& name, const std::vector<ZVec>& extra) {
    ZMat gens(rank, rank + static_cast<Eigen::Index>(extra.size()));
    gens.leftCols(rank) = q;
    for (std::size_t i = 0; i < extra.size(); ++i) gens.col(rank + static_cast<Eigen::Index>(i)) = extra[i];
    ZMat b = hnf_basis(gens);
    std::vector<std::int64_t> flat(b.data(), b.data() + b.size());
    if (!seen.insert(flat).second) return;
    out.push_back({name, b, static_cast<std::uint64_t>(det / std::llabs(det_int(b)))});
  };
  add("root", {});
  // Q + <c w_j>: every cyclic subgroup of P/Q; D_n with n even adds pairs.
  for (int j = 0; j < rank; ++j)
    for (std::int64_t c = det; c >= 1; --c) {
      if (det % c) continue;
      ZVec w = ZVec::Zero(rank);
      w(j) = c;
      add("Q+<" + (c > 1 ? std::to_string(c) : std::string()) + "w" + std::to_string(j + 1) + ">", {w});
    }
  for (int i = 0; i < rank; ++i)
    for (int j = i + 1; j < rank; ++j) {
      ZVec wi = ZVec::Zero(rank), wj = ZVec::Zero(rank);
      wi(i) = 1;
      wj(j) = 1;
      add("Q+<w" + std::to_string(i + 1) + ",w" + std::to_string(j + 1) + ">", {wi, wj});
    }
  // root first, weight last
  std::stable_sort(out.begin(), out.end(),
                   [](const WeylLattice& x, const WeylLattice& y) { return x.index_over_root < y.index_over_root; });
  for (auto& l : out)
    if (l.index_over_root == static_cast<std::uint64_t>(det)) l.name = "weight";
  return out;
}

ModRep build_weyl_classical(LieType t, int rank, std::int64_t p, int k, std::size_t lattice) {
  const auto lats = weyl_lattices(t, rank);
  if (lattice >= lats.size()) fail(Errc::BadParameters, "lattice index out of range");
  const std::uint64_t expect = weyl_order(t, rank);
  if (expect > caps().order) fail(Errc::CapExceeded, lie_name(t, rank) + " Weyl group exceeds the order cap");
  const ZMat a = cartan_matrix(t, rank);
  const ZMat& b = lats[lattice].basis;
  std::vector<ZMat> gens;
  for (int i = 0; i < rank; ++i) {
    ZMat s = ZMat::Identity(rank, rank);
    s.col(i) -= a.row(i).transpose();
    gens.push_back(conjugate_integral(b, s));
  }
  auto r = make_modrep(p, k, gens, "W(" + lie_name(t, rank) + ")/" + lats[lattice].name);
  if (r.group->order() != expect) fail(Errc::InvalidSpec, "Weyl group reduction is not faithful");
  return r;
}

ModRep build_ST12() {
  ZMat a(2, 2), b(2, 2);
  a << 1, 1, 0, 1;
  b << 0, 1, 2, 0;
  ZMat c(2, 2);
  c << 2, 0, 0, 1;
  auto r = make_modrep(3, 1, {a, b, c}, "ST12");
  if (r.group->order() != 48) fail(Errc::InvalidSpec, "ST12 has the wrong order");
  return r;
}

namespace {

// C_4 o 2^{1+4} in GL_4(5); 2 is a square root of -1 mod 5.
std::vector<ZMat> w1_generators() {
  std::vector<ZMat> g;
  ZMat d1 = ZMat::Identity(4, 4), d2 = ZMat::Identity(4, 4);
  d1(2, 2) = d1(3, 3) = 4;
  d2(1, 1) = d2(3, 3) = 4;
  g.push_back(d1);
  g.push_back(d2);
  g.push_back(perm_matrix(4, {1, 0, 3, 2}));
  g.push_back(perm_matrix(4, {2, 3, 0, 1}));
  g.push_back(ZMat::Identity(4, 4) * 2);
  return g;
}

// Order-2 reflections of GL_4(5) normalizing the group generated by `w`.
std::vector<ZMat> normalizing_reflections(const std::vector<ZMat>& w) {
  const std::int64_t p = 5;
  auto wg = matrix_group(4, p, 1, w);
  const auto& mr = dynamic_cast<const MatrixRealization&>(wg->realization());
  std::vector<ZVec> lines;
  for (int code = 1; code < 625; ++code) {
    ZVec v(4);
    int c = code;
    for (int i = 0; i < 4; ++i) {
      v(i) = c % 5;
      c /= 5;
    }
    int lead = 0;
    while (v(lead) == 0) ++lead;
    if (v(lead) == 1) lines.push_back(v);
  }
  std::vector<ZMat> out;
  std::set<std::vector<std::int64_t>> seen;
  for (const auto& u : lines)
    for (const auto& a0 : lines) {
      const std::int64_t au = modq(a0.dot(u), p);
      if (au == 0) continue;
      // r = I - u a^T with a^T u = 2
      ZVec a = (a0 * (2 * *inv_mod(au, p))).unaryExpr([](std::int64_t x) { return modq(x, 5); });
      ZMat r = reduce(ZMat::Identity(4, 4) - u * a.transpose(), p);
      const ZMat ri = r;  // an involution
      bool norm = true;
      for (const auto& g : w) {
        ZMat c = mul_mod(mul_mod(r, g, p), ri, p);
        if (!wg->find(mr.encode(c))) {
          norm = false;
          break;
        }
      }
      if (!norm) continue;
      std::vector<std::int64_t> flat(r.data(), r.data() + r.size());
      if (seen.insert(flat).second) out.push_back(r);
    }
  return out;
}

bool irreducible_over_fp(const ModRep& r) { return composition_factors(r).size() == 1; }

}  // namespace

ModRep build_ST31() {
  auto w = w1_generators();
  auto refl = normalizing_reflections(w);
  std::vector<ZMat> gens = w;
  gens.insert(gens.end(), refl.begin(), refl.end());
  auto r = make_modrep(5, 1, gens, "ST31");
  if (r.group->order() != 46080) fail(Errc::InvalidSpec, "ST31 has the wrong order");
  if (!irreducible_over_fp(r)) fail(Errc::InvalidSpec, "ST31 is reducible over F_5");
  // keep a small generating set
  auto small = small_generating_set(*r.group, whole_group(*r.group));
  std::vector<ZMat> sg;
  for (Elt x : small) sg.push_back(element_matrix(r, x));
  return make_modrep(5, 1, sg, "ST31");
}

ModRep build_ST29() {
  auto w = w1_generators();
  auto refl = normalizing_reflections(w);
  // W_1 extended by reflections whose images in ST31/W_1 = S_6 generate an
  // S_5: orders 64 * {2, 6, 24, 120} along the way.
  const std::vector<std::uint64_t> steps = {128, 384, 1536, 7680};
  std::vector<ZMat> chosen;
  std::function<bool(std::size_t)> dfs = [&](std::size_t depth) {
    if (depth == steps.size()) return true;
    for (const auto& r : refl) {
      auto gens = w;
      gens.insert(gens.end(), chosen.begin(), chosen.end());
      gens.push_back(r);
      if (matrix_group(4, 5, 1, gens)->order() != steps[depth]) continue;
      chosen.push_back(r);
      if (dfs(depth + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!dfs(0)) fail(Errc::SearchFailed, "no reflection subgroup of order 7680 in ST31");
  // generated by its 40 reflections
  std::vector<ZMat> inside;
  auto full = w;
  full.insert(full.end(), chosen.begin(), chosen.end());
  auto g = matrix_group(4, 5, 1, full);
  const auto& mr = dynamic_cast<const MatrixRealization&>(g->realization());
  for (const auto& r : refl)
    if (g->find(mr.encode(r))) inside.push_back(r);
  if (inside.size() != 40) fail(Errc::InvalidSpec, "ST29 stand-in does not have 40 reflections");
  auto rep = make_modrep(5, 1, inside, "ST29");
  if (rep.group->order() != 7680) fail(Errc::InvalidSpec, "ST29 stand-in is not generated by reflections");
  auto small = small_generating_set(*rep.group, whole_group(*rep.group));
  std::vector<ZMat> sg;
  for (Elt x : small) sg.push_back(element_matrix(rep, x));
  return make_modrep(5, 1, sg, "ST29");
}

ModRep build_ST24() {
  // GL_3(2) = <a, b | a^2 = b^3 = (ab)^7 = [a,b]^4 = 1>, lifted to Z/4
  const std::int64_t q = 4;
  auto relations = [](const ZMat& x, const ZMat& y, std::int64_t m) {
    auto one = [m](const ZMat& t) { return is_identity_mod(t, m); };
    if (!one(mul_mod(x, x, m)) || !one(pow_mod(y, 3, m))) return false;
    if (!one(pow_mod(mul_mod(x, y, m), 7, m))) return false;
    ZMat xi = *inverse_mod(x, 2, m), yi = *inverse_mod(y, 2, m);
    ZMat c = mul_mod(mul_mod(x, y, m), mul_mod(xi, yi, m), m);
    return one(pow_mod(c, 4, m));
  };
  auto binary = [](int code) {
    ZMat m(3, 3);
    for (int i = 0; i < 9; ++i) m(i / 3, i % 3) = (code >> i) & 1;
    return m;
  };
  ZMat a, b;
  bool found = false;
  for (int ca = 0; ca < 512 && !found; ++ca) {
    a = binary(ca);
    if (rank_mod_p(a, 2) < 3 || is_identity_mod(a, 2) || !is_identity_mod(mul_mod(a, a, 2), 2)) continue;
    for (int cb = 0; cb < 512 && !found; ++cb) {
      b = binary(cb);
      if (rank_mod_p(b, 2) < 3 || is_identity_mod(b, 2) || !relations(a, b, 2)) continue;
      found = matrix_group(3, 2, 1, {a, b})->order() == 168;
    }
  }
  if (!found) fail(Errc::SearchFailed, "no generating pair of GL_3(2)");
  auto lift = [&](const ZMat& m, int code) {
    ZMat l = m;
    for (int i = 0; i < 9; ++i)
      if ((code >> i) & 1) l(i / 3, i % 3) += 2;
    return l;
  };
  for (int ca = 0; ca < 512; ++ca) {
    ZMat la = lift(a, ca);
    if (!is_identity_mod(mul_mod(la, la, q), q)) continue;
    for (int cb = 0; cb < 512; ++cb) {
      ZMat lb = lift(b, cb);
      if (!relations(la, lb, q)) continue;
      ZMat minus = ZMat::Identity(3, 3) * 3;
      auto r = make_modrep(2, 2, {la, lb, minus}, "ST24");
      if (r.group->order() != 336) continue;
      return r;
    }
  }
  fail(Errc::LiftSearchFailed, "no lift of GL_3(2) to GL_3(Z/4)");
}

ModRep build_cyclotomic_affine(std::int64_t p, int k) {
  if (!is_prime(p) || p < 3) fail(Errc::BadParameters, "cyclotomic module needs an odd prime");
  const int d = static_cast<int>(p - 1);
  // basis 1, z, .., z^{d-1}; z^d = -(1 + z + .. + z^{d-1})
  auto times_z_power = [&](int e) {
    ZMat m = ZMat::Zero(d, d);
    for (int i = 0; i < d; ++i) {
      const int j = static_cast<int>((static_cast<std::int64_t>(i) * e) % p);
      if (j < d) m(j, i) = 1;
      else
        for (int t = 0; t < d; ++t) m(t, i) = -1;
    }
    return m;
  };
  ZMat mult = ZMat::Zero(d, d);
  for (int i = 0; i + 1 < d; ++i) mult(i + 1, i) = 1;
  for (int t = 0; t < d; ++t) mult(t, d - 1) = -1;
  // Galois: z -> z^g for a primitive root g, acting on z^i by z^{ig}
  const auto gal = times_z_power(static_cast<int>(primitive_root(p)));
  auto r = make_modrep(p, k, {mult, gal}, "C" + std::to_string(p) + ":C" + std::to_string(d));
  if (r.group->order() != static_cast<std::uint64_t>(p * d)) fail(Errc::InvalidSpec, "cyclotomic module has the wrong order");
  return r;
}

}  // namespace ptl
