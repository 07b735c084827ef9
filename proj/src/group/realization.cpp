#include "ptoral/group.hpp"

#include <string>

namespace ptl {

void PermRealization::identity(std::int32_t* out) const {
  for (int i = 0; i < degree_; ++i) out[i] = i;
}

void PermRealization::multiply(const std::int32_t* a, const std::int32_t* b, std::int32_t* out) const {
  for (int i = 0; i < degree_; ++i) out[i] = a[b[i]];
}

void PermRealization::inverse(const std::int32_t* a, std::int32_t* out) const {
  for (int i = 0; i < degree_; ++i) out[a[i]] = i;
}

MatrixRealization::MatrixRealization(int n, std::int64_t p, int k) : n_(n), p_(p), k_(k), q_(ipow(p, k)) {
  if (n < 1 || !is_prime(p) || k < 1) fail(Errc::InvalidSpec, "matrix realization needs n >= 1, prime p, k >= 1");
}

void MatrixRealization::identity(std::int32_t* out) const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) out[i * n_ + j] = (i == j) ? 1 : 0;
}

void MatrixRealization::multiply(const std::int32_t* a, const std::int32_t* b, std::int32_t* out) const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      std::int64_t s = 0;
      for (int t = 0; t < n_; ++t) s += static_cast<std::int64_t>(a[i * n_ + t]) * b[t * n_ + j];
      out[i * n_ + j] = static_cast<std::int32_t>(s % q_);
    }
}

void MatrixRealization::inverse(const std::int32_t* a, std::int32_t* out) const {
  auto inv = inverse_mod(decode(a), p_, q_);
  if (!inv) fail(Errc::InvalidSpec, "matrix not invertible mod p");
  Key k = encode(*inv);
  std::copy(k.begin(), k.end(), out);
}

Key MatrixRealization::encode(const ZMat& m) const {
  Key k(static_cast<std::size_t>(n_ * n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) k[i * n_ + j] = static_cast<std::int32_t>(modq(m(i, j), q_));
  return k;
}

ZMat MatrixRealization::decode(const std::int32_t* key) const {
  ZMat m(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m(i, j) = key[i * n_ + j];
  return m;
}

TameRealization::TameRealization(std::int64_t p, int e, int r, GroupPtr w, const std::vector<ZMat>& gen_matrices)
    : p_(p), e_(e), r_(r), q_(ipow(p, e)), w_(std::move(w)), gen_mats_(gen_matrices) {
  if (!is_prime(p) || e < 1 || r < 0) fail(Errc::InvalidSpec, "tame spec needs prime p, e >= 1, r >= 0");
  const auto& wg = w_->generators();
  if (gen_matrices.size() != wg.size())
    fail(Errc::InvalidSpec, "tame spec: one action matrix per complement generator required");
  for (auto& m : gen_mats_) {
    if (m.rows() != r || m.cols() != r) fail(Errc::InvalidSpec, "tame spec: action matrix has wrong shape");
    m = reduce(m, q_);
    if (r > 0 && !inverse_mod(m, p_, q_)) fail(Errc::InvalidSpec, "tame spec: action matrix not invertible mod p");
  }
  const std::size_t n = w_->order();
  const std::size_t rr = static_cast<std::size_t>(r) * r;
  mats_.assign(n * rr, 0);
  std::vector<bool> done(n, false);
  auto store = [&](Elt x, const ZMat& m) {
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) mats_[x * rr + i * r + j] = static_cast<std::int32_t>(m(i, j));
  };
  store(0, ZMat::Identity(r, r));
  done[0] = true;
  std::vector<Elt> queue{0};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    Elt x = queue[qi];
    ZMat mx = action(x);
    for (std::size_t s = 0; s < wg.size(); ++s) {
      Elt y = w_->mul(x, wg[s]);
      ZMat my = mul_mod(mx, gen_mats_[s], q_);
      if (!done[y]) {
        store(y, my);
        done[y] = true;
        queue.push_back(y);
      } else if (action(y) != my) {
        fail(Errc::InvalidSpec, "tame spec: action matrices do not define a homomorphism of the complement");
      }
    }
  }
  if (queue.size() != n) fail(Errc::InvalidSpec, "tame spec: complement generators do not generate");
}

ZMat TameRealization::action(Elt w) const {
  ZMat m(r_, r_);
  const std::size_t rr = static_cast<std::size_t>(r_) * r_;
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < r_; ++j) m(i, j) = mats_[w * rr + i * r_ + j];
  return m;
}

void TameRealization::identity(std::int32_t* out) const {
  for (int i = 0; i <= r_; ++i) out[i] = 0;
}

void TameRealization::multiply(const std::int32_t* a, const std::int32_t* b, std::int32_t* out) const {
  const std::size_t rr = static_cast<std::size_t>(r_) * r_;
  const std::int32_t* m = mats_.data() + static_cast<std::size_t>(a[r_]) * rr;
  for (int i = 0; i < r_; ++i) {
    std::int64_t s = a[i];
    for (int j = 0; j < r_; ++j) s += static_cast<std::int64_t>(m[i * r_ + j]) * b[j];
    out[i] = static_cast<std::int32_t>(s % q_);
  }
  out[r_] = static_cast<std::int32_t>(w_->mul(static_cast<Elt>(a[r_]), static_cast<Elt>(b[r_])));
}

void TameRealization::inverse(const std::int32_t* a, std::int32_t* out) const {
  const std::size_t rr = static_cast<std::size_t>(r_) * r_;
  Elt wi = w_->inv(static_cast<Elt>(a[r_]));
  const std::int32_t* m = mats_.data() + static_cast<std::size_t>(wi) * rr;
  for (int i = 0; i < r_; ++i) {
    std::int64_t s = 0;
    for (int j = 0; j < r_; ++j) s += static_cast<std::int64_t>(m[i * r_ + j]) * a[j];
    out[i] = static_cast<std::int32_t>(modq(-s, q_));
  }
  out[r_] = static_cast<std::int32_t>(wi);
}

ProductRealization::ProductRealization(std::vector<RealizationPtr> factors) : factors_(std::move(factors)) {
  for (const auto& f : factors_) {
    offsets_.push_back(width_);
    width_ += f->width();
  }
}

void ProductRealization::identity(std::int32_t* out) const {
  for (std::size_t i = 0; i < factors_.size(); ++i) factors_[i]->identity(out + offsets_[i]);
}

void ProductRealization::multiply(const std::int32_t* a, const std::int32_t* b, std::int32_t* out) const {
  for (std::size_t i = 0; i < factors_.size(); ++i)
    factors_[i]->multiply(a + offsets_[i], b + offsets_[i], out + offsets_[i]);
}

void ProductRealization::inverse(const std::int32_t* a, std::int32_t* out) const {
  for (std::size_t i = 0; i < factors_.size(); ++i) factors_[i]->inverse(a + offsets_[i], out + offsets_[i]);
}

QuotientRealization::QuotientRealization(GroupPtr parent, std::vector<Elt> reps, std::vector<std::uint32_t> coset_of)
    : parent_(std::move(parent)), reps_(std::move(reps)), coset_of_(std::move(coset_of)) {}

void QuotientRealization::multiply(const std::int32_t* a, const std::int32_t* b, std::int32_t* out) const {
  out[0] = static_cast<std::int32_t>(coset_of_[parent_->mul(reps_[a[0]], reps_[b[0]])]);
}

void QuotientRealization::inverse(const std::int32_t* a, std::int32_t* out) const {
  out[0] = static_cast<std::int32_t>(coset_of_[parent_->inv(reps_[a[0]])]);
}

}  // namespace ptl
