#include <algorithm>

#include "k0bench/ratlin.hpp"

namespace k0bench {

namespace {

void row_axpy(IntVec& dst, const Int& f, const IntVec& src) {
  if (f == 0) return;
  for (std::size_t j = 0; j < dst.size(); ++j) {
    if (src[j] != 0) dst[j] -= f * src[j];
  }
}

}  // namespace

IntMat hnf(const IntMat& rows, std::size_t ncols, IntMat* transform) {
  IntMat a = rows;
  const std::size_t k = a.size();
  IntMat u;
  if (transform) {
    u.assign(k, IntVec(k, Int(0)));
    for (std::size_t i = 0; i < k; ++i) u[i][i] = 1;
  }
  for (const auto& row : a) {
    if (row.size() != ncols) throw DimensionMismatch("hnf: ragged matrix");
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < k; ++c) {
    for (;;) {
      std::size_t best = k;
      for (std::size_t i = r; i < k; ++i) {
        if (a[i][c] == 0) continue;
        if (best == k || abs(a[i][c]) < abs(a[best][c])) best = i;
      }
      if (best == k) break;
      std::swap(a[best], a[r]);
      if (transform) std::swap(u[best], u[r]);
      bool done = true;
      for (std::size_t i = r + 1; i < k; ++i) {
        if (a[i][c] == 0) continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
        row_axpy(a[i], q, a[r]);
        if (transform) row_axpy(u[i], q, u[r]);
        if (a[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (a[r][c] == 0) continue;
    if (a[r][c] < 0) {
      for (auto& x : a[r]) x = -x;
      if (transform) {
        for (auto& x : u[r]) x = -x;
      }
    }
    for (std::size_t i = 0; i < r; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
      row_axpy(a[i], q, a[r]);
      if (transform) row_axpy(u[i], q, u[r]);
    }
    ++r;
  }
  if (transform) *transform = std::move(u);
  a.resize(r);
  return a;
}

ZLattice::ZLattice(const std::vector<RatVec>& generators, std::size_t dim) : dim_(dim), scale_(1) {
  for (const auto& g : generators) {
    if (g.size() != dim) throw DimensionMismatch("ZLattice: generator length");
    for (const auto& x : g) scale_ = lcm(scale_, Int(x.get_den()));
  }
  IntMat rows;
  for (const auto& g : generators) {
    IntVec row(dim);
    for (std::size_t j = 0; j < dim; ++j) row[j] = Int(g[j].get_num()) * (scale_ / Int(g[j].get_den()));
    rows.push_back(std::move(row));
  }
  hnf_ = hnf(rows, dim);
  for (const auto& row : hnf_) {
    std::size_t p = 0;
    while (row[p] == 0) ++p;
    pivots_.push_back(p);
  }
}

std::optional<RatVec> ZLattice::coordinates(const RatVec& x) const {
  if (x.size() != dim_) throw DimensionMismatch("ZLattice: vector length");
  RatVec y = scale(Rat(scale_), x);
  RatVec coef(hnf_.size());
  for (std::size_t i = 0; i < hnf_.size(); ++i) {
    std::size_t p = pivots_[i];
    for (std::size_t j = 0; j < p; ++j) {
      if (sgn(y[j]) != 0) return std::nullopt;
    }
    coef[i] = y[p] / Rat(hnf_[i][p]);
    if (sgn(coef[i]) == 0) continue;
    for (std::size_t j = p; j < dim_; ++j) {
      if (hnf_[i][j] != 0) y[j] -= coef[i] * Rat(hnf_[i][j]);
    }
  }
  if (!is_zero(y)) return std::nullopt;
  return coef;
}

bool ZLattice::contains(const RatVec& x) const {
  auto c = coordinates(x);
  if (!c) return false;
  return std::all_of(c->begin(), c->end(), [](const Rat& q) { return q.get_den() == 1; });
}

std::vector<RatVec> ZLattice::basis() const {
  std::vector<RatVec> out;
  for (const auto& row : hnf_) {
    RatVec v(dim_);
    for (std::size_t j = 0; j < dim_; ++j) v[j] = Rat(row[j], scale_);
    for (auto& q : v) q.canonicalize();
    out.push_back(std::move(v));
  }
  return out;
}

bool zspan_contains(const std::vector<RatVec>& generators, const RatVec& x) {
  return ZLattice(generators, x.size()).contains(x);
}

IntMat integer_left_kernel(const IntMat& rows, std::size_t ncols) {
  IntMat u;
  IntMat h = hnf(rows, ncols, &u);
  return IntMat(u.begin() + static_cast<long>(h.size()), u.end());
}

}  // namespace k0bench
