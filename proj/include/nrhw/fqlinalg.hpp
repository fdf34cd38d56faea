#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "nrhw/fq.hpp"

namespace nrhw {

// Dense linear algebra over F_q. Vectors are rows; spans are row spaces.
using FqVec = std::vector<FqField::Elem>;
using FqMat = std::vector<FqVec>;

inline FqVec fq_zero_vec(const FqField& F, int n) { return FqVec(n, F.zero()); }

inline bool fq_vec_is_zero(const FqField& F, const FqVec& v) {
  for (const auto& x : v)
    if (!F.is_zero(x)) return false;
  return true;
}

inline FqVec fq_vec_add(const FqField& F, const FqVec& a, const FqVec& b) {
  FqVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = F.add(a[i], b[i]);
  return r;
}

inline FqVec fq_vec_sub(const FqField& F, const FqVec& a, const FqVec& b) {
  FqVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = F.sub(a[i], b[i]);
  return r;
}

inline FqVec fq_vec_scale(const FqField& F, const FqVec& a, const FqField::Elem& s) {
  FqVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], s);
  return r;
}

// v * M (row vector times matrix), M given as rows.
inline FqVec fq_apply(const FqField& F, const FqVec& v, const FqMat& M, int out_dim) {
  FqVec r = fq_zero_vec(F, out_dim);
  for (size_t i = 0; i < v.size(); ++i) {
    if (F.is_zero(v[i])) continue;
    for (int j = 0; j < out_dim; ++j) r[j] = F.add(r[j], F.mul(v[i], M[i][j]));
  }
  return r;
}

inline FqMat fq_mat_mul(const FqField& F, const FqMat& A, const FqMat& B, int out_dim) {
  FqMat R;
  R.reserve(A.size());
  for (const auto& row : A) R.push_back(fq_apply(F, row, B, out_dim));
  return R;
}

// Row-reduce in place to reduced row echelon form; returns pivot columns.
inline std::vector<int> fq_rref(const FqField& F, FqMat& M) {
  std::vector<int> pivots;
  if (M.empty()) return pivots;
  const int cols = static_cast<int>(M[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < static_cast<int>(M.size()); ++c) {
    int piv = -1;
    for (int i = r; i < static_cast<int>(M.size()); ++i)
      if (!F.is_zero(M[i][c])) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(M[r], M[piv]);
    FqField::Elem inv = F.inv(M[r][c]);
    for (int j = 0; j < cols; ++j) M[r][j] = F.mul(M[r][j], inv);
    for (int i = 0; i < static_cast<int>(M.size()); ++i) {
      if (i == r || F.is_zero(M[i][c])) continue;
      FqField::Elem t = M[i][c];
      for (int j = 0; j < cols; ++j) M[i][j] = F.sub(M[i][j], F.mul(t, M[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  M.resize(r, fq_zero_vec(F, cols));
  return pivots;
}

inline int fq_rank(const FqField& F, FqMat M) { return static_cast<int>(fq_rref(F, M).size()); }

// Basis of {x : x * M = 0} (left kernel of the row-matrix M).
inline FqMat fq_left_kernel(const FqField& F, const FqMat& M, int cols) {
  const int m = static_cast<int>(M.size());
  FqMat aug(m, fq_zero_vec(F, cols + m));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < cols; ++j) aug[i][j] = M[i][j];
    aug[i][cols + i] = F.one();
  }
  // eliminate over the first `cols` columns only
  int r = 0;
  for (int c = 0; c < cols && r < m; ++c) {
    int piv = -1;
    for (int i = r; i < m; ++i)
      if (!F.is_zero(aug[i][c])) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(aug[r], aug[piv]);
    FqField::Elem inv = F.inv(aug[r][c]);
    for (auto& x : aug[r]) x = F.mul(x, inv);
    for (int i = 0; i < m; ++i) {
      if (i == r || F.is_zero(aug[i][c])) continue;
      FqField::Elem t = aug[i][c];
      for (int j = 0; j < cols + m; ++j) aug[i][j] = F.sub(aug[i][j], F.mul(t, aug[r][j]));
    }
    ++r;
  }
  FqMat ker;
  for (int i = r; i < m; ++i) ker.emplace_back(aug[i].begin() + cols, aug[i].end());
  return ker;
}

// Row span with a reduced basis and membership/coordinates against it.
struct FqSpan {
  const FqField* F = nullptr;
  FqMat basis;              // rref rows
  std::vector<int> pivots;  // pivot column of each basis row

  int dim() const { return static_cast<int>(basis.size()); }

  bool contains(FqVec v) const {
    for (size_t i = 0; i < basis.size(); ++i) {
      const auto& x = v[pivots[i]];
      if (!F->is_zero(x)) v = fq_vec_sub(*F, v, fq_vec_scale(*F, basis[i], x));
    }
    return fq_vec_is_zero(*F, v);
  }

  // coordinates of v in the rref basis; nullopt if outside the span
  std::optional<FqVec> coords(FqVec v) const {
    FqVec c(basis.size(), F->zero());
    for (size_t i = 0; i < basis.size(); ++i) {
      const auto x = v[pivots[i]];
      if (!F->is_zero(x)) {
        c[i] = x;
        v = fq_vec_sub(*F, v, fq_vec_scale(*F, basis[i], x));
      }
    }
    if (!fq_vec_is_zero(*F, v)) return std::nullopt;
    return c;
  }
};

inline FqSpan fq_span(const FqField& F, FqMat gens) {
  FqSpan s;
  s.F = &F;
  s.pivots = fq_rref(F, gens);
  s.basis = std::move(gens);
  return s;
}

inline bool fq_span_equal(const FqSpan& a, const FqSpan& b) {
  return a.basis == b.basis && a.pivots == b.pivots;
}

}  // namespace nrhw
