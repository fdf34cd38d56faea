#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "nrhw/bigint.hpp"
#include "nrhw/fq.hpp"

namespace nrhw {

using IntVec = std::vector<Int>;
using IntRows = std::vector<IntVec>;

// A finitely generated subgroup of Z^ambient, stored as the canonical row-style
// Hermite normal form: rows sorted by pivot column, pivots positive, entries
// above each pivot reduced into [0, pivot). Two lattices are equal iff their
// stored rows are identical.
struct IntLattice {
  int ambient = 0;
  IntRows rows;  // HNF, zero rows removed; rows.size() == rank

  int rank() const { return static_cast<int>(rows.size()); }
  bool operator==(const IntLattice& o) const { return ambient == o.ambient && rows == o.rows; }
};

namespace detail {

// In-place row HNF over the leading `cols` columns (rows may be longer; the
// trailing part follows along, which is how kernels are extracted).
inline int hnf_in_place(IntRows& w, int cols) {
  int r = 0;
  const int m = static_cast<int>(w.size());
  for (int col = 0; col < cols && r < m; ++col) {
    while (true) {
      int piv = -1;
      for (int i = r; i < m; ++i)
        if (w[i][col] != 0 && (piv < 0 || abs_int(w[i][col]) < abs_int(w[piv][col]))) piv = i;
      if (piv < 0) break;
      std::swap(w[r], w[piv]);
      bool clean = true;
      for (int i = r + 1; i < m; ++i) {
        if (w[i][col] == 0) continue;
        Int q = fdiv(w[i][col], w[r][col]);
        if (q != 0)
          for (size_t j = 0; j < w[i].size(); ++j) w[i][j] -= q * w[r][j];
        if (w[i][col] != 0) clean = false;
      }
      if (clean) break;
    }
    if (w[r][col] == 0) continue;
    if (w[r][col] < 0)
      for (auto& x : w[r]) x = -x;
    for (int i = 0; i < r; ++i) {
      Int q = fdiv(w[i][col], w[r][col]);
      if (q != 0)
        for (size_t j = 0; j < w[i].size(); ++j) w[i][j] -= q * w[r][j];
    }
    ++r;
  }
  return r;  // number of nonzero (pivoted) rows
}

}  // namespace detail

inline IntLattice hnf_lattice(IntRows gens, int ambient) {
  for (const auto& g : gens)
    if (static_cast<int>(g.size()) != ambient)
      throw std::invalid_argument("generator length does not match ambient dimension");
  int r = detail::hnf_in_place(gens, ambient);
  gens.resize(r);
  return IntLattice{ambient, std::move(gens)};
}

// Coordinates of v in the HNF basis (integer back-substitution), if v lies in L.
inline std::optional<IntVec> lattice_coords(const IntLattice& L, IntVec v) {
  IntVec coords(L.rows.size(), Int(0));
  for (size_t i = 0; i < L.rows.size(); ++i) {
    // pivot column of row i; rows below leave earlier pivot columns untouched
    int pc = 0;
    while (L.rows[i][pc] == 0) ++pc;
    Int q = v[pc] / L.rows[i][pc];
    if (q * L.rows[i][pc] != v[pc]) return std::nullopt;
    if (q != 0)
      for (int j = 0; j < L.ambient; ++j) v[j] -= q * L.rows[i][j];
    coords[i] = q;
  }
  for (const auto& x : v)
    if (x != 0) return std::nullopt;
  return coords;
}

inline bool lattice_member(const IntLattice& L, const IntVec& v) {
  return lattice_coords(L, v).has_value();
}

inline IntLattice lattice_sum(const IntLattice& a, const IntLattice& b) {
  if (a.ambient != b.ambient) throw std::invalid_argument("ambient mismatch");
  IntRows gens = a.rows;
  gens.insert(gens.end(), b.rows.begin(), b.rows.end());
  return hnf_lattice(std::move(gens), a.ambient);
}

inline IntLattice lattice_scale(const IntLattice& a, const Int& s) {
  IntRows gens = a.rows;
  for (auto& row : gens)
    for (auto& x : row) x *= s;
  return hnf_lattice(std::move(gens), a.ambient);
}

inline bool lattice_subset(const IntLattice& inner, const IntLattice& outer) {
  for (const auto& row : inner.rows)
    if (!lattice_member(outer, row)) return false;
  return true;
}

// Kernel of the row action x -> x*M, M given as m rows of length n.
// Returns the lattice {x in Z^m : x*M = 0} in canonical HNF.
inline IntLattice kernel_lattice(const IntRows& M, int n) {
  const int m = static_cast<int>(M.size());
  IntRows aug(m, IntVec(n + m, Int(0)));
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(M[i].size()) != n) throw std::invalid_argument("row length mismatch");
    for (int j = 0; j < n; ++j) aug[i][j] = M[i][j];
    aug[i][n + i] = 1;
  }
  int r = detail::hnf_in_place(aug, n);
  IntRows ker;
  for (int i = r; i < m; ++i) ker.emplace_back(aug[i].begin() + n, aug[i].end());
  return hnf_lattice(std::move(ker), m);
}

// |det| of a full-rank lattice (product of HNF pivots); the index [Z^n : L].
inline Int lattice_index(const IntLattice& L) {
  if (L.rank() != L.ambient) throw std::invalid_argument("lattice is not full rank");
  // a full-rank HNF has its pivots exactly on the diagonal
  Int d = 1;
  for (int i = 0; i < L.ambient; ++i) {
    if (L.rows[i][i] == 0) throw std::logic_error("full-rank HNF pivot off diagonal");
    d *= L.rows[i][i];
  }
  return d;
}

// dim over F_p of L / (span(gens) + p*L); gens must lie in L.
inline int quotient_dim_mod_p(const IntLattice& L, const IntRows& gens, std::int64_t p) {
  const int r = L.rank();
  std::vector<std::vector<std::int64_t>> rows;
  rows.reserve(gens.size());
  for (const auto& g : gens) {
    auto co = lattice_coords(L, g);
    if (!co) throw std::invalid_argument("generator not in the ambient lattice");
    std::vector<std::int64_t> row(r);
    for (int j = 0; j < r; ++j) row[j] = to_i64(fmod((*co)[j], Int(p)));
    rows.push_back(std::move(row));
  }
  // rank mod p by Gaussian elimination
  int rank = 0;
  for (int col = 0; col < r && rank < static_cast<int>(rows.size()); ++col) {
    int piv = -1;
    for (int i = rank; i < static_cast<int>(rows.size()); ++i)
      if (rows[i][col] % p != 0) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    std::int64_t li = fp::inv(rows[rank][col], p);
    for (int j = 0; j < r; ++j) rows[rank][j] = fp::mul(rows[rank][j], li, p);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == rank || rows[i][col] % p == 0) continue;
      std::int64_t f = fp::norm(rows[i][col], p);
      for (int j = 0; j < r; ++j) rows[i][j] = fp::sub(rows[i][j], fp::mul(f, rows[rank][j], p), p);
    }
    ++rank;
  }
  return r - rank;
}

// Matrix-times-lattice helpers (row-vector convention: v -> v * M).
inline IntVec apply_row(const IntVec& v, const IntRows& M, int out_dim) {
  IntVec r(out_dim, Int(0));
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    for (int j = 0; j < out_dim; ++j) r[j] += v[i] * M[i][j];
  }
  return r;
}

inline IntLattice lattice_image(const IntLattice& L, const IntRows& M, int out_dim) {
  IntRows gens;
  gens.reserve(L.rows.size());
  for (const auto& row : L.rows) gens.push_back(apply_row(row, M, out_dim));
  return hnf_lattice(std::move(gens), out_dim);
}

// {v in L : v*M = 0}, returned as a sublattice of Z^ambient (not in L-coords).
inline IntLattice lattice_kernel_of_map(const IntLattice& L, const IntRows& M, int out_dim) {
  IntRows img;
  img.reserve(L.rows.size());
  for (const auto& row : L.rows) img.push_back(apply_row(row, M, out_dim));
  IntLattice kc = kernel_lattice(img, out_dim);  // coords relative to L.rows
  IntRows gens;
  for (const auto& c : kc.rows) {
    IntVec v(L.ambient, Int(0));
    for (int i = 0; i < L.rank(); ++i)
      if (c[i] != 0)
        for (int j = 0; j < L.ambient; ++j) v[j] += c[i] * L.rows[i][j];
    gens.push_back(std::move(v));
  }
  return hnf_lattice(std::move(gens), L.ambient);
}

}  // namespace nrhw
