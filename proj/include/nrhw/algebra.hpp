#pragma once

#include <algorithm>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nrhw/fq.hpp"
#include "nrhw/fqlinalg.hpp"

namespace nrhw {

// Endomorphism algebra of the chain of ideals cut out by an ordered list of
// evaluation points tau_0..tau_{n-1} over F. Repeated values encode ramified
// behaviour; positions sharing a tau value form one "coset".
//
// Entry (i,j) holds the maps from chain module i to chain module j:
//   gbar(i,j) * F[x] / (cbar(j)),  gbar(i,j) = prod_{k in [j,i)} (x - tau_k),
//                                  cbar(j)   = prod_{k in [j,n)} (x - tau_k).
// gbar(i,j) divides cbar(j), so entry (i,j) has dimension n - max(i,j) and
// the total dimension is sum_{k=1}^{n} k^2. Elements are n x n matrices of
// such polynomials; composition is the matrix product with every column
// reduced mod its column ideal. Left modules live on columns.
struct FqAlgebra {
  using Elem = std::vector<std::vector<FqPoly>>;  // [row i][column j]

  struct BasisRef {
    int i = 0, j = 0, t = 0;  // entry (i,j), coefficient slot t
  };

  // One matrix block per (coset z, weight v): the positions j whose column
  // ideal contains (x - tau_z) with multiplicity exactly v.
  struct Block {
    int coset = 0;
    int weight = 0;            // v in [1, |coset|]
    std::vector<int> members;  // { j : b_count(coset, j) == v }, ascending
  };

  FqField F;
  std::vector<FqField::Elem> tau;
  int n = 0;
  std::vector<std::vector<int>> cosets;  // positions grouped by tau value
  std::vector<int> coset_of;             // position -> index into cosets
  std::vector<Block> blocks;

  FqAlgebra(FqField field, std::vector<FqField::Elem> points)
      : F(std::move(field)), tau(std::move(points)), n(static_cast<int>(tau.size())) {
    if (n == 0) throw std::invalid_argument("FqAlgebra: no evaluation points");
    for (const auto& t : tau)
      if (static_cast<int>(t.size()) != F.deg)
        throw std::invalid_argument("FqAlgebra: point not in the coefficient field");

    coset_of.assign(n, -1);
    for (int k = 0; k < n; ++k) {
      for (std::size_t z = 0; z < cosets.size(); ++z)
        if (tau[cosets[z][0]] == tau[k]) {
          coset_of[k] = static_cast<int>(z);
          break;
        }
      if (coset_of[k] < 0) {
        coset_of[k] = static_cast<int>(cosets.size());
        cosets.emplace_back();
      }
      cosets[coset_of[k]].push_back(k);
    }

    cbar_.assign(n + 1, q_one(F));
    for (int j = n - 1; j >= 0; --j) cbar_[j] = q_mul(F, q_x_minus(F, tau[j]), cbar_[j + 1]);

    gbar_.assign(n, std::vector<FqPoly>(n, q_one(F)));
    for (int j = 0; j < n; ++j) {
      FqPoly cur = q_one(F);
      for (int i = j; i < n; ++i) {
        gbar_[i][j] = cur;
        if (i + 1 < n) cur = q_mul(F, cur, q_x_minus(F, tau[i]));
      }
    }

    offset_.assign(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        offset_[i][j] = static_cast<int>(refs_.size());
        for (int t = 0; t < entry_dim(i, j); ++t) refs_.push_back({i, j, t});
      }

    // b_count steps down by exactly one at each member position, so every
    // weight in [1, |coset|] is realized and no block is empty.
    for (int z = 0; z < static_cast<int>(cosets.size()); ++z) {
      const int ez = static_cast<int>(cosets[z].size());
      for (int v = 1; v <= ez; ++v) {
        Block b;
        b.coset = z;
        b.weight = v;
        for (int j = 0; j < n; ++j)
          if (b_count(z, j) == v) b.members.push_back(j);
        if (b.members.empty()) throw std::logic_error("FqAlgebra: empty weight block");
        blocks.push_back(std::move(b));
      }
    }
    block_offset_.reserve(blocks.size());
    for (const auto& b : blocks) {
      block_offset_.push_back(codomain_dim_);
      codomain_dim_ += static_cast<int>(b.members.size() * b.members.size());
    }
  }

  // Multiplicity of (x - tau_z) in cbar(j): coset-z positions at or past j.
  int b_count(int z, int j) const {
    int c = 0;
    for (int k : cosets[z])
      if (k >= j) ++c;
    return c;
  }

  // Multiplicity of (x - tau_z) in gbar(i,j): coset-z positions in [j, i).
  int a_count(int z, int i, int j) const {
    int c = 0;
    for (int k : cosets[z])
      if (k >= j && k < i) ++c;
    return c;
  }

  // The block whose simple module is attached to position i.
  int block_of_position(int i) const {
    const int z = coset_of[i];
    const int v = b_count(z, i);
    for (std::size_t b = 0; b < blocks.size(); ++b)
      if (blocks[b].coset == z && blocks[b].weight == v) return static_cast<int>(b);
    throw std::logic_error("FqAlgebra: missing block for position");
  }

  int entry_dim(int i, int j) const { return n - std::max(i, j); }
  int dim() const { return static_cast<int>(refs_.size()); }
  int codomain_dim() const { return codomain_dim_; }
  const FqPoly& gbar(int i, int j) const { return gbar_[i][j]; }
  const FqPoly& cbar(int j) const { return cbar_[j]; }
  const BasisRef& basis_ref(int idx) const { return refs_[idx]; }
  int basis_index(int i, int j, int t) const { return offset_[i][j] + t; }

  // --- element arithmetic --------------------------------------------------

  Elem zero() const { return Elem(n, std::vector<FqPoly>(n)); }

  Elem one() const {
    Elem e = zero();
    for (int i = 0; i < n; ++i) e[i][i] = q_one(F);
    return e;
  }

  Elem basis_elem(int i, int j, int t) const {
    Elem e = zero();
    FqPoly xt(t + 1, F.zero());
    xt[t] = F.one();
    e[i][j] = q_mul(F, gbar_[i][j], xt);
    return e;
  }

  Elem basis_elem(int idx) const {
    const auto& r = refs_[idx];
    return basis_elem(r.i, r.j, r.t);
  }

  Elem add(const Elem& a, const Elem& b) const {
    Elem r = zero();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r[i][j] = q_add(F, a[i][j], b[i][j]);
    return r;
  }

  Elem sub(const Elem& a, const Elem& b) const {
    Elem r = zero();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r[i][j] = q_sub(F, a[i][j], b[i][j]);
    return r;
  }

  Elem scale(const Elem& a, const FqField::Elem& s) const {
    Elem r = zero();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r[i][j] = q_scale(F, a[i][j], s);
    return r;
  }

  Elem mul(const Elem& a, const Elem& b) const {
    Elem r = zero();
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) {
        FqPoly acc;
        for (int j = 0; j < n; ++j) {
          if (q_is_zero(a[i][j]) || q_is_zero(b[j][l])) continue;
          acc = q_add(F, acc, q_mul(F, a[i][j], b[j][l]));
        }
        r[i][l] = q_mod(F, acc, cbar_[l]);
      }
    return r;
  }

  bool is_zero(const Elem& a) const {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!q_is_zero(a[i][j])) return false;
    return true;
  }

  bool eq(const Elem& a, const Elem& b) const {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!q_eq(a[i][j], b[i][j])) return false;
    return true;
  }

  // Every entry reduced mod its column ideal and divisible by its generator.
  bool valid(const Elem& a) const {
    if (static_cast<int>(a.size()) != n) return false;
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(a[i].size()) != n) return false;
      for (int j = 0; j < n; ++j) {
        if (q_is_zero(a[i][j])) continue;
        if (q_deg(a[i][j]) >= q_deg(cbar_[j])) return false;
        if (!q_is_zero(q_divmod(F, a[i][j], gbar_[i][j]).second)) return false;
      }
    }
    return true;
  }

  FqVec flatten(const Elem& a) const {
    FqVec v(dim(), F.zero());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (q_is_zero(a[i][j])) continue;
        FqPoly h = q_divexact(F, a[i][j], gbar_[i][j]);
        if (q_deg(h) >= entry_dim(i, j))
          throw std::logic_error("FqAlgebra: entry not reduced mod its column ideal");
        for (int t = 0; t <= q_deg(h); ++t) v[offset_[i][j] + t] = h[t];
      }
    return v;
  }

  Elem unflatten(const FqVec& v) const {
    Elem a = zero();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        FqPoly h(entry_dim(i, j), F.zero());
        for (int t = 0; t < entry_dim(i, j); ++t) h[t] = v[offset_[i][j] + t];
        q_trim(F, h);
        if (!q_is_zero(h)) a[i][j] = q_mul(F, gbar_[i][j], h);
      }
    return a;
  }

  // --- semisimple quotient ---------------------------------------------------

  // Coefficient of (x - t)^a in the expansion of P around t (char-safe).
  FqField::Elem graded_coeff(const FqPoly& P, const FqField::Elem& t, int a) const {
    FqPoly cur = P;
    const FqPoly lin = q_x_minus(F, t);
    for (int k = 0; k < a && !q_is_zero(cur); ++k) cur = q_divmod(F, cur, lin).first;
    return q_eval(F, cur, t);
  }

  // Per block: the matrix of leading coefficients along the (x - tau_z)-adic
  // filtration at the block's member positions.
  std::vector<FqMat> pi(const Elem& a) const {
    std::vector<FqMat> out;
    out.reserve(blocks.size());
    for (const auto& b : blocks) {
      const int m = static_cast<int>(b.members.size());
      const auto& tz = tau[cosets[b.coset][0]];
      FqMat M(m, fq_zero_vec(F, m));
      for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) {
          const int i = b.members[r], j = b.members[c];
          if (q_is_zero(a[i][j])) continue;
          M[r][c] = graded_coeff(a[i][j], tz, a_count(b.coset, i, j));
        }
      out.push_back(std::move(M));
    }
    return out;
  }

  std::vector<FqMat> blocks_zero() const {
    std::vector<FqMat> out;
    out.reserve(blocks.size());
    for (const auto& b : blocks)
      out.emplace_back(b.members.size(), fq_zero_vec(F, static_cast<int>(b.members.size())));
    return out;
  }

  std::vector<FqMat> blocks_one() const {
    auto out = blocks_zero();
    for (std::size_t b = 0; b < blocks.size(); ++b)
      for (std::size_t r = 0; r < blocks[b].members.size(); ++r) out[b][r][r] = F.one();
    return out;
  }

  std::vector<FqMat> blocks_add(const std::vector<FqMat>& a, const std::vector<FqMat>& b) const {
    std::vector<FqMat> out;
    out.reserve(blocks.size());
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      FqMat M = a[k];
      for (std::size_t r = 0; r < M.size(); ++r) M[r] = fq_vec_add(F, M[r], b[k][r]);
      out.push_back(std::move(M));
    }
    return out;
  }

  std::vector<FqMat> blocks_mul(const std::vector<FqMat>& a, const std::vector<FqMat>& b) const {
    std::vector<FqMat> out;
    out.reserve(blocks.size());
    for (std::size_t k = 0; k < blocks.size(); ++k)
      out.push_back(fq_mat_mul(F, a[k], b[k], static_cast<int>(blocks[k].members.size())));
    return out;
  }

  std::vector<FqMat> blocks_pow(std::vector<FqMat> base, Int e) const {
    auto r = blocks_one();
    while (e > 0) {
      if ((e & 1) != 0) r = blocks_mul(r, base);
      base = blocks_mul(base, base);
      e >>= 1;
    }
    return r;
  }

  bool blocks_eq(const std::vector<FqMat>& a, const std::vector<FqMat>& b) const {
    for (std::size_t k = 0; k < blocks.size(); ++k)
      if (a[k] != b[k]) return false;
    return true;
  }

  FqVec flatten_blocks(const std::vector<FqMat>& bm) const {
    FqVec v(codomain_dim_, F.zero());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const int m = static_cast<int>(blocks[b].members.size());
      for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) v[block_offset_[b] + r * m + c] = bm[b][r][c];
    }
    return v;
  }

  std::vector<FqMat> blocks_from_vec(const FqVec& v) const {
    auto bm = blocks_zero();
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const int m = static_cast<int>(blocks[b].members.size());
      for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) bm[b][r][c] = v[block_offset_[b] + r * m + c];
    }
    return bm;
  }

  FqMat pi_matrix() const {
    FqMat rows;
    rows.reserve(dim());
    for (int idx = 0; idx < dim(); ++idx) rows.push_back(flatten_blocks(pi(basis_elem(idx))));
    return rows;
  }

  FqSpan radical() const { return fq_span(F, fq_left_kernel(F, pi_matrix(), codomain_dim_)); }

  bool is_semisimple() const { return fq_rank(F, pi_matrix()) == dim(); }

  // --- certificates ----------------------------------------------------------

  // rad is closed under left and right multiplication by every basis element.
  bool radical_is_ideal(const FqSpan& rad) const {
    std::vector<Elem> w;
    w.reserve(rad.dim());
    for (const auto& row : rad.basis) w.push_back(unflatten(row));
    for (int idx = 0; idx < dim(); ++idx) {
      Elem g = basis_elem(idx);
      for (const auto& a : w) {
        if (!rad.contains(flatten(mul(g, a)))) return false;
        if (!rad.contains(flatten(mul(a, g)))) return false;
      }
    }
    return true;
  }

  // Smallest m with rad^m = 0; 0 when the power chain fails to shrink.
  int radical_nilpotency_index(const FqSpan& rad) const {
    if (rad.dim() == 0) return 1;
    std::vector<Elem> base;
    base.reserve(rad.dim());
    for (const auto& row : rad.basis) base.push_back(unflatten(row));
    std::vector<Elem> cur = base;
    int m = 1;
    while (m <= dim() + 1) {
      FqMat prods;
      prods.reserve(cur.size() * base.size());
      for (const auto& a : cur)
        for (const auto& b : base) prods.push_back(flatten(mul(a, b)));
      FqSpan next = fq_span(F, std::move(prods));
      ++m;
      if (next.dim() == 0) return m;
      if (next.dim() >= static_cast<int>(cur.size())) return 0;
      cur.clear();
      for (const auto& row : next.basis) cur.push_back(unflatten(row));
    }
    return 0;
  }

  // pi respects the unit and all products of basis elements.
  bool pi_is_homomorphism() const {
    std::vector<Elem> elems;
    std::vector<std::vector<FqMat>> im;
    elems.reserve(dim());
    im.reserve(dim());
    for (int idx = 0; idx < dim(); ++idx) {
      elems.push_back(basis_elem(idx));
      im.push_back(pi(elems.back()));
    }
    if (!blocks_eq(pi(one()), blocks_one())) return false;
    for (int a = 0; a < dim(); ++a)
      for (int b = 0; b < dim(); ++b)
        if (!blocks_eq(pi(mul(elems[a], elems[b])), blocks_mul(im[a], im[b]))) return false;
    return true;
  }

  bool pi_is_surjective() const { return fq_rank(F, pi_matrix()) == codomain_dim_; }

  // Same as pi_is_homomorphism on a deterministic sample of basis pairs; for
  // instances where the full pair grid is too expensive.
  bool pi_respects_sampled_products(int samples, unsigned seed) const {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> pick(0, dim() - 1);
    for (int s = 0; s < samples; ++s) {
      Elem a = basis_elem(pick(rng));
      Elem b = basis_elem(pick(rng));
      if (!blocks_eq(pi(mul(a, b)), blocks_mul(pi(a), pi(b)))) return false;
    }
    return true;
  }

  // The quotient target is semisimple. When it is commutative (all blocks
  // 1 x 1) the q-power map must be injective, which rules out nilpotents;
  // otherwise the literal matrix-unit relations exhibit every block as a
  // full matrix algebra over F.
  bool codomain_semisimple_certificate() const {
    bool commutative = true;
    for (const auto& b : blocks)
      if (b.members.size() > 1) commutative = false;
    if (commutative) {
      FqMat frob;
      frob.reserve(codomain_dim_);
      for (int idx = 0; idx < codomain_dim_; ++idx) {
        FqVec unit = fq_zero_vec(F, codomain_dim_);
        unit[idx] = F.one();
        frob.push_back(flatten_blocks(blocks_pow(blocks_from_vec(unit), F.q())));
      }
      return fq_rank(F, frob) == codomain_dim_;
    }
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const int m = static_cast<int>(blocks[b].members.size());
      auto unit = [&](int r, int c) {
        auto bm = blocks_zero();
        bm[b][r][c] = F.one();
        return bm;
      };
      for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c)
          for (int r2 = 0; r2 < m; ++r2)
            for (int c2 = 0; c2 < m; ++c2) {
              auto prod = blocks_mul(unit(r, c), unit(r2, c2));
              auto expect = (c == r2) ? unit(r, c2) : blocks_zero();
              if (!blocks_eq(prod, expect)) return false;
            }
      auto diag_sum = blocks_zero();
      for (int r = 0; r < m; ++r) diag_sum = blocks_add(diag_sum, unit(r, r));
      if (diag_sum[b] != blocks_one()[b]) return false;
    }
    return true;
  }

  struct RadicalReport {
    int dim = 0;
    int radical_dim = 0;
    int codomain_dim = 0;
    bool ideal = false;
    int nilpotency_index = 0;
    bool quotient_homomorphism = false;
    bool quotient_surjective = false;
    bool codomain_semisimple = false;
    bool ok() const {
      return ideal && nilpotency_index > 0 && quotient_homomorphism && quotient_surjective &&
             codomain_semisimple;
    }
  };

  RadicalReport radical_report() const {
    RadicalReport r;
    r.dim = dim();
    r.codomain_dim = codomain_dim_;
    FqSpan rad = radical();
    r.radical_dim = rad.dim();
    r.ideal = radical_is_ideal(rad);
    r.nilpotency_index = radical_nilpotency_index(rad);
    r.quotient_homomorphism = pi_is_homomorphism();
    r.quotient_surjective = pi_is_surjective();
    r.codomain_semisimple = codomain_semisimple_certificate();
    return r;
  }

  // --- center ---------------------------------------------------------------

  // h(x) on the diagonal, reduced per column. A ring map from F[x]/(cbar(0)).
  Elem diagonal_embed(const FqPoly& h) const {
    Elem e = zero();
    for (int i = 0; i < n; ++i) e[i][i] = q_mod(F, h, cbar_[i]);
    return e;
  }

  // Elements commuting with every basis element.
  FqSpan center() const {
    std::vector<Elem> elems;
    elems.reserve(dim());
    for (int idx = 0; idx < dim(); ++idx) elems.push_back(basis_elem(idx));
    FqMat rows;
    rows.reserve(dim());
    for (int zi = 0; zi < dim(); ++zi) {
      FqVec row;
      row.reserve(static_cast<std::size_t>(dim()) * dim());
      for (int g = 0; g < dim(); ++g) {
        FqVec c = flatten(sub(mul(elems[zi], elems[g]), mul(elems[g], elems[zi])));
        row.insert(row.end(), c.begin(), c.end());
      }
      rows.push_back(std::move(row));
    }
    return fq_span(F, fq_left_kernel(F, rows, dim() * dim()));
  }

  // The center is exactly the diagonal copy of F[x]/(cbar(0)).
  bool center_is_diagonal() const {
    FqSpan c = center();
    if (c.dim() != n) return false;
    FqMat gens;
    gens.reserve(n);
    for (int t = 0; t < n; ++t) {
      FqPoly xt(t + 1, F.zero());
      xt[t] = F.one();
      gens.push_back(flatten(diagonal_embed(xt)));
    }
    return fq_span_equal(c, fq_span(F, std::move(gens)));
  }

  // Central idempotent per coset: the residue system of F[x]/(cbar(0)) along
  // its pairwise-coprime factors (x - tau_z)^{|coset z|}, on the diagonal.
  std::vector<Elem> central_idempotents() const {
    std::vector<Elem> out;
    out.reserve(cosets.size());
    for (std::size_t z = 0; z < cosets.size(); ++z) {
      const auto& tz = tau[cosets[z][0]];
      FqPoly mz = q_one(F);
      for (std::size_t k = 0; k < cosets[z].size(); ++k) mz = q_mul(F, mz, q_x_minus(F, tz));
      FqPoly Mz = q_divexact(F, cbar_[0], mz);
      auto [g, u, v] = q_gcdext(F, Mz, mz);
      if (q_deg(g) != 0) throw std::logic_error("FqAlgebra: coset factors not coprime");
      FqPoly uz = q_mod(F, q_mul(F, u, Mz), cbar_[0]);
      out.push_back(diagonal_embed(uz));
    }
    return out;
  }

 private:
  std::vector<FqPoly> cbar_;  // cbar_[j] for j in [0, n], cbar_[n] = 1
  std::vector<std::vector<FqPoly>> gbar_;
  std::vector<std::vector<int>> offset_;
  std::vector<BasisRef> refs_;
  std::vector<int> block_offset_;
  int codomain_dim_ = 0;
};

}  // namespace nrhw
