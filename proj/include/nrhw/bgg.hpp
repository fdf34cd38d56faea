#pragma once

#include <stdexcept>
#include <vector>

#include "nrhw/algebra.hpp"
#include "nrhw/prime.hpp"
#include "nrhw/tensor.hpp"

namespace nrhw {

// A left module over an FqAlgebra, presented as a quotient space/sub of
// subspaces of the regular representation (flattened coordinates).
struct AlgebraModule {
  FqSpan space;
  FqSpan sub;
  int qdim() const { return space.dim() - sub.dim(); }
};

inline FqVec unit_vec(const FqField& F, int dim, int idx) {
  FqVec v = fq_zero_vec(F, dim);
  v[idx] = F.one();
  return v;
}

// Vertex idempotents, one-step maps in both directions, and the degree-one
// diagonal at each vertex. These generate the algebra as a unital F-algebra:
// chains of one-step maps produce every entry generator and the diagonals
// produce every polynomial multiple, so closure under this list is closure
// under the whole algebra.
inline std::vector<FqAlgebra::Elem> algebra_generators(const FqAlgebra& A) {
  std::vector<FqAlgebra::Elem> g;
  for (int i = 0; i < A.n; ++i) g.push_back(A.basis_elem(i, i, 0));
  for (int i = 0; i < A.n; ++i)
    if (A.entry_dim(i, i) > 1) g.push_back(A.basis_elem(i, i, 1));
  for (int i = 0; i + 1 < A.n; ++i) {
    g.push_back(A.basis_elem(i, i + 1, 0));
    g.push_back(A.basis_elem(i + 1, i, 0));
  }
  return g;
}

// Column i of the regular representation: the projective module at chain
// vertex i (before refining along cosets).
inline AlgebraModule column_module(const FqAlgebra& A, int i) {
  FqMat gens;
  for (int idx = 0; idx < A.dim(); ++idx)
    if (A.basis_ref(idx).j == i) gens.push_back(unit_vec(A.F, A.dim(), idx));
  return {fq_span(A.F, std::move(gens)), fq_span(A.F, FqMat{})};
}

// Column k modulo the submodule that keeps rows past k whole and adds one
// extra linear factor at the column's point on rows up to k. The quotient
// is the standard module at k, of dimension k + 1.
inline AlgebraModule standard_module(const FqAlgebra& A, int k) {
  AlgebraModule M = column_module(A, k);
  FqMat xgens;
  const FqPoly lin = q_x_minus(A.F, A.tau[k]);
  for (int l = 0; l < A.n; ++l) {
    if (l > k) {
      for (int t = 0; t < A.entry_dim(l, k); ++t)
        xgens.push_back(unit_vec(A.F, A.dim(), A.basis_index(l, k, t)));
    } else {
      for (int t = 0; t + 1 < A.entry_dim(l, k); ++t) {
        FqAlgebra::Elem w = A.zero();
        FqPoly xt(t + 1, A.F.zero());
        xt[t] = A.F.one();
        w[l][k] = q_mul(A.F, q_mul(A.F, A.gbar(l, k), lin), xt);
        xgens.push_back(A.flatten(w));
      }
    }
  }
  M.sub = fq_span(A.F, std::move(xgens));
  return M;
}

// Submodule a * (space/sub), presented with the same denominator.
inline AlgebraModule module_image(const FqAlgebra& A, const AlgebraModule& M,
                                  const FqAlgebra::Elem& a) {
  FqMat gens = M.sub.basis;
  for (const auto& v : M.space.basis) gens.push_back(A.flatten(A.mul(a, A.unflatten(v))));
  return {fq_span(A.F, std::move(gens)), M.sub};
}

inline int image_qdim(const FqAlgebra& A, const AlgebraModule& M, const FqAlgebra::Elem& a) {
  return module_image(A, M, a).qdim();
}

// Projective at position i refined along its coset: eps_{Z(i)} * column i.
inline AlgebraModule refined_projective(const FqAlgebra& A,
                                        const std::vector<FqAlgebra::Elem>& eps, int i) {
  AlgebraModule col = column_module(A, i);
  FqMat gens;
  for (const auto& v : col.space.basis)
    gens.push_back(A.flatten(A.mul(eps[A.coset_of[i]], A.unflatten(v))));
  return {fq_span(A.F, std::move(gens)), fq_span(A.F, FqMat{})};
}

// Standard module at k refined along its coset: eps_{Z(k)} * (col k / X_k).
inline AlgebraModule refined_standard(const FqAlgebra& A,
                                      const std::vector<FqAlgebra::Elem>& eps, int k) {
  return module_image(A, standard_module(A, k), eps[A.coset_of[k]]);
}

// Multiplicity of the simple at position i in space/sub: the refined corner
// idempotent eps_{Z(i)} e_ii meets that simple in one line and the others in
// none, and cutting by an idempotent is exact.
inline int simple_multiplicity(const FqAlgebra& A, const std::vector<FqAlgebra::Elem>& eps,
                               const AlgebraModule& M, int i) {
  FqAlgebra::Elem corner = A.mul(eps[A.coset_of[i]], A.basis_elem(i, i, 0));
  return image_qdim(A, M, corner);
}

inline std::vector<int> multiplicity_vector(const FqAlgebra& A,
                                            const std::vector<FqAlgebra::Elem>& eps,
                                            const AlgebraModule& M) {
  std::vector<int> v(A.n);
  for (int i = 0; i < A.n; ++i) v[i] = simple_multiplicity(A, eps, M, i);
  return v;
}

// space and sub are stable under the given elements and sub sits in space.
inline bool module_closed_under(const FqAlgebra& A, const AlgebraModule& M,
                                const std::vector<FqAlgebra::Elem>& gens) {
  for (const auto& g : gens) {
    for (const auto& v : M.space.basis)
      if (!M.space.contains(A.flatten(A.mul(g, A.unflatten(v))))) return false;
    for (const auto& v : M.sub.basis)
      if (!M.sub.contains(A.flatten(A.mul(g, A.unflatten(v))))) return false;
  }
  for (const auto& v : M.sub.basis)
    if (!M.space.contains(v)) return false;
  return true;
}

// Composition multiplicities through the radical layering: the chain
// space >= J*space + sub >= J^2*space + sub >= ... has semisimple layers, and
// each layer is counted with the corner idempotents. An independent route to
// the multiplicity vector.
inline std::vector<int> peeled_multiplicities(const FqAlgebra& A,
                                              const std::vector<FqAlgebra::Elem>& eps,
                                              const AlgebraModule& M) {
  FqSpan rad = A.radical();
  std::vector<FqAlgebra::Elem> radels;
  radels.reserve(rad.dim());
  for (const auto& r : rad.basis) radels.push_back(A.unflatten(r));

  std::vector<int> total(A.n, 0);
  FqSpan cur = M.space;
  const FqSpan& floor = M.sub;
  while (cur.dim() > floor.dim()) {
    FqMat gens = floor.basis;
    for (const auto& r : radels)
      for (const auto& v : cur.basis) gens.push_back(A.flatten(A.mul(r, A.unflatten(v))));
    FqSpan next = fq_span(A.F, std::move(gens));
    if (next.dim() >= cur.dim()) throw std::logic_error("radical layering does not descend");
    AlgebraModule layer{cur, next};
    for (int i = 0; i < A.n; ++i) total[i] += simple_multiplicity(A, eps, layer, i);
    cur = std::move(next);
  }
  return total;
}

// The standard flag of column i: step k keeps rows at or past k whole and
// forces the factor gbar(k, i) onto the rows before k. Steps run k = i..n;
// consecutive quotients are the standard modules at k = i..n-1.
inline std::vector<AlgebraModule> column_flag(const FqAlgebra& A, int i) {
  std::vector<AlgebraModule> out;
  for (int k = i; k <= A.n; ++k) {
    FqMat gens;
    for (int l = 0; l < A.n; ++l) {
      if (l >= k) {
        for (int t = 0; t < A.entry_dim(l, i); ++t)
          gens.push_back(unit_vec(A.F, A.dim(), A.basis_index(l, i, t)));
      } else {
        for (int t = 0; t < A.n - k; ++t) {
          FqAlgebra::Elem w = A.zero();
          FqPoly xt(t + 1, A.F.zero());
          xt[t] = A.F.one();
          w[l][i] = q_mul(A.F, A.gbar(k, i), xt);
          gens.push_back(A.flatten(w));
        }
      }
    }
    out.push_back({fq_span(A.F, std::move(gens)), fq_span(A.F, FqMat{})});
  }
  return out;
}

// eps_{Z(i)} * (each flag step); quotients of consecutive steps realize the
// standard filtration of the refined projective at i.
inline std::vector<AlgebraModule> refined_column_flag(const FqAlgebra& A,
                                                      const std::vector<FqAlgebra::Elem>& eps,
                                                      int i) {
  std::vector<AlgebraModule> flag = column_flag(A, i);
  std::vector<AlgebraModule> out;
  out.reserve(flag.size());
  for (const auto& step : flag) {
    FqMat gens;
    for (const auto& v : step.space.basis)
      gens.push_back(A.flatten(A.mul(eps[A.coset_of[i]], A.unflatten(v))));
    out.push_back({fq_span(A.F, std::move(gens)), fq_span(A.F, FqMat{})});
  }
  return out;
}

// Cartan entry: dim of corner_i * A * corner_k, the two-sided idempotent cut.
// Only column k of the algebra survives the right cut.
inline int cartan_entry(const FqAlgebra& A, const std::vector<FqAlgebra::Elem>& eps, int i,
                        int k) {
  FqAlgebra::Elem li = A.mul(eps[A.coset_of[i]], A.basis_elem(i, i, 0));
  FqAlgebra::Elem rk = A.mul(eps[A.coset_of[k]], A.basis_elem(k, k, 0));
  FqMat gens;
  for (int idx = 0; idx < A.dim(); ++idx) {
    if (A.basis_ref(idx).j != k) continue;
    gens.push_back(A.flatten(A.mul(li, A.mul(A.basis_elem(idx), rk))));
  }
  return fq_span(A.F, std::move(gens)).dim();
}

// --- integral side: duality of the chain ideals -----------------------------

struct DualityCheck {
  bool kernel_matches = false;
  bool image_matches = false;
  bool ok() const { return kernel_matches && image_matches; }
};

// Multiplication by the product of the first i generators: its kernel is the
// ideal vanishing on the head positions and its image is the ideal vanishing
// on the tail, so each chain module is realized inside the ring as an ideal.
inline DualityCheck chain_duality(const TensorRing& T, int i) {
  const int n = T.n();
  IntRows M = T.mult_matrix(T.prefix_product(i));
  IntLattice full = T.full_lattice();

  std::vector<bool> head(n, false), tail(n, false);
  for (int k = 0; k < i; ++k) head[k] = true;
  for (int k = i; k < n; ++k) tail[k] = true;

  DualityCheck out;
  IntLattice ker = lattice_kernel_of_map(full, M, T.ambient());
  out.kernel_matches = (ker.rows == T.vanishing_ideal(head).rows);
  IntLattice img = lattice_image(full, M, T.ambient());
  out.image_matches = (img.rows == T.vanishing_ideal(tail).rows);
  return out;
}

// --- residue fiber of a chain ideal at a prime ------------------------------

struct FiberBlockDims {
  int fiber_dim = 0;            // F_p-dimension of L / L*Q
  std::vector<int> eigen_dims;  // per coset: dim ker (mult by (x - lift tau_Z))^e
};

// Reduce the tail ideal at i modulo Q on the plain-ring side and measure the
// generalized eigenspace of multiplication by (x - conjugate generator) for
// one representative per coset. Dimensions are over F_p.
inline FiberBlockDims fiber_block_dims(const TensorRing& T, const PrimeIdeal& Q,
                                       const FqAlgebra& A, int i) {
  const int n = T.n();
  std::vector<bool> tail(n, false);
  for (int k = i; k < n; ++k) tail[k] = true;
  IntLattice L = T.vanishing_ideal(tail);
  const int r = static_cast<int>(L.rows.size());
  FqField Fp = FqField::prime_field(Q.p);

  // h(theta) on the plain side; together with p it cuts the fiber
  IntPoly hlift;
  hlift.c.assign(Q.hbar.begin(), Q.hbar.end());
  hlift.trim();
  TensorRing::Elem hth = T.embed_right(T.R().eval_poly_at(hlift, T.R().theta()));

  auto coords_mod_p = [&](const TensorRing::Elem& t) {
    auto c = lattice_coords(L, T.flatten(t));
    if (!c) throw std::logic_error("fiber_block_dims: ideal not closed");
    FqVec v(r, Fp.zero());
    for (int b = 0; b < r; ++b) v[b] = Fp.from_int((*c)[b]);
    return v;
  };

  FqMat rel;
  rel.reserve(r);
  for (const auto& row : L.rows) rel.push_back(coords_mod_p(T.mul(T.unflatten(row), hth)));
  FqSpan R = fq_span(Fp, std::move(rel));

  FiberBlockDims out;
  out.fiber_dim = r - R.dim();

  std::vector<int> compl_cols;
  {
    std::vector<bool> piv(r, false);
    for (int c : R.pivots) piv[c] = true;
    for (int c = 0; c < r; ++c)
      if (!piv[c]) compl_cols.push_back(c);
  }

  for (const auto& coset : A.cosets) {
    IntRows opM = T.mult_matrix(T.a_elem(coset[0]));
    FqMat Op(r);
    for (int b = 0; b < r; ++b) {
      IntVec img(T.ambient(), Int(0));
      for (int c = 0; c < T.ambient(); ++c)
        for (int s = 0; s < T.ambient(); ++s) img[c] += L.rows[b][s] * opM[s][c];
      auto cc = lattice_coords(L, img);
      if (!cc) throw std::logic_error("fiber_block_dims: operator leaves the ideal");
      FqVec v(r, Fp.zero());
      for (int b2 = 0; b2 < r; ++b2) v[b2] = Fp.from_int((*cc)[b2]);
      Op[b] = std::move(v);
    }
    FqMat P(r);
    for (int b = 0; b < r; ++b) P[b] = unit_vec(Fp, r, b);
    for (int s = 0; s < Q.e; ++s) P = fq_mat_mul(Fp, P, Op, r);

    FqMat stack = R.basis;
    for (int c : compl_cols) stack.push_back(fq_apply(Fp, unit_vec(Fp, r, c), P, r));
    int image_dim = fq_rank(Fp, std::move(stack)) - R.dim();
    out.eigen_dims.push_back(out.fiber_dim - image_dim);
  }
  return out;
}

// --- evaluation map on the residue fiber ------------------------------------

// Rows t, columns k: tau_k^t. Collapses F[x]/(cbar 0) onto the function values
// at the n points; its rank is the number of distinct points, so it is a
// bijection exactly in the unramified case.
inline FqMat evaluation_matrix(const FqAlgebra& A) {
  FqMat M(A.n, fq_zero_vec(A.F, A.n));
  for (int k = 0; k < A.n; ++k) {
    FqField::Elem pw = A.F.one();
    for (int t = 0; t < A.n; ++t) {
      M[t][k] = pw;
      pw = A.F.mul(pw, A.tau[k]);
    }
  }
  return M;
}

}  // namespace nrhw
