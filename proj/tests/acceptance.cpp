// Acceptance runner: one line per criterion, exact arithmetic throughout.
// Exit status is zero only if every criterion holds.

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "fields.hpp"
#include "nrhw/verdicts.hpp"

using namespace nrhw;

namespace {

const std::vector<std::int64_t> kPrimes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};

struct Fixture {
  std::string name;
  GaloisGroup G;
};

std::vector<Fixture> fixtures() {
  return {{"sqrt2", testfields::sqrt2()},
          {"sqrt3", testfields::sqrt3()},
          {"gauss", testfields::gauss()},
          {"zeta5", testfields::zeta5()},
          {"zeta7", testfields::zeta7()}};
}

bool peeling_matches_all_standards(const FqAlgebra& A) {
  auto eps = A.central_idempotents();
  for (int k = 0; k < A.n; ++k) {
    AlgebraModule M = standard_module(A, k);
    if (M.qdim() > 12) continue;
    if (peeled_multiplicities(A, eps, M) != multiplicity_vector(A, eps, M)) return false;
  }
  return true;
}

}  // namespace

int main() {
  bool c1 = true, c2 = true, c3 = true, c4 = true, c5 = true, c6 = true, c7 = true, c8 = true;

  for (const auto& fx : fixtures()) {
    TensorRing T(fx.G);

    c1 = c1 && basis_verdicts(T).ok();
    if (T.n() <= 5) c2 = c2 && subset_ideals_match(T);
    c6 = c6 && chain_duality_all(T);

    for (std::int64_t p : kPrimes) {
      PrimeIdeal Q = split_prime(fx.G, p)[0];
      FqAlgebra A(Q.F, T.tau_values(Q));

      c3 = c3 && idempotent_verdict(T, Q);
      c4 = c4 && (A.is_semisimple() == (Q.e == 1));
      c5 = c5 && reciprocity_verdicts(A).ok();
      c6 = c6 && fiber_blocks_match(T, Q, A);
      c8 = c8 && evaluation_verdicts(fx.G, Q, A).ok();

      // ramified witnesses with their radical dimensions
      if (fx.name == "sqrt2" && p == 2) {
        FqSpan rad = A.radical();
        c4 = c4 && A.dim() == 5 && rad.dim() == 3;
        ReciprocityVerdicts rv = reciprocity_verdicts(A);
        c5 = c5 && rv.C == std::vector<std::vector<int>>{{2, 1}, {1, 1}};
        c5 = c5 && peeling_matches_all_standards(A);
      }
      if (fx.name == "zeta5" && p == 5) {
        FqSpan rad = A.radical();
        c4 = c4 && A.dim() == 30 && rad.dim() == 26;
        ReciprocityVerdicts rv = reciprocity_verdicts(A);
        bool spot = true;
        for (int i = 0; i < 4; ++i)
          for (int k = 0; k < 4; ++k) spot = spot && rv.C[i][k] == 4 - std::max(i, k);
        c5 = c5 && spot && peeling_matches_all_standards(A);
      }
      if (fx.name == "zeta7" && p == 7) c5 = c5 && peeling_matches_all_standards(A);
    }
  }

  // order-sensitive sheaf exactness of the quadratic sequence, and the doubled
  // image of the first layer under the conjugate evaluation
  {
    SheafVerdicts sv = sheaf_verdicts(testfields::sqrt2());
    c7 = c7 && sv.quadratic && sv.ok();
    for (long d : {3, 6, 7}) {
      SheafVerdicts svd = sheaf_verdicts(testfields::quadratic(d));
      c7 = c7 && svd.quadratic && svd.ok();
    }
  }

  struct Line {
    bool pass;
    const char* text;
  };
  const Line lines[] = {
      {c1, "1 generator products vanish; prefix evaluations are triangular, nonzero diagonal"},
      {c2, "2 every subset evaluation kernel is the principal ideal of the outside product"},
      {c3, "3 local idempotent systems: exact identities at every prime <= 50"},
      {c4, "4 semisimple exactly at the unramified primes <= 50, ramified witness dimensions"},
      {c5, "5 reciprocity: D closed form, V = D^T by two routes, C = D^T D; spot values"},
      {c6, "6 chain duality over Z and block dimensions of every reduction at p <= 50"},
      {c7, "7 quadratic sequence: module-exact, order-sensitive exactness, doubled image"},
      {c8, "8 evaluation map bijective iff unramified; points are e-fold roots when ramified"},
  };

  bool all = true;
  for (const Line& L : lines) {
    std::printf("[%s] %s\n", L.pass ? "PASS" : "FAIL", L.text);
    all = all && L.pass;
  }
  std::printf("acceptance: %s\n", all ? "8/8 criteria hold" : "criteria failed");
  return all ? 0 : 1;
}
