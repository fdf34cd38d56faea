#pragma once

// Shared constructions of the Galois number rings used across the test suite:
// quadratic rings Z[sqrt(d)], the Gaussian integers, and the cyclotomic rings
// Z[zeta_5], Z[zeta_7].

#include "nrhw/numberfield.hpp"

namespace nrhw::testfields {

inline GaloisGroup quadratic(long d) {
  IntPoly f{Int(-d), Int(0), Int(1)};
  std::vector<IntVec> images = {{Int(0), Int(1)}, {Int(0), Int(-1)}};
  return build_group(std::move(f), std::move(images));
}

inline GaloisGroup sqrt2() { return quadratic(2); }
inline GaloisGroup sqrt3() { return quadratic(3); }

inline GaloisGroup gauss() {
  IntPoly f{Int(1), Int(0), Int(1)};
  std::vector<IntVec> images = {{Int(0), Int(1)}, {Int(0), Int(-1)}};
  return build_group(std::move(f), std::move(images));
}

// Z[zeta_m] for prime m: the automorphisms are zeta -> zeta^k, k = 1..m-1,
// listed in that order (index 0 is the identity).
inline GaloisGroup cyclotomic(int m) {
  int n = m - 1;
  IntPoly f(std::vector<Int>(m, Int(1)));
  std::vector<IntVec> images;
  NumberRing R(f);
  for (int k = 1; k < m; ++k) {
    NumberRing::Elem zk = R.pow(R.theta(), static_cast<unsigned>(k));
    images.push_back(zk);
  }
  (void)n;
  return build_group(f, std::move(images));
}

inline GaloisGroup zeta5() { return cyclotomic(5); }
inline GaloisGroup zeta7() { return cyclotomic(7); }

}  // namespace nrhw::testfields
