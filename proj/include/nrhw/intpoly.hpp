#pragma once

#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "nrhw/bigint.hpp"

namespace nrhw {

// Dense univariate polynomial over Z, coefficients lowest degree first.
// Invariant: no trailing zero coefficient (the zero polynomial is empty).
struct IntPoly {
  std::vector<Int> c;

  IntPoly() = default;
  IntPoly(std::initializer_list<Int> coeffs) : c(coeffs) { trim(); }
  explicit IntPoly(std::vector<Int> coeffs) : c(std::move(coeffs)) { trim(); }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }

  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
  const Int& lead() const { return c.back(); }
  bool is_monic() const { return !c.empty() && c.back() == 1; }

  Int coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c.size())) ? c[i] : Int(0);
  }

  bool operator==(const IntPoly& o) const { return c == o.c; }

  static IntPoly x_power(int k, Int scale = 1) {
    std::vector<Int> v(k + 1, Int(0));
    v[k] = std::move(scale);
    return IntPoly(std::move(v));
  }
};

inline IntPoly operator+(const IntPoly& a, const IntPoly& b) {
  std::vector<Int> v(std::max(a.c.size(), b.c.size()), Int(0));
  for (size_t i = 0; i < a.c.size(); ++i) v[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) v[i] += b.c[i];
  return IntPoly(std::move(v));
}

inline IntPoly operator-(const IntPoly& a, const IntPoly& b) {
  std::vector<Int> v(std::max(a.c.size(), b.c.size()), Int(0));
  for (size_t i = 0; i < a.c.size(); ++i) v[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) v[i] -= b.c[i];
  return IntPoly(std::move(v));
}

inline IntPoly operator-(const IntPoly& a) {
  std::vector<Int> v = a.c;
  for (auto& x : v) x = -x;
  return IntPoly(std::move(v));
}

inline IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Int> v(a.c.size() + b.c.size() - 1, Int(0));
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) v[i + j] += a.c[i] * b.c[j];
  return IntPoly(std::move(v));
}

inline IntPoly operator*(const IntPoly& a, const Int& s) {
  std::vector<Int> v = a.c;
  for (auto& x : v) x *= s;
  return IntPoly(std::move(v));
}

// Division with remainder by a monic divisor: a = q*m + r, deg r < deg m.
// Exact over Z because m is monic.
inline std::pair<IntPoly, IntPoly> divmod_monic(const IntPoly& a, const IntPoly& m) {
  if (!m.is_monic()) throw std::invalid_argument("divmod_monic: divisor not monic");
  std::vector<Int> r = a.c;
  const int dm = m.degree();
  if (a.degree() < dm) return {IntPoly{}, a};
  std::vector<Int> q(a.degree() - dm + 1, Int(0));
  for (int k = a.degree(); k >= dm; --k) {
    Int t = r[k];
    if (t == 0) continue;
    q[k - dm] = t;
    for (int j = 0; j <= dm; ++j) r[k - dm + j] -= t * m.c[j];
  }
  return {IntPoly(std::move(q)), IntPoly(std::move(r))};
}

inline Int eval(const IntPoly& a, const Int& x) {
  Int r = 0;
  for (auto it = a.c.rbegin(); it != a.c.rend(); ++it) r = r * x + *it;
  return r;
}

inline IntPoly derivative(const IntPoly& a) {
  if (a.degree() < 1) return {};
  std::vector<Int> v(a.c.size() - 1);
  for (size_t i = 1; i < a.c.size(); ++i) v[i - 1] = a.c[i] * Int(i);
  return IntPoly(std::move(v));
}

inline Int content(const IntPoly& a) {
  Int g = 0;
  for (const auto& x : a.c) g = gcd_int(g, x);
  return g;
}

inline IntPoly primitive_part(const IntPoly& a) {
  Int g = content(a);
  if (g == 0 || g == 1) return a;
  std::vector<Int> v = a.c;
  for (auto& x : v) x /= g;
  return IntPoly(std::move(v));
}

// Pseudo-remainder: lead(b)^(deg a - deg b + 1) * a mod b, requires deg a >= deg b.
inline IntPoly pseudo_rem(IntPoly a, const IntPoly& b) {
  const int db = b.degree();
  const Int lb = b.lead();
  while (!a.is_zero() && a.degree() >= db) {
    int k = a.degree();
    Int t = a.lead();
    for (auto& x : a.c) x *= lb;
    for (int j = 0; j <= db; ++j) a.c[k - db + j] -= t * b.c[j];
    a.trim();
  }
  return a;
}

// Gcd over Q (returned primitive over Z), via the primitive PRS.
inline IntPoly gcd_poly(IntPoly a, IntPoly b) {
  if (a.is_zero()) return primitive_part(b);
  if (b.is_zero()) return primitive_part(a);
  a = primitive_part(a);
  b = primitive_part(b);
  while (!b.is_zero()) {
    if (a.degree() < b.degree()) std::swap(a, b);
    IntPoly r = primitive_part(pseudo_rem(a, b));
    a = b;
    b = r;
  }
  if (a.lead() < 0) a = -a;
  return a;
}

inline bool is_squarefree_over_q(const IntPoly& a) {
  return gcd_poly(a, derivative(a)).degree() == 0;
}

inline std::string to_string(const IntPoly& a, const std::string& var = "x") {
  if (a.is_zero()) return "0";
  std::string s;
  for (int i = a.degree(); i >= 0; --i) {
    Int ci = a.coeff(i);
    if (ci == 0) continue;
    if (!s.empty()) s += ci > 0 ? " + " : " - ";
    else if (ci < 0) s += "-";
    Int ab = abs_int(ci);
    bool show_c = (ab != 1) || i == 0;
    if (show_c) s += ab.str();
    if (i > 0) {
      if (show_c) s += "*";
      s += var;
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

}  // namespace nrhw
