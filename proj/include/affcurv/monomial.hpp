#pragma once

#include <array>
#include <cstdint>
#include <numeric>

#include "affcurv/numeric.hpp"

namespace affcurv {

// Dense exponent vectors. Every ambient ring in this engine has at most a
// handful of variables (original variables plus a homogenizer, an elimination
// tag and a localization tag), so kMaxVars = 10 is generous.
inline constexpr int kMaxVars = 10;

struct Monomial {
  std::array<std::uint16_t, kMaxVars> e{};
  std::uint8_t n = 0;  // number of variables in the ambient context

  static Monomial one(int nvars) {
    Monomial m;
    m.n = static_cast<std::uint8_t>(nvars);
    return m;
  }
  static Monomial var(int nvars, int i, int exp = 1) {
    Monomial m = one(nvars);
    m.e[i] = static_cast<std::uint16_t>(exp);
    return m;
  }

  long deg() const {
    long s = 0;
    for (int i = 0; i < n; ++i) s += e[i];
    return s;
  }
  long deg_range(int lo, int hi) const {
    long s = 0;
    for (int i = lo; i < hi; ++i) s += e[i];
    return s;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    if (a.n != b.n) return false;
    for (int i = 0; i < a.n; ++i)
      if (a.e[i] != b.e[i]) return false;
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m = a;
    for (int i = 0; i < a.n; ++i) m.e[i] = static_cast<std::uint16_t>(m.e[i] + b.e[i]);
    return m;
  }

  bool divides(const Monomial& b) const {
    for (int i = 0; i < n; ++i)
      if (e[i] > b.e[i]) return false;
    return true;
  }

  // quotient b / a, caller guarantees divisibility
  static Monomial quot(const Monomial& b, const Monomial& a) {
    Monomial m = b;
    for (int i = 0; i < b.n; ++i) m.e[i] = static_cast<std::uint16_t>(m.e[i] - a.e[i]);
    return m;
  }

  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial m = a;
    for (int i = 0; i < a.n; ++i) m.e[i] = std::max(m.e[i], b.e[i]);
    return m;
  }

  static bool coprime(const Monomial& a, const Monomial& b) {
    for (int i = 0; i < a.n; ++i)
      if (a.e[i] && b.e[i]) return false;
    return true;
  }
};

// Fixed order used for term storage only; independent of any computation
// order so that polynomial values are canonical.
inline bool lex_less(const Monomial& a, const Monomial& b) {
  for (int i = 0; i < a.n; ++i)
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i];
  return false;
}

// ---------------------------------------------------------------------------
// Monomial orders.
//   DegRevLex      — global well-order, 1 smallest.
//   LocalDs        — antigraded degrevlex, 1 largest; the local order used for
//                    multiplicities at a point (Mora normal form).
//   Block(k)       — eliminates the first k variables: degrevlex on the first
//                    block, ties broken by degrevlex on the rest.
struct MonomialOrder {
  enum class Kind { DegRevLex, LocalDs, Block } kind = Kind::DegRevLex;
  int block = 0;

  static MonomialOrder degrevlex() { return {Kind::DegRevLex, 0}; }
  static MonomialOrder local_ds() { return {Kind::LocalDs, 0}; }
  static MonomialOrder elim_block(int k) { return {Kind::Block, k}; }

  bool is_global() const { return kind != Kind::LocalDs; }

  // returns <0, 0, >0 with >0 meaning a > b
  int cmp(const Monomial& a, const Monomial& b) const {
    switch (kind) {
      case Kind::DegRevLex: return cmp_drl(a, b, 0, a.n);
      case Kind::LocalDs: {
        long da = a.deg(), db = b.deg();
        if (da != db) return da < db ? 1 : -1;
        return tie_revlex(a, b, 0, a.n);
      }
      case Kind::Block: {
        int c = cmp_drl(a, b, 0, block);
        if (c) return c;
        return cmp_drl(a, b, block, a.n);
      }
    }
    return 0;
  }

  bool greater(const Monomial& a, const Monomial& b) const { return cmp(a, b) > 0; }

 private:
  static int cmp_drl(const Monomial& a, const Monomial& b, int lo, int hi) {
    long da = a.deg_range(lo, hi), db = b.deg_range(lo, hi);
    if (da != db) return da > db ? 1 : -1;
    return tie_revlex(a, b, lo, hi);
  }
  static int tie_revlex(const Monomial& a, const Monomial& b, int lo, int hi) {
    for (int i = hi - 1; i >= lo; --i) {
      int d = static_cast<int>(a.e[i]) - static_cast<int>(b.e[i]);
      if (d) return d < 0 ? 1 : -1;
    }
    return 0;
  }
};

}  // namespace affcurv
