#pragma once

#include <vector>

#include "affcurv/polynomial.hpp"

namespace affcurv {

// Dense univariate utilities over Q. Used for eliminants: squarefree parts,
// distinct-root counts and rational-root extraction. No factorization.
struct UniPoly {
  std::vector<Rat> c;  // c[i] * x^i, trailing zeros trimmed

  void trim() {
    while (!c.empty() && is_zero(c.back())) c.pop_back();
  }
  long deg() const { return static_cast<long>(c.size()) - 1; }
  bool zero() const { return c.empty(); }

  Rat eval(const Rat& x) const {
    Rat acc(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  UniPoly derivative() const {
    UniPoly d;
    for (std::size_t i = 1; i < c.size(); ++i) d.c.push_back(c[i] * Rat(static_cast<long>(i)));
    d.trim();
    return d;
  }
};

inline UniPoly to_unipoly(const Poly<Rat>& p) {
  if (p.nvars() != 1) fail(Errc::Domain, "expected a univariate polynomial");
  UniPoly u;
  u.c.assign(p.degree() < 0 ? 0 : p.degree() + 1, Rat(0));
  for (auto& [m, co] : p.t) u.c[m.e[0]] = co;
  u.trim();
  return u;
}

inline void uni_make_primitive(UniPoly& p) {
  if (p.zero()) return;
  Int den = 1;
  for (auto& x : p.c) {
    Int d = x.get_den();
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
  }
  Int g = 0;
  for (auto& x : p.c) {
    Int num = Rat(x * Rat(den)).get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
  }
  if (g == 0) return;
  Rat s(den, g);
  s.canonicalize();
  if (sgn(p.c.back()) < 0) s = -s;
  for (auto& x : p.c) x *= s;
}

inline UniPoly uni_rem(UniPoly a, const UniPoly& b) {
  while (!a.zero() && a.deg() >= b.deg()) {
    Rat q = a.c.back() / b.c.back();
    long shift = a.deg() - b.deg();
    for (long i = 0; i <= b.deg(); ++i) a.c[i + shift] -= q * b.c[i];
    a.trim();
  }
  return a;
}

inline UniPoly uni_gcd(UniPoly a, UniPoly b) {
  uni_make_primitive(a);
  uni_make_primitive(b);
  while (!b.zero()) {
    UniPoly r = uni_rem(a, b);
    uni_make_primitive(r);
    a = std::move(b);
    b = std::move(r);
  }
  uni_make_primitive(a);
  return a;
}

inline UniPoly squarefree_part(const UniPoly& p) {
  if (p.zero() || p.deg() <= 0) return p;
  UniPoly g = uni_gcd(p, p.derivative());
  if (g.deg() <= 0) return p;
  // exact division p / g
  UniPoly rem = p, q;
  q.c.assign(p.deg() - g.deg() + 1, Rat(0));
  while (!rem.zero() && rem.deg() >= g.deg()) {
    Rat s = rem.c.back() / g.c.back();
    long shift = rem.deg() - g.deg();
    q.c[shift] = s;
    for (long i = 0; i <= g.deg(); ++i) rem.c[i + shift] -= s * g.c[i];
    rem.trim();
  }
  if (!rem.zero()) fail(Errc::InternalCheck, "squarefree division left a remainder");
  q.trim();
  return q;
}

// Divisor enumeration by trial division. `complete=false` means the cofactor
// beyond the trial-division bound could not be fully factored, so the
// candidate set may miss divisors (callers treat that as a residual).
inline std::vector<Int> divisors_of(Int n, bool* complete) {
  *complete = true;
  n = abs(n);
  std::vector<std::pair<Int, int>> fac;
  if (n == 0) fail(Errc::Domain, "divisors of zero");
  for (Int p = 2; p * p <= n && p < 1000000; p = p + 1) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) { n /= p; ++e; }
      fac.emplace_back(p, e);
    }
  }
  if (n > 1) {
    fac.emplace_back(n, 1);
    if (n >= 1000000L * 1000000L) *complete = false;  // cofactor may be composite
  }
  std::vector<Int> div{1};
  for (auto& [p, e] : fac) {
    std::size_t sz = div.size();
    Int pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < sz; ++i) div.push_back(div[i] * pk);
    }
  }
  return div;
}

struct RationalRoots {
  std::vector<std::pair<Rat, int>> roots;  // (root, multiplicity)
  bool complete = true;                    // false: candidate set may be short
};

inline RationalRoots rational_roots(const UniPoly& input) {
  RationalRoots out;
  UniPoly p = input;
  uni_make_primitive(p);
  if (p.zero()) fail(Errc::Domain, "rational roots of the zero polynomial");
  // factor out x^k
  int k0 = 0;
  while (!p.c.empty() && is_zero(p.c.front())) {
    p.c.erase(p.c.begin());
    ++k0;
  }
  if (k0) out.roots.emplace_back(Rat(0), k0);
  if (p.deg() <= 0) return out;
  bool c1 = true, c2 = true;
  Int a0 = p.c.front().get_num();
  Int ad = p.c.back().get_num();
  auto P = divisors_of(a0, &c1);
  auto Q = divisors_of(ad, &c2);
  out.complete = c1 && c2;
  for (const Int& num : P) {
    for (const Int& den : Q) {
      for (int s : {1, -1}) {
        Rat cand(s * num, den);
        cand.canonicalize();
        if (!is_zero(p.eval(cand))) continue;
        // deflate repeatedly
        int mult = 0;
        while (is_zero(p.eval(cand)) && p.deg() >= 1) {
          UniPoly q;
          q.c.assign(p.deg(), Rat(0));
          Rat carry(0);
          for (long i = p.deg(); i >= 1; --i) {
            carry = p.c[i] + carry * cand;
            q.c[i - 1] = carry;
          }
          p = q;
          p.trim();
          uni_make_primitive(p);
          ++mult;
          if (p.zero()) break;
        }
        bool seen = false;
        for (auto& [r, m] : out.roots)
          if (r == cand) { seen = true; m += mult; }
        if (!seen) out.roots.emplace_back(cand, mult);
        if (p.deg() <= 0) return out;
      }
    }
  }
  return out;
}

}  // namespace affcurv
