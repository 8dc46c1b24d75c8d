#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "affcurv/monomial.hpp"
#include "affcurv/numeric.hpp"

namespace affcurv {

// Ordered, named variable list. Contexts are compared by value: two contexts
// with the same names in the same order are the same ring. Slicing and chart
// changes move between contexts through explicit substitution, never through
// silent coercion.
struct VarContext {
  std::vector<std::string> names;
  int size() const { return static_cast<int>(names.size()); }
  int index_of(const std::string& v) const {
    for (int i = 0; i < size(); ++i)
      if (names[i] == v) return i;
    return -1;
  }
  friend bool operator==(const VarContext& a, const VarContext& b) { return a.names == b.names; }
};

using Ctx = std::shared_ptr<const VarContext>;

inline Ctx make_ctx(std::vector<std::string> names) {
  if (static_cast<int>(names.size()) > kMaxVars) fail(Errc::Domain, "too many variables");
  auto c = std::make_shared<VarContext>();
  c->names = std::move(names);
  return c;
}

inline bool same_ctx(const Ctx& a, const Ctx& b) { return a == b || *a == *b; }

inline void require_same_ctx(const Ctx& a, const Ctx& b) {
  if (!same_ctx(a, b)) fail(Errc::ContextMismatch, "polynomials live in different variable contexts");
}

// ---------------------------------------------------------------------------
// Exact multivariate polynomial over K (Rat or Fp). Terms are kept sorted by
// a fixed storage order with no zero coefficients, so equal polynomials have
// equal representations.
template <class K>
struct Poly {
  Ctx ctx;
  std::vector<std::pair<Monomial, K>> t;  // sorted lex_less descending

  Poly() = default;
  explicit Poly(Ctx c) : ctx(std::move(c)) {}

  int nvars() const { return ctx->size(); }
  bool zero() const { return t.empty(); }
  bool is_constant() const { return t.empty() || (t.size() == 1 && t[0].first.deg() == 0); }

  long degree() const {  // degree of 0 reported as -1
    long d = -1;
    for (auto& [m, c] : t) d = std::max(d, m.deg());
    return d;
  }

  const K& constant_coeff_or(const K& fallback) const {
    if (!t.empty() && t.back().first.deg() == 0) return t.back().second;
    return fallback;
  }

  K coeff(const Monomial& m) const {
    for (auto& [mm, c] : t)
      if (mm == m) return c;
    return K{};
  }

  static Poly constant(Ctx c, K v) {
    Poly p(std::move(c));
    if (!field_ops<K>::zero(v)) p.t.emplace_back(Monomial::one(p.nvars()), std::move(v));
    return p;
  }
  static Poly variable(Ctx c, int i, K one) {
    Poly p(std::move(c));
    p.t.emplace_back(Monomial::var(p.nvars(), i), std::move(one));
    return p;
  }
  static Poly term(Ctx c, Monomial m, K v) {
    Poly p(std::move(c));
    if (!field_ops<K>::zero(v)) p.t.emplace_back(m, std::move(v));
    return p;
  }

  void normalize() {  // sort + combine + drop zeros
    std::sort(t.begin(), t.end(),
              [](const auto& a, const auto& b) { return lex_less(b.first, a.first); });
    std::vector<std::pair<Monomial, K>> out;
    out.reserve(t.size());
    for (auto& [m, c] : t) {
      if (!out.empty() && out.back().first == m)
        out.back().second = out.back().second + c;
      else
        out.emplace_back(m, c);
      if (!out.empty() && field_ops<K>::zero(out.back().second)) out.pop_back();
    }
    t = std::move(out);
  }
};

template <class K>
Poly<K> operator+(const Poly<K>& a, const Poly<K>& b) {
  require_same_ctx(a.ctx, b.ctx);
  Poly<K> r(a.ctx);
  r.t.reserve(a.t.size() + b.t.size());
  std::size_t i = 0, j = 0;
  while (i < a.t.size() || j < b.t.size()) {
    if (j == b.t.size() || (i < a.t.size() && lex_less(b.t[j].first, a.t[i].first))) {
      r.t.push_back(a.t[i++]);
    } else if (i == a.t.size() || lex_less(a.t[i].first, b.t[j].first)) {
      r.t.push_back(b.t[j++]);
    } else {
      K c = a.t[i].second + b.t[j].second;
      if (!field_ops<K>::zero(c)) r.t.emplace_back(a.t[i].first, std::move(c));
      ++i, ++j;
    }
  }
  return r;
}

template <class K>
Poly<K> operator-(const Poly<K>& a) {
  Poly<K> r = a;
  for (auto& [m, c] : r.t) c = -c;
  return r;
}

template <class K>
Poly<K> operator-(const Poly<K>& a, const Poly<K>& b) { return a + (-b); }

template <class K>
Poly<K> scale(const Poly<K>& a, const K& s) {
  Poly<K> r(a.ctx);
  if (field_ops<K>::zero(s)) return r;
  r.t = a.t;
  for (auto& [m, c] : r.t) c = c * s;
  return r;
}

// single-term multiple s*m*a
template <class K>
Poly<K> mul_term(const Poly<K>& a, const Monomial& m, const K& s) {
  Poly<K> r(a.ctx);
  if (field_ops<K>::zero(s)) return r;
  r.t = a.t;
  for (auto& [mm, c] : r.t) {
    mm = mm * m;
    c = c * s;
  }
  return r;
}

template <class K>
Poly<K> operator*(const Poly<K>& a, const Poly<K>& b) {
  require_same_ctx(a.ctx, b.ctx);
  Poly<K> r(a.ctx);
  r.t.reserve(a.t.size() * b.t.size());
  for (auto& [ma, ca] : a.t)
    for (auto& [mb, cb] : b.t) r.t.emplace_back(ma * mb, ca * cb);
  r.normalize();
  return r;
}

template <class K>
Poly<K> pow(const Poly<K>& a, long e) {
  if (e < 0) fail(Errc::Domain, "negative exponent");
  if (a.t.empty() && e == 0) fail(Errc::Domain, "0^0");
  Poly<K> r = Poly<K>::constant(a.ctx, field_ops<K>::one_like(a.t.empty() ? K{} : a.t[0].second));
  if (e == 0) return r;
  Poly<K> base = a;
  for (;;) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (!e) break;
    base = base * base;
  }
  return r;
}

template <class K>
bool operator==(const Poly<K>& a, const Poly<K>& b) {
  if (!same_ctx(a.ctx, b.ctx)) return false;
  if (a.t.size() != b.t.size()) return false;
  for (std::size_t i = 0; i < a.t.size(); ++i)
    if (!(a.t[i].first == b.t[i].first) || !(a.t[i].second == b.t[i].second)) return false;
  return true;
}

template <class K>
Poly<K> derivative(const Poly<K>& a, int var) {
  Poly<K> r(a.ctx);
  for (auto& [m, c] : a.t) {
    if (m.e[var] == 0) continue;
    Monomial mm = m;
    long e = mm.e[var];
    mm.e[var] = static_cast<std::uint16_t>(e - 1);
    K cc = c;
    for (long k = 1; k < e; ++k) cc = cc + c;  // c * e without a from-int hook
    r.t.emplace_back(mm, std::move(cc));
  }
  r.normalize();
  return r;
}

// all first partials, in context order
template <class K>
std::vector<Poly<K>> jacobian_generators(const Poly<K>& f) {
  std::vector<Poly<K>> out;
  out.reserve(f.nvars());
  for (int i = 0; i < f.nvars(); ++i) out.push_back(derivative(f, i));
  return out;
}

// ---------------------------------------------------------------------------
// Substitution: ring homomorphism into a target context. Every variable of the
// source must either have an assignment or exist verbatim in the target.
template <class K>
Poly<K> substitute(const Poly<K>& p, const Ctx& target,
                   const std::map<std::string, Poly<K>>& assign) {
  for (auto& [v, q] : assign) require_same_ctx(q.ctx, target);
  const int tn = target->size();
  // per-source-variable image
  std::vector<Poly<K>> image;
  for (int i = 0; i < p.nvars(); ++i) {
    const std::string& name = p.ctx->names[i];
    auto it = assign.find(name);
    if (it != assign.end()) {
      image.push_back(it->second);
    } else {
      int j = target->index_of(name);
      if (j < 0)
        fail(Errc::ContextMismatch,
             "variable '" + name + "' has no assignment and is absent from the target context");
      K one = field_ops<K>::one_like(p.t.empty() ? K{} : p.t[0].second);
      image.push_back(Poly<K>::variable(target, j, one));
    }
  }
  // power cache per variable
  std::vector<std::vector<Poly<K>>> pw(image.size());
  auto power = [&](int i, long e) -> const Poly<K>& {
    auto& v = pw[i];
    if (v.empty()) {
      K one = field_ops<K>::one_like(p.t.empty() ? K{} : p.t[0].second);
      v.push_back(Poly<K>::constant(target, one));
    }
    while (static_cast<long>(v.size()) <= e) v.push_back(v.back() * image[i]);
    return v[e];
  };
  Poly<K> r(target);
  for (auto& [m, c] : p.t) {
    Poly<K> termval = Poly<K>::constant(target, c);
    for (int i = 0; i < p.nvars(); ++i)
      if (m.e[i]) termval = termval * power(i, m.e[i]);
    r = r + termval;
  }
  (void)tn;
  return r;
}

// Rename-only context move (same variables, possibly reordered / extended).
template <class K>
Poly<K> embed(const Poly<K>& p, const Ctx& target) {
  return substitute(p, target, {});
}

// Context move that may also drop variables, provided they do not occur in p.
template <class K>
Poly<K> restrict_ctx(const Poly<K>& p, const Ctx& target) {
  std::vector<int> map(p.nvars(), -1);
  for (int i = 0; i < p.nvars(); ++i) map[i] = target->index_of(p.ctx->names[i]);
  Poly<K> r(target);
  for (auto& [m, c] : p.t) {
    Monomial mm = Monomial::one(target->size());
    for (int i = 0; i < p.nvars(); ++i) {
      if (!m.e[i]) continue;
      if (map[i] < 0)
        fail(Errc::ContextMismatch,
             "variable '" + p.ctx->names[i] + "' occurs but is absent from the target context");
      mm.e[map[i]] = static_cast<std::uint16_t>(mm.e[map[i]] + m.e[i]);
    }
    r.t.emplace_back(mm, c);
  }
  r.normalize();
  return r;
}

template <class K>
K evaluate(const Poly<K>& p, const std::vector<K>& x) {
  if (static_cast<int>(x.size()) != p.nvars()) fail(Errc::Domain, "evaluation arity mismatch");
  K acc{};
  bool first = true;
  for (auto& [m, c] : p.t) {
    K v = c;
    for (int i = 0; i < p.nvars(); ++i)
      for (int k = 0; k < m.e[i]; ++k) v = v * x[i];
    acc = first ? v : acc + v;
    first = false;
  }
  if (first) {
    // zero polynomial: manufacture 0 of the right field if possible
    return K{};
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Homogenization. The homogenizing variable is appended at the end of the
// context; dehomogenization w.r.t. any chart variable sets it to 1 and drops
// it from the context.
template <class K>
Poly<K> homogenize(const Poly<K>& p, const std::string& newvar, Ctx* out_ctx = nullptr) {
  if (p.ctx->index_of(newvar) >= 0) fail(Errc::Domain, "homogenizing variable already present");
  std::vector<std::string> names = p.ctx->names;
  names.push_back(newvar);
  Ctx c = make_ctx(names);
  if (out_ctx) *out_ctx = c;
  Poly<K> r(c);
  long d = p.degree();
  if (d < 0) return r;
  const int pos = c->size() - 1;
  for (auto& [m, co] : p.t) {
    Monomial mm = Monomial::one(c->size());
    for (int i = 0; i < p.nvars(); ++i) mm.e[i] = m.e[i];
    mm.e[pos] = static_cast<std::uint16_t>(d - m.deg());
    r.t.emplace_back(mm, co);
  }
  r.normalize();
  return r;
}

template <class K>
bool is_homogeneous(const Poly<K>& p) {
  if (p.t.empty()) return true;
  long d = p.t[0].first.deg();
  for (auto& [m, c] : p.t)
    if (m.deg() != d) return false;
  return true;
}

template <class K>
Poly<K> dehomogenize(const Poly<K>& p, const std::string& chart_var) {
  if (!is_homogeneous(p)) fail(Errc::Domain, "dehomogenize requires a homogeneous input");
  int k = p.ctx->index_of(chart_var);
  if (k < 0) fail(Errc::Domain, "chart variable not in context");
  std::vector<std::string> names;
  for (int i = 0; i < p.nvars(); ++i)
    if (i != k) names.push_back(p.ctx->names[i]);
  Ctx c = make_ctx(names);
  Poly<K> r(c);
  for (auto& [m, co] : p.t) {
    Monomial mm = Monomial::one(c->size());
    int j = 0;
    for (int i = 0; i < p.nvars(); ++i)
      if (i != k) mm.e[j++] = m.e[i];
    r.t.emplace_back(mm, co);
  }
  r.normalize();
  return r;
}

// top-degree form of p in its own context
template <class K>
Poly<K> top_form(const Poly<K>& p) {
  Poly<K> r(p.ctx);
  long d = p.degree();
  for (auto& [m, c] : p.t)
    if (m.deg() == d) r.t.emplace_back(m, c);
  return r;
}

// ---------------------------------------------------------------------------
// Rational-specific normalization: primitive integer coefficients, positive
// sign on the storage-leading term. Keeps Buchberger arithmetic small.
inline Poly<Rat> primitive_part(const Poly<Rat>& p) {
  if (p.t.empty()) return p;
  Int den = 1;
  for (auto& [m, c] : p.t) {
    Int d = c.get_den();
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
  }
  Int g = 0;
  for (auto& [m, c] : p.t) {
    Int num = Rat(c * Rat(den)).get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
  }
  Rat s(den, g);
  s.canonicalize();
  if (sgn(p.t[0].second) < 0) s = -s;
  return scale(p, s);
}

inline Poly<Fp> poly_mod_p(const Poly<Rat>& p, std::uint64_t mod) {
  Poly<Fp> r(p.ctx);
  for (auto& [m, c] : p.t) {
    Int num = c.get_num(), den = c.get_den();
    if (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(mod)))
      fail(Errc::Domain, "prime divides a coefficient denominator");
    std::uint64_t nv = mpz_fdiv_ui(num.get_mpz_t(), static_cast<unsigned long>(mod));
    std::uint64_t dv = mpz_fdiv_ui(den.get_mpz_t(), static_cast<unsigned long>(mod));
    Fp c2 = Fp::raw(nv, mod) / Fp::raw(dv, mod);
    if (!is_zero(c2)) r.t.emplace_back(m, c2);
  }
  r.normalize();
  return r;
}

// ---------------------------------------------------------------------------
// Printing (grammar-compatible: identifiers, ^, explicit *).
inline std::string coeff_str(const Rat& c) { return c.get_str(); }
inline std::string coeff_str(const Fp& c) { return std::to_string(c.v); }

template <class K>
std::string to_string(const Poly<K>& p) {
  if (p.t.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [m, c] : p.t) {
    std::string cs = coeff_str(c);
    bool neg = !cs.empty() && cs[0] == '-';
    if (first) {
      if (neg) os << "-", cs = cs.substr(1);
    } else {
      os << (neg ? " - " : " + ");
      if (neg) cs = cs.substr(1);
    }
    first = false;
    bool printed = false;
    if (cs != "1" || m.deg() == 0) {
      os << cs;
      printed = true;
    }
    for (int i = 0; i < p.nvars(); ++i) {
      if (!m.e[i]) continue;
      if (printed) os << "*";
      os << p.ctx->names[i];
      if (m.e[i] > 1) os << "^" << m.e[i];
      printed = true;
    }
  }
  return os.str();
}

using QPoly = Poly<Rat>;

}  // namespace affcurv
