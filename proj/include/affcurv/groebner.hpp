#pragma once

#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "affcurv/polynomial.hpp"

namespace affcurv {

struct GbOptions {
  // Completion re-check after every basis computation. Modular reduces the
  // candidate basis mod a random large prime and checks the criterion there
  // (fast, catches implementation faults); Exact re-reduces every S-pair over
  // the coefficient field itself.
  enum class Verify { Off, Modular, Exact };
  Verify verify_basis = Verify::Modular;
  long mora_step_cap = 4000000;
};

inline GbOptions& gb_options() {
  static GbOptions o;
  return o;
}

namespace detail {

// Working form: terms sorted descending by the active order.
template <class K>
struct GP {
  std::vector<std::pair<Monomial, K>> t;
  bool zero() const { return t.empty(); }
  const Monomial& lm() const { return t[0].first; }
  const K& lc() const { return t[0].second; }
  long deg() const {
    long d = 0;
    for (auto& [m, c] : t) d = std::max(d, m.deg());
    return d;
  }
  long ecart() const { return deg() - lm().deg(); }
};

template <class K>
GP<K> to_gp(const Poly<K>& p, const MonomialOrder& ord) {
  GP<K> g;
  g.t = p.t;
  std::sort(g.t.begin(), g.t.end(),
            [&](const auto& a, const auto& b) { return ord.greater(a.first, b.first); });
  return g;
}

template <class K>
Poly<K> from_gp(const GP<K>& g, const Ctx& ctx) {
  Poly<K> p(ctx);
  p.t = g.t;
  p.normalize();
  return p;
}

// r := a*r - b*(m*g), merged in order; all term lists stay sorted.
template <class K>
void axpy(GP<K>& r, const K& a, const K& b, const Monomial& m, const GP<K>& g,
          const MonomialOrder& ord) {
  std::vector<std::pair<Monomial, K>> out;
  out.reserve(r.t.size() + g.t.size());
  std::size_t i = 0, j = 0;
  const bool scale_r = !(a == field_ops<K>::one_like(a));
  while (i < r.t.size() || j < g.t.size()) {
    int which;
    if (i == r.t.size()) which = 1;
    else if (j == g.t.size()) which = 0;
    else {
      Monomial mg = g.t[j].first * m;
      int c = ord.cmp(r.t[i].first, mg);
      which = c > 0 ? 0 : (c < 0 ? 1 : 2);
    }
    if (which == 0) {
      out.emplace_back(r.t[i].first, scale_r ? K(r.t[i].second * a) : r.t[i].second);
      ++i;
    } else if (which == 1) {
      out.emplace_back(g.t[j].first * m, K(-(g.t[j].second * b)));
      ++j;
    } else {
      K c = r.t[i].second * a - g.t[j].second * b;
      if (!field_ops<K>::zero(c)) out.emplace_back(r.t[i].first, std::move(c));
      ++i, ++j;
    }
  }
  r.t = std::move(out);
}

inline void strip_content(GP<Rat>& g) {
  if (g.t.empty()) return;
  Int den = 1;
  for (auto& [m, c] : g.t) {
    Int d = c.get_den();
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
  }
  Int gg = 0;
  for (auto& [m, c] : g.t) {
    Int num = Rat(c * Rat(den)).get_num();
    mpz_gcd(gg.get_mpz_t(), gg.get_mpz_t(), num.get_mpz_t());
    if (gg == 1 && den == 1) break;
  }
  if (gg == 1 && den == 1 && sgn(g.t[0].second) > 0) return;
  Rat s(den, gg);
  s.canonicalize();
  if (sgn(g.t[0].second) < 0) s = -s;
  for (auto& [m, c] : g.t) c *= s;
}

inline void strip_content(GP<Fp>& g) {
  if (g.t.empty()) return;
  Fp inv = g.t[0].second.inverse();
  if (inv.v == 1) return;
  for (auto& [m, c] : g.t) c = c * inv;
}

// one reduction step of r by g (leading term of r is divisible by lm(g))
template <class K>
void reduce_step(GP<K>& r, const GP<K>& g, const MonomialOrder& ord) {
  Monomial m = Monomial::quot(r.lm(), g.lm());
  K a = g.lc(), b = r.lc();
  if constexpr (std::is_same_v<K, Rat>) {
    Int gg;
    mpz_gcd(gg.get_mpz_t(), Rat(a).get_num().get_mpz_t(), Rat(b).get_num().get_mpz_t());
    if (a.get_den() == 1 && b.get_den() == 1 && gg != 0) {
      a = Rat(Rat(a).get_num() / gg);
      b = Rat(Rat(b).get_num() / gg);
    }
  }
  axpy(r, a, b, m, g, ord);
  strip_content(r);
}

// Joint content strip: rescales result and worker together so their sum stays
// a scalar multiple of the original input modulo the ideal.
inline void strip_joint(GP<Rat>& r, GP<Rat>& h) {
  Int den = 1;
  for (auto* g : {&r, &h})
    for (auto& [m, c] : g->t) {
      Int d = c.get_den();
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
    }
  Int gg = 0;
  for (auto* g : {&r, &h})
    for (auto& [m, c] : g->t) {
      Int num = Rat(c * Rat(den)).get_num();
      mpz_gcd(gg.get_mpz_t(), gg.get_mpz_t(), num.get_mpz_t());
    }
  if (gg == 0) return;
  Rat s(den, gg);
  s.canonicalize();
  for (auto* g : {&r, &h})
    for (auto& [m, c] : g->t) c *= s;
}

inline void strip_joint(GP<Fp>&, GP<Fp>&) {}

// Full normal form for a global order: reduces leading and tail terms. The
// fraction-free step rescales the worker, so the already-accumulated result
// is rescaled in lockstep.
template <class K>
GP<K> normal_form_global(GP<K> h, const std::vector<GP<K>>& base,
                         const std::vector<int>& active, const MonomialOrder& ord) {
  GP<K> result;
  int steps = 0;
  while (!h.zero()) {
    const GP<K>* red = nullptr;
    for (int idx : active) {
      if (base[idx].lm().divides(h.lm())) { red = &base[idx]; break; }
    }
    if (red) {
      const GP<K>& g = *red;
      Monomial m = Monomial::quot(h.lm(), g.lm());
      K a = g.lc(), b = h.lc();
      if constexpr (std::is_same_v<K, Rat>) {
        Int gg;
        mpz_gcd(gg.get_mpz_t(), Rat(a).get_num().get_mpz_t(), Rat(b).get_num().get_mpz_t());
        if (a.get_den() == 1 && b.get_den() == 1 && gg != 0) {
          a = Rat(Rat(a).get_num() / gg);
          b = Rat(Rat(b).get_num() / gg);
        }
      }
      if (!(a == field_ops<K>::one_like(a)))
        for (auto& [mm, cc] : result.t) cc = cc * a;
      axpy(h, a, b, m, g, ord);
      if (++steps % 16 == 0) strip_joint(result, h);
    } else {
      result.t.push_back(h.t.front());
      h.t.erase(h.t.begin());
    }
  }
  strip_content(result);
  return result;
}

// Mora weak normal form for a local order. Only the leading term is reduced;
// intermediate remainders join the reducer set when their ecart is smaller.
template <class K>
GP<K> normal_form_mora(GP<K> h, const std::vector<GP<K>>& base,
                       const std::vector<int>& active, const MonomialOrder& ord) {
  std::vector<GP<K>> extra;
  long steps = 0;
  for (;;) {
    if (h.zero()) return h;
    const GP<K>* red = nullptr;
    long best = 0;
    for (int idx : active) {
      const GP<K>& g = base[idx];
      if (g.lm().divides(h.lm())) {
        long e = g.ecart();
        if (!red || e < best) { red = &g; best = e; }
      }
    }
    for (auto& g : extra) {
      if (g.lm().divides(h.lm())) {
        long e = g.ecart();
        if (!red || e < best) { red = &g; best = e; }
      }
    }
    if (!red) return h;
    GP<K> reducer = *red;  // copy: pushing into `extra` may invalidate `red`
    if (best > h.ecart()) extra.push_back(h);
    reduce_step(h, reducer, ord);
    if (++steps > gb_options().mora_step_cap)
      fail(Errc::InternalCheck, "local normal form exceeded the step cap");
  }
}

template <class K>
GP<K> spoly(const GP<K>& f, const GP<K>& g, const MonomialOrder& ord) {
  Monomial L = Monomial::lcm(f.lm(), g.lm());
  Monomial mf = Monomial::quot(L, f.lm());
  Monomial mg = Monomial::quot(L, g.lm());
  K a = g.lc(), b = f.lc();
  if constexpr (std::is_same_v<K, Rat>) {
    Int gg;
    mpz_gcd(gg.get_mpz_t(), Rat(a).get_num().get_mpz_t(), Rat(b).get_num().get_mpz_t());
    if (a.get_den() == 1 && b.get_den() == 1 && gg != 0) {
      a = Rat(Rat(a).get_num() / gg);
      b = Rat(Rat(b).get_num() / gg);
    }
  }
  GP<K> s;
  s.t.reserve(f.t.size() + g.t.size());
  for (auto& [m, c] : f.t) s.t.emplace_back(m * mf, c * a);
  GP<K> tmp;
  tmp.t = s.t;
  axpy(tmp, field_ops<K>::one_like(a), b, mg, g, ord);
  strip_content(tmp);
  return tmp;
}


// Buchberger-criterion re-check of a claimed completed basis. Coprime-lead
// pairs reduce to zero by Buchberger's first criterion and are skipped.
template <class K>
void verify_pairs_exact(const std::vector<GP<K>>& out, const MonomialOrder& ord, bool local) {
  std::vector<int> all;
  for (std::size_t i = 0; i < out.size(); ++i) all.push_back(static_cast<int>(i));
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = i + 1; j < out.size(); ++j) {
      if (!local && Monomial::coprime(out[i].lm(), out[j].lm())) continue;
      GP<K> s = spoly(out[i], out[j], ord);
      if (s.zero()) continue;
      GP<K> r = local ? normal_form_mora(std::move(s), out, all, ord)
                      : normal_form_global(std::move(s), out, all, ord);
      if (!r.zero()) fail(Errc::InternalCheck, "basis failed its completion re-check");
    }
}

inline void verify_completion(const std::vector<GP<Fp>>& out, const MonomialOrder& ord,
                              bool local) {
  if (gb_options().verify_basis == GbOptions::Verify::Off || out.size() <= 1) return;
  verify_pairs_exact(out, ord, local);
}

inline void verify_completion(const std::vector<GP<Rat>>& out, const MonomialOrder& ord,
                              bool local) {
  if (gb_options().verify_basis == GbOptions::Verify::Off || out.size() <= 1) return;
  if (gb_options().verify_basis == GbOptions::Verify::Exact || local) {
    verify_pairs_exact(out, ord, local);
    return;
  }
  // modular spot-check: image of the basis mod a random prime that keeps every
  // leading coefficient alive must satisfy the criterion over F_p
  static std::uint64_t counter = 0x5eedc0de;
  Rng rng(counter++);
  for (int attempt = 0; attempt < 3; ++attempt) {
    std::uint64_t p = random_prime(rng);
    bool good = true;
    std::vector<GP<Fp>> img;
    for (auto& g : out) {
      GP<Fp> gg;
      for (auto& [m, c] : g.t) {
        Int num = c.get_num(), den = c.get_den();
        if (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p))) {
          good = false;
          break;
        }
        std::uint64_t nv = mpz_fdiv_ui(num.get_mpz_t(), static_cast<unsigned long>(p));
        std::uint64_t dv = mpz_fdiv_ui(den.get_mpz_t(), static_cast<unsigned long>(p));
        Fp cc = Fp::raw(nv, p) / Fp::raw(dv, p);
        if (!is_zero(cc)) gg.t.emplace_back(m, cc);
      }
      if (!good) break;
      if (gg.zero() || !(gg.lm() == g.lm())) { good = false; break; }  // lead died
      img.push_back(std::move(gg));
    }
    if (!good) continue;
    verify_pairs_exact(img, ord, local);
    return;
  }
  verify_pairs_exact(out, ord, local);  // no usable prime found: exact fallback
}

struct Pair {
  int i, j;
  Monomial lcm;
  long deg;
};

struct PairCmp {
  MonomialOrder ord;
  bool operator()(const Pair& a, const Pair& b) const {
    if (a.deg != b.deg) return a.deg < b.deg;
    int c = ord.cmp(a.lcm, b.lcm);
    if (c) return c < 0;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  }
};

// Buchberger with the Gebauer–Moeller update for global orders; plain pair
// processing (no criteria) with Mora reduction for local orders.
template <class K>
std::vector<Poly<K>> buchberger(const std::vector<Poly<K>>& gens_in, const MonomialOrder& ord,
                                const Ctx& ctx) {
  std::vector<GP<K>> G;
  std::vector<int> active;
  std::set<Pair, PairCmp> pairs(PairCmp{ord});
  const bool local = !ord.is_global();

  auto nf = [&](GP<K> h) {
    return local ? normal_form_mora(std::move(h), G, active, ord)
                 : normal_form_global(std::move(h), G, active, ord);
  };

  auto add_element = [&](GP<K> h) {
    int t = static_cast<int>(G.size());
    std::vector<Pair> cand;
    for (int i : active) {
      Pair p{i, t, Monomial::lcm(G[i].lm(), h.lm()), 0};
      p.deg = p.lcm.deg();
      cand.push_back(p);
    }
    if (!local) {
      // M-criterion: drop candidates whose lcm is a proper multiple of another
      std::vector<bool> drop(cand.size(), false);
      for (std::size_t a = 0; a < cand.size(); ++a)
        for (std::size_t b = 0; b < cand.size(); ++b) {
          if (a == b || drop[a]) continue;
          if (cand[b].lcm.divides(cand[a].lcm) && !(cand[b].lcm == cand[a].lcm) && !drop[b])
            drop[a] = true;
        }
      // F-criterion: one representative per lcm, preferring a coprime pair
      for (std::size_t a = 0; a < cand.size(); ++a) {
        if (drop[a]) continue;
        bool coprime_in_group = false;
        for (std::size_t b = 0; b < cand.size(); ++b)
          if (!drop[b] && cand[b].lcm == cand[a].lcm &&
              Monomial::coprime(G[cand[b].i].lm(), h.lm()))
            coprime_in_group = true;
        for (std::size_t b = a + 1; b < cand.size(); ++b)
          if (!drop[b] && cand[b].lcm == cand[a].lcm) drop[b] = true;
        // product criterion
        if (coprime_in_group) drop[a] = true;
      }
      // B-criterion on old pairs
      for (auto it = pairs.begin(); it != pairs.end();) {
        const Pair& p = *it;
        if (h.lm().divides(p.lcm) && !(Monomial::lcm(G[p.i].lm(), h.lm()) == p.lcm) &&
            !(Monomial::lcm(G[p.j].lm(), h.lm()) == p.lcm))
          it = pairs.erase(it);
        else
          ++it;
      }
      for (std::size_t a = 0; a < cand.size(); ++a)
        if (!drop[a]) pairs.insert(cand[a]);
    } else {
      for (auto& p : cand) pairs.insert(p);
    }
    G.push_back(std::move(h));
    active.push_back(t);
  };

  // seed with the interreduced input
  for (const auto& p : gens_in) {
    if (p.zero()) continue;
    GP<K> h = nf(to_gp(p, ord));
    if (h.zero()) continue;
    strip_content(h);
    if (h.lm().deg() == 0) {  // unit ideal (for a local order: unit in the local ring)
      Poly<K> one = Poly<K>::constant(ctx, field_ops<K>::one_like(h.lc()));
      return {one};
    }
    add_element(std::move(h));
  }

  while (!pairs.empty()) {
    Pair p = *pairs.begin();
    pairs.erase(pairs.begin());
    GP<K> s = spoly(G[p.i], G[p.j], ord);
    if (s.zero()) continue;
    GP<K> h = nf(std::move(s));
    if (h.zero()) continue;
    strip_content(h);
    if (h.lm().deg() == 0) {
      Poly<K> one = Poly<K>::constant(ctx, field_ops<K>::one_like(h.lc()));
      return {one};
    }
    add_element(std::move(h));
  }

  // minimal basis: drop elements whose lm is divisible by another's
  std::vector<int> keep;
  for (std::size_t a = 0; a < G.size(); ++a) {
    bool redundant = false;
    for (std::size_t b = 0; b < G.size(); ++b) {
      if (a == b) continue;
      if (G[b].lm().divides(G[a].lm())) {
        if (G[a].lm() == G[b].lm() ? b < a : true) { redundant = true; break; }
      }
    }
    if (!redundant) keep.push_back(static_cast<int>(a));
  }

  std::vector<GP<K>> out;
  if (!local) {
    // tail interreduction for the unique reduced basis
    for (std::size_t k = 0; k < keep.size(); ++k) {
      std::vector<int> others;
      for (std::size_t l = 0; l < keep.size(); ++l)
        if (l != k) others.push_back(keep[l]);
      GP<K> r = normal_form_global(G[keep[k]], G, others, ord);
      strip_content(r);
      out.push_back(std::move(r));
    }
  } else {
    for (int k : keep) {
      strip_content(G[k]);
      out.push_back(G[k]);
    }
  }
  std::sort(out.begin(), out.end(),
            [&](const GP<K>& a, const GP<K>& b) { return ord.greater(b.lm(), a.lm()); });

  verify_completion(out, ord, local);

  std::vector<Poly<K>> res;
  res.reserve(out.size());
  for (auto& g : out) res.push_back(from_gp(g, ctx));
  return res;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// IdealBasis: generators plus a monomial order, with the computed basis and
// staircase cached. Values are immutable once the basis has been computed.
template <class K>
struct IdealBasis {
  Ctx ctx;
  std::vector<Poly<K>> gens;
  MonomialOrder order;
  mutable std::optional<std::vector<Poly<K>>> reduced;
  mutable std::optional<std::vector<Monomial>> staircase_cache;

  IdealBasis() = default;
  IdealBasis(Ctx c, std::vector<Poly<K>> g, MonomialOrder o = MonomialOrder::degrevlex())
      : ctx(std::move(c)), gens(std::move(g)), order(o) {
    for (auto& p : gens) require_same_ctx(p.ctx, ctx);
  }

  const std::vector<Poly<K>>& basis() const {
    if (!reduced) reduced = detail::buchberger(gens, order, ctx);
    return *reduced;
  }

  bool is_unit() const {
    const auto& b = basis();
    return b.size() == 1 && b[0].is_constant() && !b[0].zero();
  }

  std::vector<Monomial> leading_monomials() const {
    std::vector<Monomial> lm;
    for (const auto& p : basis()) {
      auto g = detail::to_gp(p, order);
      if (!g.zero()) lm.push_back(g.lm());
    }
    return lm;
  }
};

using QIdeal = IdealBasis<Rat>;

template <class K>
IdealBasis<K> groebner_basis(const IdealBasis<K>& I) {
  if (!I.order.is_global()) fail(Errc::Domain, "groebner_basis requires a global order");
  IdealBasis<K> J = I;
  J.basis();
  return J;
}

template <class K>
IdealBasis<K> standard_basis_local(const IdealBasis<K>& I) {
  IdealBasis<K> J = I;
  J.order = MonomialOrder::local_ds();
  J.reduced.reset();
  J.basis();
  return J;
}

template <class K>
Poly<K> normal_form(const Poly<K>& p, const IdealBasis<K>& I) {
  auto basis = I.basis();
  std::vector<detail::GP<K>> G;
  std::vector<int> act;
  for (auto& q : basis) {
    if (q.zero()) continue;
    act.push_back(static_cast<int>(G.size()));
    G.push_back(detail::to_gp(q, I.order));
  }
  auto h = detail::to_gp(p, I.order);
  auto r = I.order.is_global() ? detail::normal_form_global(std::move(h), G, act, I.order)
                               : detail::normal_form_mora(std::move(h), G, act, I.order);
  return detail::from_gp(r, I.ctx);
}

// ---------------------------------------------------------------------------
// Quotient dimension. Finite iff every variable has a pure power among the
// leading monomials; this test is exact, no timeouts involved.
inline constexpr long kInfiniteDim = -1;

template <class K>
std::optional<long> quotient_dimension(const IdealBasis<K>& I,
                                       std::vector<Monomial>* out_staircase = nullptr) {
  auto lms = I.leading_monomials();
  const int n = I.ctx->size();
  for (auto& m : lms)
    if (m.deg() == 0) {  // a unit leads the basis (covers local-ring units too)
      if (out_staircase) out_staircase->clear();
      return 0;
    }
  if (lms.empty()) return std::nullopt;  // zero ideal in >=0 vars
  std::vector<long> cap(n, -1);
  for (auto& m : lms) {
    int support = -1;
    bool pure = true;
    for (int i = 0; i < n; ++i)
      if (m.e[i]) {
        if (support >= 0) { pure = false; break; }
        support = i;
      }
    if (pure && support >= 0) {
      long e = m.e[support];
      if (cap[support] < 0 || e < cap[support]) cap[support] = e;
    }
  }
  if (n == 0) return 1;
  for (int i = 0; i < n; ++i)
    if (cap[i] < 0) return std::nullopt;
  // enumerate the staircase
  long count = 0;
  std::vector<Monomial> stairs;
  Monomial cur = Monomial::one(n);
  std::function<void(int)> walk = [&](int i) {
    if (i == n) {
      for (auto& m : lms)
        if (m.divides(cur)) return;
      ++count;
      if (out_staircase) stairs.push_back(cur);
      return;
    }
    for (long e = 0; e < cap[i]; ++e) {
      cur.e[i] = static_cast<std::uint16_t>(e);
      walk(i + 1);
    }
    cur.e[i] = 0;
  };
  walk(0);
  if (out_staircase) *out_staircase = std::move(stairs);
  if (!I.staircase_cache && out_staircase) I.staircase_cache = *out_staircase;
  return count;
}

// Krull dimension of R/I from the leading-term ideal: the largest variable
// subset S such that no leading monomial is supported inside S. Returns -1
// for the unit ideal (empty variety).
template <class K>
int krull_dimension(const IdealBasis<K>& I) {
  if (!I.order.is_global()) fail(Errc::Domain, "krull_dimension requires a global order");
  if (I.is_unit()) return -1;
  auto lms = I.leading_monomials();
  const int n = I.ctx->size();
  int best = -1;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    int size = __builtin_popcount(mask);
    if (size <= best) continue;
    bool ok = true;
    for (auto& m : lms) {
      bool inside = true;
      for (int i = 0; i < n && inside; ++i)
        if (m.e[i] && !(mask & (1u << i))) inside = false;
      if (inside) { ok = false; break; }
    }
    if (ok) best = size;
  }
  return best;
}

}  // namespace affcurv
