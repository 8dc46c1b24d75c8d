#pragma once

#include <string>
#include <vector>

#include "affcurv/groebner.hpp"
#include "affcurv/univariate.hpp"

namespace affcurv {

inline std::string fresh_var_name(const Ctx& ctx, std::string base) {
  while (ctx->index_of(base) >= 0) base += "_";
  return base;
}

// ---------------------------------------------------------------------------
// Elimination. Variables to remove are moved to the front and a block order
// does the rest; the result lives in the smaller context.
template <class K>
IdealBasis<K> eliminate(const IdealBasis<K>& I, const std::vector<std::string>& vars) {
  if (vars.empty()) return groebner_basis(I);
  std::vector<std::string> front = vars, rest;
  for (auto& v : vars)
    if (I.ctx->index_of(v) < 0) fail(Errc::Domain, "eliminate: unknown variable " + v);
  for (auto& name : I.ctx->names) {
    bool elim = false;
    for (auto& v : vars) elim |= (v == name);
    if (!elim) rest.push_back(name);
  }
  std::vector<std::string> perm = front;
  perm.insert(perm.end(), rest.begin(), rest.end());
  Ctx pctx = make_ctx(perm);
  std::vector<Poly<K>> pgens;
  for (auto& g : I.gens) pgens.push_back(embed(g, pctx));
  IdealBasis<K> J(pctx, pgens, MonomialOrder::elim_block(static_cast<int>(front.size())));
  const auto& b = J.basis();
  Ctx rctx = make_ctx(rest);
  std::vector<Poly<K>> out;
  for (auto& g : b) {
    bool pure = true;
    for (auto& [m, c] : g.t)
      for (std::size_t i = 0; i < front.size() && pure; ++i)
        if (m.e[i]) pure = false;
    if (pure && !g.zero()) out.push_back(restrict_ctx(g, rctx));
  }
  return IdealBasis<K>(rctx, out, MonomialOrder::degrevlex());
}

// Saturation I : g^infinity by a single polynomial, via the extra-variable
// trick (t*g - 1 joined, then t eliminated).
template <class K>
IdealBasis<K> saturate(const IdealBasis<K>& I, const Poly<K>& g) {
  require_same_ctx(I.ctx, g.ctx);
  if (g.zero()) fail(Errc::Domain, "saturation by zero");
  if (g.is_constant()) return groebner_basis(I);
  std::string t = fresh_var_name(I.ctx, "t");
  std::vector<std::string> names{t};
  names.insert(names.end(), I.ctx->names.begin(), I.ctx->names.end());
  Ctx ectx = make_ctx(names);
  std::vector<Poly<K>> gens;
  for (auto& p : I.gens) gens.push_back(embed(p, ectx));
  K one = field_ops<K>::one_like(g.t[0].second);
  Poly<K> tg = Poly<K>::variable(ectx, 0, one) * embed(g, ectx) - Poly<K>::constant(ectx, one);
  gens.push_back(tg);
  IdealBasis<K> J(ectx, gens);
  IdealBasis<K> R = eliminate(J, {t});
  // restore the original context object
  std::vector<Poly<K>> back;
  for (auto& p : R.gens) back.push_back(restrict_ctx(p, I.ctx));
  return IdealBasis<K>(I.ctx, back, MonomialOrder::degrevlex());
}

template <class K>
IdealBasis<K> intersect(const IdealBasis<K>& A, const IdealBasis<K>& B) {
  require_same_ctx(A.ctx, B.ctx);
  if (A.gens.empty()) return groebner_basis(B);
  if (B.gens.empty()) return groebner_basis(A);
  K exemplar{};
  for (auto& p : A.gens)
    if (!p.zero()) exemplar = p.t[0].second;
  K one = field_ops<K>::one_like(exemplar);
  std::string t = fresh_var_name(A.ctx, "t");
  std::vector<std::string> names{t};
  names.insert(names.end(), A.ctx->names.begin(), A.ctx->names.end());
  Ctx ectx = make_ctx(names);
  Poly<K> tv = Poly<K>::variable(ectx, 0, one);
  Poly<K> omt = Poly<K>::constant(ectx, one) - tv;
  std::vector<Poly<K>> gens;
  for (auto& p : A.gens) gens.push_back(tv * embed(p, ectx));
  for (auto& p : B.gens) gens.push_back(omt * embed(p, ectx));
  IdealBasis<K> J(ectx, gens);
  IdealBasis<K> R = eliminate(J, {t});
  std::vector<Poly<K>> back;
  for (auto& p : R.gens) back.push_back(restrict_ctx(p, A.ctx));
  return IdealBasis<K>(A.ctx, back, MonomialOrder::degrevlex());
}

// I : J^infinity for an ideal J, as the intersection of the single-generator
// saturations. Generators already inside I contribute the unit ideal and are
// skipped; a nonzero constant generator makes the whole saturation equal I.
template <class K>
IdealBasis<K> saturate_by_ideal(const IdealBasis<K>& I, const std::vector<Poly<K>>& Jgens) {
  IdealBasis<K> Ig = groebner_basis(I);
  std::vector<Poly<K>> useful;
  for (auto& g : Jgens) {
    if (g.zero()) continue;
    if (g.is_constant()) return Ig;
    if (normal_form(g, Ig).zero()) continue;  // saturation by it is the unit ideal
    useful.push_back(g);
  }
  if (useful.empty()) {
    // V(J) contains V(I); removing it empties the scheme
    K exemplar{};
    bool found = false;
    for (auto& p : Ig.gens)
      if (!p.zero()) { exemplar = p.t[0].second; found = true; }
    for (auto& p : Jgens)
      if (!p.zero()) { exemplar = p.t[0].second; found = true; }
    if (!found) fail(Errc::Domain, "saturation of the zero ideal by the zero ideal");
    K one = field_ops<K>::one_like(exemplar);
    return IdealBasis<K>(I.ctx, {Poly<K>::constant(I.ctx, one)});
  }
  IdealBasis<K> acc = saturate(Ig, useful[0]);
  for (std::size_t k = 1; k < useful.size(); ++k)
    acc = intersect(acc, saturate(Ig, useful[k]));
  return groebner_basis(acc);
}

// ---------------------------------------------------------------------------
// Sum of local multiplicities of a (generically zero-dimensional) ideal over
// the points where every constraint polynomial vanishes. Constraints enter as
// bounded powers of tag variables; the stopping rule q(N) < N certifies that
// each local contribution has stabilized exactly, because a point whose local
// algebra still grows at level N must alone contribute at least N.
template <class K>
long local_multiplicity_sum(const IdealBasis<K>& J, const std::vector<Poly<K>>& constraints) {
  std::vector<Poly<K>> gens = J.gens;
  K exemplar{};
  for (auto& p : gens)
    if (!p.zero()) exemplar = p.t[0].second;
  for (auto& e : constraints)
    if (!e.zero()) exemplar = e.t[0].second;
  K one = field_ops<K>::one_like(exemplar);

  std::vector<std::string> names = J.ctx->names;
  std::vector<int> cvar;            // indices (in the extended ctx) of constraint tags
  std::vector<Poly<K>> defs;        // u_k - e_k definitions, built after ctx is final
  std::vector<const Poly<K>*> pending;
  for (auto& e : constraints) {
    if (e.zero()) continue;  // vacuous
    if (e.is_constant()) return 0;  // never vanishes: empty locus
    int vi = -1;
    if (e.t.size() == 1 && e.t[0].first.deg() == 1 && e.t[0].second == one) {
      for (int i = 0; i < e.nvars(); ++i)
        if (e.t[0].first.e[i] == 1) vi = i;
    }
    if (vi >= 0) {
      cvar.push_back(vi);
    } else {
      pending.push_back(&e);
      cvar.push_back(static_cast<int>(names.size()));
      names.push_back(fresh_var_name(make_ctx(names), "u"));
    }
  }
  Ctx ectx = make_ctx(names);
  std::vector<Poly<K>> base;
  for (auto& g : gens) base.push_back(embed(g, ectx));
  {
    std::size_t tag = J.ctx->names.size();
    for (auto* e : pending) {
      Poly<K> u = Poly<K>::variable(ectx, static_cast<int>(tag), one);
      base.push_back(u - embed(*e, ectx));
      ++tag;
    }
  }

  for (long N = 8; N <= 1024; N *= 2) {
    std::vector<Poly<K>> sys = base;
    for (int vi : cvar) {
      Poly<K> v = Poly<K>::variable(ectx, vi, one);
      sys.push_back(pow(v, N));
    }
    IdealBasis<K> KN(ectx, sys);
    auto q = quotient_dimension(KN);
    if (!q) fail(Errc::NotZeroDimensional,
                 "constrained locus is positive-dimensional where a finite one is required");
    if (*q < N) return *q;
  }
  fail(Errc::InternalCheck, "local multiplicity did not stabilize below the cap");
}

// ---------------------------------------------------------------------------
// The eliminant I ∩ k[var]; principal for zero-dimensional ideals.
inline UniPoly univariate_eliminant(const QIdeal& I, const std::string& var) {
  std::vector<std::string> others;
  for (auto& n : I.ctx->names)
    if (n != var) others.push_back(n);
  QIdeal E = eliminate(I, others);
  if (E.gens.empty()) return UniPoly{};  // zero ideal: projection is dominant
  if (E.gens.size() != 1)
    fail(Errc::InternalCheck, "univariate eliminant is not principal");
  return to_unipoly(E.gens[0]);
}

inline IdealBasis<Fp> ideal_mod_p(const QIdeal& I, std::uint64_t p) {
  std::vector<Poly<Fp>> gens;
  for (auto& g : I.gens) gens.push_back(poly_mod_p(primitive_part(g), p));
  return IdealBasis<Fp>(I.ctx, gens, I.order);
}

}  // namespace affcurv
