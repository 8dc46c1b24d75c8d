#pragma once

#include <map>
#include <string>
#include <vector>

#include "affcurv/ideal_ops.hpp"
#include "affcurv/pencil.hpp"

namespace affcurv {

// Affine hypersurface Y = {f = 0} in C^(n+1). The zero locus is symbolic;
// nothing here enumerates points unless they are rational and requested.
struct Hypersurface {
  QPoly f;
  int n;   // dim Y
  long d;  // degree

  explicit Hypersurface(QPoly poly) : f(std::move(poly)) {
    if (f.is_constant()) fail(Errc::Domain, "a hypersurface needs a non-constant polynomial");
    n = f.nvars() - 1;
    d = f.degree();
  }
};

// Projective closure data: homogenization, the part at infinity (top form),
// and the chart bookkeeping.
struct ProjectiveScene {
  Hypersurface Y;
  std::string h0;   // homogenizing variable
  Ctx hctx;         // [x1..x_{n+1}, h0]
  QPoly Fhat;       // homogeneous closure equation
  QPoly inf_part;   // degree-d form of f, in the affine context

  explicit ProjectiveScene(Hypersurface y) : Y(std::move(y)) {
    h0 = fresh_var_name(Y.f.ctx, "x0");
    Fhat = homogenize(Y.f, h0, &hctx);
    inf_part = top_form(Y.f);
  }
};

inline QIdeal singular_locus_ideal(const Hypersurface& Y) {
  std::vector<QPoly> gens{Y.f};
  for (auto& g : jacobian_generators(Y.f)) gens.push_back(g);
  return QIdeal(Y.f.ctx, gens);
}

// dimension of a projective scheme from its homogeneous ideal (cone minus one;
// empty schemes report -1)
inline int projective_dimension(const QIdeal& homogeneous_ideal) {
  int k = krull_dimension(groebner_basis(homogeneous_ideal));
  return std::max(k - 1, -1);
}

// ---------------------------------------------------------------------------
// Class detector. Most specific tag wins; the dimensions that drove the
// decision are kept for diagnostics.
enum class ClassKind { GeneralSmooth, FType, B0Type, B1Type, Beyond };

inline const char* to_string(ClassKind k) {
  switch (k) {
    case ClassKind::GeneralSmooth: return "GENERAL_SMOOTH";
    case ClassKind::FType: return "F_TYPE";
    case ClassKind::B0Type: return "B0_TYPE";
    case ClassKind::B1Type: return "B1_TYPE";
    case ClassKind::Beyond: return "BEYOND";
  }
  return "?";
}

struct ClassTag {
  ClassKind kind = ClassKind::Beyond;
  int dim_sing_closure = -2;   // dim Sing of the projective closure
  int dim_sing_infinity = -2;  // dim Sing of the slice at infinity
  int dim_sing_affine = -2;    // dim Sing of Y itself
  bool stratification_caveat = false;  // set on BEYOND inputs
};

inline ClassTag classify(const ProjectiveScene& P) {
  ClassTag tag;
  QIdeal Jc(P.hctx, jacobian_generators(P.Fhat));
  tag.dim_sing_closure = projective_dimension(Jc);
  QIdeal Ji(P.Y.f.ctx, jacobian_generators(P.inf_part));
  tag.dim_sing_infinity = projective_dimension(Ji);
  tag.dim_sing_affine = krull_dimension(groebner_basis(singular_locus_ideal(P.Y)));

  if (tag.dim_sing_closure <= -1 && tag.dim_sing_infinity <= -1)
    tag.kind = ClassKind::GeneralSmooth;
  else if (tag.dim_sing_closure <= 0 && tag.dim_sing_infinity <= 0)
    tag.kind = ClassKind::FType;
  else if (tag.dim_sing_closure <= 0)
    tag.kind = ClassKind::B0Type;
  else if (tag.dim_sing_affine <= 0 && tag.dim_sing_infinity <= 1)
    tag.kind = ClassKind::B1Type;
  else {
    tag.kind = ClassKind::Beyond;
    tag.stratification_caveat = true;
  }
  return tag;
}

inline ClassTag classify(const Hypersurface& Y) { return classify(ProjectiveScene(Y)); }

// ---------------------------------------------------------------------------
// Rational points of a zero-dimensional ideal, by per-variable eliminants and
// rational-root extraction. `residual` reports that non-rational points exist
// (or could not be ruled out).
struct RationalPoints {
  std::vector<std::vector<Rat>> points;
  bool residual = false;
  long length = 0;  // scheme length (counts multiplicities)
};

inline RationalPoints rational_points(const QIdeal& I) {
  RationalPoints out;
  QIdeal G = groebner_basis(I);
  auto q = quotient_dimension(G);
  if (!q) fail(Errc::NotZeroDimensional, "rational point extraction needs a finite scheme");
  out.length = *q;
  if (*q == 0) return out;
  const int m = I.ctx->size();
  std::vector<std::vector<Rat>> coords(m);
  for (int i = 0; i < m; ++i) {
    UniPoly e = univariate_eliminant(G, I.ctx->names[i]);
    if (e.zero()) fail(Errc::InternalCheck, "zero eliminant for a finite scheme");
    UniPoly sq = squarefree_part(e);
    auto rr = rational_roots(sq);
    if (!rr.complete) out.residual = true;
    long distinct_rational = static_cast<long>(rr.roots.size());
    if (distinct_rational < sq.deg()) out.residual = true;
    for (auto& [r, mult] : rr.roots) coords[i].push_back(r);
  }
  // cartesian candidates, verified against every generator
  std::vector<std::vector<Rat>> cand{{}};
  for (int i = 0; i < m; ++i) {
    std::vector<std::vector<Rat>> next;
    for (auto& c : cand)
      for (auto& r : coords[i]) {
        auto cc = c;
        cc.push_back(r);
        next.push_back(std::move(cc));
      }
    cand = std::move(next);
    if (cand.empty()) break;
  }
  for (auto& p : cand) {
    bool on = true;
    for (auto& g : G.basis())
      if (!is_zero(evaluate(g, p))) { on = false; break; }
    if (on) out.points.push_back(p);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Local invariants at a rational point.
inline QPoly translate_to_origin(const QPoly& f, const std::vector<Rat>& p) {
  std::map<std::string, QPoly> shift;
  for (int i = 0; i < f.nvars(); ++i)
    shift[f.ctx->names[i]] =
        QPoly::variable(f.ctx, i, Rat(1)) + QPoly::constant(f.ctx, p[i]);
  return substitute(f, f.ctx, shift);
}

// Milnor number of the germ of {g = 0} at the origin; 0 for a smooth point.
inline std::optional<long> local_milnor_at_origin(const QPoly& g) {
  IdealBasis<Rat> J(g.ctx, jacobian_generators(g), MonomialOrder::local_ds());
  return quotient_dimension(standard_basis_local(J));
}

struct MilnorFlags {
  bool was_singular = true;
};

inline long milnor_number_at(const QPoly& f, const std::vector<Rat>& point,
                             MilnorFlags* flags = nullptr) {
  QPoly germ = translate_to_origin(f, point);
  if (!is_zero(evaluate(f, point)))
    fail(Errc::Domain, "milnor number requested away from the zero locus");
  bool singular = true;
  for (auto& g : jacobian_generators(germ)) {
    if (!is_zero(g.constant_coeff_or(Rat(0)))) { singular = false; break; }
  }
  if (flags) flags->was_singular = singular;
  if (!singular) return 0;
  auto mu = local_milnor_at_origin(germ);
  if (!mu)
    fail(Errc::NonIsolatedSingularity, "non-isolated singularity: infinite local dimension");
  return *mu;
}

// Sectional Milnor number through the origin: a generic hyperplane through the
// point, realized by eliminating one coordinate with random slope; agreement
// across trials certifies genericity.
inline long mu_section_at_origin(const QPoly& germ, const GenericityPolicy& pol,
                                 std::uint64_t tag) {
  const int m = germ.nvars();
  if (m < 2) fail(Errc::Domain, "sectional milnor number needs an ambient dimension >= 2");
  return with_agreement<long>(pol, tag ^ 0x5ec7104, "sectional milnor number",
                              [&](Rng& rng, int round) -> std::optional<long> {
    int k = static_cast<int>(rng.next() % m);
    std::vector<std::string> rest;
    for (int i = 0; i < m; ++i)
      if (i != k) rest.push_back(germ.ctx->names[i]);
    Ctx sctx = make_ctx(rest);
    QPoly lin(sctx);
    for (int i = 0, j = 0; i < m; ++i) {
      if (i == k) continue;
      lin = lin + QPoly::variable(sctx, j, generic_coeff(rng, round));
      ++j;
    }
    std::map<std::string, QPoly> sub{{germ.ctx->names[k], lin}};
    QPoly sliced = substitute(germ, sctx, sub);
    if (sliced.zero()) return std::nullopt;  // hyperplane inside the germ: degenerate
    auto mu = local_milnor_at_origin(sliced);
    if (!mu) return std::nullopt;
    return *mu;
  });
}

// ---------------------------------------------------------------------------
// Aggregated Milnor sums. They never need point coordinates: per projective
// chart, the sum of local multiplicities of the Jacobian scheme over the
// constrained locus is computed exactly by bounded localization.

// Sum of local Milnor numbers over the whole singular locus of {G = 0} in
// P^(m-1); G homogeneous in its m-variable context. `priority` permutes the
// chart attribution order (partition independence is a tested property).
inline long aggregate_mu_projective(const QPoly& G, std::vector<int> priority = {}) {
  const int m = G.nvars();
  if (G.zero()) fail(Errc::Domain, "aggregate of the zero form");
  if (priority.empty())
    for (int i = 0; i < m; ++i) priority.push_back(i);
  long total = 0;
  for (std::size_t step = 0; step < priority.size(); ++step) {
    int i = priority[step];
    std::vector<std::string> rest;
    for (int j = 0; j < m; ++j)
      if (j != i) rest.push_back(G.ctx->names[j]);
    Ctx cctx = make_ctx(rest);
    std::map<std::string, QPoly> sub{{G.ctx->names[i], QPoly::constant(cctx, Rat(1))}};
    QPoly g = substitute(G, cctx, sub);
    if (g.zero()) fail(Errc::InternalCheck, "chart equation vanished");
    if (g.is_constant()) continue;  // chart misses the hypersurface
    std::vector<QPoly> constraints{g};
    for (std::size_t s2 = 0; s2 < step; ++s2) {
      int j = priority[s2];
      constraints.push_back(QPoly::variable(cctx, cctx->index_of(G.ctx->names[j]), Rat(1)));
    }
    QIdeal J(cctx, jacobian_generators(g));
    total += local_multiplicity_sum(J, constraints);
  }
  return total;
}

// Sum of local Milnor numbers of the projective closure over its singular
// points at infinity.
inline long aggregate_mu_closure_at_infinity(const ProjectiveScene& P,
                                             std::vector<int> priority = {}) {
  const int m = P.Y.f.nvars();
  if (priority.empty())
    for (int i = 0; i < m; ++i) priority.push_back(i);
  long total = 0;
  for (std::size_t step = 0; step < priority.size(); ++step) {
    int i = priority[step];
    std::vector<std::string> rest;
    for (int j = 0; j < m; ++j)
      if (j != i) rest.push_back(P.Y.f.ctx->names[j]);
    rest.push_back(P.h0);
    Ctx cctx = make_ctx(rest);
    std::map<std::string, QPoly> sub{{P.Y.f.ctx->names[i], QPoly::constant(cctx, Rat(1))}};
    QPoly g = substitute(P.Fhat, cctx, sub);
    if (g.is_constant()) continue;
    std::vector<QPoly> constraints{g,
                                   QPoly::variable(cctx, cctx->index_of(P.h0), Rat(1))};
    for (std::size_t s2 = 0; s2 < step; ++s2) {
      int j = priority[s2];
      constraints.push_back(
          QPoly::variable(cctx, cctx->index_of(P.Y.f.ctx->names[j]), Rat(1)));
    }
    QIdeal J(cctx, jacobian_generators(g));
    total += local_multiplicity_sum(J, constraints);
  }
  return total;
}

// Rational singular points at infinity with their local data, chart-wise.
struct InfinityPoint {
  int chart;                    // index of the affine variable set to 1
  std::vector<Rat> coords;      // chart coordinates (remaining affine vars + h0)
  long mu_closure = 0;          // local Milnor number of the closure
  long mu_slice = 0;            // local Milnor number of the slice at infinity
  std::optional<long> lambda;   // mu_closure + mu_slice when both isolated
};

inline std::vector<InfinityPoint> rational_infinity_points(const ProjectiveScene& P) {
  std::vector<InfinityPoint> out;
  const int m = P.Y.f.nvars();
  for (int i = 0; i < m; ++i) {
    std::vector<std::string> rest;
    for (int j = 0; j < m; ++j)
      if (j != i) rest.push_back(P.Y.f.ctx->names[j]);
    rest.push_back(P.h0);
    Ctx cctx = make_ctx(rest);
    std::map<std::string, QPoly> sub{{P.Y.f.ctx->names[i], QPoly::constant(cctx, Rat(1))}};
    QPoly g = substitute(P.Fhat, cctx, sub);
    if (g.is_constant()) continue;
    std::vector<QPoly> gens = jacobian_generators(g);
    gens.push_back(g);
    gens.push_back(QPoly::variable(cctx, cctx->index_of(P.h0), Rat(1)));
    for (int j = 0; j < i; ++j)
      gens.push_back(QPoly::variable(cctx, cctx->index_of(P.Y.f.ctx->names[j]), Rat(1)));
    QIdeal I(cctx, gens);
    if (groebner_basis(I).is_unit()) continue;
    auto q = quotient_dimension(groebner_basis(I));
    if (!q) continue;  // positive-dimensional singular set: aggregate-only mode
    RationalPoints pts = rational_points(I);
    for (auto& p : pts.points) {
      InfinityPoint ip;
      ip.chart = i;
      ip.coords = p;
      QPoly germ = translate_to_origin(g, p);
      auto mu = local_milnor_at_origin(germ);
      if (!mu) continue;
      ip.mu_closure = *mu;
      // slice at infinity through the same point: set h0 = 0 in the germ
      std::vector<std::string> srest;
      for (auto& nm : cctx->names)
        if (nm != P.h0) srest.push_back(nm);
      Ctx sctx = make_ctx(srest);
      QPoly inf_germ =
          substitute(germ, sctx, {{P.h0, QPoly::constant(sctx, Rat(0))}});
      if (!inf_germ.zero() && !inf_germ.is_constant()) {
        auto mu2 = local_milnor_at_origin(inf_germ);
        if (mu2) {
          ip.mu_slice = *mu2;
          ip.lambda = ip.mu_closure + *mu2;
        }
      }
      out.push_back(std::move(ip));
    }
  }
  return out;
}

}  // namespace affcurv
