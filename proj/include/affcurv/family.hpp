#pragma once

#include "affcurv/invariants.hpp"

namespace affcurv {

// One-parameter polynomial family F(x, s); fibres X_s = {F(., s) = 0}. The
// parameter is kept as the last context variable.
struct DeformationFamily {
  QPoly F;
  std::string param;
  int param_index;
  Rat special = Rat(0);
  Ctx fiber_ctx;
  long d = 0;  // fibre degree
  int n = 0;   // fibre dimension

  DeformationFamily(QPoly total, std::string param_name, Rat special_value = Rat(0))
      : F(std::move(total)), param(std::move(param_name)), special(std::move(special_value)) {
    param_index = F.ctx->index_of(param);
    if (param_index < 0) fail(Errc::Domain, "family parameter not in the context");
    if (param_index != F.nvars() - 1)
      fail(Errc::Domain, "family parameter must be the last context variable");
    std::vector<std::string> xs(F.ctx->names.begin(), F.ctx->names.end() - 1);
    fiber_ctx = make_ctx(xs);
    n = static_cast<int>(xs.size()) - 1;
    for (auto& [m, c] : F.t) d = std::max(d, m.deg_range(0, param_index));
    if (d < 1) fail(Errc::Domain, "family is constant in the fibre variables");
  }

  Hypersurface fiber(const Rat& s0) const {
    QPoly g = substitute(F, fiber_ctx, {{param, QPoly::constant(fiber_ctx, s0)}});
    return Hypersurface(g);
  }

  // x-degree must not drop at the special value (constant-degree family)
  void check_constant_degree() const {
    if (fiber(special).d != d)
      fail(Errc::DeformationFailure, "fibre degree drops at the special value");
  }

  std::vector<QPoly> fiber_gradient() const {  // partials w.r.t. the x variables
    std::vector<QPoly> g;
    for (int i = 0; i < param_index; ++i) g.push_back(derivative(F, i));
    return g;
  }
};

// The constant-degree deformation onto a general hypersurface:
// F = (1-s) f + s (sum c_i x_i^d - 1), retried with fresh diagonal forms until
// a random fibre verifies as general.
inline DeformationFamily generic_deformation(const Hypersurface& Y, const GenericityPolicy& pol,
                                             std::uint64_t tag = 0) {
  std::string s = fresh_var_name(Y.f.ctx, "s");
  std::vector<std::string> names = Y.f.ctx->names;
  names.push_back(s);
  Ctx fctx = make_ctx(names);
  const int m = Y.f.nvars();
  for (int round = 0; round < pol.rounds; ++round) {
    Rng rng(Rng::derive(pol.seed ^ tag, 0xdef0 + round));
    QPoly g(fctx);
    for (int i = 0; i < m; ++i) {
      Rat c = round == 0 ? Rat(1) : rat(static_cast<long>(rng.next_in(50)));
      g = g + QPoly::term(fctx, Monomial::var(m + 1, i, static_cast<int>(Y.d)), c);
    }
    g = g - QPoly::constant(fctx, Rat(1));
    QPoly sv = QPoly::variable(fctx, m, Rat(1));
    QPoly one = QPoly::constant(fctx, Rat(1));
    QPoly F = (one - sv) * embed(Y.f, fctx) + sv * g;
    DeformationFamily fam(F, s);
    // verify a random fibre is general
    bool ok = true;
    for (int probe = 0; probe < 2 && ok; ++probe) {
      Rat sstar(static_cast<long>(rng.next_in(1000)) + 1, static_cast<long>(rng.next_in(7)));
      sstar.canonicalize();
      Hypersurface Xs = fam.fiber(sstar);
      if (Xs.d != Y.d || classify(Xs).kind != ClassKind::GeneralSmooth) ok = false;
    }
    if (ok) {
      fam.check_constant_degree();
      return fam;
    }
    if (pol.log_warnings)
      std::cerr << "[affcurv] deformation probe failed, retrying with a fresh diagonal form\n";
  }
  fail(Errc::DeformationFailure, "no verified general deformation after retries");
}

// ---------------------------------------------------------------------------
// Polar curve of (l_H, sigma) on the total space: the critical ideal of the
// pair, with the loci where sigma or l_H alone degenerate removed by
// saturation. Generically a curve.
inline QIdeal family_polar_curve_ideal(const DeformationFamily& fam, const std::vector<Rat>& h) {
  auto grad = fam.fiber_gradient();
  const int m = fam.param_index;
  std::vector<QPoly> gens{fam.F};
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      gens.push_back(scale(grad[i], h[j]) - scale(grad[j], h[i]));
  QIdeal crit(fam.F.ctx, gens);
  QIdeal gamma = saturate_by_ideal(crit, grad);
  QPoly Fs = derivative(fam.F, fam.param_index);
  if (!Fs.zero() && !Fs.is_constant()) gamma = saturate(gamma, Fs);
  return groebner_basis(gamma);
}

// The polar curve depends on the pencil; only counts derived from it are
// invariants. The explicit-pencil form validates the dimension bound, the
// sampled form retries with widened draws.
inline QIdeal family_polar_curve(const DeformationFamily& fam, const PencilChoice& pencil) {
  QIdeal g = family_polar_curve_ideal(fam, pencil.h);
  if (krull_dimension(g) > 1)
    fail(Errc::GenericityFailure, "family polar locus is not a curve for the supplied pencil");
  return g;
}

inline QIdeal family_polar_curve_sampled(const DeformationFamily& fam,
                                         const GenericityPolicy& pol, std::uint64_t tag = 0) {
  for (int round = 0; round < pol.rounds; ++round) {
    Rng rng(Rng::derive(pol.seed ^ tag, 0x9a3a + round));
    std::vector<Rat> h;
    for (int i = 0; i < fam.param_index; ++i) h.push_back(generic_coeff(rng, round));
    QIdeal g = family_polar_curve_ideal(fam, h);
    if (krull_dimension(g) <= 1) return g;
    if (pol.log_warnings) std::cerr << "[affcurv] polar curve retry, widening\n";
  }
  fail(Errc::GenericityFailure, "polar locus stayed positive-dimensional after retries");
}

// ---------------------------------------------------------------------------
// The decomposition of the generic polar count at the special value:
//   alpha_generic = alpha_special + alpha_crt + alpha_inf,
// where alpha_special counts on the regular part of the special fibre,
// alpha_crt is the part absorbed by its singular points, and alpha_inf is the
// residual that escapes to infinity.
struct InfinityDecomposition {
  long alpha_generic = 0;
  long alpha_special = 0;
  long alpha_crt = 0;
  long alpha_inf = 0;
  int trials_agreed = 0;
  int round = 0;
  friend bool operator==(const InfinityDecomposition& a, const InfinityDecomposition& b) {
    return a.alpha_generic == b.alpha_generic && a.alpha_special == b.alpha_special &&
           a.alpha_crt == b.alpha_crt && a.alpha_inf == b.alpha_inf;
  }
};

inline std::optional<long> fiber_count(const QIdeal& gamma, const std::string& param,
                                       const Rat& value) {
  std::vector<std::string> rest;
  for (auto& n : gamma.ctx->names)
    if (n != param) rest.push_back(n);
  Ctx fctx = make_ctx(rest);
  std::map<std::string, QPoly> sub{{param, QPoly::constant(fctx, value)}};
  std::vector<QPoly> gens;
  for (auto& g : gamma.gens) gens.push_back(substitute(g, fctx, sub));
  return quotient_dimension(groebner_basis(QIdeal(fctx, gens)));
}

inline InfinityDecomposition decompose_at_special(const DeformationFamily& fam,
                                                  const GenericityPolicy& pol,
                                                  std::uint64_t tag = 0) {
  fam.check_constant_degree();
  Hypersurface X0 = fam.fiber(fam.special);
  const bool special_smooth = groebner_basis(singular_locus_ideal(X0)).is_unit();
  int trials = 0, round_used = 0;
  InfinityDecomposition agreed = with_agreement<InfinityDecomposition>(
      pol, tag ^ 0xdec0, "family decomposition",
      [&](Rng& rng, int round) -> std::optional<InfinityDecomposition> {
        std::vector<Rat> h;
        for (int i = 0; i < fam.param_index; ++i) h.push_back(generic_coeff(rng, round));
        // raw critical scheme of (l_H, sigma); its junk components (fibrewise
        // critical points of sigma) live over the finite discriminant, so
        // counts at independently sampled generic parameters are clean
        auto grad = fam.fiber_gradient();
        std::vector<QPoly> gens{fam.F};
        for (int i = 0; i < fam.param_index; ++i)
          for (int j = i + 1; j < fam.param_index; ++j)
            gens.push_back(scale(grad[i], h[j]) - scale(grad[j], h[i]));
        QIdeal crit(fam.F.ctx, gens);
        std::optional<long> generic;
        for (int k = 0; k < 3; ++k) {
          Rat sstar = fam.special + rat(rng.next_coeff(1ULL << 20));
          auto c = fiber_count(crit, fam.param, sstar);
          if (!c) return std::nullopt;
          if (!generic) generic = c;
          else if (*generic != *c) return std::nullopt;
        }
        // count on the regular part of the special fibre: the intrinsic
        // critical scheme of the fibre equation under the same pencil
        auto reg0 = alpha_top_once(X0, h);
        if (!reg0) return std::nullopt;
        long crt = 0;
        if (!special_smooth) {
          // the polar curve proper is needed to split off the part absorbed
          // by Sing X_0: saturate by a random combination of the gradient
          // entries (exact for generic coefficients; trials guard the draw)
          QPoly combo(fam.F.ctx);
          for (auto& g : grad) combo = combo + scale(g, rat(rng.next_coeff(1ULL << 20)));
          QIdeal gamma = saturate(groebner_basis(crit), combo);
          QPoly Fs = derivative(fam.F, fam.param_index);
          if (!Fs.zero() && !Fs.is_constant()) gamma = saturate(gamma, Fs);
          if (krull_dimension(gamma) > 1) return std::nullopt;
          auto at0 = fiber_count(gamma, fam.param, fam.special);
          if (!at0) return std::nullopt;
          crt = *at0 - *reg0;
        }
        InfinityDecomposition out;
        out.alpha_generic = *generic;
        out.alpha_special = *reg0;
        out.alpha_crt = crt;
        out.alpha_inf = *generic - *reg0 - crt;
        if (out.alpha_crt < 0 || out.alpha_inf < 0) return std::nullopt;
        return out;
      },
      &trials, &round_used);
  agreed.trials_agreed = trials;
  agreed.round = round_used;
  return agreed;
}

// Closed form for the vanishing curvature at infinity of a constant-degree
// deformation onto general fibres, in terms of data at infinity of the special
// fibre. Valid for F/B0-type special fibres.
inline std::optional<long> alpha_inf_closed_form(const Hypersurface& Y,
                                                 const GenericityPolicy& pol,
                                                 std::uint64_t tag = 0) {
  ProjectiveScene P(Y);
  ClassTag tagc = classify(P);
  if (tagc.kind != ClassKind::FType && tagc.kind != ClassKind::B0Type &&
      tagc.kind != ClassKind::GeneralSmooth)
    return std::nullopt;
  auto chi_inf = chi_infinity(P);
  if (!chi_inf) return std::nullopt;
  long mu_closure = aggregate_mu_closure_at_infinity(P);
  // mu of the twice-sliced part at infinity
  long mu_H_inf = with_agreement<long>(
      pol, tag ^ 0x4a11, "sliced infinity aggregate",
      [&](Rng& rng, int round) -> std::optional<long> {
        auto sl = slice_once(Y, rng, round);
        if (!sl) return std::nullopt;
        if (Y.n == 1) return 0L;
        return aggregate_mu_projective(top_form(sl->f));
      });
  long sgn = (Y.n % 2) ? 1 : -1;  // (-1)^(n+1)
  return mu_closure + mu_H_inf +
         sgn * (chi_smooth_projective(Y.n, Y.d) - *chi_inf);
}

// ---------------------------------------------------------------------------
// Per-point reconciliation: the multiplicity the polar curve deposits on each
// singular point of the special fibre equals mu + mu_section there.
struct CrtCheckEntry {
  std::vector<Rat> point;
  long polar_multiplicity = 0;
  long mu = 0;
  long mu_section = 0;
  bool pass = false;
};

struct CrtCheck {
  std::vector<CrtCheckEntry> entries;
  long alpha_crt = 0;
  bool pass = false;
};

inline CrtCheck crt_vs_mu_check(const DeformationFamily& fam, const GenericityPolicy& pol,
                                std::uint64_t tag = 0) {
  CrtCheck out;
  Hypersurface X0 = fam.fiber(fam.special);
  MilnorPackage pkg = milnor_package(X0, pol, tag ^ 0xc47);
  if (pkg.aggregate_only)
    fail(Errc::Domain, "per-point reconciliation needs rational singular points");
  InfinityDecomposition dec = decompose_at_special(fam, pol, tag);
  out.alpha_crt = dec.alpha_crt;

  QIdeal gamma = family_polar_curve_sampled(fam, pol, tag ^ 0x6a77a);
  QPoly cut = QPoly::variable(fam.F.ctx, fam.param_index, Rat(1)) -
              QPoly::constant(fam.F.ctx, fam.special);
  std::vector<QPoly> gens = gamma.gens;
  gens.push_back(cut);

  long total = 0;
  bool all = true;
  for (auto& q : pkg.points) {
    // localize the intersection scheme at (q, special) with a local order
    std::vector<Rat> full = q.point;
    full.push_back(fam.special);
    std::vector<QPoly> moved;
    for (auto& g : gens) moved.push_back(translate_to_origin(g, full));
    IdealBasis<Rat> loc(fam.F.ctx, moved, MonomialOrder::local_ds());
    auto mult = quotient_dimension(standard_basis_local(loc));
    CrtCheckEntry e;
    e.point = q.point;
    e.polar_multiplicity = mult ? *mult : -1;
    e.mu = q.mu;
    e.mu_section = q.mu_section;
    e.pass = mult && *mult == q.mu + q.mu_section;
    all = all && e.pass;
    total += e.polar_multiplicity;
    out.entries.push_back(std::move(e));
  }
  out.pass = all && total == out.alpha_crt;
  if (!out.pass)
    fail(Errc::InternalCheck, "polar multiplicity at the singular points disagrees with mu data");
  return out;
}

// generic and special counts only, without the crt/infinity split
struct GenericCounts {
  long alpha_generic = 0;
  long alpha_special = 0;
  friend bool operator==(const GenericCounts& a, const GenericCounts& b) {
    return a.alpha_generic == b.alpha_generic && a.alpha_special == b.alpha_special;
  }
};

inline GenericCounts family_counts(const DeformationFamily& fam, const GenericityPolicy& pol,
                                   std::uint64_t tag = 0) {
  fam.check_constant_degree();
  Hypersurface X0 = fam.fiber(fam.special);
  return with_agreement<GenericCounts>(
      pol, tag ^ 0xc075b, "family counts",
      [&](Rng& rng, int round) -> std::optional<GenericCounts> {
        std::vector<Rat> h;
        for (int i = 0; i < fam.param_index; ++i) h.push_back(generic_coeff(rng, round));
        auto grad = fam.fiber_gradient();
        std::vector<QPoly> gens{fam.F};
        for (int i = 0; i < fam.param_index; ++i)
          for (int j = i + 1; j < fam.param_index; ++j)
            gens.push_back(scale(grad[i], h[j]) - scale(grad[j], h[i]));
        QIdeal crit(fam.F.ctx, gens);
        std::optional<long> generic;
        for (int k = 0; k < 3; ++k) {
          Rat sstar = fam.special + rat(rng.next_coeff(1ULL << 20));
          auto c = fiber_count(crit, fam.param, sstar);
          if (!c) return std::nullopt;
          if (!generic) generic = c;
          else if (*generic != *c) return std::nullopt;
        }
        auto reg0 = alpha_top_once(X0, h);
        if (!reg0) return std::nullopt;
        GenericCounts out;
        out.alpha_generic = *generic;
        out.alpha_special = *reg0;
        return out;
      });
}

// ---------------------------------------------------------------------------
// Affine class: the count of tangent hyperplanes in a generic affine pencil,
// derived from the deformation onto general fibres. The crt/infinity split is
// reported through the polar curve when the special fibre is smooth, through
// the local polar identity (mu + mu_section per point) when its singularities
// are isolated and rational, and refused otherwise.
struct AffineClassResult {
  long value = 0;
  long alpha_generic = 0;
  std::optional<long> alpha_crt;
  std::optional<long> alpha_inf;
  std::string split_provenance = "unavailable";
  bool matches_direct = false;
};

inline AffineClassResult affine_class(const Hypersurface& Y, const GenericityPolicy& pol,
                                      std::uint64_t tag = 0) {
  DeformationFamily fam = generic_deformation(Y, pol, tag);
  AffineClassResult out;
  QIdeal sing = groebner_basis(singular_locus_ideal(Y));
  long special;
  if (sing.is_unit()) {
    InfinityDecomposition dec = decompose_at_special(fam, pol, tag ^ 0xafc1);
    out.alpha_generic = dec.alpha_generic;
    out.alpha_crt = dec.alpha_crt;
    out.alpha_inf = dec.alpha_inf;
    out.split_provenance = "polar-curve";
    special = dec.alpha_special;
  } else {
    GenericCounts gc = family_counts(fam, pol, tag ^ 0xafc2);
    out.alpha_generic = gc.alpha_generic;
    special = gc.alpha_special;
    if (krull_dimension(sing) == 0) {
      RationalPoints pts = rational_points(sing);
      if (!pts.residual) {
        MilnorPackage pkg = milnor_package(Y, pol, tag ^ 0xafc3);
        long crt = pkg.mu_sum + *pkg.mu_section_sum;
        long inf = gc.alpha_generic - gc.alpha_special - crt;
        if (inf < 0)
          fail(Errc::InternalCheck, "negative residual at infinity in the class computation");
        out.alpha_crt = crt;
        out.alpha_inf = inf;
        out.split_provenance = "local-mu";
      }
    }
  }
  out.value = special;
  long direct = alpha_top(Y, pol, tag ^ 0xd13ec7);
  out.matches_direct = (out.value == direct);
  if (out.alpha_crt && out.alpha_inf &&
      out.value != Y.d * ipow(Y.d - 1, Y.n) - *out.alpha_crt - *out.alpha_inf)
    fail(Errc::InternalCheck, "class decomposition is inconsistent");
  if (out.alpha_generic != Y.d * ipow(Y.d - 1, Y.n))
    fail(Errc::InternalCheck, "general fibres did not reach the maximal polar count");
  if (!out.matches_direct)
    fail(Errc::InternalCheck, "affine class disagrees with the direct polar count");
  return out;
}

}  // namespace affcurv
