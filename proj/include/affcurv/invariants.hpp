#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "affcurv/hypersurface.hpp"

namespace affcurv {

// ---------------------------------------------------------------------------
// alpha_top: the number of Morse points of a generic linear form on Y_reg,
// counted with multiplicity. Computed as the quotient dimension of the
// critical ideal <f, 2x2 minors of [grad f; h]> with the components supported
// on Sing Y removed by saturation.

inline QIdeal critical_ideal(const Hypersurface& Y, const std::vector<Rat>& h) {
  const int m = Y.f.nvars();
  auto grad = jacobian_generators(Y.f);
  std::vector<QPoly> gens{Y.f};
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      gens.push_back(scale(grad[i], h[j]) - scale(grad[j], h[i]));
  return QIdeal(Y.f.ctx, gens);
}

// single-draw attempt; nullopt on a degenerate pencil
inline std::optional<long> alpha_top_once(const Hypersurface& Y, const std::vector<Rat>& h) {
  QIdeal I = critical_ideal(Y, h);
  QIdeal sing = groebner_basis(singular_locus_ideal(Y));
  QIdeal polar = I;
  if (!sing.is_unit()) {
    polar = saturate_by_ideal(I, jacobian_generators(Y.f));
  }
  auto q = quotient_dimension(groebner_basis(polar));
  if (!q) return std::nullopt;  // polar locus not zero-dimensional: resample
  return *q;
}

inline long alpha_top(const Hypersurface& Y, const GenericityPolicy& pol, std::uint64_t tag,
                      int* trials_out = nullptr) {
  return with_agreement<long>(pol, tag ^ 0xa1fa, "polar point count",
                              [&](Rng& rng, int round) -> std::optional<long> {
                                std::vector<Rat> h;
                                for (int i = 0; i < Y.f.nvars(); ++i)
                                  h.push_back(generic_coeff(rng, round));
                                return alpha_top_once(Y, h);
                              },
                              trials_out);
}

// explicit-pencil variant: no resampling, degeneracy is a hard error
inline long alpha_top(const Hypersurface& Y, const PencilChoice& pencil) {
  auto v = alpha_top_once(Y, pencil.h);
  if (!v)
    fail(Errc::GenericityFailure,
         "polar locus is not zero-dimensional for the supplied pencil");
  return *v;
}

// ---------------------------------------------------------------------------
// Generic affine hyperplane slice: the last variable is replaced by a random
// affine form of the others. Degree must be preserved.
inline std::optional<Hypersurface> slice_once(const Hypersurface& Y, Rng& rng, int round,
                                              std::vector<Rat>* constants_out = nullptr) {
  const int m = Y.f.nvars();
  if (m < 2) fail(Errc::Domain, "cannot slice a curve");
  std::vector<std::string> rest(Y.f.ctx->names.begin(), Y.f.ctx->names.end() - 1);
  Ctx sctx = make_ctx(rest);
  for (int attempt = 0; attempt < 3; ++attempt) {
    QPoly lin(sctx);
    std::vector<Rat> cs;
    for (int i = 0; i + 1 < m; ++i) {
      Rat c = generic_coeff(rng, round);
      cs.push_back(c);
      lin = lin + QPoly::variable(sctx, i, c);
    }
    Rat c0 = generic_coeff(rng, round);
    cs.push_back(c0);
    lin = lin + QPoly::constant(sctx, c0);
    QPoly g = substitute(Y.f, sctx, {{Y.f.ctx->names.back(), lin}});
    if (g.degree() == Y.d) {
      if (constants_out) *constants_out = cs;
      return Hypersurface(g);
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Affine singular points with their local invariants.
struct SingularPointData {
  std::vector<Rat> point;
  long mu = 0;          // local Milnor number
  long mu_section = 0;  // Milnor number of the generic hyperplane slice through it
};

struct MilnorPackage {
  std::vector<SingularPointData> points;
  bool smooth = false;
  bool isolated = true;
  bool aggregate_only = false;  // irrational points: sums only
  long mu_sum = 0;
  std::optional<long> mu_section_sum;
};

inline MilnorPackage milnor_package(const Hypersurface& Y, const GenericityPolicy& pol,
                                    std::uint64_t tag) {
  MilnorPackage out;
  QIdeal S = groebner_basis(singular_locus_ideal(Y));
  if (S.is_unit()) {
    out.smooth = true;
    out.mu_section_sum = 0;
    return out;
  }
  int dim = krull_dimension(S);
  if (dim > 0) {
    out.isolated = false;
    fail(Errc::NonIsolatedSingularity, "affine singular locus is positive-dimensional");
  }
  RationalPoints pts = rational_points(S);
  if (pts.residual) {
    out.aggregate_only = true;
    // sum of Milnor numbers without coordinates: constrained localization of
    // the Jacobian scheme along {f = 0}
    QIdeal J(Y.f.ctx, jacobian_generators(Y.f));
    out.mu_sum = local_multiplicity_sum(J, {Y.f});
    return out;
  }
  long mu_total = 0, sec_total = 0;
  std::uint64_t k = 0;
  for (auto& p : pts.points) {
    SingularPointData d;
    d.point = p;
    d.mu = milnor_number_at(Y.f, p);
    QPoly germ = translate_to_origin(Y.f, p);
    d.mu_section = mu_section_at_origin(germ, pol, tag ^ (0x715ec + 31 * k++));
    mu_total += d.mu;
    sec_total += d.mu_section;
    out.points.push_back(std::move(d));
  }
  out.mu_sum = mu_total;
  out.mu_section_sum = sec_total;
  return out;
}

// ---------------------------------------------------------------------------
// The alpha sequence with per-level slice analysis for the Euler-characteristic
// corrections. One trial computes the whole chain from its own randomness;
// agreement across trials covers every level at once.
struct LevelAnalysis {
  long alpha = 0;
  int sing_dim = -1;                 // of the level object (slice of Y)
  std::optional<long> beta_auto;     // level correction when computable
  friend bool operator==(const LevelAnalysis& a, const LevelAnalysis& b) {
    return a.alpha == b.alpha && a.sing_dim == b.sing_dim && a.beta_auto == b.beta_auto;
  }
};

struct AlphaSequence {
  std::vector<long> alpha;                       // alpha[0..n]
  std::vector<int> sing_dim;                     // per level
  std::vector<std::optional<long>> beta_auto;    // per level
  int trials_agreed = 0;
  int round = 0;
  std::vector<std::vector<Rat>> slice_trace;     // slice constants used (one trial)
};

// beta correction of an i-dimensional slice object with isolated singularities:
// the sum of sectional Milnor numbers of its singular points
inline std::optional<long> beta_of_level_object(const Hypersurface& Z,
                                                const GenericityPolicy& pol,
                                                std::uint64_t tag, int* sing_dim_out) {
  QIdeal S = groebner_basis(singular_locus_ideal(Z));
  if (S.is_unit()) {
    *sing_dim_out = -1;
    return 0;
  }
  int dim = krull_dimension(S);
  *sing_dim_out = dim;
  if (dim > 0) return std::nullopt;  // needs a supplied correction
  RationalPoints pts = rational_points(S);
  if (pts.residual) return std::nullopt;
  long total = 0;
  std::uint64_t k = 0;
  for (auto& p : pts.points) {
    QPoly germ = translate_to_origin(Z.f, p);
    if (Z.f.nvars() >= 2) {
      total += mu_section_at_origin(germ, pol, tag ^ (0xbe7a + 37 * k++));
    } else {
      auto mu = local_milnor_at_origin(germ);
      if (!mu) return std::nullopt;
      total += *mu;
    }
  }
  return total;
}

namespace detail {
struct SequenceChain {
  std::vector<LevelAnalysis> lv;
  std::vector<std::vector<Rat>> trace;
  bool operator==(const SequenceChain& o) const { return lv == o.lv; }
};
}  // namespace detail

inline AlphaSequence alpha_sequence(const Hypersurface& Y, const GenericityPolicy& pol,
                                    std::uint64_t tag) {
  const int n = Y.n;
  using Chain = detail::SequenceChain;
  int trials = 0, round = 0;
  Chain chain = with_agreement<Chain>(
      pol, tag ^ 0xa15e9, "alpha sequence",
      [&](Rng& rng, int widen) -> std::optional<Chain> {
        Chain out;
        out.lv.resize(n + 1);
        Hypersurface cur = Y;
        for (int level = n; level >= 1; --level) {
          std::vector<Rat> h;
          for (int i = 0; i < cur.f.nvars(); ++i) h.push_back(generic_coeff(rng, widen));
          auto a = alpha_top_once(cur, h);
          if (!a) return std::nullopt;
          out.lv[level].alpha = *a;
          int sd = -1;
          GenericityPolicy sub = pol;
          sub.seed = rng.next();
          out.lv[level].beta_auto = beta_of_level_object(cur, sub, tag + level, &sd);
          out.lv[level].sing_dim = sd;
          if (level > 1) {
            std::vector<Rat> cs;
            auto nxt = slice_once(cur, rng, widen, &cs);
            if (!nxt) return std::nullopt;
            if (nxt->d != Y.d) return std::nullopt;
            out.trace.push_back(cs);
            cur = *nxt;
          }
        }
        out.lv[0].alpha = Y.d;
        out.lv[0].sing_dim = -1;
        out.lv[0].beta_auto = 0;
        return out;
      },
      &trials, &round);
  AlphaSequence seq;
  for (auto& l : chain.lv) {
    seq.alpha.push_back(l.alpha);
    seq.sing_dim.push_back(l.sing_dim);
    seq.beta_auto.push_back(l.beta_auto);
  }
  seq.trials_agreed = trials;
  seq.round = round;
  seq.slice_trace = chain.trace;
  return seq;
}

// ---------------------------------------------------------------------------
// Euler characteristic assembly through the level recursion
//   chi^0 = alpha^0 + beta^0,   chi^i = chi^{i-1} + (-1)^i (alpha^i + beta^i).
struct BetaSequence {
  std::vector<long> beta;
  std::vector<std::string> provenance;  // computed | supplied | zero
};

inline BetaSequence resolve_beta(const AlphaSequence& seq,
                                 const std::map<int, long>& supplied,
                                 std::vector<std::string>* conflicts = nullptr) {
  BetaSequence out;
  const int n = static_cast<int>(seq.alpha.size()) - 1;
  out.beta.assign(n + 1, 0);
  out.provenance.assign(n + 1, "zero");
  for (int i = 0; i <= n; ++i) {
    auto sup = supplied.find(i);
    if (seq.beta_auto[i]) {
      out.beta[i] = *seq.beta_auto[i];
      out.provenance[i] = seq.sing_dim[i] < 0 ? "zero" : "computed";
      if (sup != supplied.end() && sup->second != out.beta[i] && conflicts)
        conflicts->push_back("level " + std::to_string(i) + ": supplied " +
                             std::to_string(sup->second) + " vs computed " +
                             std::to_string(out.beta[i]));
    } else if (sup != supplied.end()) {
      out.beta[i] = sup->second;
      out.provenance[i] = "supplied";
    } else {
      fail(Errc::MissingBeta,
           "level " + std::to_string(i) +
               " correction is not computable here and was not supplied");
    }
  }
  return out;
}

inline std::vector<long> chi_levels(const std::vector<long>& alpha,
                                    const std::vector<long>& beta) {
  std::vector<long> chi(alpha.size());
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    long term = alpha[i] + beta[i];
    chi[i] = (i == 0 ? term : chi[i - 1] + ((i % 2) ? -term : term));
  }
  return chi;
}

// ---------------------------------------------------------------------------
// Closed forms and class formulas.
inline long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Euler characteristic of the smooth degree-d hypersurface in P^n
inline long chi_smooth_projective(int n, long d) {
  if (n < 1 || d < 1) fail(Errc::Domain, "chi_smooth_projective needs n >= 1, d >= 1");
  Int t = 1 - d;
  Int p;
  mpz_pow_ui(p.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(n + 1));
  Int num = p - 1;
  if (!mpz_divisible_ui_p(num.get_mpz_t(), static_cast<unsigned long>(d)))
    fail(Errc::InternalCheck, "closed form was not integral");
  Int q = num / d;
  return q.get_si() + n + 1;
}

// f_d = c * l^d for a linear form l? (the scheme is then a multiple hyperplane)
inline bool is_power_of_linear(const QPoly& form, long d) {
  if (form.zero() || d < 1) return false;
  const int m = form.nvars();
  for (int i0 = 0; i0 < m; ++i0) {
    Rat c = form.coeff(Monomial::var(m, i0, static_cast<int>(d)));
    if (is_zero(c)) continue;
    QPoly l = QPoly::variable(form.ctx, i0, Rat(1));
    for (int j = 0; j < m; ++j) {
      if (j == i0) continue;
      Monomial mm = Monomial::var(m, i0, static_cast<int>(d - 1));
      mm.e[j] = 1;
      Rat cj = form.coeff(mm) / (c * Rat(d));
      if (!is_zero(cj)) l = l + QPoly::variable(form.ctx, j, cj);
    }
    if (scale(pow(l, d), c) == form) return true;
  }
  return false;
}

// chi of the projective part at infinity; nullopt = unsupported structure
inline std::optional<long> chi_infinity(const ProjectiveScene& P) {
  const int n = P.Y.n;
  const long d = P.Y.d;
  QIdeal J(P.Y.f.ctx, jacobian_generators(P.inf_part));
  int dim = projective_dimension(J);
  if (dim <= -1) return chi_smooth_projective(n, d);
  if (dim == 0) {
    long agg = aggregate_mu_projective(P.inf_part);
    long sign = (n % 2) ? -1 : 1;
    return chi_smooth_projective(n, d) + sign * agg;
  }
  if (is_power_of_linear(P.inf_part, d)) return n;  // reduced variety is P^(n-1)
  return std::nullopt;
}

// Defect formula for the B1 class (also valid for B0, F):
//   (-1)^n (d-1)^n - 1 + (-1)^(n+1) [ sum mu_sec(affine) + mu(slice closure at
//   infinity) + mu(slice at infinity of the slice) ]
inline long b1_defect_value(int n, long d, long mu_sec_affine, long mu_H_closure,
                            long mu_H_inf) {
  long sgn = (n % 2) ? -1 : 1;
  return sgn * ipow(d - 1, n) - 1 - sgn * (mu_sec_affine + mu_H_closure + mu_H_inf);
}

// Signed curvature for the B0 class (also F):
//   (-1)^n d(d-1)^n + (-1)^(n+1)[ sum (mu + mu_sec)(affine) + sum mu_p(closure)
//   + mu(slice at infinity of the slice) ] + chi^{n,d} - chi(infinity part)
inline long b0_signed_curvature_value(int n, long d, long mu_polar_affine, long mu_closure_inf,
                                      long mu_H_inf, long chi_nd, long chi_inf) {
  long sgn = (n % 2) ? -1 : 1;
  return sgn * d * ipow(d - 1, n) - sgn * (mu_polar_affine + mu_closure_inf + mu_H_inf) +
         chi_nd - chi_inf;
}

// Curvature units for the F class:
//   d(d-1)^n - sum (mu + mu_sec)(affine) - sum [ mu_p(closure) + mu_p(infinity
//   part) ] over the singular points of the part at infinity
inline long f_type_curvature_value(int n, long d, long mu_polar_affine, long mu_closure_inf,
                                   long mu_slice_inf) {
  return d * ipow(d - 1, n) - mu_polar_affine - (mu_closure_inf + mu_slice_inf);
}

// Curve law with the correction at infinity, for smooth affine plane curves:
//   d^2 - 2d + r - sum mu_p(closure)
inline long risler_curve_value(long d, long r, long mu_closure_sum) {
  return d * d - 2 * d + r - mu_closure_sum;
}

// number of distinct projective roots of the top form of a plane curve
inline long asymptotic_direction_count(const Hypersurface& C) {
  if (C.n != 1) fail(Errc::Domain, "asymptotic directions are a curve notion");
  QPoly fd = top_form(C.f);
  Ctx cx = make_ctx({C.f.ctx->names[0]});
  QPoly u = substitute(fd, cx, {{C.f.ctx->names[1], QPoly::constant(cx, Rat(1))}});
  long r = 0;
  if (!u.zero() && u.degree() >= 1) r += squarefree_part(to_unipoly(u)).deg();
  else if (!u.zero() && u.degree() == 0) r += 0;
  if (u.zero() || u.degree() < C.d) r += 1;  // the direction [1:0] as a root
  return r;
}

}  // namespace affcurv
