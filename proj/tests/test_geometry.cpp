#include <catch2/catch_amalgamated.hpp>

#include "affcurv/hypersurface.hpp"
#include "affcurv/parser.hpp"

using namespace affcurv;

namespace {

Hypersurface H(const std::string& s, std::vector<std::string> vars) {
  return Hypersurface(parse_poly(s, make_ctx(std::move(vars))));
}

}  // namespace

TEST_CASE("singular locus ideals") {
  auto Ysmooth = H("x^2 + y^2 - 1", {"x", "y"});
  CHECK(groebner_basis(singular_locus_ideal(Ysmooth)).is_unit());

  auto Ygraph = H("x + x^2*y*z", {"x", "y", "z"});
  CHECK(groebner_basis(singular_locus_ideal(Ygraph)).is_unit());

  // critical set of x^2 + x^3*y + z^4 is the y-axis
  auto Yline = H("x^2 + x^3*y + z^4", {"x", "y", "z"});
  QIdeal S = groebner_basis(singular_locus_ideal(Yline));
  CHECK(krull_dimension(S) == 1);
  auto c = S.ctx;
  CHECK(normal_form(parse_poly("x^3", c), S).zero());
  CHECK(normal_form(parse_poly("z^3", c), S).zero());
}

TEST_CASE("classification") {
  SECTION("conic is general at infinity") {
    CHECK(classify(H("x^2 + y^2 - 1", {"x", "y"})).kind == ClassKind::GeneralSmooth);
  }
  SECTION("quartic family rows") {
    // s=1 representative: F-type; s=0: B0-type
    CHECK(classify(H("x^4 + z^4 + z^2*y + z - 1", {"x", "y", "z"})).kind == ClassKind::FType);
    CHECK(classify(H("x^4 + z^2*y + z - 1", {"x", "y", "z"})).kind == ClassKind::B0Type);
    CHECK(classify(H("x^4 + z^2*y + z", {"x", "y", "z"})).kind == ClassKind::B0Type);
  }
  SECTION("graph hypersurface is B1") {
    CHECK(classify(H("x + x^2*y*z", {"x", "y", "z"})).kind == ClassKind::B1Type);
    CHECK(classify(H("x + x^2*y*z - 1", {"x", "y", "z"})).kind == ClassKind::B1Type);
  }
  SECTION("one-dimensional affine singular locus is beyond the supported classes") {
    ClassTag t = classify(H("x^2 + x^3*y + z^4", {"x", "y", "z"}));
    CHECK(t.kind == ClassKind::Beyond);
    CHECK(t.stratification_caveat);
  }
  SECTION("fermat surfaces are general") {
    CHECK(classify(H("x^3 + y^3 + z^3 - 1", {"x", "y", "z"})).kind == ClassKind::GeneralSmooth);
    CHECK(classify(H("x^2 + y^2 + z^2 - 1", {"x", "y", "z"})).kind == ClassKind::GeneralSmooth);
  }
  SECTION("invariance under linear coordinate changes") {
    auto f = parse_poly("x^4 + z^2*y + z - 1", make_ctx({"x", "y", "z"}));
    ClassKind expected = classify(Hypersurface(f)).kind;
    Rng rng(2718);
    int checked = 0;
    for (int trial = 0; trial < 10; ++trial) {
      // random invertible linear substitution: triangular with units
      auto c = f.ctx;
      std::map<std::string, QPoly> sub;
      std::vector<std::string> names = c->names;
      QPoly x = QPoly::variable(c, 0, rat(rng.next_coeff(3)));
      QPoly y = QPoly::variable(c, 1, rat(rng.next_coeff(3)));
      QPoly z = QPoly::variable(c, 2, rat(rng.next_coeff(3)));
      sub["x"] = x;
      sub["y"] = y + scale(x, rat(rng.next_coeff(2)));
      sub["z"] = z + scale(y, rat(rng.next_coeff(2)));
      QPoly g = substitute(f, c, sub);
      CHECK(classify(Hypersurface(g)).kind == expected);
      ++checked;
    }
    CHECK(checked == 10);
  }
}

TEST_CASE("rational points") {
  auto c = make_ctx({"x", "z"});
  QIdeal I(c, {parse_poly("x", c), parse_poly("z", c)});
  RationalPoints p = rational_points(I);
  REQUIRE(p.points.size() == 1);
  CHECK(p.points[0][0] == 0);
  CHECK(!p.residual);

  auto cx = make_ctx({"x"});
  QIdeal J(cx, {parse_poly("x^2 - 2", cx)});
  RationalPoints q = rational_points(J);
  CHECK(q.points.empty());
  CHECK(q.residual);
  CHECK(q.length == 2);
}

TEST_CASE("local milnor numbers") {
  SECTION("A_k in two and three variables") {
    for (int k = 1; k <= 5; ++k) {
      auto c2 = make_ctx({"x", "y"});
      QPoly f2 = parse_poly("x^" + std::to_string(k + 1) + " + y^2", c2);
      CHECK(milnor_number_at(f2, {Rat(0), Rat(0)}) == k);
      auto c3 = make_ctx({"x", "y", "z"});
      QPoly f3 = parse_poly("x^" + std::to_string(k + 1) + " + y^2 + z^2", c3);
      CHECK(milnor_number_at(f3, {Rat(0), Rat(0), Rat(0)}) == k);
      GenericityPolicy pol;
      CHECK(mu_section_at_origin(f3, pol, 100 + k) == 1);
      CHECK(mu_section_at_origin(f2, pol, 200 + k) == (k >= 1 ? 1 : 1));
    }
  }
  SECTION("node") {
    auto c3 = make_ctx({"x", "y", "z"});
    QPoly f = parse_poly("x^2 + y^2 + z^2", c3);
    CHECK(milnor_number_at(f, {Rat(0), Rat(0), Rat(0)}) == 1);
  }
  SECTION("smooth point returns zero, flagged") {
    auto c2 = make_ctx({"x", "y"});
    MilnorFlags flags;
    CHECK(milnor_number_at(parse_poly("x^2 + y^2 - 1", c2), {Rat(1), Rat(0)}, &flags) == 0);
    CHECK(!flags.was_singular);
  }
  SECTION("translation invariance") {
    auto c2 = make_ctx({"x", "y"});
    QPoly f = parse_poly("(x-2)^3 + (y+1)^2", c2);
    CHECK(milnor_number_at(f, {Rat(2), Rat(-1)}) == 2);
  }
  SECTION("non-isolated singularity is an error") {
    auto c3 = make_ctx({"x", "y", "z"});
    QPoly f = parse_poly("x^2 + x^3*y + z^4", c3);
    CHECK_THROWS_AS(milnor_number_at(f, {Rat(0), Rat(0), Rat(0)}), Error);
  }
}

TEST_CASE("aggregate milnor numbers at infinity") {
  SECTION("smooth conic: nothing at infinity") {
    ProjectiveScene P(H("x^2 + y^2 - 1", {"x", "y"}));
    CHECK(aggregate_mu_closure_at_infinity(P) == 0);
    CHECK(aggregate_mu_projective(P.inf_part) == 0);
  }
  SECTION("curve with one asymptotic direction: d - r") {
    // top form x^4: a single direction, aggregate = 4 - 1 = 3
    ProjectiveScene P(H("x^4 + x*y + 1", {"x", "y"}));
    CHECK(aggregate_mu_projective(P.inf_part) == 3);
  }
  SECTION("quartic rows: closure singularities at infinity") {
    // representative with s=0, t=1: aggregate 15 + 3 = 18
    ProjectiveScene P0(H("x^4 + z^2*y + z - 1", {"x", "y", "z"}));
    CHECK(aggregate_mu_closure_at_infinity(P0) == 18);
    // s=0, t=0: aggregate 18 + 3 = 21
    ProjectiveScene P00(H("x^4 + z^2*y + z", {"x", "y", "z"}));
    CHECK(aggregate_mu_closure_at_infinity(P00) == 21);
    // s=1, t=1: only one singular point, 15
    ProjectiveScene P1(H("x^4 + z^4 + z^2*y + z - 1", {"x", "y", "z"}));
    CHECK(aggregate_mu_closure_at_infinity(P1) == 15);
    // s=1, t=0: 18
    ProjectiveScene P10(H("x^4 + z^4 + z^2*y + z", {"x", "y", "z"}));
    CHECK(aggregate_mu_closure_at_infinity(P10) == 18);
  }
  SECTION("four concurrent lines at infinity") {
    ProjectiveScene P(H("x^4 + z^4 + z^2*y + z - 1", {"x", "y", "z"}));
    CHECK(aggregate_mu_projective(P.inf_part) == 9);
  }
  SECTION("chart-partition independence") {
    ProjectiveScene P0(H("x^4 + z^2*y + z - 1", {"x", "y", "z"}));
    CHECK(aggregate_mu_closure_at_infinity(P0, {0, 1, 2}) == 18);
    CHECK(aggregate_mu_closure_at_infinity(P0, {2, 1, 0}) == 18);
    CHECK(aggregate_mu_closure_at_infinity(P0, {1, 2, 0}) == 18);
    // slice at infinity of x^4: a fourfold line in the plane; the aggregate
    // over its singular locus is positive-dimensional and must refuse
    CHECK_THROWS_AS(aggregate_mu_projective(P0.inf_part), Error);
  }
  SECTION("rational infinity point data") {
    ProjectiveScene P(H("x^4 + z^2*y + z - 1", {"x", "y", "z"}));
    auto pts = rational_infinity_points(P);
    REQUIRE(pts.size() == 2);
    long mu_sum = 0;
    for (auto& p : pts) mu_sum += p.mu_closure;
    CHECK(mu_sum == 18);
  }
}

TEST_CASE("general-at-infinity inputs have zero infinity aggregates") {
  for (auto s : {"x^2 + y^2 - 1", "x^3 + y^3 - 1"}) {
    ProjectiveScene P(H(s, {"x", "y"}));
    CHECK(aggregate_mu_closure_at_infinity(P) == 0);
    CHECK(aggregate_mu_projective(P.inf_part) == 0);
  }
}
