#include <catch2/catch_amalgamated.hpp>

#include "affcurv/ideal_ops.hpp"
#include "affcurv/parser.hpp"

using namespace affcurv;

namespace {

QPoly P(const std::string& s, const Ctx& c) { return parse_poly(s, c); }

QIdeal ideal(const Ctx& c, std::initializer_list<std::string> gens) {
  std::vector<QPoly> g;
  for (auto& s : gens) g.push_back(P(s, c));
  return QIdeal(c, g);
}

template <class K>
bool equal_ideals(const IdealBasis<K>& A, const IdealBasis<K>& B) {
  IdealBasis<K> Ag = groebner_basis(A), Bg = groebner_basis(B);
  for (auto& g : A.gens)
    if (!normal_form(g, Bg).zero()) return false;
  for (auto& g : B.gens)
    if (!normal_form(g, Ag).zero()) return false;
  return true;
}

// independent staircase oracle: count monomials in a box that no generator
// exponent vector divides
long staircase_oracle(const std::vector<std::vector<int>>& gens, const std::vector<int>& box) {
  std::vector<int> cur(box.size(), 0);
  long count = 0;
  std::function<void(std::size_t)> walk = [&](std::size_t i) {
    if (i == box.size()) {
      for (auto& g : gens) {
        bool div = true;
        for (std::size_t k = 0; k < box.size(); ++k)
          if (g[k] > cur[k]) { div = false; break; }
        if (div) return;
      }
      ++count;
      return;
    }
    for (int e = 0; e < box[i]; ++e) {
      cur[i] = e;
      walk(i + 1);
    }
    cur[i] = 0;
  };
  walk(0);
  return count;
}

}  // namespace

TEST_CASE("reduced bases of simple ideals") {
  auto c1 = make_ctx({"x"});
  QIdeal I = groebner_basis(ideal(c1, {"x^2-1", "x-1"}));
  REQUIRE(I.basis().size() == 1);
  CHECK(I.basis()[0] == P("x-1", c1));

  auto c3 = make_ctx({"x", "y", "z"});
  QIdeal J = groebner_basis(ideal(c3, {"2*x", "2*y", "2*z"}));
  REQUIRE(J.basis().size() == 3);
  CHECK(equal_ideals(J, ideal(c3, {"x", "y", "z"})));
}

TEST_CASE("membership of original generators") {
  auto c = make_ctx({"x", "y", "z"});
  QIdeal I = ideal(c, {"x^2*y - z^3 + 1", "x*z - y^2", "y^5 - 3*x"});
  QIdeal G = groebner_basis(I);
  for (auto& g : I.gens) CHECK(normal_form(g, G).zero());
}

TEST_CASE("twisted cubic elimination") {
  auto c = make_ctx({"x", "y", "z"});
  QIdeal I = ideal(c, {"y - x^2", "z - x^3"});
  QIdeal E = eliminate(I, {"x"});
  auto cyz = make_ctx({"y", "z"});
  CHECK(equal_ideals(E, ideal(cyz, {"z^2 - y^3"})));
  // oracle: the eliminant vanishes along the parametrization (t, t^2, t^3)
  for (long t = -3; t <= 3; ++t) {
    for (auto& g : E.gens) CHECK(is_zero(evaluate(g, {Rat(t * t), Rat(t * t * t)})));
  }
  // eliminating a dominant projection yields the zero ideal
  QIdeal E2 = eliminate(ideal(c, {"y - x^2"}), {"x"});
  CHECK(E2.gens.empty());
  // eliminating nothing changes nothing
  CHECK(equal_ideals(eliminate(I, {}), I));
}

TEST_CASE("local standard bases and local dimensions") {
  auto c = make_ctx({"x", "y"});
  SECTION("monomial ideal") {
    IdealBasis<Rat> I(c, {P("x^3", c), P("y^2", c)}, MonomialOrder::local_ds());
    auto q = quotient_dimension(standard_basis_local(I));
    REQUIRE(q);
    CHECK(*q == 6);
    CHECK(*q == staircase_oracle({{3, 0}, {0, 2}}, {4, 3}));
  }
  SECTION("cusp pair jacobian") {
    IdealBasis<Rat> I(c, {P("3*x^2", c), P("3*y^2", c)}, MonomialOrder::local_ds());
    auto q = quotient_dimension(standard_basis_local(I));
    REQUIRE(q);
    CHECK(*q == 4);
    CHECK(*q == staircase_oracle({{2, 0}, {0, 2}}, {3, 3}));
  }
  SECTION("unit at the origin") {
    IdealBasis<Rat> I(c, {P("1+x", c)}, MonomialOrder::local_ds());
    auto q = quotient_dimension(standard_basis_local(I));
    REQUIRE(q);
    CHECK(*q == 0);
  }
  SECTION("A_k series") {
    for (int k = 1; k <= 5; ++k) {
      std::string f = "x^" + std::to_string(k) + "";  // d/dx of x^{k+1} up to a unit
      IdealBasis<Rat> I(c, {P(f, c), P("y", c)}, MonomialOrder::local_ds());
      auto q = quotient_dimension(standard_basis_local(I));
      REQUIRE(q);
      CHECK(*q == k);
    }
  }
  SECTION("non-monomial local ideal needs Mora") {
    // x^2 + higher-order tail; the tail must not disturb the local dimension
    IdealBasis<Rat> I(c, {P("x^2 + x^5 + x^3*y^4", c), P("y^3 - y^8", c)},
                      MonomialOrder::local_ds());
    auto q = quotient_dimension(standard_basis_local(I));
    REQUIRE(q);
    CHECK(*q == 6);
  }
}

TEST_CASE("quotient dimensions, global") {
  auto c = make_ctx({"x", "y", "z"});
  auto q1 = quotient_dimension(groebner_basis(ideal(c, {"x", "y", "z"})));
  REQUIRE(q1);
  CHECK(*q1 == 1);
  auto c2 = make_ctx({"x", "y"});
  CHECK(!quotient_dimension(groebner_basis(ideal(c2, {"x"}))));  // positive-dimensional
  CHECK(krull_dimension(groebner_basis(ideal(c2, {"x"}))) == 1);
  CHECK(krull_dimension(groebner_basis(ideal(c2, {"x", "y"}))) == 0);
  CHECK(krull_dimension(groebner_basis(ideal(c2, {"x", "y", "1"}))) == -1);
  CHECK(krull_dimension(groebner_basis(ideal(c, {"x*y - 1"}))) == 2);
}

TEST_CASE("saturation") {
  auto c = make_ctx({"x", "y"});
  CHECK(equal_ideals(saturate(ideal(c, {"x*y"}), P("y", c)), ideal(c, {"x"})));
  // (x^2, x*y) = (x) ∩ (x^2, y); the second component lives where y vanishes
  CHECK(equal_ideals(saturate(ideal(c, {"x^2", "x*y"}), P("y", c)), ideal(c, {"x"})));
  // saturating by x is the unit ideal: x^2 already lies inside
  CHECK(saturate(ideal(c, {"x^2", "x*y"}), P("x", c)).is_unit());
  QIdeal I = ideal(c, {"x^2 - y^3"});
  CHECK(equal_ideals(saturate(I, P("7", c)), I));
  // saturation by an ideal removes only components inside its zero set
  QIdeal J = ideal(c, {"x^2", "x*y"});
  CHECK(equal_ideals(saturate_by_ideal(J, {P("x", c), P("y", c)}), ideal(c, {"x"})));
}

TEST_CASE("intersection") {
  auto c = make_ctx({"x", "y"});
  QIdeal A = ideal(c, {"x"});
  QIdeal B = ideal(c, {"y"});
  CHECK(equal_ideals(intersect(A, B), ideal(c, {"x*y"})));
}

TEST_CASE("quotient dimension is presentation independent") {
  auto c = make_ctx({"x", "y", "z"});
  std::vector<QIdeal> samples = {
      ideal(c, {"x^2+y^2+z^2-1", "x-y", "z^2-x"}),
      ideal(c, {"x^3 - y", "y^2 - z", "z^2 - x*y"}),
  };
  Rng rng(777);
  for (auto& I : samples) {
    auto q0 = quotient_dimension(groebner_basis(I));
    REQUIRE(q0);
    for (int trial = 0; trial < 20; ++trial) {
      // random invertible recombination: elementary row operations
      std::vector<QPoly> g = I.gens;
      for (int step = 0; step < 6; ++step) {
        std::size_t i = rng.next() % g.size(), j = rng.next() % g.size();
        if (i == j) {
          g[i] = scale(g[i], rat(rng.next_coeff(5)));
        } else {
          g[i] = g[i] + scale(g[j], rat(rng.next_coeff(5)));
        }
      }
      auto q = quotient_dimension(groebner_basis(QIdeal(c, g)));
      REQUIRE(q);
      CHECK(*q == *q0);
    }
  }
}

TEST_CASE("rational and prime-field degree counts agree") {
  auto c = make_ctx({"x", "y", "z"});
  QIdeal I = ideal(c, {"x^2+y^2+z^2-1", "x-y", "z^3-2*x"});
  auto q = quotient_dimension(groebner_basis(I));
  REQUIRE(q);
  Rng rng(13);
  for (int k = 0; k < 3; ++k) {
    std::uint64_t p = random_prime(rng);
    auto qp = quotient_dimension(groebner_basis(ideal_mod_p(I, p)));
    REQUIRE(qp);
    CHECK(*qp == *q);
    // leading terms agree as well
    auto lq = groebner_basis(I).leading_monomials();
    auto lp = groebner_basis(ideal_mod_p(I, p)).leading_monomials();
    REQUIRE(lq.size() == lp.size());
    for (std::size_t i = 0; i < lq.size(); ++i) CHECK(lq[i] == lp[i]);
  }
}

TEST_CASE("local dimensions add up over rational points") {
  auto c = make_ctx({"x", "y"});
  // V = {(0,0) with multiplicity 2 in x} ∪ {(1,1)}
  QIdeal I = ideal(c, {"x^2*(x-1)", "y - x"});
  auto q = quotient_dimension(groebner_basis(I));
  REQUIRE(q);
  CHECK(*q == 3);
  // local at origin
  IdealBasis<Rat> L0(c, I.gens, MonomialOrder::local_ds());
  auto q0 = quotient_dimension(standard_basis_local(L0));
  REQUIRE(q0);
  CHECK(*q0 == 2);
  // local at (1,1): translate then localize
  std::map<std::string, QPoly> shift{{"x", P("x+1", c)}, {"y", P("y+1", c)}};
  std::vector<QPoly> moved;
  for (auto& g : I.gens) moved.push_back(substitute(g, c, shift));
  IdealBasis<Rat> L1(c, moved, MonomialOrder::local_ds());
  auto q1 = quotient_dimension(standard_basis_local(L1));
  REQUIRE(q1);
  CHECK(*q1 == 1);
  CHECK(*q0 + *q1 == *q);
}

TEST_CASE("constrained multiplicity sums") {
  auto c = make_ctx({"x", "y"});
  // scheme x^2(x-1)=0, y=x: multiplicity 2 at x=0, 1 at x=1
  QIdeal I = ideal(c, {"x^2*(x-1)", "y - x"});
  CHECK(local_multiplicity_sum(I, {P("x", c), P("y", c)}) == 2);
  CHECK(local_multiplicity_sum(I, {P("x-1", c)}) == 1);
  CHECK(local_multiplicity_sum(I, {}) == 3);
  CHECK(local_multiplicity_sum(I, {P("x-5", c)}) == 0);
  // positive-dimensional where finite is required
  QIdeal J = ideal(c, {"x^2"});
  CHECK_THROWS_AS(local_multiplicity_sum(J, {P("x", c)}), Error);
}

TEST_CASE("univariate eliminants and rational roots") {
  auto c = make_ctx({"x", "y"});
  QIdeal I = ideal(c, {"x^2 - 2", "y - x"});
  UniPoly ex = univariate_eliminant(I, "x");
  CHECK(ex.deg() == 2);
  auto rr = rational_roots(ex);
  CHECK(rr.roots.empty());
  CHECK(rr.complete);

  QIdeal J = ideal(c, {"(x-1)*(x+2)*x^2", "y"});
  auto ry = rational_roots(univariate_eliminant(J, "x"));
  REQUIRE(ry.roots.size() == 3);
  long mult_sum = 0;
  for (auto& [r, m] : ry.roots) mult_sum += m;
  CHECK(mult_sum == 4);

  UniPoly sq = to_unipoly(P("x^4 - 2*x^3 + x^2", make_ctx({"x"})));  // x^2 (x-1)^2
  CHECK(squarefree_part(sq).deg() == 2);
}
