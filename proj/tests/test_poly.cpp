#include <catch2/catch_amalgamated.hpp>

#include "affcurv/parser.hpp"
#include "affcurv/polynomial.hpp"

using namespace affcurv;

namespace {

Ctx xy() { return make_ctx({"x", "y"}); }
Ctx xyz() { return make_ctx({"x", "y", "z"}); }

QPoly P(const std::string& s, const Ctx& c) { return parse_poly(s, c); }

QPoly random_poly(Rng& rng, const Ctx& c, int max_terms = 5, int max_deg = 3) {
  QPoly p(c);
  int terms = 1 + static_cast<int>(rng.next() % max_terms);
  for (int t = 0; t < terms; ++t) {
    Monomial m = Monomial::one(c->size());
    for (int i = 0; i < c->size(); ++i)
      m.e[i] = static_cast<std::uint16_t>(rng.next() % (max_deg + 1));
    p = p + QPoly::term(c, m, rat(rng.next_coeff(9)));
  }
  return p;
}

}  // namespace

TEST_CASE("ring arithmetic identities") {
  auto c = xy();
  CHECK(P("(x+1)*(x-1)", c) == P("x^2-1", c));
  CHECK(scale(P("x+y", c), Rat(0)).zero());
  CHECK((P("0", c) * P("x^2+3*y", c)).zero());
  CHECK(P("2/3*x + 1/3*x", c) == P("x", c));
}

TEST_CASE("prime field characteristic wraparound") {
  std::uint64_t p = 65537;
  Ctx c = make_ctx({"x"});
  Poly<Fp> x65536 = Poly<Fp>::variable(c, 0, Fp(65536, p));
  Poly<Fp> x1 = Poly<Fp>::variable(c, 0, Fp(1, p));
  CHECK((x65536 + x1).zero());
  CHECK_THROWS_AS(Fp(1, p) + Fp(1, 65539), Error);
}

TEST_CASE("randomized ring axioms") {
  Rng rng(20240915);
  auto c = xyz();
  for (int trial = 0; trial < 1000; ++trial) {
    QPoly a = random_poly(rng, c), b = random_poly(rng, c), d = random_poly(rng, c);
    CHECK((a + b) * d == a * d + b * d);
    CHECK((a * b) * d == a * (b * d));
    CHECK(a + b == b + a);
    CHECK((a + b) - b == a);
  }
}

TEST_CASE("degree is additive on products") {
  Rng rng(7);
  auto c = xyz();
  for (int trial = 0; trial < 200; ++trial) {
    QPoly a = random_poly(rng, c), b = random_poly(rng, c);
    if (a.zero() || b.zero()) continue;
    CHECK((a * b).degree() == a.degree() + b.degree());
  }
}

TEST_CASE("substitution") {
  auto c2 = xy();
  auto cx = make_ctx({"x"});
  SECTION("linear example") {
    std::map<std::string, QPoly> m{{"y", P("2*x+1", cx)}};
    CHECK(substitute(P("x^2+y^2", c2), cx, m) == P("5*x^2+4*x+1", cx));
  }
  SECTION("identity map") {
    auto f = P("x^3*y - 2*y + 5", c2);
    CHECK(substitute(f, c2, {}) == f);
  }
  SECTION("general hyperplane image checked by evaluation") {
    auto c3 = xyz();
    auto ctgt = make_ctx({"x", "z", "p", "q", "r"});
    std::map<std::string, QPoly> m{{"y", P("p*x+q*z+r", ctgt)}};
    QPoly img = substitute(P("x + x^2*y*z", c3), ctgt, m);
    CHECK(img == P("x + p*x^3*z + q*x^2*z^2 + r*x^2*z", ctgt));
    Rng rng(99);
    for (int k = 0; k < 5; ++k) {
      std::vector<Rat> v;
      for (int i = 0; i < 5; ++i) v.push_back(rat(rng.next_coeff(20)));
      // evaluate source at (x, px+qz+r, z)
      Rat y = v[2] * v[0] + v[3] * v[1] + v[4];
      Rat lhs = evaluate(P("x + x^2*y*z", c3), {v[0], y, v[1]});
      CHECK(lhs == evaluate(img, v));
    }
  }
  SECTION("missing assignment is an error") {
    CHECK_THROWS_AS(substitute(P("x+y", c2), cx, {}), Error);
  }
}

TEST_CASE("homogenize and dehomogenize") {
  auto c3 = xyz();
  Ctx hc;
  QPoly f = P("x + x^2*y*z", c3);
  QPoly F = homogenize(f, "x0", &hc);
  CHECK(is_homogeneous(F));
  CHECK(F.degree() == 4);
  CHECK(F == P("x*x0^3 + x^2*y*z", hc));
  CHECK(dehomogenize(F, "x0") == f);

  QPoly g = P("x^2+y^2-z^2", c3);
  CHECK(dehomogenize(g, "z") == P("x^2+y^2-1", xy()));

  QPoly one = P("1", c3);
  CHECK(homogenize(one, "x0").degree() == 0);
  CHECK_THROWS_AS(dehomogenize(P("x^2+y", c3), "y"), Error);
}

TEST_CASE("homogenize then dehomogenize is the identity, randomized") {
  Rng rng(31337);
  auto c = xyz();
  for (int trial = 0; trial < 500; ++trial) {
    QPoly p = random_poly(rng, c, 6, 4);
    QPoly H = homogenize(p, "w");
    CHECK(dehomogenize(H, "w") == p);
  }
}

TEST_CASE("jacobian generators") {
  auto c3 = xyz();
  auto J1 = jacobian_generators(P("x^2+y^2+z^2", c3));
  REQUIRE(J1.size() == 3);
  CHECK(J1[0] == P("2*x", c3));
  CHECK(J1[1] == P("2*y", c3));
  CHECK(J1[2] == P("2*z", c3));

  auto J2 = jacobian_generators(P("x + x^2*y*z", c3));
  CHECK(J2[0] == P("1 + 2*x*y*z", c3));
  CHECK(J2[1] == P("x^2*z", c3));
  CHECK(J2[2] == P("x^2*y", c3));

  auto J3 = jacobian_generators(P("x^6 + y^2", xy()));
  CHECK(J3[0] == P("6*x^5", xy()));
  CHECK(J3[1] == P("2*y", xy()));
}

TEST_CASE("parser errors carry position") {
  auto c = xy();
  CHECK_THROWS_WITH(P("x + ", c), Catch::Matchers::ContainsSubstring("column"));
  CHECK_THROWS_WITH(P("x + q", c), Catch::Matchers::ContainsSubstring("unknown variable"));
  CHECK(P("-2/5*x*y^3", c) == scale(P("x*y^3", c), rat(-2, 5)));
  CHECK(P("  x\n+ y ", c) == P("x+y", c));
}

TEST_CASE("printing round-trips through the parser") {
  Rng rng(5150);
  auto c = xyz();
  for (int trial = 0; trial < 50; ++trial) {
    QPoly p = random_poly(rng, c, 7, 5);
    CHECK(parse_poly(to_string(p), c) == p);
  }
}
