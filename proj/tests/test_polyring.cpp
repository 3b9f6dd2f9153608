#include "doctest.h"

#include "qhv/degenerations.hpp"
#include "qhv/polyring.hpp"
#include "support.hpp"

using namespace qhv;
using qhv::testing::Rng;

namespace {

Context quad() { return quadric_context(); }

Polynomial P(const Context& ctx, const char* s) { return Polynomial::parse(ctx, s); }

}  // namespace

TEST_CASE("arithmetic on hand examples") {
  const auto c = quad();
  CHECK(P(c, "4*x*z - y^2") + P(c, "y^2") == P(c, "4*x*z"));
  const auto p = P(c, "3*x^2*w - 1/2*lam");
  CHECK(p + Polynomial(c) == p);
  CHECK(p * Polynomial::constant(c, 1) == p);
  CHECK(P(c, "(2*x*z + y^2)*(4*x*z - y^2)") == P(c, "8*x^2*z^2 + 2*x*z*y^2 - y^4"));
  CHECK(P(c, "lam*lam^-1") == Polynomial::constant(c, 1));
  CHECK((P(c, "x") - P(c, "x")).is_zero());

  const auto f4 = f4_context();
  CHECK(P(f4, "3*e^2 - 8*c*f") + P(f4, "8*c*f") == P(f4, "3*e^2"));
}

TEST_CASE("printing follows the descending term order") {
  const auto c = quad();
  CHECK(P(c, "4*x*z - y^2 - lam^3*w^2").to_string() == "-w^2*lam^3 - y^2 + 4*x*z");
  CHECK(P(c, "3/2*x").to_string() == "3/2*x");
  CHECK(P(c, "lam^-1").to_string() == "lam^-1");
  CHECK(Polynomial(c).to_string() == "0");
}

TEST_CASE("negative exponents only on invertible variables") {
  const auto c = quad();
  CHECK_THROWS_AS(P(c, "x^-1"), ParseError);
  CHECK_THROWS_AS(Polynomial::monomial(c, {-1, 0, 0, 0, 0}), DomainError);
  CHECK(P(c, "lam^-2").is_unit());
  CHECK_FALSE(P(c, "x").is_unit());
  CHECK(P(c, "lam^-1").pow(-2) == P(c, "lam^2"));
  CHECK_THROWS_AS(P(c, "x + 1").pow(-1), DomainError);
}

TEST_CASE("mixing contexts is rejected") {
  const auto a = quad();
  const auto b = f4_context();
  CHECK_THROWS_AS(P(a, "x") + P(b, "a"), ContextMismatch);
  CHECK_THROWS_AS(P(a, "x") * P(b, "a"), ContextMismatch);
}

TEST_CASE("parse errors") {
  const auto c = quad();
  CHECK_THROWS_AS(P(c, "x +"), ParseError);
  CHECK_THROWS_AS(P(c, "q"), ParseError);
  CHECK_THROWS_AS(P(c, "(x"), ParseError);
  CHECK_THROWS_AS(P(c, "1/0"), ParseError);
}

TEST_CASE("gluing substitution on the quadric generator") {
  const auto c = quad();
  const auto p = P(c, "4*x*z - y^2 - lam^3*w^2");
  const SubstitutionMap s(c, c,
                          {{"lam", P(c, "lam^-1")},
                           {"w", P(c, "w*lam^2")},
                           {"x", P(c, "x")},
                           {"y", P(c, "y")},
                           {"z", P(c, "z")}});
  CHECK(substitute(p, s) == P(c, "4*x*z - y^2 - lam*w^2"));
  CHECK(substitute(p, SubstitutionMap::identity(c)) == p);
}

TEST_CASE("substitution map preconditions") {
  const auto c = quad();
  CHECK_THROWS_AS(SubstitutionMap(c, c, {{"x", P(c, "x")}}), UnassignedVariable);
  CHECK_THROWS_AS(SubstitutionMap::with_defaults(c, c, {{"lam", P(c, "lam + 1")}}), NonUnitImage);
}

TEST_CASE("the Veronese parametrization annihilates an F4 generator") {
  const auto src = f4_context();
  const auto dst = VariableContext::make({"x", "y", "z", "lam"}, {"lam"});
  const SubstitutionMap s(src, dst,
                          {{"a", P(dst, "x^2")},
                           {"b", P(dst, "2*x*y")},
                           {"c", P(dst, "2*x*z + y^2")},
                           {"e", P(dst, "2*y*z")},
                           {"f", P(dst, "z^2")},
                           {"g", P(dst, "lam^-1*(4*x*z - y^2)")},
                           {"lam", P(dst, "lam")}});
  CHECK(substitute(P(src, "3*e^2 - 8*c*f + 4*f*lam*g"), s).is_zero());
}

TEST_CASE("torus weights") {
  const auto c = quad();
  const std::map<std::string, int> sl2_weights{{"x", -2}, {"y", 0}, {"z", 2}};
  CHECK(weight_of(P(c, "4*x*z - y^2"), sl2_weights) == 0);
  CHECK_FALSE(weight_of(P(c, "x + z"), sl2_weights).has_value());
  CHECK(weight_of(P(c, "w"), {{"w", -3}}) == -3);
  CHECK_FALSE(weight_of(Polynomial(c), sl2_weights).has_value());
}

TEST_CASE("property: printing re-parses to the same polynomial") {
  Rng rng(20260101);
  const auto c = quad();
  const auto f4 = f4_context();
  for (int i = 0; i < 1000; ++i) {
    const auto& ctx = i % 2 ? c : f4;
    const auto p = testing::random_polynomial(ctx, rng, 6, 5, true);
    const auto text = p.to_string();
    CAPTURE(text);
    REQUIRE(Polynomial::parse(ctx, text) == p);
  }
}

TEST_CASE("property: ring axioms and evaluation homomorphism") {
  Rng rng(424242);
  const auto c = quad();
  for (int i = 0; i < 1000; ++i) {
    const auto p = testing::random_polynomial(c, rng, 4, 3, true);
    const auto q = testing::random_polynomial(c, rng, 4, 3, true);
    const auto r = testing::random_polynomial(c, rng, 4, 3, true);
    REQUIRE(p + q == q + p);
    REQUIRE(p * q == q * p);
    REQUIRE((p + q) + r == p + (q + r));
    REQUIRE((p * q) * r == p * (q * r));
    REQUIRE(p * (q + r) == p * q + p * r);
    REQUIRE((p - p).is_zero());
    auto pt = testing::random_point(c, rng);
    REQUIRE(testing::evaluate(p * q + r, pt) == testing::evaluate(p, pt) * testing::evaluate(q, pt) + testing::evaluate(r, pt));
  }
}

TEST_CASE("property: gluing maps are mutually inverse") {
  Rng rng(7);
  const auto c = quad();
  for (int k : {1, 3, 5, 7, 9}) {
    for (int l : {1, 3, 5, 7, 9}) {
      const auto there = gluing_map(Family::Quadric, k, l);
      const auto back = gluing_map(Family::Quadric, l, k);
      for (int i = 0; i < 20; ++i) {
        const auto p = testing::random_polynomial(c, rng, 5, 4, true);
        REQUIRE(substitute(substitute(p, there), back) == p);
      }
    }
  }
}

TEST_CASE("property: substitution commutes with evaluation") {
  Rng rng(99);
  const auto c = quad();
  const auto s = gluing_map(Family::Quadric, 3, 5);
  for (int i = 0; i < 300; ++i) {
    const auto p = testing::random_polynomial(c, rng, 5, 4, true);
    auto pt = testing::random_point(c, rng);
    std::map<std::string, Rational> image_pt;
    for (const auto& n : c->names()) image_pt[n] = testing::evaluate(s.image(n), pt);
    REQUIRE(testing::evaluate(substitute(p, s), pt) == testing::evaluate(p, image_pt));
  }
}

TEST_CASE("property: weights add under multiplication") {
  Rng rng(11);
  const auto c = quad();
  const std::map<std::string, int> w{{"x", -2}, {"y", 0}, {"z", 2}, {"w", -3}, {"lam", 2}};
  for (int i = 0; i < 500; ++i) {
    Exponents e1(5), e2(5);
    for (auto& v : e1) v = testing::uniform(rng, 0, 3);
    for (auto& v : e2) v = testing::uniform(rng, 0, 3);
    e1[4] -= 2;
    const auto m1 = Polynomial::monomial(c, e1, testing::random_rational(rng));
    const auto m2 = Polynomial::monomial(c, e2, testing::random_rational(rng));
    REQUIRE(weight_of(m1 * m2, w) == *weight_of(m1, w) + *weight_of(m2, w));
    REQUIRE(weight_of(m1 * (m2 + m2), w) == weight_of(m1 * m2, w));
  }
}

TEST_CASE("derivatives and degrees") {
  const auto c = quad();
  const auto p = P(c, "4*x*z - y^2 - lam^3*w^2");
  CHECK(p.derivative("lam") == P(c, "-3*lam^2*w^2"));
  CHECK(p.derivative("y") == P(c, "-2*y"));
  CHECK(P(c, "lam^-2").derivative("lam") == P(c, "-2*lam^-3"));
  CHECK(p.total_degree() == 5);
  CHECK(p.degree_in(3) == 2);
  CHECK(P(c, "lam^-2 + lam").min_degree_in(4) == -2);
  CHECK(P(c, "6*x + 4*y").primitive() == P(c, "3*x + 2*y"));
  CHECK(P(c, "2*x + 4").monic() == P(c, "x + 2"));
}
