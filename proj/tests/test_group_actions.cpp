#include "doctest.h"

#include "qhv/degenerations.hpp"
#include "qhv/group_actions.hpp"
#include "support.hpp"

using namespace qhv;
using qhv::testing::Rng;

namespace {

Polynomial P(const Context& ctx, const char* s) { return Polynomial::parse(ctx, s); }

}  // namespace

TEST_CASE("the v2 triple on the quadric coordinates") {
  const auto c = quadric_context();
  const auto t = sl2_v2_triple(c);
  const auto q = P(c, "4*x*z - y^2");
  CHECK(t.e.apply(q).is_zero());
  CHECK(t.f.apply(q).is_zero());
  CHECK(t.h.apply(q).is_zero());
  CHECK(t.h.apply(P(c, "x")) == P(c, "-2*x"));
  CHECK(t.h.apply(P(c, "y")).is_zero());
  CHECK(t.h.apply(P(c, "z")) == P(c, "2*z"));
  CHECK(t.e.apply(P(c, "7")).is_zero());
  CHECK(t.e.apply(P(c, "w*lam")).is_zero());
  CHECK(t.e.commutator(t.f).apply(P(c, "x")) == t.h.apply(P(c, "x")));
  CHECK(t.h.commutator(t.e) == t.e.scaled(2));
  CHECK(t.h.commutator(t.f) == t.f.scaled(-2));
}

TEST_CASE("the v4 triple is the push-forward of the v2 triple") {
  const auto c = f4_context();
  const auto t = sl2_v4_triple(c, 1);
  // F lowers: F(x) = 0 so F(a) = F(x^2) = 0, and F(b) = 2(F(x)y + xF(y)) = 4x^2 = 4a.
  CHECK(t.f.apply(P(c, "a")).is_zero());
  CHECK(t.f.apply(P(c, "b")) == P(c, "4*a"));
  CHECK(t.e.apply(P(c, "f")).is_zero());
  CHECK(t.e.apply(P(c, "e")) == P(c, "4*f"));
  for (const auto* d : {&t.e, &t.h, &t.f}) {
    CHECK(d->apply(P(c, "g")).is_zero());
    CHECK(d->apply(P(c, "lam*g")).is_zero());
  }
  CHECK_FALSE(check_bracket_relations(t, 2).has_value());
}

TEST_CASE("property: push-forward agrees with the Veronese pull-back") {
  const auto xyz = VariableContext::make({"x", "y", "z"});
  const auto v = veronese_coordinates(xyz);
  const auto t2 = sl2_v2_triple(xyz);
  for (int k : {0, 1, 2, 3}) {
    const auto c = f4_context();
    const auto t4 = sl2_v4_triple(c, k);
    const auto dst = VariableContext::make({"x", "y", "z", "lam"}, {"lam"});
    std::map<std::string, Polynomial> imgs;
    for (const char* n : {"a", "b", "c", "e", "f"}) imgs.emplace(n, v.at(n).in_context(dst));
    imgs.emplace("g", P(dst, "4*x*z - y^2") * P(dst, "lam").pow(-k));
    imgs.emplace("lam", P(dst, "lam"));
    const SubstitutionMap pull(c, dst, imgs);
    const std::pair<const Derivation*, const Derivation*> pairs[] = {{&t4.e, &t2.e}, {&t4.h, &t2.h}, {&t4.f, &t2.f}};
    for (const auto& [d4, d2] : pairs) {
      for (const char* n : {"a", "b", "c", "e", "f"}) {
        REQUIRE(substitute(d4->apply(P(c, n)), pull) == d2->apply(v.at(n)).in_context(dst));
      }
    }
  }
}

TEST_CASE("ideal invariance") {
  const auto c = quadric_context();
  const auto t = sl2_v2_triple(c);
  for (int k : {1, 3, 5}) CHECK(check_ideal_invariance(quadric_ideal(k), t));
  CHECK_FALSE(check_ideal_invariance(Ideal({P(c, "x")}), t));
  CHECK(check_ideal_invariance(Ideal({P(c, "1")}), t));
}

TEST_CASE("torus semi-invariance") {
  const auto c = quadric_context();
  CHECK(check_semi_invariance(quadric_ideal(3), TorusAction{{{"w", -3}, {"lam", 2}}}));
  CHECK_FALSE(check_semi_invariance(Ideal({P(c, "x + w")}), TorusAction{{{"w", -1}}}));
  for (int k : {0, 1, 2, 3}) {
    CHECK(check_semi_invariance(Ideal(derive_f4_ideal(k).quadrics), TorusAction{{{"g", -2 * k}, {"lam", 2}}}));
  }
}

TEST_CASE("torus action as a substitution") {
  const auto c = quadric_context();
  const auto ext = VariableContext::make({"x", "y", "z", "w", "lam", "xi"}, {"lam", "xi"});
  const TorusAction a{{{"w", -3}, {"lam", 2}}};
  const auto s = a.as_substitution(c, ext, "xi");
  CHECK(s.image("w") == P(ext, "xi^-3*w"));
  CHECK(s.image("lam") == P(ext, "xi^2*lam"));
  CHECK(s.image("x") == P(ext, "x"));
  CHECK(a.weight("y") == 0);
}

TEST_CASE("weight bases") {
  const auto c = VariableContext::make({"x", "y", "z"});
  const auto t = sl2_v2_triple(c);
  CHECK(generate_weight_basis(P(c, "y"), t, 1) == std::vector<Polynomial>{P(c, "2*x"), P(c, "y"), P(c, "2*z")});
  CHECK(generate_weight_basis(P(c, "5"), t, 3) == std::vector<Polynomial>{P(c, "5")});
  // c − G pulled back: (2xz + y²) − (4xz − y²).
  const auto chain = generate_weight_basis(P(c, "2*y^2 - 2*x*z"), t, 2);
  CHECK(chain == std::vector<Polynomial>{P(c, "12*x^2"), P(c, "6*x*y"), P(c, "2*y^2 - 2*x*z"), P(c, "6*y*z"), P(c, "12*z^2")});
  CHECK_THROWS_AS(generate_weight_basis(P(c, "x"), t, 1), DomainError);
}

TEST_CASE("property: Leibniz rule on random pairs") {
  Rng rng(2718);
  const auto c = quadric_context();
  for (int i = 0; i < 500; ++i) {
    std::map<std::string, Polynomial> imgs;
    for (const auto& n : c->names()) imgs.emplace(n, testing::random_polynomial(c, rng, 3, 2, true));
    const Derivation d(c, imgs);
    const auto p = testing::random_polynomial(c, rng, 4, 3, true);
    const auto q = testing::random_polynomial(c, rng, 4, 3, true);
    REQUIRE(d.apply(p * q) == d.apply(p) * q + p * d.apply(q));
    REQUIRE(d.apply(p + q) == d.apply(p) + d.apply(q));
  }
}

TEST_CASE("bracket relations on all monomials up to degree 4") {
  CHECK_FALSE(check_bracket_relations(sl2_v2_triple(quadric_context()), 4).has_value());
  for (int k : {0, 1, 2, 3}) CHECK_FALSE(check_bracket_relations(sl2_v4_triple(f4_context(), k), 4).has_value());
}

TEST_CASE("unassigned variables are reported") {
  const auto c = quadric_context();
  const Derivation d(c, {{"x", P(c, "y")}});
  CHECK(d.apply(P(c, "x^2")) == P(c, "2*x*y"));
  CHECK_THROWS_AS(d.apply(P(c, "y")), UnassignedVariable);
}
