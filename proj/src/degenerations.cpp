#include "qhv/degenerations.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace qhv {

std::string to_string(ChartId c) { return c == ChartId::Zero ? "zero" : "infinity"; }
std::string to_string(Family f) { return f == Family::Quadric ? "quadric" : "f4"; }

Context quadric_context() {
  static const Context ctx = VariableContext::make({"x", "y", "z", "w", "lam"}, {"lam"});
  return ctx;
}

Context f4_context() {
  static const Context ctx = VariableContext::make({"a", "b", "c", "e", "f", "g", "lam"}, {"lam"});
  return ctx;
}

namespace {

Context invariant_coordinate_context() {
  static const Context ctx = VariableContext::make({"a", "b", "c", "e", "f", "G"});
  return ctx;
}

Polynomial lam_power_times(const Context& ctx, const std::string& var, int var_exp, int lam_exp) {
  Exponents e(ctx->size(), 0);
  e[ctx->require_index(var)] = var_exp;
  e[ctx->require_index("lam")] = lam_exp;
  return Polynomial::monomial(ctx, e);
}

/// Reduced row echelon form of a list of polynomials viewed as vectors over
/// the monomials of their context, largest monomial first.
std::vector<Polynomial> linear_echelon(std::vector<Polynomial> rows) {
  std::vector<Polynomial> pivots;
  for (auto& r : rows) {
    for (const auto& p : pivots) {
      const auto& lm = p.leading_term().exponents;
      for (const auto& t : r.terms()) {
        if (t.exponents == lm) {
          r -= p * t.coefficient;
          break;
        }
      }
    }
    if (r.is_zero()) continue;
    r = r.monic();
    const auto lm = r.leading_term().exponents;
    for (auto& p : pivots) {
      for (const auto& t : p.terms()) {
        if (t.exponents == lm) {
          p -= r * t.coefficient;
          break;
        }
      }
    }
    pivots.push_back(r);
  }
  const auto& ctx = *pivots.front().context();
  std::sort(pivots.begin(), pivots.end(), [&](const Polynomial& a, const Polynomial& b) {
    return ctx.compare(a.leading_term().exponents, b.leading_term().exponents) > 0;
  });
  return pivots;
}

/// Basis of the linear relations Σ c_j·columns_j ≡ 0 (the columns are
/// already reduced normal forms).
std::vector<std::vector<Rational>> null_space(const std::vector<Polynomial>& columns) {
  std::vector<Exponents> monos;
  for (const auto& c : columns) {
    for (const auto& t : c.terms()) {
      if (std::find(monos.begin(), monos.end(), t.exponents) == monos.end()) monos.push_back(t.exponents);
    }
  }
  const std::size_t n = columns.size();
  std::vector<std::vector<Rational>> m(monos.size(), std::vector<Rational>(n, 0));
  for (std::size_t j = 0; j < n; ++j) {
    for (const auto& t : columns[j].terms()) {
      auto r = std::find(monos.begin(), monos.end(), t.exponents) - monos.begin();
      m[r][j] = t.coefficient;
    }
  }
  std::vector<std::size_t> pivot_of_row;
  std::vector<bool> is_pivot(n, false);
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t k = 0; k < n; ++k) m[i][k] -= f * m[r][k];
    }
    pivot_of_row.push_back(c);
    is_pivot[c] = true;
    ++r;
  }
  std::vector<std::vector<Rational>> out;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(n, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivot_of_row.size(); ++i) v[pivot_of_row[i]] = -m[i][free];
    out.push_back(std::move(v));
  }
  return out;
}

void require_invariance(const ChartModel& m) {
  if (!check_semi_invariance(m.ideal, m.torus)) {
    throw Error(to_string(m.family) + " chart is not torus semi-invariant");
  }
  if (!check_ideal_invariance(m.ideal, m.sl2)) {
    throw Error(to_string(m.family) + " chart is not sl2-invariant");
  }
}

}  // namespace

Ideal quadric_ideal(int k) {
  if (k < 0) throw DomainError("twist must be nonnegative");
  const auto ctx = quadric_context();
  Polynomial q = Polynomial::parse(ctx, "4*x*z - y^2");
  q -= lam_power_times(ctx, "w", 2, k);
  return Ideal({q});
}

ChartModel quadric_chart(int k, ChartId chart) {
  if (k < 1 || k % 2 == 0) throw DomainError("quadric twist must be odd and positive, got " + std::to_string(k));
  const int sign = chart == ChartId::Zero ? 1 : -1;
  ChartModel m{chart, k, Family::Quadric, quadric_ideal(k),
               TorusAction{{{"w", -sign * k}, {"lam", 2 * sign}}}, sl2_v2_triple(quadric_context())};
  require_invariance(m);
  return m;
}

ChartModel f4_chart(int k, ChartId chart) {
  if (k < 0) throw DomainError("f4 twist must be nonnegative, got " + std::to_string(k));
  const int sign = chart == ChartId::Zero ? 1 : -1;
  const auto& derived = derive_f4_ideal(k);
  ChartModel m{chart, k, Family::F4, Ideal(derived.quadrics),
               TorusAction{{{"g", -2 * sign * k}, {"lam", 2 * sign}}}, sl2_v4_triple(f4_context(), k)};
  require_invariance(m);
  return m;
}

const std::vector<std::string>& published_f4_generators() {
  static const std::vector<std::string> gens = {
      "3*e^2 - 8*c*f + 4*f*G",
      "c*e - 6*b*f + e*G",
      "3*b*e - 48*a*f + 2*c*G + 2*G^2",
      "c^2 - 36*a*f + 2*c*G + G^2",
      "b*c - 6*a*e + b*G",
      "3*b^2 - 8*a*c + 4*a*G",
  };
  return gens;
}

const std::vector<std::string>& characterization_f4_generators() {
  static const std::vector<std::string> gens = {
      "3*e^2 - 8*c*f + 4*f*lam*g",
      "c*e - 6*b*f + e*lam*g",
      "3*b*e - 48*a*f + 2*c*lam*g + 2*lam^2*g^2",
      "c^2 - 36*a*f + 2*c*lam*g + (lam*g)^2",
      "b*c - 6*a*c + b*lam*g",
      "3*b^2 - 8*a*c + 4*a*lam*g",
  };
  return gens;
}

Polynomial to_invariant_coordinate(const Polynomial& p, int k) {
  const auto& src = *p.context();
  const auto tgt = invariant_coordinate_context();
  const std::size_t gi = src.require_index("g");
  const std::size_t li = src.require_index("lam");
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    if (t.exponents[li] != k * t.exponents[gi]) {
      throw DomainError("lam does not occur only through lam^k*g in " + p.to_string());
    }
    Exponents e(tgt->size(), 0);
    for (const char* v : {"a", "b", "c", "e", "f"}) e[tgt->require_index(v)] = t.exponents[src.require_index(v)];
    e[tgt->require_index("G")] = t.exponents[gi];
    out.push_back(Term{std::move(e), t.coefficient});
  }
  return Polynomial::from_terms(tgt, std::move(out));
}

namespace {

SubstitutionMap from_invariant_coordinate(int k) {
  const auto ctx = f4_context();
  return SubstitutionMap::with_defaults(invariant_coordinate_context(), ctx,
                                        {{"G", lam_power_times(ctx, "g", 1, k)}});
}

std::unique_ptr<F4Derivation> compute_f4(int k) {
  auto ring = VariableContext::make({"x", "y", "z", "a", "b", "c", "e", "f", "g", "lam"}, {"lam"});
  auto p = [&](const char* s) { return Polynomial::parse(ring, s); };
  std::vector<Polynomial> gens = {p("a - x^2"), p("b - 2*x*y"), p("c - 2*x*z - y^2"), p("e - 2*y*z"),
                                  p("f - z^2"), lam_power_times(ring, "g", 1, k) - p("4*x*z - y^2")};
  Ideal kernel = eliminate(Ideal(gens), {"x", "y", "z"});
  const auto ctx = f4_context();
  // eliminate() keeps the remaining names in order, so this is the f4 ring.
  std::vector<Polynomial> kg;
  for (const auto& g : kernel.generators()) kg.push_back(g.in_context(ctx));
  kernel = Ideal(std::move(kg));

  const auto& basis = kernel.groebner_basis();
  std::vector<Polynomial> coords;
  for (const char* v : {"a", "b", "c", "e", "f"}) coords.push_back(Polynomial::variable(ctx, v));
  coords.push_back(lam_power_times(ctx, "g", 1, k));
  std::vector<Polynomial> products, reduced;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    for (std::size_t j = i; j < coords.size(); ++j) {
      products.push_back(coords[i] * coords[j]);
      reduced.push_back(reduce(products.back(), basis));
    }
  }
  std::vector<Polynomial> relations;
  for (const auto& v : null_space(reduced)) {
    Polynomial q(ctx);
    for (std::size_t j = 0; j < v.size(); ++j) q += products[j] * v[j];
    relations.push_back(std::move(q));
  }

  // Echelon form with pivots preferred on the inner coordinates b, c, e.
  auto pivot_ctx = VariableContext::make({"b", "c", "e", "a", "f", "G"}, {}, MonomialOrder{OrderKind::Block, 3});
  std::vector<Polynomial> rows;
  for (const auto& r : relations) rows.push_back(to_invariant_coordinate(r, k).in_context(pivot_ctx));
  auto back = from_invariant_coordinate(k);

  auto out = std::make_unique<F4Derivation>(F4Derivation{k, kernel, {}, false, {}});
  for (const auto& r : linear_echelon(std::move(rows))) {
    out->quadrics.push_back(substitute(r.in_context(invariant_coordinate_context()), back).primitive());
  }
  Ideal quadric_ideal(out->quadrics);
  out->quadrics_generate_kernel = std::all_of(basis.begin(), basis.end(), [&](const Polynomial& b) {
    return contains(quadric_ideal, b);
  });

  auto judge = [&](const std::string& source, const std::string& text, Polynomial poly) {
    GeneratorClaim c{source, text, poly, contains(out->kernel, poly), false};
    const auto prim = poly.primitive();
    c.verbatim = std::any_of(out->quadrics.begin(), out->quadrics.end(),
                             [&](const Polynomial& q) { return q == prim; });
    out->claims.push_back(std::move(c));
  };
  for (const auto& text : published_f4_generators()) {
    judge("construction", text, substitute(Polynomial::parse(invariant_coordinate_context(), text), back));
  }
  if (k == 1) {
    for (const auto& text : characterization_f4_generators()) {
      judge("characterization", text, Polynomial::parse(ctx, text));
    }
  }
  return out;
}

}  // namespace

const F4Derivation& derive_f4_ideal(int k) {
  if (k < 0) throw DomainError("f4 twist must be nonnegative");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<F4Derivation>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(k);
  if (it == cache.end()) it = cache.emplace(k, compute_f4(k)).first;
  return *it->second;
}

SubstitutionMap gluing_map(Family family, int k, int l) {
  if (family == Family::Quadric) {
    if (k < 1 || l < 1 || k % 2 == 0 || l % 2 == 0) {
      throw DomainError("quadric gluing needs odd positive twists, got (" + std::to_string(k) + ", " +
                        std::to_string(l) + ")");
    }
    const auto ctx = quadric_context();
    return SubstitutionMap::with_defaults(
        ctx, ctx, {{"lam", Polynomial::parse(ctx, "lam^-1")}, {"w", lam_power_times(ctx, "w", 1, (k + l) / 2)}});
  }
  if (k < 0 || l < 0) throw DomainError("f4 gluing needs nonnegative twists");
  const auto ctx = f4_context();
  return SubstitutionMap::with_defaults(
      ctx, ctx, {{"lam", Polynomial::parse(ctx, "lam^-1")}, {"g", lam_power_times(ctx, "g", 1, k + l)}});
}

GluedFamily glue(Family family, int k, int l) {
  auto map = gluing_map(family, k, l);
  GluedFamily fam = family == Family::Quadric
                        ? GluedFamily{family, quadric_chart(k, ChartId::Zero), quadric_chart(l, ChartId::Infinity), map}
                        : GluedFamily{family, f4_chart(k, ChartId::Zero), f4_chart(l, ChartId::Infinity), map};
  if (!verify_gluing(fam).pass) {
    throw Error("gluing of " + to_string(family) + " charts failed for (" + std::to_string(k) + ", " +
                std::to_string(l) + ")");
  }
  return fam;
}

GluingReport verify_gluing(const GluedFamily& fam) {
  const auto& ctx = fam.chart0.ideal.context();
  GluingReport rep;
  std::vector<Polynomial> glued;
  for (const auto& g : fam.chart0.ideal.generators()) {
    GluingEntry e{g, substitute(g, fam.gluing), Exponents(ctx->size(), 0), clear_units(Polynomial(ctx)), false};
    // Denominators come from the unit factor of each term.
    for (const auto& t : g.terms()) {
      Polynomial unit = Polynomial::constant(ctx, 1);
      for (std::size_t v = 0; v < ctx->size(); ++v) {
        if (ctx->is_invertible(v) && t.exponents[v] != 0) unit *= fam.gluing.image(v).pow(t.exponents[v]);
      }
      const auto& ue = unit.leading_term().exponents;
      for (std::size_t v = 0; v < ctx->size(); ++v) e.denominator[v] = std::max(e.denominator[v], -ue[v]);
    }
    glued.push_back(e.substituted);
    rep.entries.push_back(std::move(e));
  }
  auto cmp = compare_up_to_units(Ideal(glued), fam.chart_inf.ideal);
  for (std::size_t i = 0; i < rep.entries.size(); ++i) {
    rep.entries[i].cleared = cmp.forward[i].cleared;
    rep.entries[i].member = cmp.forward[i].member;
  }
  rep.backward_pass = std::all_of(cmp.backward.begin(), cmp.backward.end(),
                                  [](const UnitMembership& m) { return m.member; });
  rep.pass = cmp.equal;
  return rep;
}

EquivarianceReport verify_equivariance(const GluedFamily& fam) {
  const auto& base = fam.chart0.ideal.context();
  auto names = base->names();
  names.push_back("xi");
  auto inv = base->invertible_names();
  inv.push_back("xi");
  const auto ext = VariableContext::make(names, inv);

  std::map<std::string, Polynomial> gl;
  for (const auto& n : base->names()) gl.emplace(n, fam.gluing.image(n).in_context(ext));
  gl.emplace("xi", Polynomial::variable(ext, "xi"));
  const SubstitutionMap glue_ext(ext, ext, gl);
  const auto act0 = fam.chart0.torus.as_substitution(ext, ext);
  const auto act_inf = fam.chart_inf.torus.as_substitution(ext, ext);

  // Chart-0 coordinates of ξ·p for p on the infinity chart, computed both ways.
  const auto route_inf = glue_ext.compose(act_inf);
  const auto route_zero = act0.compose(glue_ext);

  EquivarianceReport rep;
  bool torus_ok = true;
  for (const auto& n : base->names()) {
    EquivarianceEntry e{n, route_inf.image(n), route_zero.image(n), false};
    e.equal = e.act_then_glue == e.glue_then_act;
    torus_ok = torus_ok && e.equal;
    rep.torus.push_back(std::move(e));
  }

  const auto lams = VariableContext::make({"lam0", "laminf", "xi"}, {"lam0", "laminf", "xi"});
  Exponents e0{1, 0, fam.chart0.torus.weight("lam")};
  Exponents einf{0, 1, fam.chart_inf.torus.weight("lam")};
  rep.lam_product_invariant = Polynomial::monomial(lams, e0) * Polynomial::monomial(lams, einf) ==
                              Polynomial::parse(lams, "lam0*laminf");

  rep.sl2_commutes = true;
  const std::pair<const Derivation*, const Derivation*> ops[] = {
      {&fam.chart0.sl2.e, &fam.chart_inf.sl2.e},
      {&fam.chart0.sl2.h, &fam.chart_inf.sl2.h},
      {&fam.chart0.sl2.f, &fam.chart_inf.sl2.f}};
  std::vector<std::size_t> moved;
  for (std::size_t v = 0; v < base->size(); ++v) {
    if (!(fam.gluing.image(v) == Polynomial::variable(base, base->names()[v]))) moved.push_back(v);
  }
  rep.sl2_support_disjoint = true;
  for (const auto& [d0, dinf] : ops) {
    for (const auto& n : base->names()) {
      const auto x = Polynomial::variable(base, n);
      if (!(dinf->apply(substitute(x, fam.gluing)) == substitute(d0->apply(x), fam.gluing))) {
        rep.sl2_commutes = false;
      }
      const auto img = d0->apply(x);
      for (auto s : img.support()) {
        if (std::find(moved.begin(), moved.end(), s) != moved.end()) rep.sl2_support_disjoint = false;
      }
      if (std::find(moved.begin(), moved.end(), base->require_index(n)) != moved.end() && !img.is_zero()) {
        rep.sl2_support_disjoint = false;
      }
    }
  }
  rep.pass = torus_ok && rep.lam_product_invariant && rep.sl2_commutes && rep.sl2_support_disjoint;
  return rep;
}

QuotientReport verify_quotient(int k) {
  if (k < 0) throw DomainError("twist must be nonnegative");
  const auto& derived = derive_f4_ideal(k);
  const auto qctx = quadric_context();
  auto phi = veronese_coordinates(VariableContext::make({"x", "y", "z"}));
  std::map<std::string, Polynomial> imgs;
  for (const char* v : {"a", "b", "c", "e", "f"}) imgs.emplace(v, phi.at(v).in_context(qctx));
  imgs.emplace("g", Polynomial::parse(qctx, "w^2"));
  imgs.emplace("lam", Polynomial::variable(qctx, "lam"));
  const SubstitutionMap pull(f4_context(), qctx, imgs);
  const auto flip = SubstitutionMap::with_defaults(qctx, qctx, {{"w", Polynomial::parse(qctx, "-w")}});
  const Ideal target = quadric_ideal(k);

  QuotientReport rep{k, true, {}};
  for (const auto& g : derived.quadrics) {
    QuotientEntry e{g, substitute(g, pull), false, false};
    e.member = contains(target, e.pullback);
    e.sign_invariant = substitute(e.pullback, flip) == e.pullback;
    rep.pass = rep.pass && e.member && e.sign_invariant;
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

EmbeddingReport verify_embedding(int k) {
  if (k < 0) throw DomainError("twist must be nonnegative");
  const auto& derived = derive_f4_ideal(k);
  const auto tctx = VariableContext::make({"x", "y", "z", "lam"}, {"lam"});
  auto phi = veronese_coordinates(VariableContext::make({"x", "y", "z"}));
  std::map<std::string, Polynomial> imgs;
  for (const char* v : {"a", "b", "c", "e", "f"}) imgs.emplace(v, phi.at(v).in_context(tctx));
  Exponents inv(tctx->size(), 0);
  inv[tctx->require_index("lam")] = -k;
  imgs.emplace("g", phi.at("G").in_context(tctx).times_term(inv, 1));
  imgs.emplace("lam", Polynomial::variable(tctx, "lam"));
  const SubstitutionMap param(f4_context(), tctx, imgs);

  EmbeddingReport rep{k, true, {}};
  for (const auto& g : derived.quadrics) {
    auto img = substitute(g, param);
    rep.pass = rep.pass && img.is_zero();
    rep.images.emplace_back(g, std::move(img));
  }
  return rep;
}

namespace {

/// V(J) is exactly the origin: every generator vanishes there and every
/// coordinate has a power in J.
bool locus_is_origin(const Ideal& j, int max_power) {
  const auto& ctx = j.context();
  for (const auto& g : j.generators()) {
    for (const auto& t : g.terms()) {
      if (std::all_of(t.exponents.begin(), t.exponents.end(), [](int e) { return e == 0; })) return false;
    }
  }
  for (std::size_t v = 0; v < ctx->size(); ++v) {
    bool found = false;
    const auto x = Polynomial::variable(ctx, ctx->names()[v]);
    for (int p = 1; p <= max_power && !found; ++p) found = contains(j, x.pow(p));
    if (!found) return false;
  }
  return true;
}

}  // namespace

SingularLocusReport quadric_singular_locus(int k) {
  if (k < 0) throw DomainError("twist must be nonnegative");
  SingularLocusReport rep{k, {}};
  // lam is an ordinary affine coordinate for this analysis.
  const auto whole = VariableContext::make({"x", "y", "z", "w", "lam"});
  const Polynomial f = quadric_ideal(k).generators().front().in_context(whole);
  for (const char* chart : {"w", "x", "y", "z"}) {
    std::vector<std::string> vars;
    for (const char* v : {"x", "y", "z", "w"}) {
      if (std::string(v) != chart) vars.push_back(v);
    }
    vars.push_back("lam");
    const auto cctx = VariableContext::make(vars);
    auto dehom = SubstitutionMap::with_defaults(whole, cctx, {{chart, Polynomial::constant(cctx, 1)}});
    const Ideal chart_ideal({substitute(f, dehom)});
    const Ideal jac = jacobian_ideal(chart_ideal, vars);
    ChartLocus loc{chart, is_unit_ideal(jac), false, ""};
    if (!loc.smooth) {
      loc.single_point = locus_is_origin(jac, std::max(2, k + 1));
      std::string point = "[";
      for (const char* v : {"x", "y", "z", "w"}) {
        if (point.size() > 1) point += ":";
        point += std::string(v) == chart ? "1" : "0";
      }
      loc.point = point + "], lam=0";
    }
    rep.charts.push_back(std::move(loc));
  }
  return rep;
}

}  // namespace qhv
