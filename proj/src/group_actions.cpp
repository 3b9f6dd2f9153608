#include "qhv/group_actions.hpp"

#include <algorithm>
#include <functional>

namespace qhv {

Derivation::Derivation(Context ctx, const std::map<std::string, Polynomial>& images)
    : ctx_(std::move(ctx)), images_(ctx_->size()) {
  for (const auto& [name, img] : images) {
    auto i = ctx_->require_index(name);
    if (!same_context(img.context(), ctx_)) throw ContextMismatch("derivation image in another context");
    images_[i] = img;
  }
}

Polynomial Derivation::apply(const Polynomial& p) const {
  if (!same_context(p.context(), ctx_)) throw ContextMismatch("derivation applied across contexts");
  Polynomial out(ctx_);
  for (const auto& t : p.terms()) {
    for (std::size_t v = 0; v < t.exponents.size(); ++v) {
      const int e = t.exponents[v];
      if (e == 0) continue;
      if (!images_[v]) throw UnassignedVariable("derivation has no image for '" + ctx_->names()[v] + "'");
      if (images_[v]->is_zero()) continue;
      Exponents rest = t.exponents;
      rest[v] -= 1;
      out += images_[v]->times_term(rest, t.coefficient * e);
    }
  }
  return out;
}

Derivation Derivation::commutator(const Derivation& other) const {
  if (!same_context(other.ctx_, ctx_)) throw ContextMismatch("commutator across contexts");
  std::map<std::string, Polynomial> imgs;
  for (std::size_t v = 0; v < ctx_->size(); ++v) {
    if (!images_[v] && !other.images_[v]) continue;
    const Polynomial x = Polynomial::variable(ctx_, ctx_->names()[v]);
    imgs.emplace(ctx_->names()[v], apply(other.apply(x)) - other.apply(apply(x)));
  }
  return Derivation(ctx_, imgs);
}

Derivation Derivation::scaled(const Rational& c) const {
  std::map<std::string, Polynomial> imgs;
  for (std::size_t v = 0; v < ctx_->size(); ++v) {
    if (images_[v]) imgs.emplace(ctx_->names()[v], *images_[v] * c);
  }
  return Derivation(ctx_, imgs);
}

bool operator==(const Derivation& a, const Derivation& b) {
  if (!same_context(a.ctx_, b.ctx_)) return false;
  for (std::size_t v = 0; v < a.images_.size(); ++v) {
    Polynomial zero(a.ctx_);
    const Polynomial& x = a.images_[v] ? *a.images_[v] : zero;
    const Polynomial& y = b.images_[v] ? *b.images_[v] : zero;
    if (!(x == y)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

int TorusAction::weight(const std::string& var) const {
  auto it = weights.find(var);
  return it == weights.end() ? 0 : it->second;
}

SubstitutionMap TorusAction::as_substitution(const Context& source, const Context& target,
                                             const std::string& xi) const {
  const auto xi_idx = target->require_index(xi);
  if (!target->is_invertible(xi_idx)) throw DomainError("torus parameter must be invertible");
  std::map<std::string, Polynomial> imgs;
  for (const auto& name : source->names()) {
    Exponents e(target->size(), 0);
    e[target->require_index(name)] = 1;
    e[xi_idx] += weight(name);
    imgs.emplace(name, Polynomial::monomial(target, e));
  }
  return SubstitutionMap(source, target, imgs);
}

// ---------------------------------------------------------------------------

namespace {

std::map<std::string, Polynomial> kill_rest(const Context& ctx, std::map<std::string, Polynomial> imgs) {
  for (const auto& n : ctx->names()) {
    if (!imgs.count(n)) imgs.emplace(n, Polynomial(ctx));
  }
  return imgs;
}

/// Solves the square-or-tall system `columns · c = target` over Q, where each
/// column is a polynomial and equations are indexed by monomials.
std::optional<std::vector<Rational>> solve_linear(const std::vector<Polynomial>& columns, const Polynomial& target) {
  std::vector<Exponents> rows;
  auto row_of = [&](const Exponents& e) {
    auto it = std::find(rows.begin(), rows.end(), e);
    if (it != rows.end()) return static_cast<std::size_t>(it - rows.begin());
    rows.push_back(e);
    return rows.size() - 1;
  };
  for (const auto& c : columns) {
    for (const auto& t : c.terms()) row_of(t.exponents);
  }
  for (const auto& t : target.terms()) row_of(t.exponents);
  const std::size_t n = columns.size();
  std::vector<std::vector<Rational>> m(rows.size(), std::vector<Rational>(n + 1, 0));
  for (std::size_t j = 0; j < n; ++j) {
    for (const auto& t : columns[j].terms()) m[row_of(t.exponents)][j] = t.coefficient;
  }
  for (const auto& t : target.terms()) m[row_of(t.exponents)][n] = t.coefficient;

  std::vector<std::size_t> pivot_col;
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
      for (std::size_t k = 0; k <= n; ++k) m[i][k] -= f * m[r][k];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < m.size(); ++i) {
    if (m[i][n] != 0) return std::nullopt;
  }
  std::vector<Rational> sol(n, 0);
  for (std::size_t i = 0; i < pivot_col.size(); ++i) sol[pivot_col[i]] = m[i][n];
  return sol;
}

}  // namespace

Sl2Triple sl2_v2_triple(const Context& ctx) {
  auto v = [&](const char* n) { return Polynomial::variable(ctx, n); };
  auto zero = Polynomial(ctx);
  Derivation e(ctx, kill_rest(ctx, {{"x", v("y")}, {"y", 2 * v("z")}, {"z", zero}}));
  Derivation h(ctx, kill_rest(ctx, {{"x", -2 * v("x")}, {"y", zero}, {"z", 2 * v("z")}}));
  Derivation f(ctx, kill_rest(ctx, {{"x", zero}, {"y", 2 * v("x")}, {"z", v("y")}}));
  return Sl2Triple{std::move(e), std::move(h), std::move(f)};
}

std::map<std::string, Polynomial> veronese_coordinates(const Context& ctx) {
  auto p = [&](const char* s) { return Polynomial::parse(ctx, s); };
  return {{"a", p("x^2")},         {"b", p("2*x*y")}, {"c", p("2*x*z + y^2")},
          {"e", p("2*y*z")},       {"f", p("z^2")},   {"G", p("4*x*z - y^2")}};
}

Sl2Triple sl2_v4_triple(const Context& ctx, int k) {
  if (k < 0) throw DomainError("twist must be nonnegative");
  static const std::vector<std::string> coords = {"a", "b", "c", "e", "f"};
  auto xyz = VariableContext::make({"x", "y", "z"});
  const auto v2 = sl2_v2_triple(xyz);
  const auto phi = veronese_coordinates(xyz);
  std::vector<Polynomial> columns;
  for (const auto& c : coords) columns.push_back(phi.at(c));
  columns.push_back(phi.at("G"));

  // lam^k * g, the image of the invariant column.
  Exponents ge(ctx->size(), 0);
  ge[ctx->require_index("g")] = 1;
  if (k > 0) ge[ctx->require_index("lam")] = k;
  const Polynomial lamg = Polynomial::monomial(ctx, ge);

  auto push = [&](const Derivation& d) {
    std::map<std::string, Polynomial> imgs;
    for (const auto& c : coords) {
      auto sol = solve_linear(columns, d.apply(phi.at(c)));
      if (!sol) throw Error("derivative of coordinate '" + c + "' is not a linear form in the coordinates");
      Polynomial img(ctx);
      for (std::size_t j = 0; j < coords.size(); ++j) {
        img += Polynomial::variable(ctx, coords[j]) * (*sol)[j];
      }
      img += lamg * (*sol)[coords.size()];
      imgs.emplace(c, std::move(img));
    }
    if (!d.apply(phi.at("G")).is_zero()) throw Error("sl2 does not fix the invariant quadric");
    return Derivation(ctx, kill_rest(ctx, std::move(imgs)));
  };
  return Sl2Triple{push(v2.e), push(v2.h), push(v2.f)};
}

namespace {

void for_each_monomial(std::size_t nvars, int max_degree, const std::function<void(const Exponents&)>& fn) {
  Exponents e(nvars, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == nvars) {
      fn(e);
      return;
    }
    for (int d = 0; d <= left; ++d) {
      e[i] = d;
      rec(i + 1, left - d);
    }
    e[i] = 0;
  };
  rec(0, max_degree);
}

}  // namespace

std::optional<std::string> check_bracket_relations(const Sl2Triple& t, int max_degree) {
  const auto& ctx = t.e.context();
  std::optional<std::string> failure;
  for_each_monomial(ctx->size(), max_degree, [&](const Exponents& ex) {
    if (failure) return;
    const Polynomial m = Polynomial::monomial(ctx, ex);
    auto h = [&](const Polynomial& p) { return t.h.apply(p); };
    auto e = [&](const Polynomial& p) { return t.e.apply(p); };
    auto f = [&](const Polynomial& p) { return t.f.apply(p); };
    if (!(h(e(m)) - e(h(m)) == 2 * e(m))) failure = "[H,E] != 2E on " + m.to_string();
    else if (!(h(f(m)) - f(h(m)) == -2 * f(m))) failure = "[H,F] != -2F on " + m.to_string();
    else if (!(e(f(m)) - f(e(m)) == h(m))) failure = "[E,F] != H on " + m.to_string();
  });
  return failure;
}

bool check_ideal_invariance(const Ideal& ideal, const Sl2Triple& t) {
  for (const auto* d : {&t.e, &t.h, &t.f}) {
    for (const auto& g : ideal.generators()) {
      if (!contains(ideal, d->apply(g))) return false;
    }
  }
  return true;
}

bool check_semi_invariance(const Ideal& ideal, const TorusAction& a) {
  for (const auto& g : ideal.generators()) {
    if (g.is_zero()) continue;
    if (!weight_of(g, a.weights)) return false;
  }
  return true;
}

std::vector<Polynomial> generate_weight_basis(const Polynomial& middle, const Sl2Triple& t, int steps) {
  if (steps < 0) throw DomainError("steps must be nonnegative");
  if (!t.h.apply(middle).is_zero()) {
    throw DomainError("middle vector is not H-homogeneous of weight 0: " + middle.to_string());
  }
  std::vector<Polynomial> down, up;
  Polynomial cur = middle;
  for (int s = 0; s < steps; ++s) {
    cur = t.f.apply(cur);
    if (cur.is_zero()) break;
    down.push_back(cur);
  }
  cur = middle;
  for (int s = 0; s < steps; ++s) {
    cur = t.e.apply(cur);
    if (cur.is_zero()) break;
    up.push_back(cur);
  }
  std::vector<Polynomial> out(down.rbegin(), down.rend());
  if (!middle.is_zero()) out.push_back(middle);
  out.insert(out.end(), up.begin(), up.end());
  return out;
}

}  // namespace qhv
