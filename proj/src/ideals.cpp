#include "qhv/ideals.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>

namespace qhv {

namespace {

bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

Exponents lcm_of(const Exponents& a, const Exponents& b) {
  Exponents l(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) l[i] = std::max(a[i], b[i]);
  return l;
}

bool coprime(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > 0 && b[i] > 0) return false;
  }
  return true;
}

int degree_of(const Exponents& e) {
  int d = 0;
  for (int x : e) d += x;
  return d;
}

void require_polynomial(const Polynomial& p) {
  if (p.has_negative_exponents()) {
    throw DomainError("Gröbner computations need polynomial input; clear units first: " + p.to_string());
  }
}

std::size_t parse_count(const std::string& text) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || text.front() == '-') throw DomainError("bad budget value '" + text + "'");
  return static_cast<std::size_t>(v);
}

}  // namespace

GroebnerBudget GroebnerBudget::parse(const std::string& text) {
  GroebnerBudget b;
  if (text.empty()) return b;
  if (text.find('=') == std::string::npos) {
    b.max_steps = parse_count(text);
    return b;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw DomainError("bad budget entry '" + item + "'");
    auto key = item.substr(0, eq);
    auto val = parse_count(item.substr(eq + 1));
    if (key == "basis") {
      b.max_basis = val;
    } else if (key == "steps") {
      b.max_steps = val;
    } else {
      throw DomainError("unknown budget key '" + key + "'");
    }
  }
  return b;
}

GroebnerBudget GroebnerBudget::from_env() {
  const char* env = std::getenv("QHV_BUDGET");
  return env ? parse(env) : GroebnerBudget{};
}

// ---------------------------------------------------------------------------

Polynomial reduce(const Polynomial& p, const std::vector<Polynomial>& by, std::size_t* steps,
                  std::size_t max_steps) {
  const auto& ctx = p.context();
  for (const auto& g : by) {
    if (!same_context(g.context(), ctx)) throw ContextMismatch("context mismatch in reduce");
  }
  std::vector<Term> remainder;
  Polynomial q = p;
  while (!q.is_zero()) {
    const Term& lt = q.leading_term();
    const Polynomial* divisor = nullptr;
    for (const auto& g : by) {
      if (!g.is_zero() && divides(g.leading_term().exponents, lt.exponents)) {
        divisor = &g;
        break;
      }
    }
    if (!divisor) {
      remainder.push_back(lt);
      q -= Polynomial::monomial(ctx, lt.exponents, lt.coefficient);
      continue;
    }
    const Term& glt = divisor->leading_term();
    Exponents shift(lt.exponents.size());
    for (std::size_t i = 0; i < shift.size(); ++i) shift[i] = lt.exponents[i] - glt.exponents[i];
    Rational factor = lt.coefficient / glt.coefficient;
    q -= divisor->times_term(shift, factor);
    if (steps) {
      ++*steps;
      if (max_steps && *steps > max_steps) {
        throw ResourceLimit("reduction step budget exceeded (" + std::to_string(max_steps) + ")");
      }
    }
  }
  return Polynomial::from_terms(ctx, std::move(remainder));
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
  const Term& a = f.leading_term();
  const Term& b = g.leading_term();
  Exponents l = lcm_of(a.exponents, b.exponents);
  Exponents sa(l.size()), sb(l.size());
  for (std::size_t i = 0; i < l.size(); ++i) {
    sa[i] = l[i] - a.exponents[i];
    sb[i] = l[i] - b.exponents[i];
  }
  return f.times_term(sa, 1 / a.coefficient) - g.times_term(sb, 1 / b.coefficient);
}

std::vector<Polynomial> groebner(const std::vector<Polynomial>& generators, const GroebnerBudget& budget) {
  if (generators.empty()) return {};
  const Context ctx = generators.front().context();
  std::vector<Polynomial> basis;
  std::size_t steps = 0;

  struct Pair {
    int degree;
    Exponents lcm;
    std::size_t i, j;
  };
  std::vector<Pair> pending;
  // pair_done[i][j] for i < j: the pair has left the queue (processed or pruned).
  std::vector<std::vector<bool>> left_queue;

  auto is_pending = [&](std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    return !left_queue[j][i];
  };

  auto add = [&](Polynomial h) {
    h = h.monic();
    basis.push_back(std::move(h));
    if (basis.size() > budget.max_basis) {
      throw ResourceLimit("basis size budget exceeded (" + std::to_string(budget.max_basis) + ")");
    }
    std::size_t n = basis.size() - 1;
    left_queue.emplace_back(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      auto l = lcm_of(basis[i].leading_term().exponents, basis[n].leading_term().exponents);
      pending.push_back(Pair{degree_of(l), std::move(l), i, n});
    }
  };

  for (const auto& g : generators) {
    if (!same_context(g.context(), ctx)) throw ContextMismatch("generators in different contexts");
    require_polynomial(g);
    Polynomial r = reduce(g, basis, &steps, budget.max_steps);
    if (!r.is_zero()) add(std::move(r));
  }

  const auto& vc = *ctx;
  while (!pending.empty()) {
    auto best = std::min_element(pending.begin(), pending.end(), [&](const Pair& a, const Pair& b) {
      if (a.degree != b.degree) return a.degree < b.degree;
      auto c = vc.compare(a.lcm, b.lcm);
      if (c != 0) return c < 0;
      if (a.j != b.j) return a.j < b.j;
      return a.i < b.i;
    });
    Pair pr = std::move(*best);
    pending.erase(best);
    left_queue[pr.j][pr.i] = true;

    const auto& lmi = basis[pr.i].leading_term().exponents;
    const auto& lmj = basis[pr.j].leading_term().exponents;
    if (coprime(lmi, lmj)) continue;
    bool chain = false;
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (divides(basis[k].leading_term().exponents, pr.lcm) && !is_pending(pr.i, k) &&
          !is_pending(pr.j, k)) {
        chain = true;
      }
    }
    if (chain) continue;

    Polynomial h = reduce(s_polynomial(basis[pr.i], basis[pr.j]), basis, &steps, budget.max_steps);
    if (!h.is_zero()) add(std::move(h));
  }

  // Minimalize, then tail-reduce each element by the others.
  std::vector<Polynomial> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& lm = basis[i].leading_term().exponents;
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      const auto& other = basis[j].leading_term().exponents;
      if (divides(other, lm) && (other != lm || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  std::vector<Polynomial> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Polynomial> others;
    for (std::size_t j = 0; j < minimal.size(); ++j) {
      if (j != i) others.push_back(minimal[j]);
    }
    reduced.push_back(reduce(minimal[i], others, &steps, budget.max_steps).monic());
  }
  std::sort(reduced.begin(), reduced.end(), [&](const Polynomial& a, const Polynomial& b) {
    return vc.compare(a.leading_term().exponents, b.leading_term().exponents) < 0;
  });
  return reduced;
}

bool is_groebner_basis(const std::vector<Polynomial>& basis) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      if (basis[i].is_zero() || basis[j].is_zero()) continue;
      if (!reduce(s_polynomial(basis[i], basis[j]), basis).is_zero()) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

Ideal::Ideal(std::vector<Polynomial> generators)
    : generators_(std::move(generators)), cache_(std::make_shared<Cache>()) {
  if (generators_.empty()) throw DomainError("an ideal needs at least one generator");
  ctx_ = generators_.front().context();
  for (const auto& g : generators_) {
    if (!same_context(g.context(), ctx_)) throw ContextMismatch("ideal generators in different contexts");
  }
}

const std::vector<Polynomial>& Ideal::groebner_basis(const GroebnerBudget& budget) const {
  std::lock_guard lock(cache_->mutex);
  if (!cache_->basis) cache_->basis = groebner(generators_, budget);
  return *cache_->basis;
}

bool Ideal::has_cached_basis() const {
  std::lock_guard lock(cache_->mutex);
  return cache_->basis.has_value();
}

Polynomial normal_form(const Polynomial& p, const Ideal& ideal) {
  if (!same_context(p.context(), ideal.context())) throw ContextMismatch("context mismatch in normal_form");
  require_polynomial(p);
  const auto budget = GroebnerBudget::from_env();
  std::size_t steps = 0;
  return reduce(p, ideal.groebner_basis(budget), &steps, budget.max_steps);
}

bool contains(const Ideal& ideal, const Polynomial& p) { return normal_form(p, ideal).is_zero(); }

ClearedPolynomial clear_units(const Polynomial& p) {
  const auto& ctx = p.context();
  Exponents unit(ctx->size(), 0);
  if (!p.is_zero()) {
    for (std::size_t i = 0; i < ctx->size(); ++i) {
      if (ctx->is_invertible(i)) unit[i] = -p.min_degree_in(i);
    }
  }
  return ClearedPolynomial{p.times_term(unit, 1), unit};
}

UnitEquality compare_up_to_units(const Ideal& i, const Ideal& j) {
  if (!same_context(i.context(), j.context())) throw ContextMismatch("context mismatch in equal_up_to_units");
  auto cleared_ideal = [](const Ideal& ideal) {
    std::vector<Polynomial> gens;
    for (const auto& g : ideal.generators()) gens.push_back(clear_units(g).polynomial);
    return Ideal(std::move(gens));
  };
  const Ideal ci = cleared_ideal(i);
  const Ideal cj = cleared_ideal(j);
  UnitEquality out;
  out.equal = true;
  auto check = [&](const Ideal& from, const Ideal& into, std::vector<UnitMembership>& log) {
    for (const auto& g : from.generators()) {
      auto cleared = clear_units(g);
      bool member = contains(into, cleared.polynomial);
      out.equal = out.equal && member;
      log.push_back(UnitMembership{g, std::move(cleared), member});
    }
  };
  check(i, cj, out.forward);
  check(j, ci, out.backward);
  return out;
}

bool equal_up_to_units(const Ideal& i, const Ideal& j) { return compare_up_to_units(i, j).equal; }

Ideal eliminate(const Ideal& ideal, const std::vector<std::string>& drop) {
  const auto& ctx = *ideal.context();
  std::vector<std::string> order;
  std::vector<std::string> keep;
  for (const auto& d : drop) ctx.require_index(d);
  for (const auto& d : drop) {
    if (std::find(order.begin(), order.end(), d) == order.end()) order.push_back(d);
  }
  for (const auto& n : ctx.names()) {
    if (std::find(order.begin(), order.end(), n) == order.end()) keep.push_back(n);
  }
  std::vector<std::string> all = order;
  all.insert(all.end(), keep.begin(), keep.end());
  std::vector<std::string> inv_keep;
  for (const auto& n : ctx.invertible_names()) {
    if (std::find(keep.begin(), keep.end(), n) != keep.end()) inv_keep.push_back(n);
  }
  auto block_ctx = VariableContext::make(all, ctx.invertible_names(), MonomialOrder{OrderKind::Block, order.size()});
  auto keep_ctx = VariableContext::make(keep, inv_keep);

  std::vector<Polynomial> gens;
  for (const auto& g : ideal.generators()) gens.push_back(g.in_context(block_ctx));
  auto basis = groebner(gens);

  std::vector<Polynomial> out;
  for (const auto& b : basis) {
    bool free = true;
    for (std::size_t v = 0; v < order.size() && free; ++v) {
      if (b.degree_in(v) != 0 || b.min_degree_in(v) != 0) free = false;
    }
    if (free) out.push_back(b.in_context(keep_ctx));
  }
  if (out.empty()) out.push_back(Polynomial(keep_ctx));
  return Ideal(std::move(out));
}

namespace {

Polynomial determinant(const std::vector<std::vector<Polynomial>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  Polynomial det(m[0][0].context());
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    std::vector<std::vector<Polynomial>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Polynomial> row;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != c) row.push_back(m[r][k]);
      }
      minor.push_back(std::move(row));
    }
    Polynomial term = m[0][c] * determinant(minor);
    if (c % 2) {
      det -= term;
    } else {
      det += term;
    }
  }
  return det;
}

}  // namespace

Ideal jacobian_ideal(const Ideal& ideal, const std::vector<std::string>& vars) {
  const auto& ctx = ideal.context();
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.generators()) {
    if (!g.is_zero()) gens.push_back(g);
  }
  if (gens.empty()) return ideal;
  std::vector<std::size_t> idx;
  for (const auto& v : vars) idx.push_back(ctx->require_index(v));
  const std::size_t m = gens.size();
  if (m > idx.size()) throw DomainError("more generators than variables for a Jacobian");

  std::vector<Polynomial> out = gens;
  // Column subsets of size m in lexicographic order.
  std::vector<std::size_t> cols(m);
  for (std::size_t i = 0; i < m; ++i) cols[i] = i;
  while (true) {
    std::vector<std::vector<Polynomial>> mat;
    for (const auto& g : gens) {
      std::vector<Polynomial> row;
      for (auto c : cols) row.push_back(g.derivative(idx[c]));
      mat.push_back(std::move(row));
    }
    Polynomial minor = determinant(mat);
    if (!minor.is_zero()) out.push_back(std::move(minor));
    std::size_t k = m;
    while (k > 0 && cols[k - 1] == idx.size() - m + (k - 1)) --k;
    if (k == 0) break;
    ++cols[k - 1];
    for (std::size_t i = k; i < m; ++i) cols[i] = cols[i - 1] + 1;
  }
  return Ideal(std::move(out));
}

bool is_unit_ideal(const Ideal& ideal) {
  const auto& basis = ideal.groebner_basis();
  return basis.size() == 1 && basis.front().is_constant() && !basis.front().is_zero();
}

}  // namespace qhv
