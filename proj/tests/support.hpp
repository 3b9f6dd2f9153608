#ifndef QHV_TESTS_SUPPORT_HPP
#define QHV_TESTS_SUPPORT_HPP

// Seeded generators and independent oracles shared by the unit tests and the
// acceptance binary.

#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "qhv/polyring.hpp"

namespace qhv::testing {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline Rational random_rational(Rng& rng, int span = 9, bool allow_fractions = true) {
  int num = uniform(rng, -span, span);
  while (num == 0) num = uniform(rng, -span, span);
  const int den = allow_fractions ? uniform(rng, 1, 4) : 1;
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Up to `max_terms` terms of total degree at most `max_degree`; invertible
/// variables also get exponents down to -`max_degree`/2 when `laurent`.
inline Polynomial random_polynomial(const Context& ctx, Rng& rng, int max_terms, int max_degree,
                                    bool laurent = false) {
  std::vector<Term> terms;
  const int n_terms = uniform(rng, 0, max_terms);
  for (int t = 0; t < n_terms; ++t) {
    Exponents e(ctx->size(), 0);
    int budget = uniform(rng, 0, max_degree);
    while (budget > 0) {
      const auto v = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(ctx->size()) - 1));
      ++e[v];
      --budget;
    }
    if (laurent) {
      for (std::size_t v = 0; v < ctx->size(); ++v) {
        if (ctx->is_invertible(v)) e[v] -= uniform(rng, 0, max_degree / 2 + 1);
      }
    }
    terms.push_back({e, random_rational(rng)});
  }
  return Polynomial::from_terms(ctx, std::move(terms));
}

/// Random polynomial whose terms all have total degree exactly `degree`.
inline Polynomial random_homogeneous(const Context& ctx, Rng& rng, int max_terms, int degree) {
  std::vector<Term> terms;
  const int n_terms = uniform(rng, 1, max_terms);
  for (int t = 0; t < n_terms; ++t) {
    Exponents e(ctx->size(), 0);
    for (int d = 0; d < degree; ++d) ++e[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(ctx->size()) - 1))];
    terms.push_back({e, random_rational(rng, 5, false)});
  }
  return Polynomial::from_terms(ctx, std::move(terms));
}

/// Value at a rational point; every variable must be assigned, and those with
/// negative exponents must be nonzero.
inline Rational evaluate(const Polynomial& p, const std::map<std::string, Rational>& point) {
  const auto& names = p.context()->names();
  Rational total = 0;
  for (const auto& t : p.terms()) {
    Rational v = t.coefficient;
    for (std::size_t i = 0; i < names.size(); ++i) {
      const int e = t.exponents[i];
      if (e == 0) continue;
      const Rational& x = point.at(names[i]);
      Rational power = 1;
      for (int k = 0; k < (e < 0 ? -e : e); ++k) power *= x;
      v = e > 0 ? Rational(v * power) : Rational(v / power);
    }
    total += v;
  }
  return total;
}

inline std::map<std::string, Rational> random_point(const Context& ctx, Rng& rng) {
  std::map<std::string, Rational> pt;
  for (const auto& n : ctx->names()) pt[n] = random_rational(rng, 7);
  return pt;
}

/// Homogeneous membership by linear algebra: p (homogeneous of degree d)
/// lies in the ideal of homogeneous generators iff it is in the span of all
/// m·g_i with deg m = d − deg g_i. Gaussian elimination over Q on rows
/// indexed by exponent vectors; no Gröbner machinery involved.
inline bool macaulay_member(const std::vector<Polynomial>& gens, const Polynomial& p) {
  if (p.is_zero()) return true;
  const auto& ctx = p.context();
  const int d = p.total_degree();
  const std::size_t n = ctx->size();

  auto enumerate = [&](int deg) {
    std::vector<Exponents> out;
    Exponents e(n, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
      if (i + 1 == n) {
        e[i] = left;
        out.push_back(e);
        return;
      }
      for (int k = left; k >= 0; --k) {
        e[i] = k;
        rec(i + 1, left - k);
      }
    };
    rec(0, deg);
    return out;
  };

  using Row = std::map<Exponents, Rational>;
  std::vector<Row> rows;
  for (const auto& g : gens) {
    const int dg = g.total_degree();
    if (dg > d) continue;
    for (const auto& m : enumerate(d - dg)) {
      Row r;
      for (const auto& t : g.terms()) {
        Exponents e = t.exponents;
        for (std::size_t i = 0; i < n; ++i) e[i] += m[i];
        r[e] += t.coefficient;
      }
      rows.push_back(std::move(r));
    }
  }

  // Echelon form keyed by pivot exponent (largest key of each row).
  std::map<Exponents, Row> pivots;
  auto reduce_row = [&](Row r) {
    while (true) {
      for (auto it = r.begin(); it != r.end();) it = it->second == 0 ? r.erase(it) : std::next(it);
      if (r.empty()) return r;
      const auto lead = r.rbegin()->first;
      auto pv = pivots.find(lead);
      if (pv == pivots.end()) return r;
      const Rational factor = r.rbegin()->second / pv->second.at(lead);
      for (const auto& [e, c] : pv->second) r[e] -= factor * c;
    }
  };
  for (auto& r : rows) {
    Row red = reduce_row(std::move(r));
    if (!red.empty()) pivots[red.rbegin()->first] = std::move(red);
  }
  Row target;
  for (const auto& t : p.terms()) target[t.exponents] += t.coefficient;
  return reduce_row(std::move(target)).empty();
}

}  // namespace qhv::testing

#endif  // QHV_TESTS_SUPPORT_HPP
