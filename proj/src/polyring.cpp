#include "qhv/polyring.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <set>
#include <sstream>

namespace qhv {

namespace {

std::strong_ordering grevlex(const Exponents& a, const Exponents& b, std::size_t lo, std::size_t hi) {
  long da = 0, db = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da <=> db;
  for (std::size_t i = hi; i-- > lo;) {
    if (a[i] != b[i]) return b[i] <=> a[i];
  }
  return std::strong_ordering::equal;
}

}  // namespace

Context VariableContext::make(std::vector<std::string> names, std::vector<std::string> invertible,
                              MonomialOrder order) {
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty()) throw DomainError("empty variable name");
    if (!seen.insert(n).second) throw DomainError("duplicate variable name '" + n + "'");
  }
  for (const auto& n : invertible) {
    if (!seen.count(n)) throw DomainError("invertible variable '" + n + "' is not in the context");
  }
  if (order.kind == OrderKind::Block && order.block_size > names.size()) {
    throw DomainError("block size exceeds number of variables");
  }
  auto ctx = std::shared_ptr<VariableContext>(new VariableContext());
  ctx->invertible_.assign(names.size(), false);
  for (std::size_t i = 0; i < names.size(); ++i) {
    ctx->invertible_[i] =
        std::find(invertible.begin(), invertible.end(), names[i]) != invertible.end();
  }
  ctx->names_ = std::move(names);
  ctx->order_ = order;
  return ctx;
}

std::optional<std::size_t> VariableContext::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t VariableContext::require_index(std::string_view name) const {
  auto i = index_of(name);
  if (!i) throw ContextMismatch("unknown variable '" + std::string(name) + "'");
  return *i;
}

std::vector<std::string> VariableContext::invertible_names() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (invertible_[i]) out.push_back(names_[i]);
  }
  return out;
}

Context VariableContext::with_order(MonomialOrder order) const {
  return make(names_, invertible_names(), order);
}

std::strong_ordering VariableContext::compare(const Exponents& a, const Exponents& b) const {
  const std::size_t n = names_.size();
  switch (order_.kind) {
    case OrderKind::GradedReverseLex:
      return grevlex(a, b, 0, n);
    case OrderKind::Lex:
      for (std::size_t i = 0; i < n; ++i) {
        if (a[i] != b[i]) return a[i] <=> b[i];
      }
      return std::strong_ordering::equal;
    case OrderKind::Block: {
      auto c = grevlex(a, b, 0, order_.block_size);
      if (c != 0) return c;
      return grevlex(a, b, order_.block_size, n);
    }
  }
  return std::strong_ordering::equal;
}

bool VariableContext::equivalent(const VariableContext& other) const {
  return names_ == other.names_ && invertible_ == other.invertible_ && order_ == other.order_;
}

bool same_context(const Context& a, const Context& b) {
  return a == b || (a && b && a->equivalent(*b));
}

std::string to_string(const Rational& r) { return r.get_str(); }

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(Context ctx) : ctx_(std::move(ctx)) {
  if (!ctx_) throw DomainError("polynomial needs a context");
}

Polynomial Polynomial::constant(Context ctx, const Rational& c) {
  Exponents zero(ctx->size(), 0);
  return monomial(std::move(ctx), std::move(zero), c);
}

Polynomial Polynomial::variable(Context ctx, std::string_view name) {
  Exponents e(ctx->size(), 0);
  e[ctx->require_index(name)] = 1;
  return monomial(std::move(ctx), std::move(e), 1);
}

Polynomial Polynomial::monomial(Context ctx, Exponents exps, const Rational& c) {
  std::vector<Term> t;
  t.push_back(Term{std::move(exps), c});
  return from_terms(std::move(ctx), std::move(t));
}

Polynomial Polynomial::from_terms(Context ctx, std::vector<Term> terms) {
  Polynomial p(std::move(ctx));
  const auto& vc = *p.ctx_;
  for (auto& t : terms) {
    if (t.exponents.size() != vc.size()) throw ContextMismatch("exponent vector has wrong length");
    for (std::size_t i = 0; i < vc.size(); ++i) {
      if (t.exponents[i] < 0 && !vc.is_invertible(i)) {
        throw DomainError("negative exponent on non-invertible variable '" + vc.names()[i] + "'");
      }
    }
  }
  std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) {
    return vc.compare(a.exponents, b.exponents) > 0;
  });
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().exponents == t.exponents) {
      p.terms_.back().coefficient += t.coefficient;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coefficient == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coefficient == 0) p.terms_.pop_back();
  return p;
}

bool Polynomial::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  const auto& e = terms_.front().exponents;
  return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

bool Polynomial::is_unit() const {
  if (terms_.size() != 1) return false;
  const auto& e = terms_.front().exponents;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] != 0 && !ctx_->is_invertible(i)) return false;
  }
  return true;
}

bool Polynomial::has_negative_exponents() const {
  for (const auto& t : terms_) {
    for (int e : t.exponents) {
      if (e < 0) return true;
    }
  }
  return false;
}

const Term& Polynomial::leading_term() const {
  if (terms_.empty()) throw DomainError("zero polynomial has no leading term");
  return terms_.front();
}

int Polynomial::total_degree() const {
  int d = 0;
  bool first = true;
  for (const auto& t : terms_) {
    int s = std::accumulate(t.exponents.begin(), t.exponents.end(), 0);
    d = first ? s : std::max(d, s);
    first = false;
  }
  return d;
}

int Polynomial::degree_in(std::size_t var) const {
  int d = 0;
  bool first = true;
  for (const auto& t : terms_) {
    d = first ? t.exponents[var] : std::max(d, t.exponents[var]);
    first = false;
  }
  return d;
}

int Polynomial::min_degree_in(std::size_t var) const {
  int d = 0;
  bool first = true;
  for (const auto& t : terms_) {
    d = first ? t.exponents[var] : std::min(d, t.exponents[var]);
    first = false;
  }
  return d;
}

std::vector<std::size_t> Polynomial::support() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ctx_->size(); ++i) {
    for (const auto& t : terms_) {
      if (t.exponents[i] != 0) {
        out.push_back(i);
        break;
      }
    }
  }
  return out;
}

void Polynomial::check_same(const Polynomial& q, const char* op) const {
  if (!same_context(ctx_, q.ctx_)) {
    throw ContextMismatch(std::string("context mismatch in ") + op);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coefficient = -t.coefficient;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& q) {
  check_same(q, "add");
  if (q.terms_.empty()) return *this;
  const auto& vc = *ctx_;
  std::vector<Term> merged;
  merged.reserve(terms_.size() + q.terms_.size());
  auto a = terms_.begin();
  auto b = q.terms_.begin();
  while (a != terms_.end() || b != q.terms_.end()) {
    if (b == q.terms_.end()) {
      merged.push_back(std::move(*a++));
      continue;
    }
    if (a == terms_.end()) {
      merged.push_back(*b++);
      continue;
    }
    auto c = vc.compare(a->exponents, b->exponents);
    if (c > 0) {
      merged.push_back(std::move(*a++));
    } else if (c < 0) {
      merged.push_back(*b++);
    } else {
      Rational s = a->coefficient + b->coefficient;
      if (s != 0) merged.push_back(Term{std::move(a->exponents), std::move(s)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& q) { return *this += -q; }

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
  p.check_same(q, "mul");
  if (p.terms_.empty() || q.terms_.empty()) return Polynomial(p.ctx_);
  if (q.terms_.size() == 1) return p.times_term(q.terms_[0].exponents, q.terms_[0].coefficient);
  if (p.terms_.size() == 1) return q.times_term(p.terms_[0].exponents, p.terms_[0].coefficient);
  const auto& vc = *p.ctx_;
  auto cmp = [&vc](const Exponents& a, const Exponents& b) { return vc.compare(a, b) > 0; };
  std::map<Exponents, Rational, decltype(cmp)> acc(cmp);
  Exponents e(vc.size());
  for (const auto& s : p.terms_) {
    for (const auto& t : q.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = s.exponents[i] + t.exponents[i];
      auto [it, inserted] = acc.try_emplace(e, 0);
      it->second += s.coefficient * t.coefficient;
    }
  }
  Polynomial r(p.ctx_);
  r.terms_.reserve(acc.size());
  for (auto& [ex, c] : acc) {
    if (c != 0) r.terms_.push_back(Term{ex, c});
  }
  return r;
}

Polynomial& Polynomial::operator*=(const Polynomial& q) {
  *this = *this * q;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coefficient *= c;
  return *this;
}

bool operator==(const Polynomial& p, const Polynomial& q) {
  if (!same_context(p.ctx_, q.ctx_)) return false;
  if (p.terms_.size() != q.terms_.size()) return false;
  for (std::size_t i = 0; i < p.terms_.size(); ++i) {
    if (p.terms_[i].exponents != q.terms_[i].exponents) return false;
    if (p.terms_[i].coefficient != q.terms_[i].coefficient) return false;
  }
  return true;
}

Polynomial Polynomial::times_term(const Exponents& exps, const Rational& c) const {
  Polynomial r(ctx_);
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    Exponents e = t.exponents;
    for (std::size_t i = 0; i < e.size(); ++i) {
      e[i] += exps[i];
      // Multiplying by a term is order-preserving, so only validity can break.
      if (e[i] < 0 && !ctx_->is_invertible(i)) {
        throw DomainError("negative exponent on non-invertible variable '" + ctx_->names()[i] + "'");
      }
    }
    r.terms_.push_back(Term{std::move(e), t.coefficient * c});
  }
  return r;
}

Polynomial Polynomial::pow(int e) const {
  if (e < 0) {
    if (!is_unit()) throw DomainError("negative power of a non-unit: " + to_string());
    const auto& t = terms_.front();
    Exponents inv(t.exponents.size());
    for (std::size_t i = 0; i < inv.size(); ++i) inv[i] = -t.exponents[i];
    Rational c = 1 / t.coefficient;
    return monomial(ctx_, std::move(inv), c).pow(-e);
  }
  Polynomial result = constant(ctx_, 1);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty()) return *this;
  Rational inv = 1 / terms_.front().coefficient;
  return *this * inv;
}

Polynomial Polynomial::primitive() const {
  if (terms_.empty()) return *this;
  mpz_class num_gcd = 0, den_lcm = 1;
  for (const auto& t : terms_) {
    mpz_class n = abs(t.coefficient.get_num());
    num_gcd = gcd(num_gcd, n);
    den_lcm = lcm(den_lcm, t.coefficient.get_den());
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (terms_.front().coefficient < 0) scale = -scale;
  return *this * scale;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    int e = t.exponents[var];
    if (e == 0) continue;
    Term d{t.exponents, t.coefficient * e};
    d.exponents[var] -= 1;
    out.push_back(std::move(d));
  }
  return from_terms(ctx_, std::move(out));
}

Polynomial Polynomial::derivative(std::string_view name) const {
  return derivative(ctx_->require_index(name));
}

Polynomial Polynomial::in_context(const Context& target) const {
  if (same_context(ctx_, target)) {
    Polynomial r = *this;
    r.ctx_ = target;
    return r;
  }
  std::vector<std::optional<std::size_t>> map(ctx_->size());
  for (std::size_t i = 0; i < ctx_->size(); ++i) map[i] = target->index_of(ctx_->names()[i]);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Exponents e(target->size(), 0);
    for (std::size_t i = 0; i < t.exponents.size(); ++i) {
      if (t.exponents[i] == 0) continue;
      if (!map[i]) {
        throw ContextMismatch("variable '" + ctx_->names()[i] + "' is absent from the target context");
      }
      e[*map[i]] = t.exponents[i];
    }
    out.push_back(Term{std::move(e), t.coefficient});
  }
  return from_terms(target, std::move(out));
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    bool neg = t.coefficient < 0;
    Rational mag = abs(t.coefficient);
    if (first) {
      if (neg) os << '-';
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    std::ostringstream mono;
    bool any = false;
    for (std::size_t i = 0; i < t.exponents.size(); ++i) {
      if (t.exponents[i] == 0) continue;
      if (any) mono << '*';
      mono << ctx_->names()[i];
      if (t.exponents[i] != 1) mono << '^' << t.exponents[i];
      any = true;
    }
    if (!any) {
      os << qhv::to_string(mag);
    } else if (mag == 1) {
      os << mono.str();
    } else {
      os << qhv::to_string(mag) << '*' << mono.str();
    }
  }
  return os.str();
}

std::string format_polynomials(std::span<const Polynomial> ps) {
  std::string out = "[";
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i) out += ", ";
    out += ps[i].to_string();
  }
  return out + "]";
}

// ---------------------------------------------------------------------------
// Substitution

SubstitutionMap::SubstitutionMap(Context source, Context target,
                                 const std::map<std::string, Polynomial>& assignments)
    : source_(std::move(source)), target_(std::move(target)) {
  for (const auto& [name, img] : assignments) {
    if (!source_->index_of(name)) {
      throw ContextMismatch("assignment for '" + name + "' which is not a source variable");
    }
    if (!same_context(img.context(), target_)) {
      throw ContextMismatch("image of '" + name + "' is not in the target context");
    }
  }
  images_.reserve(source_->size());
  for (std::size_t i = 0; i < source_->size(); ++i) {
    const auto& name = source_->names()[i];
    auto it = assignments.find(name);
    if (it == assignments.end()) throw UnassignedVariable("no assignment for '" + name + "'");
    if (source_->is_invertible(i) && !it->second.is_unit()) {
      throw NonUnitImage("invertible variable '" + name + "' must map to a unit, got " +
                         it->second.to_string());
    }
    images_.push_back(it->second.in_context(target_));
  }
}

SubstitutionMap SubstitutionMap::with_defaults(Context source, Context target,
                                               const std::map<std::string, Polynomial>& assignments) {
  std::map<std::string, Polynomial> full = assignments;
  for (const auto& name : source->names()) {
    if (!full.count(name)) full.emplace(name, Polynomial::variable(target, name));
  }
  return SubstitutionMap(std::move(source), std::move(target), full);
}

SubstitutionMap SubstitutionMap::identity(Context ctx) { return with_defaults(ctx, ctx, {}); }

const Polynomial& SubstitutionMap::image(std::string_view name) const {
  return images_[source_->require_index(name)];
}

SubstitutionMap SubstitutionMap::compose(const SubstitutionMap& then) const {
  if (!same_context(target_, then.source_)) {
    throw ContextMismatch("composition of substitutions with incompatible contexts");
  }
  std::map<std::string, Polynomial> out;
  for (std::size_t i = 0; i < source_->size(); ++i) {
    out.emplace(source_->names()[i], substitute(images_[i], then));
  }
  return SubstitutionMap(source_, then.target_, out);
}

Polynomial substitute(const Polynomial& p, const SubstitutionMap& s) {
  if (!same_context(p.context(), s.source())) {
    throw ContextMismatch("substitution source context does not match the polynomial");
  }
  const auto& tgt = s.target();
  std::vector<std::map<int, Polynomial>> powers(s.source()->size());
  auto power = [&](std::size_t var, int e) -> const Polynomial& {
    auto& cache = powers[var];
    auto it = cache.find(e);
    if (it != cache.end()) return it->second;
    return cache.emplace(e, s.image(var).pow(e)).first->second;
  };
  Polynomial result(tgt);
  for (const auto& t : p.terms()) {
    Polynomial acc = Polynomial::constant(tgt, t.coefficient);
    for (std::size_t i = 0; i < t.exponents.size(); ++i) {
      if (t.exponents[i] != 0) acc *= power(i, t.exponents[i]);
    }
    result += acc;
  }
  return result;
}

std::optional<long> weight_of(const Polynomial& p, const std::map<std::string, int>& weights) {
  const auto& ctx = *p.context();
  std::vector<long> w(ctx.size(), 0);
  for (const auto& [name, wt] : weights) {
    if (auto i = ctx.index_of(name)) w[*i] = wt;
  }
  std::optional<long> common;
  for (const auto& t : p.terms()) {
    long d = 0;
    for (std::size_t i = 0; i < w.size(); ++i) d += w[i] * t.exponents[i];
    if (!common) {
      common = d;
    } else if (*common != d) {
      return std::nullopt;
    }
  }
  return common;
}

}  // namespace qhv
