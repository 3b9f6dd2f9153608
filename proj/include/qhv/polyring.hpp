#ifndef QHV_POLYRING_HPP
#define QHV_POLYRING_HPP

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qhv {

using Rational = mpq_class;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in different variable contexts.
class ContextMismatch : public Error {
 public:
  using Error::Error;
};

/// A substitution has no image for a variable that occurs.
class UnassignedVariable : public Error {
 public:
  using Error::Error;
};

/// An invertible variable was sent to something that is not a Laurent unit.
class NonUnitImage : public Error {
 public:
  using Error::Error;
};

/// A caller-side precondition (parity, range, well-formedness) failed.
class DomainError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

enum class OrderKind { GradedReverseLex, Lex, Block };

/// Monomial order tag. `Block` compares the first `block_size` variables by
/// grevlex, then breaks ties by grevlex on the remaining ones, so anything
/// involving the leading block is larger than anything free of it.
struct MonomialOrder {
  OrderKind kind = OrderKind::GradedReverseLex;
  std::size_t block_size = 0;

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;
};

using Exponents = std::vector<int>;

class VariableContext;
using Context = std::shared_ptr<const VariableContext>;

/// Ordered variable names, the subset allowed negative exponents, and the
/// monomial order used to sort terms.
class VariableContext {
 public:
  static Context make(std::vector<std::string> names,
                      std::vector<std::string> invertible = {},
                      MonomialOrder order = {});

  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return names_.size(); }
  const MonomialOrder& order() const { return order_; }

  std::optional<std::size_t> index_of(std::string_view name) const;
  std::size_t require_index(std::string_view name) const;
  bool is_invertible(std::size_t i) const { return invertible_[i]; }
  std::vector<std::string> invertible_names() const;

  /// Same names and invertibility, different order.
  Context with_order(MonomialOrder order) const;

  std::strong_ordering compare(const Exponents& a, const Exponents& b) const;

  bool equivalent(const VariableContext& other) const;

 private:
  VariableContext() = default;

  std::vector<std::string> names_;
  std::vector<bool> invertible_;
  MonomialOrder order_;
};

bool same_context(const Context& a, const Context& b);

struct Term {
  Exponents exponents;
  Rational coefficient;
};

/// Sparse multivariate (Laurent in the invertible variables) polynomial with
/// exact rational coefficients. Terms are kept sorted, largest first, under
/// the context's order, with no zero coefficients.
class Polynomial {
 public:
  explicit Polynomial(Context ctx);

  static Polynomial constant(Context ctx, const Rational& c);
  static Polynomial variable(Context ctx, std::string_view name);
  static Polynomial monomial(Context ctx, Exponents exps, const Rational& c = 1);
  /// Combines like terms, drops zeros, sorts, and validates exponents.
  static Polynomial from_terms(Context ctx, std::vector<Term> terms);
  /// Parses the textual grammar (`4*x*z - y^2 - lam^3*w^2`).
  static Polynomial parse(Context ctx, std::string_view text);

  const Context& context() const { return ctx_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// A single term whose variables are all invertible (a Laurent unit).
  bool is_unit() const;
  bool has_negative_exponents() const;

  const Term& leading_term() const;
  int total_degree() const;
  int degree_in(std::size_t var) const;
  int min_degree_in(std::size_t var) const;
  /// Indices of variables with a nonzero exponent somewhere.
  std::vector<std::size_t> support() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& q);
  Polynomial& operator-=(const Polynomial& q);
  Polynomial& operator*=(const Polynomial& q);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial p, const Polynomial& q) { return p += q; }
  friend Polynomial operator-(Polynomial p, const Polynomial& q) { return p -= q; }
  friend Polynomial operator*(const Polynomial& p, const Polynomial& q);
  friend Polynomial operator*(Polynomial p, const Rational& c) { return p *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial p) { return p *= c; }

  friend bool operator==(const Polynomial& p, const Polynomial& q);

  Polynomial pow(int e) const;
  /// Multiplies by a single term.
  Polynomial times_term(const Exponents& exps, const Rational& c) const;
  /// Divides so the leading coefficient is 1.
  Polynomial monic() const;
  /// Scales to coprime integer coefficients with positive leading coefficient.
  Polynomial primitive() const;
  Polynomial derivative(std::size_t var) const;
  Polynomial derivative(std::string_view name) const;

  /// Re-expresses the polynomial over another context by variable name.
  Polynomial in_context(const Context& target) const;

  std::string to_string() const;

 private:
  void check_same(const Polynomial& q, const char* op) const;

  Context ctx_;
  std::vector<Term> terms_;
};

std::string to_string(const Rational& r);

/// Simultaneous substitution: every source variable has exactly one image in
/// the target context. Images of invertible source variables must be units.
class SubstitutionMap {
 public:
  SubstitutionMap(Context source, Context target,
                  const std::map<std::string, Polynomial>& assignments);

  /// Source variables not named in `assignments` map to the same-named target
  /// variable.
  static SubstitutionMap with_defaults(Context source, Context target,
                                       const std::map<std::string, Polynomial>& assignments);
  static SubstitutionMap identity(Context ctx);

  const Context& source() const { return source_; }
  const Context& target() const { return target_; }
  const Polynomial& image(std::size_t var) const { return images_[var]; }
  const Polynomial& image(std::string_view name) const;

  /// `then` applied after this one: v -> then(this(v)).
  SubstitutionMap compose(const SubstitutionMap& then) const;

 private:
  Context source_;
  Context target_;
  std::vector<Polynomial> images_;
};

Polynomial substitute(const Polynomial& p, const SubstitutionMap& s);

/// Weighted degree shared by every term, or nullopt when terms disagree or
/// p is zero. Variables missing from `weights` have weight 0.
std::optional<long> weight_of(const Polynomial& p, const std::map<std::string, int>& weights);

std::string format_polynomials(std::span<const Polynomial> ps);

}  // namespace qhv

#endif  // QHV_POLYRING_HPP
