#ifndef QHV_IDEALS_HPP
#define QHV_IDEALS_HPP

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "qhv/polyring.hpp"

namespace qhv {

/// Raised when a Gröbner computation exceeds its budget. Never a silent
/// truncation: the instance is simply beyond what the budget allows.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

struct GroebnerBudget {
  std::size_t max_basis = 2000;
  std::size_t max_steps = 5'000'000;

  /// Defaults, overridden by QHV_BUDGET ("steps" or "basis=N,steps=M").
  static GroebnerBudget from_env();
  static GroebnerBudget parse(const std::string& text);
};

/// Finite generator list in one context plus a write-once Gröbner basis cache.
///
/// The basis is computed in the polynomial ring of the context: invertible
/// variables are treated as ordinary variables, so generators must carry no
/// negative exponents. Laurent-level statements go through
/// `equal_up_to_units`, which clears unit monomials first.
class Ideal {
 public:
  explicit Ideal(std::vector<Polynomial> generators);

  const Context& context() const { return ctx_; }
  const std::vector<Polynomial>& generators() const { return generators_; }

  /// Reduced, monic Gröbner basis under the context's order.
  const std::vector<Polynomial>& groebner_basis(const GroebnerBudget& budget = GroebnerBudget::from_env()) const;

  bool has_cached_basis() const;

 private:
  struct Cache {
    std::mutex mutex;
    std::optional<std::vector<Polynomial>> basis;
  };

  Context ctx_;
  std::vector<Polynomial> generators_;
  std::shared_ptr<Cache> cache_;
};

/// Buchberger's algorithm with the coprime and chain criteria; the result is
/// reduced and monic, sorted by increasing leading monomial.
std::vector<Polynomial> groebner(const std::vector<Polynomial>& generators,
                                 const GroebnerBudget& budget = GroebnerBudget::from_env());

/// Full reduction of p by the given polynomials (any generating list).
Polynomial reduce(const Polynomial& p, const std::vector<Polynomial>& by,
                  std::size_t* steps = nullptr, std::size_t max_steps = 0);

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g);

/// Every S-polynomial of the list reduces to zero against it.
bool is_groebner_basis(const std::vector<Polynomial>& basis);

Polynomial normal_form(const Polynomial& p, const Ideal& ideal);
bool contains(const Ideal& ideal, const Polynomial& p);

/// p multiplied by the Laurent monomial in the invertible variables that makes
/// each invertible exponent's minimum over the terms exactly zero.
struct ClearedPolynomial {
  Polynomial polynomial;
  Exponents unit;  ///< exponents of the monomial that was multiplied in
};
ClearedPolynomial clear_units(const Polynomial& p);

struct UnitMembership {
  Polynomial generator;
  ClearedPolynomial cleared;
  bool member = false;
};

struct UnitEquality {
  bool equal = false;
  std::vector<UnitMembership> forward;   ///< generators of I checked in J
  std::vector<UnitMembership> backward;  ///< generators of J checked in I
};

/// Both generator lists are cleared of unit monomials; each side's cleared
/// generators are then tested for membership in the other side's cleared
/// ideal. Equality of the cleared polynomial ideals implies equality in the
/// Laurent ring; the converse needs saturation and is not attempted.
UnitEquality compare_up_to_units(const Ideal& i, const Ideal& j);
bool equal_up_to_units(const Ideal& i, const Ideal& j);

/// Generators of I ∩ Q[remaining variables], returned in a context holding
/// only the remaining variables (original relative order, grevlex).
Ideal eliminate(const Ideal& ideal, const std::vector<std::string>& drop);

/// The generators together with all maximal minors of the Jacobian matrix
/// with respect to `vars` (for one generator: its partial derivatives).
Ideal jacobian_ideal(const Ideal& ideal, const std::vector<std::string>& vars);

/// 1 ∈ I.
bool is_unit_ideal(const Ideal& ideal);

}  // namespace qhv

#endif  // QHV_IDEALS_HPP
