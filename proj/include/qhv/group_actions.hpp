#ifndef QHV_GROUP_ACTIONS_HPP
#define QHV_GROUP_ACTIONS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qhv/ideals.hpp"
#include "qhv/polyring.hpp"

namespace qhv {

/// Linear operator fixed by its values on the variables and extended to all
/// polynomials by the Leibniz rule. Variables without an image are an error
/// only when they occur in the argument.
class Derivation {
 public:
  Derivation(Context ctx, const std::map<std::string, Polynomial>& images);

  const Context& context() const { return ctx_; }
  const std::optional<Polynomial>& image(std::size_t var) const { return images_[var]; }

  Polynomial apply(const Polynomial& p) const;

  /// [this, other] = this∘other − other∘this, again a derivation.
  Derivation commutator(const Derivation& other) const;
  Derivation scaled(const Rational& c) const;

  /// Agreement on every variable that has an image in either.
  friend bool operator==(const Derivation& a, const Derivation& b);

 private:
  Context ctx_;
  std::vector<std::optional<Polynomial>> images_;
};

/// ξ-scaling v ↦ ξ^weight(v)·v. Missing variables have weight 0.
struct TorusAction {
  std::map<std::string, int> weights;

  int weight(const std::string& var) const;
  /// The action as a substitution from `source` into `target`, which must
  /// contain every source variable plus the invertible variable `xi`.
  SubstitutionMap as_substitution(const Context& source, const Context& target,
                                  const std::string& xi = "xi") const;
};

struct Sl2Triple {
  Derivation e;
  Derivation h;
  Derivation f;
};

/// sl2 on (x, y, z) with H-weights (−2, 0, 2); w and lam, and anything else,
/// are killed. E raises H-weight by two. 4xz − y² is annihilated.
Sl2Triple sl2_v2_triple(const Context& ctx);

/// The 5-dimensional action on (a, b, c, e, f) obtained by pushing the v2
/// triple through a=x², b=2xy, c=2xz+y², e=2yz, f=z², lam^k·g = 4xz−y².
/// g and lam are killed.
Sl2Triple sl2_v4_triple(const Context& ctx, int k);

/// The quadratic coordinate functions of the parametrization above, as
/// polynomials in the given context (which must hold x, y, z).
std::map<std::string, Polynomial> veronese_coordinates(const Context& xyz_ctx);

/// [H,E]=2E, [H,F]=−2F, [E,F]=H as operators on every monomial of degree
/// at most `max_degree`. Returns the first failing relation, if any.
std::optional<std::string> check_bracket_relations(const Sl2Triple& t, int max_degree);

bool check_ideal_invariance(const Ideal& ideal, const Sl2Triple& t);

/// Every generator is weight-homogeneous for the torus.
bool check_semi_invariance(const Ideal& ideal, const TorusAction& a);

/// [F^s(m), ..., F(m), m, E(m), ..., E^s(m)] with zero entries dropped.
/// Throws NotHomogeneous-style DomainError if H(m) ≠ 0.
std::vector<Polynomial> generate_weight_basis(const Polynomial& middle, const Sl2Triple& t, int steps);

}  // namespace qhv

#endif  // QHV_GROUP_ACTIONS_HPP
