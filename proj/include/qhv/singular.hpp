#ifndef QHV_SINGULAR_HPP
#define QHV_SINGULAR_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qhv/polyring.hpp"

namespace qhv {

/// Cyclic quotient singularity of type (1/n)(w1, w2, w3); weights are kept
/// reduced to [0, n).
class CyclicQuotient {
 public:
  CyclicQuotient(int n, std::array<int, 3> weights);

  int order() const { return n_; }
  const std::array<int, 3>& weights() const { return weights_; }

  /// Every weight coprime to n, so the fixed locus is the origin alone.
  bool isolated() const;
  /// No nontrivial element of the group fixes a hyperplane (acts as a
  /// reflection). Recorded, not enforced.
  bool well_formed() const;

  std::string to_string() const;

  friend bool operator==(const CyclicQuotient&, const CyclicQuotient&) = default;

 private:
  int n_;
  std::array<int, 3> weights_;
};

/// (Σ (j·w_i mod n)) / n for 1 ≤ j ≤ n−1.
Rational age(const CyclicQuotient& q, int j);

/// Reid–Tai: every age strictly above one. Only isolated quotients are
/// decided; others throw DomainError.
bool is_terminal(const CyclicQuotient& q);

/// Up to permutation and multiplication by a unit mod n, the type is
/// (1, a, −a) for some a coprime to n.
bool is_type_one_a_minus_a(const CyclicQuotient& q);

struct TerminalTable {
  int n_max = 0;
  long checked = 0;
  long terminal = 0;
  std::vector<CyclicQuotient> counterexamples;
};

/// Exhausts sorted weight triples with every weight coprime to n, for
/// 2 ≤ n ≤ n_max, comparing is_terminal against is_type_one_a_minus_a.
TerminalTable classify_terminal_types(int n_max);

struct VertexSingularity {
  std::size_t vertex = 0;
  CyclicQuotient type;
  bool isolated = false;
  std::optional<bool> terminal;  ///< empty when not isolated
};

/// The cyclic quotient at each coordinate vertex of P(weights) whose weight
/// exceeds one. Throws DomainError on nonpositive or ill-formed weights.
std::vector<VertexSingularity> wps_singularity_report(const std::vector<int>& weights);

}  // namespace qhv

#endif  // QHV_SINGULAR_HPP
