#ifndef QHV_RULED_HPP
#define QHV_RULED_HPP

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qhv/polyring.hpp"

namespace qhv {

struct Lattice {
  enum class Kind { Hirzebruch, QuadricBlowup };
  Kind kind;
  int parameter;  ///< n for Σ_n, number of blown-up points for the quadric

  static Lattice hirzebruch(int n);
  static Lattice quadric_blowup(int r);

  std::size_t rank() const;
  std::string to_string() const;
  friend bool operator==(const Lattice&, const Lattice&) = default;
};

/// Hirzebruch: (a, b) is a·C0 + b·F. Quadric blow-up: (p, q, m1..mr) is
/// p·f1 + q·f2 − Σ m_i·e_i.
struct DivisorClass {
  Lattice lattice;
  std::vector<int> coords;

  DivisorClass(Lattice l, std::vector<int> c);
  std::string to_string() const;
  friend DivisorClass operator+(const DivisorClass& a, const DivisorClass& b);
  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
};

int intersect(const DivisorClass& a, const DivisorClass& b);

/// −K of the lattice's surface.
DivisorClass anticanonical(const Lattice& l);

/// Classes with D² = −1 and D·(−K) = 1, brute-forced over |coords| ≤ bound.
/// Only r ∈ {0, 1, 2} is accepted.
std::vector<DivisorClass> minus_one_curves(int r, int bound = 3);

/// Generators of the cone of curves: C0 and F on Σ_n; f1, f2 on the quadric;
/// the (−1)-curves on its blow-ups.
std::vector<DivisorClass> curve_cone_generators(const Lattice& l);

enum class FiberKind { Sigma1, Blowup1, Blowup2 };
std::string to_string(FiberKind f);

struct HomologyCase {
  std::string label;
  std::vector<DivisorClass> trace_components;
  DivisorClass trace;
  /// Curve classes C (cone generators and primitive nef classes in the box)
  /// with trace·C ≤ 0, in search order.
  std::vector<DivisorClass> witnesses;
  std::vector<int> witness_products;
};

struct HomologyReport {
  FiberKind fiber;
  int bound = 3;
  std::vector<HomologyCase> cases;
  /// Named curves and their pairwise products (C1.C2, C2.C3, C1.C3 for the
  /// one-point blow-up).
  std::vector<std::pair<std::string, int>> named_products;
  bool pass = false;  ///< every case has at least one witness
};

HomologyReport homology_lemma_cases(FiberKind fiber, int bound = 3);

/// Σ_n after an elementary transformation centred on (or off) the negative
/// section. On Σ0 either choice gives Σ1.
int elm_surface(int n, bool on_negative_section);

enum class ElmCenter {
  E0,                 ///< construction, centre in the 0-section of E
  Einf,               ///< construction, centre in the ∞-section of E
  CurveInA0,          ///< normalization, invariant curve of A0 not in E
  CurveInAinf,        ///< normalization, invariant curve of A∞ not in E
  DiagonalOrbit,      ///< Σ0 construction, diagonal orbit off both sections
  IntersectionOrbit,  ///< Σ0 back-transform at the sections' intersection
};
std::string to_string(ElmCenter c);

/// Combinatorial record of a twisted P1-bundle over a Hirzebruch surface.
struct BundleState {
  int base_n = 0;
  int k0 = 0;
  int k_inf = 0;
  int fiber_m = 0;  ///< F_X ≅ Σ_m with m = k0 + k_inf
  int a0_curves = 1;
  int ainf_curves = 1;
  std::vector<ElmCenter> transcript;
  std::optional<std::pair<int, int>> split_degrees;  ///< O(d1, d2) ⊕ O model over Σ0
  bool sections_intersect = false;

  /// Self-intersection of E ∩ F_X inside F_X.
  int section_self_intersection() const { return -fiber_m; }
  bool consistent() const;

  friend bool operator==(const BundleState&, const BundleState&) = default;
};

/// The trivial bundle over Σ_n.
BundleState trivial_bundle(int n);

/// One construction step (E0 or Einf) or one normalization step.
BundleState apply_step(const BundleState& s, ElmCenter c);

/// k_inf steps at E∞ followed by k0 steps at E0, starting from the trivial
/// bundle over Σ_n, n ≥ 1.
BundleState construct_twisted(int n, int k0, int k_inf);

/// Replays construction steps on the trivial bundle over Σ_n.
BundleState replay(int n, std::span<const ElmCenter> steps);

/// Flowchart exit that is never reached on consistent states.
class StopB : public Error {
 public:
  using Error::Error;
};

enum class Stop { A, B };

struct Normalization {
  BundleState final_state;
  std::vector<ElmCenter> transcript;  ///< normalization steps only
  std::vector<int> fiber_trace;       ///< fiber_m before the first and after each step
  Stop stop = Stop::A;
};

/// Runs the simplification flowchart until F_X ≅ Σ0. Throws StopB when the
/// "no two invariant curves" branch is reached with m > 0.
Normalization figure1_normalize(const BundleState& s);

/// Construction steps undone by a normalization transcript, in construction
/// order.
std::vector<ElmCenter> inverse_transcript(std::span<const ElmCenter> normalization);

/// Elementary transformation of the split bundle O(n, −n) ⊕ O over Σ0 along a
/// diagonal orbit: the two invariant sections then meet transversally.
BundleState sigma0_twist(int n);

/// Transformation at the intersection orbit; the sections become disjoint.
BundleState sigma0_back_transform(const BundleState& s);

}  // namespace qhv

#endif  // QHV_RULED_HPP
