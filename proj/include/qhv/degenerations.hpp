#ifndef QHV_DEGENERATIONS_HPP
#define QHV_DEGENERATIONS_HPP

#include <string>
#include <vector>

#include "qhv/group_actions.hpp"
#include "qhv/ideals.hpp"
#include "qhv/polyring.hpp"

namespace qhv {

enum class ChartId { Zero, Infinity };
enum class Family { Quadric, F4 };

std::string to_string(ChartId c);
std::string to_string(Family f);

/// (x, y, z, w, lam) with lam invertible.
Context quadric_context();
/// (a, b, c, e, f, g, lam) with lam invertible.
Context f4_context();

/// One affine-in-lam chart of a degeneration. The constructor-side checks
/// (torus semi-invariance, sl2 invariance) have passed for every instance.
struct ChartModel {
  ChartId chart;
  int twist;
  Family family;
  Ideal ideal;
  TorusAction torus;
  Sl2Triple sl2;
};

/// 4xz − y² − lam^k w², without the parity requirement.
Ideal quadric_ideal(int k);

/// k odd and positive. Torus weights w ↦ ∓k, lam ↦ ±2 on the zero/infinity
/// chart.
ChartModel quadric_chart(int k, ChartId chart);

/// The elimination-derived six quadrics. Torus weights g ↦ ∓2k, lam ↦ ±2.
ChartModel f4_chart(int k, ChartId chart);

struct GeneratorClaim {
  std::string source;  ///< "construction" or "characterization"
  std::string text;
  Polynomial polynomial;
  bool member = false;    ///< lies in the elimination ideal
  bool verbatim = false;  ///< equals one of the derived quadrics up to a scalar
};

struct F4Derivation {
  int twist = 0;
  Ideal kernel;                      ///< full elimination ideal
  std::vector<Polynomial> quadrics;  ///< six quadrics in (a..f, lam^k g), echelon form
  bool quadrics_generate_kernel = false;
  std::vector<GeneratorClaim> claims;
};

/// Kernel of the parametrization [x:y:z] ↦ [x²:2xy:2xz+y²:2yz:z²:lam^-k(4xz−y²)]
/// computed by elimination, its quadratic part in echelon form, and the
/// membership verdict on each published generator.
const F4Derivation& derive_f4_ideal(int k);

/// Published generator lists, as text. The construction list uses `G` for
/// lam^k·g; the characterization list is written for exponent one.
const std::vector<std::string>& published_f4_generators();
const std::vector<std::string>& characterization_f4_generators();

/// Rewrites a polynomial over (a..f, g, lam) in which lam only occurs as
/// (lam^k g)^j into one over (a..f, G). Throws DomainError otherwise.
Polynomial to_invariant_coordinate(const Polynomial& p, int k);

SubstitutionMap gluing_map(Family family, int k, int l);

struct GluedFamily {
  Family family;
  ChartModel chart0;
  ChartModel chart_inf;
  SubstitutionMap gluing;
};

/// Builds both charts and the gluing; throws Error if verify_gluing fails.
GluedFamily glue(Family family, int k, int l);

struct GluingEntry {
  Polynomial generator;
  Polynomial substituted;
  Exponents denominator;  ///< invertible-variable powers cleared from the unit factors
  ClearedPolynomial cleared;
  bool member = false;
};

struct GluingReport {
  bool pass = false;
  std::vector<GluingEntry> entries;
  bool backward_pass = false;  ///< chart-infinity generators lie in the glued ideal
};

GluingReport verify_gluing(const GluedFamily& fam);

struct EquivarianceEntry {
  std::string variable;
  Polynomial act_then_glue;
  Polynomial glue_then_act;
  bool equal = false;
};

struct EquivarianceReport {
  bool pass = false;
  std::vector<EquivarianceEntry> torus;
  bool lam_product_invariant = false;  ///< (lam0 xi^2)(laminf xi^-2) = lam0 laminf
  bool sl2_commutes = false;
  bool sl2_support_disjoint = false;
};

EquivarianceReport verify_equivariance(const GluedFamily& fam);

struct QuotientEntry {
  Polynomial generator;
  Polynomial pullback;
  bool member = false;
  bool sign_invariant = false;  ///< fixed by w ↦ −w
};

struct QuotientReport {
  int twist = 0;
  bool pass = false;
  std::vector<QuotientEntry> entries;
};

QuotientReport verify_quotient(int k);

struct EmbeddingReport {
  int twist = 0;
  bool pass = false;
  std::vector<std::pair<Polynomial, Polynomial>> images;  ///< generator, image
};

EmbeddingReport verify_embedding(int k);

struct ChartLocus {
  std::string chart;  ///< the coordinate set to 1
  bool smooth = false;
  bool single_point = false;  ///< singular locus is exactly the chart origin
  std::string point;
};

struct SingularLocusReport {
  int twist = 0;
  std::vector<ChartLocus> charts;
};

/// Jacobian analysis of 4xz − y² − lam^k w² on the four standard charts of P3
/// (lam an ordinary affine coordinate).
SingularLocusReport quadric_singular_locus(int k);

}  // namespace qhv

#endif  // QHV_DEGENERATIONS_HPP
