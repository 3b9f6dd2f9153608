// Acceptance suite: one pass/fail line per criterion. `--only N` runs a
// single criterion; the exit code is nonzero if any selected criterion fails.

#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "qhv/cli.hpp"
#include "qhv/degenerations.hpp"
#include "qhv/group_actions.hpp"
#include "qhv/ruled.hpp"
#include "qhv/singular.hpp"
#include "support.hpp"

using namespace qhv;
using qhv::testing::Rng;

namespace {

// Pinned limits. Every identity below is exact, so the only tolerances are
// wall-clock budgets and sample sizes.
constexpr long kGluingBudgetMs = 1000;
constexpr long kTerminalBudgetMs = 10000;
constexpr long kNormalizationBudgetMs = 1000;
constexpr int kNormalizationTrials = 500;
constexpr int kMembershipInstances = 200;
constexpr int kBracketDegree = 4;
constexpr int kLeibnizPairs = 500;
constexpr int kTerminalNMax = 50;

const std::vector<int> kOddTwists{1, 3, 5, 7, 9};
const std::vector<int> kF4Twists{0, 1, 2, 3};

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

long elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
}

std::string kl(int k, int l) { return "(k=" + std::to_string(k) + ", l=" + std::to_string(l) + ")"; }

Outcome gluing_identity() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  int checked = 0;
  for (int k : kOddTwists) {
    for (int l : kOddTwists) {
      const auto fam = glue(Family::Quadric, k, l);
      const auto rep = verify_gluing(fam);
      o.require(rep.pass && rep.backward_pass, "ideal mismatch at " + kl(k, l));
      const auto target = fam.chart_inf.ideal.generators()[0];
      for (const auto& e : rep.entries) {
        o.require(e.cleared.polynomial == target, "cleared generator differs at " + kl(k, l));
        ++checked;
      }
    }
  }
  const long ms = elapsed_ms(t0);
  o.require(ms < kGluingBudgetMs, "took " + std::to_string(ms) + " ms");
  if (o.pass) o.detail = std::to_string(checked) + " generators equal after clearing, " + std::to_string(ms) + " ms";
  return o;
}

Outcome equivariance() {
  Outcome o;
  const auto ctx = VariableContext::make({"w", "lam", "xi"}, {"lam", "xi"});
  auto P = [&](const std::string& s) { return Polynomial::parse(ctx, s); };
  for (int k : kOddTwists) {
    for (int l : kOddTwists) {
      const auto rep = verify_equivariance(glue(Family::Quadric, k, l));
      o.require(rep.pass && rep.lam_product_invariant && rep.sl2_support_disjoint && rep.sl2_commutes,
                "equivariance fails at " + kl(k, l));
      // ξ^l·w·(λξ^-2)^((k+l)/2) = ξ^-k·(w·λ^((k+l)/2)), expanded independently.
      const int h = (k + l) / 2;
      const auto lhs = P("xi").pow(l) * P("w") * (P("lam") * P("xi").pow(-2)).pow(h);
      const auto rhs = P("xi").pow(-k) * P("w") * P("lam").pow(h);
      o.require(lhs == rhs, "w-coordinate identity fails at " + kl(k, l));
    }
  }
  const auto ext = VariableContext::make({"lam0", "laminf", "xi"}, {"lam0", "laminf", "xi"});
  const auto prod = Polynomial::parse(ext, "(lam0*xi^2)*(laminf*xi^-2)");
  o.require(prod == Polynomial::parse(ext, "lam0*laminf"), "lam product identity");
  if (o.pass) o.detail = "25 twist pairs, (lam0 xi^2)(laminf xi^-2) = lam0 laminf";
  return o;
}

bool ideal_stable(const Ideal& ideal, const Sl2Triple& t) {
  for (const auto& g : ideal.generators()) {
    for (const auto* d : {&t.e, &t.h, &t.f}) {
      if (!normal_form(d->apply(g), ideal).is_zero()) return false;
    }
  }
  return true;
}

Outcome sl2_stability() {
  Outcome o;
  const auto q = sl2_v2_triple(quadric_context());
  for (int k : kOddTwists) {
    o.require(ideal_stable(quadric_ideal(k), q) && check_ideal_invariance(quadric_ideal(k), q),
              "quadric ideal not stable at k=" + std::to_string(k));
  }
  for (int k : kF4Twists) {
    const auto t = sl2_v4_triple(f4_context(), k);
    o.require(ideal_stable(Ideal(derive_f4_ideal(k).quadrics), t), "F4 ideal not stable at k=" + std::to_string(k));
  }
  if (o.pass) o.detail = "every E/H/F image has normal form 0";
  return o;
}

Outcome embedding_identity() {
  Outcome o;
  Rng rng(44);
  for (int k : kF4Twists) {
    const auto rep = verify_embedding(k);
    o.require(rep.pass && rep.images.size() == 6, "substitution does not vanish at k=" + std::to_string(k));
    for (int trial = 0; trial < 25; ++trial) {
      const Rational x = testing::random_rational(rng), y = testing::random_rational(rng),
                     z = testing::random_rational(rng), lam = testing::random_rational(rng);
      Rational lk = 1;
      for (int i = 0; i < k; ++i) lk *= lam;
      const std::map<std::string, Rational> pt{{"a", x * x},     {"b", 2 * x * y}, {"c", 2 * x * z + y * y},
                                               {"e", 2 * y * z}, {"f", z * z},     {"g", (4 * x * z - y * y) / lk},
                                               {"lam", lam}};
      for (const auto& g : derive_f4_ideal(k).quadrics) {
        o.require(testing::evaluate(g, pt) == 0, "nonzero value at a sample point, k=" + std::to_string(k));
      }
    }
  }
  if (o.pass) o.detail = "six generators, k in {0,1,2,3}, symbolic and 100 point evaluations";
  return o;
}

Outcome quotient_identity() {
  Outcome o;
  const auto w = quadric_context()->require_index("w");
  for (int k : kF4Twists) {
    const auto rep = verify_quotient(k);
    o.require(rep.pass && rep.entries.size() == 6, "quotient check fails at k=" + std::to_string(k));
    for (const auto& e : rep.entries) {
      o.require(e.member && e.sign_invariant, "pullback not in ideal or not even, k=" + std::to_string(k));
      for (const auto& t : e.pullback.terms()) {
        o.require(t.exponents[w] % 2 == 0, "odd power of w, k=" + std::to_string(k));
      }
    }
  }
  if (o.pass) o.detail = "24 pullbacks in <4xz - y^2 - lam^k w^2>, all even in w";
  return o;
}

Outcome adjudication() {
  Outcome o;
  for (int k : kF4Twists) {
    const auto& d = derive_f4_ideal(k);
    o.require(d.quadrics.size() == 6 && d.quadrics_generate_kernel, "six quadrics do not generate at k=" + std::to_string(k));
    int construction = 0;
    for (const auto& c : d.claims) {
      if (c.source != "construction") continue;
      ++construction;
      o.require(c.member && c.verbatim, "printed generator not matched: " + c.text);
    }
    o.require(construction == 6, "construction list incomplete");
  }
  std::set<std::string> non_members;
  for (const auto& c : derive_f4_ideal(1).claims) {
    if (!c.member) non_members.insert(c.text);
  }
  o.require(non_members == std::set<std::string>{"b*c - 6*a*c + b*lam*g"}, "unexpected non-member set");

  std::ostringstream out, err;
  const int code = cli::run({"verify", "f4", "--golden", QHV_GOLDEN_DIR}, out, err);
  o.require(code == 0, "golden comparison: " + err.str());
  if (o.pass) o.detail = "6/6 verbatim for k in {0..3}; flagged non-member: bc - 6ac + b lam g; golden file matches";
  return o;
}

Outcome smoothness() {
  Outcome o;
  for (const auto& c : quadric_singular_locus(1).charts) o.require(c.smooth, "k=1 singular on chart " + c.chart);
  for (int k : {3, 5}) {
    int singular = 0;
    for (const auto& c : quadric_singular_locus(k).charts) {
      if (c.smooth) continue;
      ++singular;
      o.require(c.chart == "w" && c.single_point && c.point == "[0:0:0:1], lam=0",
                "unexpected singular locus at k=" + std::to_string(k));
    }
    o.require(singular == 1, "expected one singular chart at k=" + std::to_string(k));
  }
  if (o.pass) o.detail = "k=1 smooth on 4 charts; k=3,5 singular only at ([0:0:0:1], 0)";
  return o;
}

Outcome terminality() {
  Outcome o;
  o.require(is_terminal(CyclicQuotient(2, {1, 1, 1})), "1/2(1,1,1)");
  o.require(!is_terminal(CyclicQuotient(3, {1, 1, 1})), "1/3(1,1,1)");
  o.require(is_terminal(CyclicQuotient(3, {1, 1, 2})), "1/3(1,1,2)");
  const auto t0 = std::chrono::steady_clock::now();
  const auto table = classify_terminal_types(kTerminalNMax);
  const long ms = elapsed_ms(t0);
  o.require(table.counterexamples.empty(), "counterexamples found");
  o.require(ms < kTerminalBudgetMs, "classification took " + std::to_string(ms) + " ms");
  for (const auto& w : {std::vector<int>{1, 1, 1, 2}, std::vector<int>{1, 1, 2, 3}}) {
    for (const auto& v : wps_singularity_report(w)) o.require(v.terminal.value_or(false), "non-terminal vertex");
  }
  if (o.pass) {
    o.detail = std::to_string(table.checked) + " types up to n=50, no counterexample, " + std::to_string(ms) + " ms";
  }
  return o;
}

Outcome lattice_analysis() {
  Outcome o;
  const int expected[] = {0, 3, 7};
  std::string counts;
  for (int r = 0; r <= 2; ++r) {
    const auto n = minus_one_curves(r).size();
    counts += (r ? "," : "") + std::to_string(n);
    o.require(static_cast<int>(n) == expected[r], "minus_one_curves(" + std::to_string(r) + ") = " +
                                                      std::to_string(n) + ", expected " + std::to_string(expected[r]));
  }
  for (auto f : {FiberKind::Sigma1, FiberKind::Blowup1, FiberKind::Blowup2}) {
    o.require(homology_lemma_cases(f).pass, "no witness for " + to_string(f));
  }
  const std::vector<std::pair<std::string, int>> products{{"C1.C2", 1}, {"C2.C3", 1}, {"C1.C3", 0}};
  o.require(homology_lemma_cases(FiberKind::Blowup1).named_products == products, "C1.C2, C2.C3, C1.C3");
  o.detail = (o.pass ? "" : o.detail + "; ") + "counts (" + counts + ")";
  return o;
}

Outcome normalization() {
  Outcome o;
  Rng rng(3105);
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < kNormalizationTrials && o.pass; ++i) {
    const int n = testing::uniform(rng, 1, 5), k0 = testing::uniform(rng, 0, 6), ki = testing::uniform(rng, 0, 6);
    const auto start = construct_twisted(n, k0, ki);
    try {
      const auto norm = figure1_normalize(start);
      o.require(norm.stop == Stop::A, "did not stop at A");
      o.require(static_cast<int>(norm.transcript.size()) == k0 + ki, "wrong step count");
      o.require(replay(n, inverse_transcript(norm.transcript)) == start, "round trip differs");
    } catch (const StopB&) {
      o.require(false, "Stop(B) reached");
    }
  }
  const long ms = elapsed_ms(t0);
  o.require(ms < kNormalizationBudgetMs, "took " + std::to_string(ms) + " ms");
  if (o.pass) o.detail = "500 states, all Stop(A) in k0+kinf steps, round trips exact, " + std::to_string(ms) + " ms";
  return o;
}

Outcome engine_soundness() {
  Outcome o;
  auto s_criterion = [&](const std::vector<Polynomial>& basis, const std::string& label) {
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = i + 1; j < basis.size(); ++j) {
        o.require(reduce(s_polynomial(basis[i], basis[j]), basis).is_zero(), "S-polynomial residue in " + label);
      }
    }
  };
  int bases = 0;
  for (int k : kOddTwists) {
    s_criterion(quadric_ideal(k).groebner_basis(), "quadric");
    ++bases;
  }
  for (int k : kF4Twists) {
    s_criterion(derive_f4_ideal(k).kernel.groebner_basis(), "F4 kernel");
    s_criterion(Ideal(derive_f4_ideal(k).quadrics).groebner_basis(), "F4 quadrics");
    bases += 2;
  }

  Rng rng(1979);
  const auto c = VariableContext::make({"x", "y", "z"});
  int instances = 0;
  while (instances < kMembershipInstances) {
    std::vector<Polynomial> gens{testing::random_homogeneous(c, rng, 3, 2), testing::random_homogeneous(c, rng, 3, 2)};
    Polynomial p =
        testing::random_homogeneous(c, rng, 2, 1) * gens[0] + testing::random_homogeneous(c, rng, 2, 1) * gens[1];
    if (instances % 2) p += testing::random_homogeneous(c, rng, 2, 3);
    if (p.is_zero()) continue;
    const Ideal ideal(gens);
    s_criterion(ideal.groebner_basis(), "random ideal");
    ++bases;
    o.require(contains(ideal, p) == testing::macaulay_member(gens, p), "membership disagrees on " + p.to_string());
    ++instances;
  }

  const auto q = quadric_context();
  for (int i = 0; i < kLeibnizPairs; ++i) {
    std::map<std::string, Polynomial> imgs;
    for (const auto& n : q->names()) imgs.emplace(n, testing::random_polynomial(q, rng, 3, 2, true));
    const Derivation d(q, imgs);
    const auto a = testing::random_polynomial(q, rng, 4, 3, true);
    const auto b = testing::random_polynomial(q, rng, 4, 3, true);
    o.require(d.apply(a * b) == d.apply(a) * b + a * d.apply(b), "Leibniz rule");
  }
  o.require(!check_bracket_relations(sl2_v2_triple(q), kBracketDegree), "v2 brackets");
  for (int k : kF4Twists) o.require(!check_bracket_relations(sl2_v4_triple(f4_context(), k), kBracketDegree), "v4 brackets");
  if (o.pass) {
    o.detail = std::to_string(bases) + " bases pass the S-criterion; " + std::to_string(instances) +
               " oracle agreements; brackets to degree 4";
  }
  return o;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
  }
  const std::vector<Criterion> criteria{
      {1, "gluing identity", gluing_identity},
      {2, "equivariance", equivariance},
      {3, "sl2 stability", sl2_stability},
      {4, "embedding identity", embedding_identity},
      {5, "quotient identity", quotient_identity},
      {6, "generator adjudication", adjudication},
      {7, "smoothness and singular locus", smoothness},
      {8, "terminality", terminality},
      {9, "lattice analysis", lattice_analysis},
      {10, "normalization algorithm", normalization},
      {11, "engine soundness", engine_soundness},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    if (only && c.id != only) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << c.id << " (" << c.name << "): " << o.detail << "\n";
  }
  return failures ? 1 : 0;
}
