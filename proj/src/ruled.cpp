#include "qhv/ruled.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace qhv {

Lattice Lattice::hirzebruch(int n) {
  if (n < 0) throw DomainError("Hirzebruch index must be nonnegative");
  return Lattice{Kind::Hirzebruch, n};
}

Lattice Lattice::quadric_blowup(int r) {
  if (r < 0) throw DomainError("number of blown-up points must be nonnegative");
  return Lattice{Kind::QuadricBlowup, r};
}

std::size_t Lattice::rank() const {
  return kind == Kind::Hirzebruch ? 2 : 2 + static_cast<std::size_t>(parameter);
}

std::string Lattice::to_string() const {
  return (kind == Kind::Hirzebruch ? "hirzebruch(" : "quadric_blowup(") + std::to_string(parameter) + ")";
}

DivisorClass::DivisorClass(Lattice l, std::vector<int> c) : lattice(l), coords(std::move(c)) {
  if (coords.size() != lattice.rank()) throw DomainError("coordinate vector does not match " + lattice.to_string());
}

std::string DivisorClass::to_string() const {
  std::vector<std::pair<int, std::string>> parts;
  if (lattice.kind == Lattice::Kind::Hirzebruch) {
    parts = {{coords[0], "C0"}, {coords[1], "F"}};
  } else {
    parts = {{coords[0], "f1"}, {coords[1], "f2"}};
    for (std::size_t i = 2; i < coords.size(); ++i) parts.emplace_back(-coords[i], "e" + std::to_string(i - 1));
  }
  std::string out;
  for (const auto& [c, name] : parts) {
    if (c == 0) continue;
    if (out.empty()) {
      out += c < 0 ? "-" : "";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    int m = c < 0 ? -c : c;
    if (m != 1) out += std::to_string(m) + "*";
    out += name;
  }
  return out.empty() ? "0" : out;
}

DivisorClass operator+(const DivisorClass& a, const DivisorClass& b) {
  if (!(a.lattice == b.lattice)) throw DomainError("lattice mismatch");
  std::vector<int> c(a.coords.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coords[i] + b.coords[i];
  return DivisorClass(a.lattice, std::move(c));
}

int intersect(const DivisorClass& a, const DivisorClass& b) {
  if (!(a.lattice == b.lattice)) {
    throw DomainError("lattice mismatch: " + a.lattice.to_string() + " vs " + b.lattice.to_string());
  }
  const auto& x = a.coords;
  const auto& y = b.coords;
  if (a.lattice.kind == Lattice::Kind::Hirzebruch) {
    return x[0] * y[1] + y[0] * x[1] - a.lattice.parameter * x[0] * y[0];
  }
  int v = x[0] * y[1] + x[1] * y[0];
  for (std::size_t i = 2; i < x.size(); ++i) v -= x[i] * y[i];
  return v;
}

DivisorClass anticanonical(const Lattice& l) {
  if (l.kind == Lattice::Kind::Hirzebruch) return DivisorClass(l, {2, l.parameter + 2});
  std::vector<int> c(l.rank(), 1);
  c[0] = c[1] = 2;
  return DivisorClass(l, std::move(c));
}

namespace {

void for_each_in_box(const Lattice& l, int bound, const std::function<void(const DivisorClass&)>& fn) {
  std::vector<int> c(l.rank(), -bound);
  while (true) {
    fn(DivisorClass(l, c));
    std::size_t i = 0;
    while (i < c.size() && c[i] == bound) c[i++] = -bound;
    if (i == c.size()) break;
    ++c[i];
  }
}

}  // namespace

std::vector<DivisorClass> minus_one_curves(int r, int bound) {
  if (r < 0 || r > 2) throw DomainError("only r in {0, 1, 2} is supported, got " + std::to_string(r));
  const auto l = Lattice::quadric_blowup(r);
  const auto k = anticanonical(l);
  std::vector<DivisorClass> out;
  for_each_in_box(l, bound, [&](const DivisorClass& d) {
    if (intersect(d, d) == -1 && intersect(d, k) == 1) out.push_back(d);
  });
  return out;
}

std::vector<DivisorClass> curve_cone_generators(const Lattice& l) {
  if (l.kind == Lattice::Kind::Hirzebruch) return {DivisorClass(l, {1, 0}), DivisorClass(l, {0, 1})};
  if (l.parameter == 0) return {DivisorClass(l, {1, 0}), DivisorClass(l, {0, 1})};
  return minus_one_curves(l.parameter);
}

std::string to_string(FiberKind f) {
  switch (f) {
    case FiberKind::Sigma1:
      return "sigma1";
    case FiberKind::Blowup1:
      return "blowup1";
    case FiberKind::Blowup2:
      return "blowup2";
  }
  return "?";
}

HomologyReport homology_lemma_cases(FiberKind fiber, int bound) {
  HomologyReport rep{fiber, bound, {}, {}, false};
  const Lattice l = fiber == FiberKind::Sigma1    ? Lattice::hirzebruch(1)
                    : fiber == FiberKind::Blowup1 ? Lattice::quadric_blowup(1)
                                                  : Lattice::quadric_blowup(2);
  const auto gens = curve_cone_generators(l);
  std::vector<DivisorClass> candidates = gens;
  for_each_in_box(l, bound, [&](const DivisorClass& d) {
    int g = 0;
    for (int c : d.coords) g = std::gcd(g, c);
    if (g != 1) return;
    for (const auto& g : gens) {
      if (intersect(d, g) < 0) return;
    }
    if (std::find(candidates.begin(), candidates.end(), d) == candidates.end()) candidates.push_back(d);
  });

  auto add_case = [&](std::string label, std::vector<DivisorClass> comps) {
    DivisorClass trace = comps.front();
    for (std::size_t i = 1; i < comps.size(); ++i) trace = trace + comps[i];
    HomologyCase hc{std::move(label), std::move(comps), trace, {}, {}};
    for (const auto& c : candidates) {
      int v = intersect(trace, c);
      if (v <= 0) {
        hc.witnesses.push_back(c);
        hc.witness_products.push_back(v);
      }
    }
    rep.cases.push_back(std::move(hc));
  };

  switch (fiber) {
    case FiberKind::Sigma1:
      add_case("C0", {DivisorClass(l, {1, 0})});
      break;
    case FiberKind::Blowup1: {
      const DivisorClass c1(l, {1, 0, 1}), c2(l, {0, 0, -1}), c3(l, {0, 1, 1});
      rep.named_products = {{"C1.C2", intersect(c1, c2)}, {"C2.C3", intersect(c2, c3)}, {"C1.C3", intersect(c1, c3)}};
      add_case("C1+C2", {c1, c2});
      add_case("C2+C3", {c2, c3});
      add_case("C2", {c2});
      break;
    }
    case FiberKind::Blowup2:
      for (const auto& c : gens) add_case(c.to_string(), {c});
      break;
  }
  rep.pass = !rep.cases.empty() &&
             std::all_of(rep.cases.begin(), rep.cases.end(), [](const HomologyCase& c) { return !c.witnesses.empty(); });
  return rep;
}

int elm_surface(int n, bool on_negative_section) {
  if (n < 0) throw DomainError("Hirzebruch index must be nonnegative");
  if (n == 0) return 1;
  return on_negative_section ? n + 1 : n - 1;
}

// ---------------------------------------------------------------------------

std::string to_string(ElmCenter c) {
  switch (c) {
    case ElmCenter::E0:
      return "E0";
    case ElmCenter::Einf:
      return "Einf";
    case ElmCenter::CurveInA0:
      return "curve_in_A0";
    case ElmCenter::CurveInAinf:
      return "curve_in_Ainf";
    case ElmCenter::DiagonalOrbit:
      return "diagonal_orbit";
    case ElmCenter::IntersectionOrbit:
      return "intersection_orbit";
  }
  return "?";
}

bool BundleState::consistent() const {
  return k0 >= 0 && k_inf >= 0 && fiber_m == k0 + k_inf && a0_curves == (k0 > 0 ? 2 : 1) &&
         ainf_curves == (k_inf > 0 ? 2 : 1);
}

BundleState trivial_bundle(int n) {
  if (n < 0) throw DomainError("base index must be nonnegative");
  BundleState s;
  s.base_n = n;
  return s;
}

BundleState apply_step(const BundleState& s, ElmCenter c) {
  BundleState t = s;
  switch (c) {
    case ElmCenter::E0:
      ++t.k0;
      ++t.fiber_m;
      t.a0_curves = 2;
      break;
    case ElmCenter::Einf:
      ++t.k_inf;
      ++t.fiber_m;
      t.ainf_curves = 2;
      break;
    case ElmCenter::CurveInA0:
      if (t.a0_curves != 2) throw DomainError("A0 carries a single invariant curve");
      --t.k0;
      --t.fiber_m;
      t.a0_curves = t.k0 > 0 ? 2 : 1;
      break;
    case ElmCenter::CurveInAinf:
      if (t.ainf_curves != 2) throw DomainError("A-infinity carries a single invariant curve");
      --t.k_inf;
      --t.fiber_m;
      t.ainf_curves = t.k_inf > 0 ? 2 : 1;
      break;
    case ElmCenter::DiagonalOrbit:
    case ElmCenter::IntersectionOrbit:
      throw DomainError("Σ0 steps act on split bundles only; use sigma0_twist");
  }
  t.transcript.push_back(c);
  return t;
}

BundleState replay(int n, std::span<const ElmCenter> steps) {
  BundleState s = trivial_bundle(n);
  for (auto c : steps) s = apply_step(s, c);
  return s;
}

BundleState construct_twisted(int n, int k0, int k_inf) {
  if (n < 1) throw DomainError("construct_twisted needs n >= 1; the Σ0 case is sigma0_twist");
  if (k0 < 0 || k_inf < 0) throw DomainError("twist counters must be nonnegative");
  std::vector<ElmCenter> steps(static_cast<std::size_t>(k_inf), ElmCenter::Einf);
  steps.insert(steps.end(), static_cast<std::size_t>(k0), ElmCenter::E0);
  return replay(n, steps);
}

Normalization figure1_normalize(const BundleState& s) {
  Normalization out{s, {}, {s.fiber_m}, Stop::A};
  BundleState& cur = out.final_state;
  while (cur.fiber_m != 0) {
    ElmCenter step;
    if (cur.a0_curves == 2) {
      step = ElmCenter::CurveInA0;
    } else if (cur.ainf_curves == 2) {
      step = ElmCenter::CurveInAinf;
    } else {
      throw StopB("Stop(B) reached with F_X of index " + std::to_string(cur.fiber_m));
    }
    const int before = cur.section_self_intersection();
    cur = apply_step(cur, step);
    if (cur.section_self_intersection() != before + 1) throw Error("self-intersection did not rise by one");
    out.transcript.push_back(step);
    out.fiber_trace.push_back(cur.fiber_m);
  }
  return out;
}

std::vector<ElmCenter> inverse_transcript(std::span<const ElmCenter> normalization) {
  std::vector<ElmCenter> out;
  for (auto it = normalization.rbegin(); it != normalization.rend(); ++it) {
    switch (*it) {
      case ElmCenter::CurveInA0:
        out.push_back(ElmCenter::E0);
        break;
      case ElmCenter::CurveInAinf:
        out.push_back(ElmCenter::Einf);
        break;
      default:
        throw DomainError("not a normalization step: " + to_string(*it));
    }
  }
  return out;
}

BundleState sigma0_twist(int n) {
  if (n == 0) throw DomainError("the Σ0 twist needs n != 0: the split bundle O(0,0) ⊕ O is trivial");
  if (n < 0) throw DomainError("the Σ0 twist index must be positive");
  BundleState s = trivial_bundle(0);
  s.split_degrees = std::make_pair(n, -n);
  s.transcript.push_back(ElmCenter::DiagonalOrbit);
  s.sections_intersect = true;
  return s;
}

BundleState sigma0_back_transform(const BundleState& s) {
  if (!s.split_degrees || !s.sections_intersect) throw DomainError("no intersection orbit to transform at");
  BundleState t = s;
  t.transcript.push_back(ElmCenter::IntersectionOrbit);
  t.sections_intersect = false;
  return t;
}

}  // namespace qhv
