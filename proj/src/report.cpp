#include "qhv/report.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

namespace qhv {

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Error:
      return "error";
  }
  return "?";
}

Json to_json_stable(const CheckReport& r) {
  Json j;
  j["check"] = r.check;
  j["params"] = r.params;
  j["status"] = to_string(r.status);
  j["witnesses"] = r.witnesses;
  return j;
}

Json to_json(const CheckReport& r) {
  Json j = to_json_stable(r);
  j["duration_ms"] = r.duration_ms;
  return j;
}

std::string to_human(const CheckReport& r) {
  std::string status = to_string(r.status);
  std::transform(status.begin(), status.end(), status.begin(), [](unsigned char c) { return std::toupper(c); });
  std::ostringstream os;
  os << status << "  " << r.check;
  for (const auto& [key, value] : r.params.items()) os << " " << key << "=" << value.dump();
  os << "  (" << r.witnesses.size() << " witness" << (r.witnesses.size() == 1 ? "" : "es") << ", " << r.duration_ms
     << " ms)";
  if (r.status != Status::Pass) {
    for (const auto& w : r.witnesses) os << "\n    " << w.dump();
  }
  return os.str();
}

CheckReport execute(const PendingCheck& c) {
  CheckReport r;
  r.check = c.check;
  r.params = c.params;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    c.run(r);
  } catch (const std::exception& e) {
    r.status = Status::Error;
    r.witnesses = Json::array({Json{{"error", e.what()}}});
  }
  const auto t1 = std::chrono::steady_clock::now();
  r.duration_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  if (r.status == Status::Fail && r.witnesses.empty()) {
    r.witnesses.push_back(Json{{"error", "check failed without a recorded witness"}});
  }
  return r;
}

namespace {

Status verdict(bool ok) { return ok ? Status::Pass : Status::Fail; }

std::string monomial_string(const Context& ctx, const Exponents& e) {
  return Polynomial::monomial(ctx, e).to_string();
}

Json class_json(const DivisorClass& d) { return Json(d.to_string()); }

}  // namespace

PendingCheck gluing_check(Family family, int k, int l) {
  return {"gluing", Json{{"family", to_string(family)}, {"k", k}, {"l", l}}, [=](CheckReport& r) {
            const auto fam = glue(family, k, l);
            const auto rep = verify_gluing(fam);
            const auto& ctx = fam.chart0.ideal.context();
            for (const auto& e : rep.entries) {
              r.witnesses.push_back(Json{{"generator", e.generator.to_string()},
                                         {"substituted", e.substituted.to_string()},
                                         {"cleared_power", monomial_string(ctx, e.denominator)},
                                         {"unit_shift", monomial_string(ctx, e.cleared.unit)},
                                         {"cleared", e.cleared.polynomial.to_string()},
                                         {"member", e.member}});
            }
            r.witnesses.push_back(Json{{"backward_inclusion", rep.backward_pass}});
            r.status = verdict(rep.pass && rep.backward_pass);
          }};
}

PendingCheck equivariance_check(Family family, int k, int l) {
  return {"equivariance", Json{{"family", to_string(family)}, {"k", k}, {"l", l}}, [=](CheckReport& r) {
            const auto rep = verify_equivariance(glue(family, k, l));
            for (const auto& e : rep.torus) {
              r.witnesses.push_back(Json{{"variable", e.variable},
                                         {"act_then_glue", e.act_then_glue.to_string()},
                                         {"glue_then_act", e.glue_then_act.to_string()},
                                         {"equal", e.equal}});
            }
            r.witnesses.push_back(Json{{"lam_product_invariant", rep.lam_product_invariant},
                                       {"sl2_commutes", rep.sl2_commutes},
                                       {"sl2_support_disjoint", rep.sl2_support_disjoint}});
            r.status = verdict(rep.pass);
          }};
}

PendingCheck f4_adjudication_check(int k) {
  return {"f4_adjudication", Json{{"k", k}}, [=](CheckReport& r) {
            const auto& d = derive_f4_ideal(k);
            Json quadrics = Json::array();
            for (const auto& q : d.quadrics) quadrics.push_back(q.to_string());
            r.witnesses.push_back(Json{{"derived_quadrics", quadrics},
                                       {"quadrics_generate_kernel", d.quadrics_generate_kernel}});
            bool construction_ok = true;
            Json non_members = Json::array();
            for (const auto& c : d.claims) {
              r.witnesses.push_back(
                  Json{{"source", c.source}, {"printed", c.text}, {"member", c.member}, {"verbatim", c.verbatim}});
              if (c.source == "construction") construction_ok = construction_ok && c.member && c.verbatim;
              if (!c.member) non_members.push_back(c.source + ": " + c.text);
            }
            r.witnesses.push_back(Json{{"non_members", non_members}});
            r.status = verdict(d.quadrics_generate_kernel && d.quadrics.size() == 6 && construction_ok);
          }};
}

PendingCheck f4_embedding_check(int k) {
  return {"f4_embedding", Json{{"k", k}}, [=](CheckReport& r) {
            const auto rep = verify_embedding(k);
            for (const auto& [gen, img] : rep.images) {
              r.witnesses.push_back(Json{{"generator", gen.to_string()}, {"image", img.to_string()}});
            }
            r.status = verdict(rep.pass);
          }};
}

PendingCheck quotient_check(int k) {
  return {"quotient", Json{{"k", k}}, [=](CheckReport& r) {
            const auto rep = verify_quotient(k);
            for (const auto& e : rep.entries) {
              r.witnesses.push_back(Json{{"generator", e.generator.to_string()},
                                         {"pullback", e.pullback.to_string()},
                                         {"member", e.member},
                                         {"sign_invariant", e.sign_invariant}});
            }
            r.status = verdict(rep.pass);
          }};
}

PendingCheck sl2_invariance_check(Family family, int k) {
  return {"sl2_invariance", Json{{"family", to_string(family)}, {"k", k}}, [=](CheckReport& r) {
            const bool quadric = family == Family::Quadric;
            const Ideal ideal = quadric ? quadric_ideal(k) : Ideal(derive_f4_ideal(k).quadrics);
            const auto t = quadric ? sl2_v2_triple(quadric_context()) : sl2_v4_triple(f4_context(), k);
            bool ok = true;
            const std::pair<const char*, const Derivation*> ops[] = {{"E", &t.e}, {"H", &t.h}, {"F", &t.f}};
            for (const auto& g : ideal.generators()) {
              for (const auto& [name, d] : ops) {
                const auto nf = normal_form(d->apply(g), ideal);
                ok = ok && nf.is_zero();
                r.witnesses.push_back(Json{{"generator", g.to_string()}, {"operator", name}, {"normal_form", nf.to_string()}});
              }
            }
            r.status = verdict(ok);
          }};
}

PendingCheck singular_locus_check(int k) {
  return {"singular_locus", Json{{"k", k}}, [=](CheckReport& r) {
            const auto rep = quadric_singular_locus(k);
            bool ok = true;
            for (const auto& c : rep.charts) {
              Json w{{"chart", c.chart}, {"smooth", c.smooth}};
              if (!c.smooth) {
                w["single_point"] = c.single_point;
                w["point"] = c.point;
              }
              r.witnesses.push_back(w);
              // k = 1: smooth everywhere. k ≥ 2: one singular point, in the w chart.
              if (k == 1 || c.chart != "w") {
                ok = ok && c.smooth;
              } else {
                ok = ok && !c.smooth && c.single_point;
              }
            }
            r.status = verdict(ok && !rep.charts.empty());
          }};
}

PendingCheck terminal_check(int n_max) {
  return {"terminal_classification", Json{{"n_max", n_max}}, [=](CheckReport& r) {
            const auto t = classify_terminal_types(n_max);
            Json ce = Json::array();
            for (const auto& q : t.counterexamples) {
              ce.push_back(Json{{"type", q.to_string()}, {"terminal", is_terminal(q)}});
            }
            r.witnesses.push_back(Json{{"checked", t.checked}, {"terminal", t.terminal}, {"counterexamples", ce}});
            r.status = verdict(t.counterexamples.empty());
          }};
}

PendingCheck wps_check(const std::vector<int>& weights) {
  return {"wps", Json{{"weights", weights}}, [=](CheckReport& r) {
            bool ok = true;
            for (const auto& v : wps_singularity_report(weights)) {
              Json w{{"vertex", v.vertex}, {"type", v.type.to_string()}, {"isolated", v.isolated}};
              w["terminal"] = v.terminal ? Json(*v.terminal) : Json(nullptr);
              ok = ok && v.terminal.value_or(false);
              r.witnesses.push_back(w);
            }
            r.status = verdict(ok);
          }};
}

PendingCheck bundle_normalize_check(int n, int k0, int k_inf) {
  return {"bundle_normalize", Json{{"n", n}, {"k0", k0}, {"kinf", k_inf}}, [=](CheckReport& r) {
            const auto start = construct_twisted(n, k0, k_inf);
            const auto norm = figure1_normalize(start);
            const auto rebuilt = inverse_transcript(norm.transcript);
            const auto replayed = replay(n, rebuilt);
            Json steps = Json::array();
            for (auto s : norm.transcript) steps.push_back(to_string(s));
            Json construction = Json::array();
            for (auto s : start.transcript) construction.push_back(to_string(s));
            const bool steps_ok = static_cast<int>(norm.transcript.size()) == k0 + k_inf;
            const bool round_trip = rebuilt == start.transcript && replayed == start;
            r.witnesses.push_back(Json{{"construction", construction},
                                       {"transcript", steps},
                                       {"fiber_trace", norm.fiber_trace},
                                       {"stop", norm.stop == Stop::A ? "A" : "B"},
                                       {"round_trip", round_trip}});
            r.status = verdict(norm.stop == Stop::A && norm.final_state.fiber_m == 0 && steps_ok && round_trip);
          }};
}

PendingCheck homology_check(FiberKind fiber) {
  return {"homology_lemma", Json{{"fiber", to_string(fiber)}}, [=](CheckReport& r) {
            const auto rep = homology_lemma_cases(fiber);
            for (const auto& c : rep.cases) {
              Json ws = Json::array();
              for (std::size_t i = 0; i < c.witnesses.size(); ++i) {
                ws.push_back(Json{{"curve", class_json(c.witnesses[i])}, {"trace_dot_curve", c.witness_products[i]}});
              }
              r.witnesses.push_back(Json{{"case", c.label}, {"trace", class_json(c.trace)}, {"witnesses", ws}});
            }
            bool products_ok = true;
            if (!rep.named_products.empty()) {
              Json np = Json::object();
              for (const auto& [name, v] : rep.named_products) np[name] = v;
              r.witnesses.push_back(Json{{"named_products", np}});
              const std::vector<std::pair<std::string, int>> expected = {{"C1.C2", 1}, {"C2.C3", 1}, {"C1.C3", 0}};
              products_ok = rep.named_products == expected;
            }
            r.status = verdict(rep.pass && products_ok);
          }};
}

PendingCheck minus_one_curves_check(int r_points) {
  return {"minus_one_curves", Json{{"r", r_points}}, [=](CheckReport& r) {
            const auto curves = minus_one_curves(r_points);
            // P1×P1 blown up in r ≥ 1 general points is P2 blown up in r + 1
            // points, whose lines are the s exceptional curves and the C(s, 2)
            // lines through pairs.
            const int s = r_points + 1;
            const int expected = r_points == 0 ? 0 : s + s * (s - 1) / 2;
            static const int printed[] = {0, 3, 7};
            Json classes = Json::array();
            for (const auto& c : curves) classes.push_back(class_json(c));
            r.witnesses.push_back(Json{{"count", curves.size()},
                                       {"expected", expected},
                                       {"printed", printed[r_points]},
                                       {"matches_printed", static_cast<int>(curves.size()) == printed[r_points]},
                                       {"classes", classes}});
            r.status = verdict(static_cast<int>(curves.size()) == expected);
          }};
}

}  // namespace qhv
