#include "qhv/cli.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

namespace qhv::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int parse_int(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  try {
    std::size_t used = 0;
    const int v = std::stoi(t, &used);
    if (used == t.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError("bad integer '" + text + "' for " + what);
}

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_int(item, what));
  if (out.empty()) throw UsageError("empty list for " + what);
  return out;
}

std::vector<std::vector<int>> parse_weight_groups(const std::vector<std::string>& groups) {
  std::vector<std::vector<int>> out;
  for (const auto& g : groups) {
    auto w = parse_int_list(g, "weights");
    if (w.size() != 4) throw UsageError("weights need four entries, got '" + g + "'");
    out.push_back(std::move(w));
  }
  return out;
}

const std::vector<int>& quadric_default() {
  static const std::vector<int> v{1, 3, 5, 7, 9};
  return v;
}

const std::vector<int>& f4_default() {
  static const std::vector<int> v{0, 1, 2, 3};
  return v;
}

void require_odd_positive(const std::vector<int>& ks, const std::string& what) {
  for (int k : ks) {
    if (k < 1 || k % 2 == 0) {
      throw UsageError("quadric twist " + what + "=" + std::to_string(k) + " must be odd and positive");
    }
  }
}

void require_nonnegative(const std::vector<int>& ks, const std::string& what) {
  for (int k : ks) {
    if (k < 0) throw UsageError(what + "=" + std::to_string(k) + " must be nonnegative");
  }
}

bool wants(const Settings& s, const std::string& family) {
  const std::string f = s.family.value_or("both");
  return f == "both" || f == family;
}

}  // namespace

std::map<std::string, std::string> parse_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) throw UsageError("config line " + std::to_string(lineno) + ": empty key");
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

Settings settings_from_config(const std::map<std::string, std::string>& kv) {
  Settings s;
  for (const auto& [key, value] : kv) {
    if (key == "k") {
      s.k = parse_int_list(value, key);
    } else if (key == "l") {
      s.l = parse_int_list(value, key);
    } else if (key == "n-max" || key == "n_max") {
      s.n_max = parse_int(value, key);
    } else if (key == "n") {
      s.n = parse_int(value, key);
    } else if (key == "k0") {
      s.k0 = parse_int(value, key);
    } else if (key == "kinf") {
      s.k_inf = parse_int(value, key);
    } else if (key == "weights") {
      std::vector<std::string> groups;
      std::stringstream ss(value);
      std::string g;
      while (std::getline(ss, g, ';')) groups.push_back(g);
      s.weights = parse_weight_groups(groups);
    } else if (key == "family") {
      if (value != "quadric" && value != "f4" && value != "both") throw UsageError("bad family '" + value + "'");
      s.family = value;
    } else if (key == "jobs") {
      s.jobs = parse_int(value, key);
    } else if (key == "format") {
      if (value != "json" && value != "human") throw UsageError("bad format '" + value + "'");
      s.human = value == "human";
    } else {
      throw UsageError("unknown config key '" + key + "'");
    }
  }
  return s;
}

Settings merge(const Settings& flags, const Settings& config) {
  Settings s = config;
  if (flags.k) s.k = flags.k;
  if (flags.l) s.l = flags.l;
  if (flags.n_max) s.n_max = flags.n_max;
  if (flags.n) s.n = flags.n;
  if (flags.k0) s.k0 = flags.k0;
  if (flags.k_inf) s.k_inf = flags.k_inf;
  if (flags.weights) s.weights = flags.weights;
  if (flags.family) s.family = flags.family;
  if (flags.jobs) s.jobs = flags.jobs;
  if (flags.human) s.human = flags.human;
  return s;
}

std::vector<PendingCheck> build_suite(const std::string& suite, const Settings& s) {
  std::vector<PendingCheck> out;
  if (suite == "verify-quadric") {
    const auto ks = s.k.value_or(quadric_default());
    const auto ls = s.l.value_or(quadric_default());
    require_odd_positive(ks, "k");
    require_odd_positive(ls, "l");
    for (int k : ks) out.push_back(sl2_invariance_check(Family::Quadric, k));
    for (int k : ks) {
      for (int l : ls) out.push_back(gluing_check(Family::Quadric, k, l));
    }
  } else if (suite == "verify-f4") {
    const auto ks = s.k.value_or(f4_default());
    const auto ls = s.l.value_or(f4_default());
    require_nonnegative(ks, "k");
    require_nonnegative(ls, "l");
    for (int k : ks) {
      out.push_back(f4_adjudication_check(k));
      out.push_back(f4_embedding_check(k));
      out.push_back(sl2_invariance_check(Family::F4, k));
    }
    for (int k : ks) {
      for (int l : ls) out.push_back(gluing_check(Family::F4, k, l));
    }
  } else if (suite == "verify-quotient") {
    const auto ks = s.k.value_or(f4_default());
    require_nonnegative(ks, "k");
    for (int k : ks) out.push_back(quotient_check(k));
  } else if (suite == "equivariance") {
    if (wants(s, "quadric")) {
      const auto ks = s.k.value_or(quadric_default());
      const auto ls = s.l.value_or(quadric_default());
      require_odd_positive(ks, "k");
      require_odd_positive(ls, "l");
      for (int k : ks) {
        for (int l : ls) out.push_back(equivariance_check(Family::Quadric, k, l));
      }
    }
    if (wants(s, "f4")) {
      const auto ks = s.k.value_or(f4_default());
      const auto ls = s.l.value_or(f4_default());
      require_nonnegative(ks, "k");
      require_nonnegative(ls, "l");
      for (int k : ks) {
        for (int l : ls) out.push_back(equivariance_check(Family::F4, k, l));
      }
    }
  } else if (suite == "singular-locus") {
    const auto ks = s.k.value_or(std::vector<int>{1, 3, 5});
    for (int k : ks) {
      if (k < 1) throw UsageError("singular-locus needs k >= 1");
      out.push_back(singular_locus_check(k));
    }
  } else if (suite == "terminal") {
    const int n_max = s.n_max.value_or(50);
    if (n_max < 2) throw UsageError("n-max must be at least 2");
    out.push_back(terminal_check(n_max));
  } else if (suite == "wps") {
    const auto groups = s.weights.value_or(std::vector<std::vector<int>>{{1, 1, 1, 2}, {1, 1, 2, 3}});
    for (const auto& w : groups) out.push_back(wps_check(w));
  } else if (suite == "bundle-normalize") {
    const int n = s.n.value_or(1), k0 = s.k0.value_or(2), k_inf = s.k_inf.value_or(1);
    if (n < 1) throw UsageError("bundle-normalize needs n >= 1");
    if (k0 < 0 || k_inf < 0) throw UsageError("k0 and kinf must be nonnegative");
    out.push_back(bundle_normalize_check(n, k0, k_inf));
  } else if (suite == "dp-homology") {
    for (int r = 0; r <= 2; ++r) out.push_back(minus_one_curves_check(r));
    for (auto f : {FiberKind::Sigma1, FiberKind::Blowup1, FiberKind::Blowup2}) out.push_back(homology_check(f));
  } else if (suite == "all") {
    for (const char* name : {"verify-quadric", "verify-f4", "verify-quotient", "equivariance", "singular-locus",
                             "terminal", "wps", "bundle-normalize", "dp-homology"}) {
      auto part = build_suite(name, s);
      out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
  } else {
    throw UsageError("unknown suite '" + suite + "'");
  }
  return out;
}

std::vector<CheckReport> run_checks(const std::vector<PendingCheck>& checks, int jobs) {
  std::vector<CheckReport> results(checks.size());
  if (jobs <= 1 || checks.size() <= 1) {
    for (std::size_t i = 0; i < checks.size(); ++i) results[i] = execute(checks[i]);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), checks.size());
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < checks.size(); i = next++) results[i] = execute(checks[i]);
    });
  }
  for (auto& th : pool) th.join();
  return results;
}

namespace {

int compare_golden(const std::filesystem::path& file, const std::vector<CheckReport>& reports, std::ostream& err) {
  std::ifstream in(file);
  if (!in) {
    err << "golden file " << file << " not found (use --update-golden to create it)\n";
    return kExitUsage;
  }
  std::vector<std::string> expected;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) expected.push_back(line);
  }
  int status = kExitPass;
  if (expected.size() != reports.size()) {
    err << "golden mismatch: " << expected.size() << " stored reports, " << reports.size() << " produced\n";
    status = kExitFail;
  }
  for (std::size_t i = 0; i < std::min(expected.size(), reports.size()); ++i) {
    Json stored;
    try {
      stored = Json::parse(expected[i]);
    } catch (const std::exception& e) {
      err << "golden file " << file << " line " << i + 1 << ": " << e.what() << "\n";
      return kExitUsage;
    }
    stored.erase("duration_ms");
    const Json got = to_json_stable(reports[i]);
    if (stored != got) {
      err << "golden mismatch at report " << i + 1 << " (" << reports[i].check << ")\n  stored:   " << stored.dump()
          << "\n  produced: " << got.dump() << "\n";
      status = kExitFail;
    }
  }
  return status;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification of degenerations, quotient singularities and ruled bundles", "qhv"};
  app.require_subcommand(1);
  app.fallthrough();

  std::vector<int> k, l;
  int n_max = 0, n = 0, k0 = 0, k_inf = 0, jobs = 1;
  std::vector<std::string> weights;
  std::string family, golden, config;
  bool json = false, human = false, update_golden = false;

  auto* k_opt = app.add_option("--k", k, "twist(s) of the zero chart")->delimiter(',');
  auto* l_opt = app.add_option("--l", l, "twist(s) of the infinity chart")->delimiter(',');
  auto* nmax_opt = app.add_option("--n-max", n_max, "largest group order for the terminal classification");
  auto* n_opt = app.add_option("--n", n, "Hirzebruch index of the base");
  auto* k0_opt = app.add_option("--k0", k0, "construction steps centred in E0");
  auto* kinf_opt = app.add_option("--kinf", k_inf, "construction steps centred in Einf");
  auto* w_opt = app.add_option("--weights", weights, "four comma-separated weights; repeatable");
  auto* fam_opt = app.add_option("--family", family, "equivariance family")->check(CLI::IsMember({"quadric", "f4", "both"}));
  auto* jobs_opt = app.add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1, 256));
  auto* json_flag = app.add_flag("--json", json, "one JSON object per line (default)");
  auto* human_flag = app.add_flag("--human", human, "one readable line per check");
  json_flag->excludes(human_flag);
  app.add_option("--golden", golden, "directory of stored reports to compare against");
  app.add_flag("--update-golden", update_golden, "write the stored reports instead of comparing");
  app.add_option("--config", config, "flat key = value settings file");

  std::string verify_target;
  auto* verify = app.add_subcommand("verify", "gluing, elimination and quotient identities");
  verify->add_option("target", verify_target, "quadric, f4 or quotient")
      ->required()
      ->check(CLI::IsMember({"quadric", "f4", "quotient"}));
  std::vector<CLI::App*> subs{verify};
  const std::vector<std::pair<const char*, const char*>> top{
      {"equivariance", "torus-action compatibility of the twisted charts"},
      {"singular-locus", "Jacobian singular locus of the quadric charts"},
      {"terminal", "terminal cyclic quotient classification"},
      {"wps", "vertex singularities of weighted projective 3-spaces"},
      {"bundle-normalize", "construct a twisted bundle and normalize it"},
      {"dp-homology", "(-1)-curves and homology-lemma witnesses"},
      {"all", "every suite with default parameters"}};
  for (const auto& [name, help] : top) {
    subs.push_back(app.add_subcommand(name, help));
  }
  for (auto* s : subs) s->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "qhv: " << e.what() << "\n";
    return kExitUsage;
  }

  std::string suite;
  for (auto* s : subs) {
    if (s->parsed()) suite = s == verify ? "verify-" + verify_target : s->get_name();
  }

  Settings flags;
  if (k_opt->count()) flags.k = k;
  if (l_opt->count()) flags.l = l;
  if (nmax_opt->count()) flags.n_max = n_max;
  if (n_opt->count()) flags.n = n;
  if (k0_opt->count()) flags.k0 = k0;
  if (kinf_opt->count()) flags.k_inf = k_inf;
  if (fam_opt->count()) flags.family = family;
  if (jobs_opt->count()) flags.jobs = jobs;
  if (human) flags.human = true;
  if (json) flags.human = false;

  std::vector<PendingCheck> checks;
  Settings settings;
  try {
    if (w_opt->count()) flags.weights = parse_weight_groups(weights);
    Settings from_file;
    if (!config.empty()) {
      std::ifstream in(config);
      if (!in) throw UsageError("cannot read config file " + config);
      std::stringstream buf;
      buf << in.rdbuf();
      from_file = settings_from_config(parse_config(buf.str()));
    }
    settings = merge(flags, from_file);
    if (settings.jobs && *settings.jobs < 1) throw UsageError("jobs must be positive");
    (void)GroebnerBudget::from_env();
    checks = build_suite(suite, settings);
  } catch (const std::exception& e) {
    err << "qhv: " << e.what() << "\n";
    return kExitUsage;
  }

  const auto reports = run_checks(checks, settings.jobs.value_or(1));
  int status = kExitPass;
  for (const auto& r : reports) {
    out << (settings.human.value_or(false) ? to_human(r) : to_json(r).dump()) << "\n";
    if (r.status != Status::Pass) status = kExitFail;
  }
  out.flush();

  if (!golden.empty()) {
    const auto file = std::filesystem::path(golden) / (suite + ".jsonl");
    if (update_golden) {
      std::filesystem::create_directories(golden);
      std::ofstream gout(file);
      for (const auto& r : reports) gout << to_json_stable(r).dump() << "\n";
      if (!gout) {
        err << "qhv: cannot write " << file << "\n";
        return kExitUsage;
      }
    } else {
      const int g = compare_golden(file, reports, err);
      if (g == kExitUsage) return g;
      if (g != kExitPass) status = kExitFail;
    }
  }
  return status;
}

}  // namespace qhv::cli
