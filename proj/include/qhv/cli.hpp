#ifndef QHV_CLI_HPP
#define QHV_CLI_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qhv/report.hpp"

namespace qhv::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

class UsageError : public Error {
 public:
  using Error::Error;
};

/// Resolved settings. Unset optionals fall back to per-suite defaults.
struct Settings {
  std::optional<std::vector<int>> k;
  std::optional<std::vector<int>> l;
  std::optional<int> n_max;
  std::optional<int> n;
  std::optional<int> k0;
  std::optional<int> k_inf;
  std::optional<std::vector<std::vector<int>>> weights;
  std::optional<std::string> family;  ///< quadric, f4 or both
  std::optional<int> jobs;
  std::optional<bool> human;
};

/// Flat `key = value` text; `#` starts a comment. Throws UsageError.
std::map<std::string, std::string> parse_config(const std::string& text);

/// Values from a config map; unknown keys and malformed values throw UsageError.
Settings settings_from_config(const std::map<std::string, std::string>& kv);

/// Fields set in `flags` win over those in `config`.
Settings merge(const Settings& flags, const Settings& config);

/// Checks of one suite ("verify-quadric", "verify-f4", "verify-quotient",
/// "equivariance", "singular-locus", "terminal", "wps", "bundle-normalize",
/// "dp-homology", "all"). Throws UsageError on out-of-range parameters.
std::vector<PendingCheck> build_suite(const std::string& suite, const Settings& s);

/// Executes checks on `jobs` threads; results come back in input order.
std::vector<CheckReport> run_checks(const std::vector<PendingCheck>& checks, int jobs);

/// Entry point minus argv[0]. Returns 0 if every check passed, 1 if any
/// failed or errored (or the golden comparison differed), 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qhv::cli

#endif  // QHV_CLI_HPP
