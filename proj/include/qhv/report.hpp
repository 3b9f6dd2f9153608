#ifndef QHV_REPORT_HPP
#define QHV_REPORT_HPP

#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qhv/degenerations.hpp"
#include "qhv/ruled.hpp"
#include "qhv/singular.hpp"

namespace qhv {

using Json = nlohmann::ordered_json;

enum class Status { Pass, Fail, Error };
std::string to_string(Status s);

struct CheckReport {
  std::string check;
  Json params = Json::object();
  Status status = Status::Error;
  Json witnesses = Json::array();
  long duration_ms = 0;
};

/// One JSON object, keys in fixed order.
Json to_json(const CheckReport& r);
/// Same object without duration_ms, for golden comparison.
Json to_json_stable(const CheckReport& r);
std::string to_human(const CheckReport& r);

/// A check that has not run yet. `run` fills status and witnesses; timing and
/// exception capture are done by execute().
struct PendingCheck {
  std::string check;
  Json params;
  std::function<void(CheckReport&)> run;
};

/// Runs the check, converting any exception into status=error with the
/// message as witness. A fail without a witness is given one.
CheckReport execute(const PendingCheck& c);

PendingCheck gluing_check(Family family, int k, int l);
PendingCheck equivariance_check(Family family, int k, int l);
PendingCheck f4_adjudication_check(int k);
PendingCheck f4_embedding_check(int k);
PendingCheck quotient_check(int k);
PendingCheck sl2_invariance_check(Family family, int k);
PendingCheck singular_locus_check(int k);
PendingCheck terminal_check(int n_max);
PendingCheck wps_check(const std::vector<int>& weights);
PendingCheck bundle_normalize_check(int n, int k0, int k_inf);
PendingCheck homology_check(FiberKind fiber);
PendingCheck minus_one_curves_check(int r);

}  // namespace qhv

#endif  // QHV_REPORT_HPP
