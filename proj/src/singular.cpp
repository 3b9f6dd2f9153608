#include "qhv/singular.hpp"

#include <algorithm>
#include <numeric>

namespace qhv {

namespace {

int mod(long a, int n) {
  long r = a % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

}  // namespace

CyclicQuotient::CyclicQuotient(int n, std::array<int, 3> weights) : n_(n) {
  if (n < 2) throw DomainError("group order must be at least 2, got " + std::to_string(n));
  for (std::size_t i = 0; i < 3; ++i) weights_[i] = mod(weights[i], n);
}

bool CyclicQuotient::isolated() const {
  return std::all_of(weights_.begin(), weights_.end(), [&](int w) { return std::gcd(w, n_) == 1; });
}

bool CyclicQuotient::well_formed() const {
  // g^j is a reflection iff exactly two weights are killed by j.
  for (int j = 1; j < n_; ++j) {
    int fixed = 0;
    for (int w : weights_) fixed += mod(static_cast<long>(j) * w, n_) == 0;
    if (fixed == 2) return false;
  }
  return true;
}

std::string CyclicQuotient::to_string() const {
  return "1/" + std::to_string(n_) + "(" + std::to_string(weights_[0]) + "," + std::to_string(weights_[1]) + "," +
         std::to_string(weights_[2]) + ")";
}

Rational age(const CyclicQuotient& q, int j) {
  const int n = q.order();
  if (j < 1 || j > n - 1) throw DomainError("age index out of range: " + std::to_string(j));
  long sum = 0;
  for (int w : q.weights()) sum += mod(static_cast<long>(j) * w, n);
  Rational r(sum, n);
  r.canonicalize();
  return r;
}

bool is_terminal(const CyclicQuotient& q) {
  if (!q.isolated()) throw DomainError("non-isolated quotient " + q.to_string() + " is not decided");
  const int n = q.order();
  for (int j = 1; j < n; ++j) {
    // age > 1  ⇔  Σ (j w_i mod n) > n
    long sum = 0;
    for (int w : q.weights()) sum += mod(static_cast<long>(j) * w, n);
    if (sum <= n) return false;
  }
  return true;
}

bool is_type_one_a_minus_a(const CyclicQuotient& q) {
  const int n = q.order();
  for (int u = 1; u < n; ++u) {
    if (std::gcd(u, n) != 1) continue;
    std::array<int, 3> s;
    for (std::size_t i = 0; i < 3; ++i) s[i] = mod(static_cast<long>(u) * q.weights()[i], n);
    for (std::size_t one = 0; one < 3; ++one) {
      if (s[one] != 1) continue;
      int a = s[(one + 1) % 3];
      int b = s[(one + 2) % 3];
      if (std::gcd(a, n) == 1 && mod(static_cast<long>(a) + b, n) == 0) return true;
    }
  }
  return false;
}

TerminalTable classify_terminal_types(int n_max) {
  if (n_max < 2) throw DomainError("n_max must be at least 2");
  TerminalTable table;
  table.n_max = n_max;
  for (int n = 2; n <= n_max; ++n) {
    std::vector<int> units;
    for (int w = 1; w < n; ++w) {
      if (std::gcd(w, n) == 1) units.push_back(w);
    }
    for (std::size_t i = 0; i < units.size(); ++i) {
      for (std::size_t j = i; j < units.size(); ++j) {
        for (std::size_t k = j; k < units.size(); ++k) {
          CyclicQuotient q(n, {units[i], units[j], units[k]});
          ++table.checked;
          const bool term = is_terminal(q);
          table.terminal += term;
          if (term != is_type_one_a_minus_a(q)) table.counterexamples.push_back(q);
        }
      }
    }
  }
  return table;
}

std::vector<VertexSingularity> wps_singularity_report(const std::vector<int>& weights) {
  if (weights.size() != 4) throw DomainError("a weighted projective 3-space needs four weights");
  for (int w : weights) {
    if (w < 1) throw DomainError("weights must be positive");
  }
  for (std::size_t skip = 0; skip < weights.size(); ++skip) {
    int g = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (i != skip) g = std::gcd(g, weights[i]);
    }
    if (g != 1) throw DomainError("ill-formed weights: three of them share a common factor");
  }
  std::vector<VertexSingularity> out;
  for (std::size_t v = 0; v < weights.size(); ++v) {
    const int m = weights[v];
    if (m == 1) continue;
    std::array<int, 3> others{};
    std::size_t o = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (i != v) others[o++] = weights[i];
    }
    CyclicQuotient q(m, others);
    VertexSingularity s{v, q, q.isolated(), std::nullopt};
    if (s.isolated) s.terminal = is_terminal(q);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace qhv
