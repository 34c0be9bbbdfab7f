#include "core/info_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "core/errors.hpp"

namespace respkit {

namespace {

double plog2p_sum(const std::vector<double>& probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

void require_same_labels(const ProbDist& a, const ProbDist& b,
                         const char* what) {
  if (!a.same_labels(b)) {
    throw InvalidArgument(std::string(what) +
                          ": distributions must share the same labels");
  }
}

// Groups cell masses by condition tuple; values are (outcome mass list,
// group total). Detects all-zero tables.
struct GroupedTable {
  std::map<std::vector<std::string>, std::vector<double>> groups;
  double total = 0.0;
};

GroupedTable group_by_condition(const JointTable& t) {
  GroupedTable g;
  for (const auto& [key, mass] : t.cells()) {
    g.groups[key.first].push_back(mass);
    g.total += mass;
  }
  if (t.empty() || g.total <= 0.0) {
    throw DomainError("empty joint table");
  }
  return g;
}

}  // namespace

double entropy(const ProbDist& d) { return plog2p_sum(d.probs()); }

double conditional_entropy(const JointTable& t) {
  GroupedTable g = group_by_condition(t);
  double h = 0.0;
  for (const auto& [tuple, masses] : g.groups) {
    double group_mass = 0.0;
    for (double m : masses) group_mass += m;
    if (group_mass <= 0.0) continue;
    double group_h = 0.0;
    for (double m : masses) {
      double p = m / group_mass;
      if (p > 0.0) group_h -= p * std::log2(p);
    }
    h += (group_mass / g.total) * group_h;
  }
  return h;
}

double outcome_entropy(const JointTable& t) {
  std::map<std::string, double> marginal;
  double total = 0.0;
  for (const auto& [key, mass] : t.cells()) {
    marginal[key.second] += mass;
    total += mass;
  }
  if (t.empty() || total <= 0.0) {
    throw DomainError("empty joint table");
  }
  double h = 0.0;
  for (const auto& [outcome, mass] : marginal) {
    double p = mass / total;
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double kl_divergence(const ProbDist& r, const ProbDist& s) {
  require_same_labels(r, s, "kl_divergence");
  double d = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    double ri = r.prob(i);
    if (ri == 0.0) continue;
    double si = s.prob(i);
    if (si == 0.0) {
      throw DomainError("KLD undefined: absolute continuity violated");
    }
    d += ri * std::log2(ri / si);
  }
  return std::max(0.0, d);
}

double js_divergence(const ProbDist& p, const ProbDist& q) {
  require_same_labels(p, q, "js_divergence");
  // Summed directly instead of going through kl_divergence: the mixture
  // satisfies m >= p/2 wherever p > 0, so the absolute-continuity error
  // path is unreachable here and zero categories drop out per the limit
  // convention.
  double sum_p = 0.0;
  double sum_q = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double pi = p.prob(i);
    double qi = q.prob(i);
    double mi = 0.5 * (pi + qi);
    if (pi > 0.0) sum_p += pi * std::log2(pi / mi);
    if (qi > 0.0) sum_q += qi * std::log2(qi / mi);
  }
  double jsd = 0.5 * sum_p + 0.5 * sum_q;
  return std::clamp(jsd, 0.0, 1.0);
}

double js_distance(const ProbDist& p, const ProbDist& q) {
  return std::sqrt(js_divergence(p, q));
}

}  // namespace respkit
