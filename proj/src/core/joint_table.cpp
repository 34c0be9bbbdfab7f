#include "core/joint_table.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "core/errors.hpp"

namespace respkit {

JointTable::JointTable(std::vector<std::string> condition_vars,
                       std::string outcome_var)
    : condition_vars_(std::move(condition_vars)),
      outcome_var_(std::move(outcome_var)) {
  if (condition_vars_.empty()) {
    throw InvalidArgument("JointTable: at least one condition variable");
  }
  if (outcome_var_.empty()) {
    throw InvalidArgument("JointTable: outcome variable name must be set");
  }
}

void JointTable::add(const std::vector<std::string>& condition_values,
                     const std::string& outcome_value, double mass) {
  if (condition_values.size() != condition_vars_.size()) {
    std::ostringstream msg;
    msg << "JointTable: condition tuple arity " << condition_values.size()
        << " does not match " << condition_vars_.size() << " variables";
    throw InvalidArgument(msg.str());
  }
  if (!std::isfinite(mass) || mass < 0.0) {
    throw InvalidArgument("JointTable: cell mass must be finite and >= 0");
  }
  cells_[{condition_values, outcome_value}] += mass;
}

double JointTable::total_mass() const {
  double total = 0.0;
  for (const auto& [key, mass] : cells_) total += mass;
  return total;
}

JointTable add_alpha_smoothing(const JointTable& table, double alpha) {
  if (!std::isfinite(alpha) || alpha < 0.0) {
    throw InvalidArgument("add_alpha_smoothing: alpha must be finite and >= 0");
  }
  if (alpha == 0.0) return table;
  std::set<std::vector<std::string>> tuples;
  std::set<std::string> outcomes;
  for (const auto& [key, mass] : table.cells()) {
    tuples.insert(key.first);
    outcomes.insert(key.second);
  }
  JointTable smoothed(table.condition_vars(), table.outcome_var());
  for (const auto& tuple : tuples) {
    for (const auto& outcome : outcomes) {
      auto it = table.cells().find({tuple, outcome});
      double observed = it == table.cells().end() ? 0.0 : it->second;
      smoothed.add(tuple, outcome, observed + alpha);
    }
  }
  return smoothed;
}

}  // namespace respkit
