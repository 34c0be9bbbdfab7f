#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace respkit {

// An empirical joint frequency table over a tuple of discrete condition
// variables plus one outcome variable. Cell mass may be counts or
// probability mass; only the relative weights matter.
//
// Cell keys are (condition-value tuple, outcome value); the tuple arity must
// match condition_vars(). Iteration order over cells is deterministic
// (lexicographic), so every computation built on a table is reproducible.
class JointTable {
 public:
  using Key = std::pair<std::vector<std::string>, std::string>;

  JointTable(std::vector<std::string> condition_vars, std::string outcome_var);

  // Accumulates mass into a cell. Throws InvalidArgument on arity mismatch
  // or negative/non-finite mass.
  void add(const std::vector<std::string>& condition_values,
           const std::string& outcome_value, double mass = 1.0);

  const std::vector<std::string>& condition_vars() const {
    return condition_vars_;
  }
  const std::string& outcome_var() const { return outcome_var_; }
  const std::map<Key, double>& cells() const { return cells_; }

  double total_mass() const;
  bool empty() const { return cells_.empty(); }

 private:
  std::vector<std::string> condition_vars_;
  std::string outcome_var_;
  std::map<Key, double> cells_;
};

// Returns a copy of `table` with `alpha` added to every combination of an
// observed condition tuple and an observed outcome value, including
// combinations with zero observed mass. Plug-in estimation stays the default
// (alpha = 0); the smoothed variant exists for sparse tables.
JointTable add_alpha_smoothing(const JointTable& table, double alpha);

}  // namespace respkit
