#pragma once

#include "core/distribution.hpp"
#include "core/joint_table.hpp"

namespace respkit {

// Information-theoretic primitives. All results are in bits (base-2 logs)
// and all functions are pure; 0 * log2(0) is taken as 0 throughout, exactly,
// with no epsilon smoothing.

// Shannon entropy H(d), in [0, log2 N].
double entropy(const ProbDist& d);

// Conditional entropy H(outcome | conditions) of a joint table:
// sum over condition tuples y of p(y) * H(outcome | y).
// Throws DomainError("empty joint table") when the table holds no mass.
double conditional_entropy(const JointTable& t);

// Entropy of the outcome marginal of a joint table.
double outcome_entropy(const JointTable& t);

// Kullback-Leibler divergence KLD(r || s) = sum r * log2(r / s), >= 0.
// Requires the same labels in the same order. Throws DomainError when
// r(x) > 0 with s(x) = 0 (absolute continuity violated) so downstream
// arithmetic never sees an infinity.
double kl_divergence(const ProbDist& r, const ProbDist& s);

// Jensen-Shannon divergence with mixture M = (p + q)/2:
// JSD(p || q) = KLD(p || M)/2 + KLD(q || M)/2.
// Always finite, symmetric, in [0, 1]; categories with p(x) = q(x) = 0
// contribute nothing, and a category with p(x) = 0 < q(x) contributes
// nothing to the p-side sum (limit convention).
double js_divergence(const ProbDist& p, const ProbDist& q);

// Jensen-Shannon distance sqrt(JSD), a metric on distributions: symmetric,
// in [0, 1], satisfies the triangle inequality.
double js_distance(const ProbDist& p, const ProbDist& q);

}  // namespace respkit
