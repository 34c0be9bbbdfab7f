#pragma once

namespace respkit {

// Standard normal helpers used by the SDT model and the simulator.
//
// normal_cdf evaluates Phi(x) = erfc(-x / sqrt(2)) / 2 through the C library
// erfc, which is accurate to a couple of ulp across the whole range; the
// absolute error is far below the 1e-12 this toolkit requires, including deep
// in the tails where 1 - Phi would lose all precision. Checked against
// 22-digit reference values in the unit tests.

double normal_pdf(double x);
double normal_cdf(double x);
// Upper tail 1 - Phi(x), computed directly as erfc(x / sqrt(2)) / 2 so small
// tail masses keep full relative precision.
double normal_sf(double x);

// Inverse of normal_cdf on (0, 1). Peter Acklam's rational approximation
// (max relative error ~1.15e-9) polished with one Halley step against
// normal_cdf, giving roughly full double precision. Used as the simulator's
// documented uniform-to-normal transform.
double normal_quantile(double p);

}  // namespace respkit
