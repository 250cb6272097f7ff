#pragma once

// One state-corrupted user plus a helper that also carries its own message.
//
//   Y0 = X0 + N0
//   Y1 = X0 + X1 + S1 + N1,   S1 ~ N(0, Q1), Q1 large
//
// The helper splits its power: a fraction (1 - beta) carries its own
// message, the fraction beta drives a single-bin dirty paper code
// U = X0'' + alpha (S1 + X0') that receiver 1 decodes and strips.

#include <optional>
#include <string_view>
#include <vector>

#include "helpernet/region.hpp"
#include "helpernet/types.hpp"

namespace helpernet::model1 {

enum class CaseTag { Case1, Case2a, Case2b, Case3a, Case3b };

std::string_view to_string(CaseTag tag);

struct Params {
  double alpha = 0.0;    // DPC coefficient, >= 0
  double beta = 0.0;     // helper power fraction spent on assistance, in [0, 1]
  double p1_used = 0.0;  // transmit power actually used by user 1, <= P1

  void validate(const PowerConfig& powers) const;
};

/// Case partition of the (P0, P1) plane. Ties follow the >= / < pattern:
/// Case1 iff P1 >= P0 + 1; Case3 iff P1 < P0 - 1; the 'a' variants need P1 >= 1.
CaseTag classify_case(const PowerConfig& powers);

/// Largest alpha keeping I(U;Y1) >= I(U;S1 X0'). Finite Q gives the larger
/// root of the feasibility quadratic; infinite Q its limit 2bP0/(bP0+P1+1).
double alpha_feasible_max(double beta, double p0, double p1, StatePower q);
double alpha_feasible_max(double beta, const PowerConfig& powers, StatePower q);

/// High-state-power rates (R0, R1) of the layered scheme, or nullopt when
/// alpha exceeds the feasibility bound computed with p1_used at state power q.
std::optional<RatePoint> inner_point(const Params& params, const PowerConfig& powers, StatePower q);
std::optional<RatePoint> inner_point(const Params& params, const PowerConfig& powers);

/// Best R1 over alpha and the user's actual power for a fixed beta.
struct BetaOptimum {
  Params params;
  RatePoint rates;
};
BetaOptimum optimize_beta(double beta, const PowerConfig& powers, StatePower q);

/// Sweeps beta on `resolution` points (plus the case breakpoints), optimizes
/// alpha and the user's power per beta, and returns the time-sharing hull of
/// the Pareto points in `frontier`.
RateRegion inner_frontier(const PowerConfig& powers, StatePower q, int resolution = 2001);

/// {R1 <= C(P1), R0 + R1 <= C(P0)}; requires Q1 infinite.
RateRegion outer_region(const PowerConfig& powers);

/// Boundary pieces where inner and outer bounds meet; requires Q1 infinite.
std::vector<BoundarySegment> capacity_segments(const PowerConfig& powers);

}  // namespace helpernet::model1
