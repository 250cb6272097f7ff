#pragma once

// Two users, only receiver 1 sees the state; the helper assists both.
//
//   Y0 = X0 + N0
//   Y1 = X0 + X1 + S1 + N1
//   Y2 = X0 + X2 + N2
//
// Dedicated helper: X0 = X00 + X01 with U = X00 + alpha S1 (cancels S1 at
// receiver 1) and V = X01 + beta X00 (dirty paper against X00 for receiver 2).
// Helper with its own message: X0 = X00 + X01 + X02, X00 carries W0,
// U = X01 + alpha (S1 + X00), V = X02 + beta (X00 + X01).

#include <optional>
#include <string_view>
#include <vector>

#include "helpernet/region.hpp"
#include "helpernet/types.hpp"

namespace helpernet::model2 {

enum class HelperMode { Dedicated, WithMessage };

struct Params {
  double p00 = 0.0;
  double p01 = 0.0;
  double p02 = 0.0;  // used only with a helper message
  double alpha = 0.0;
  double beta = 0.0;
  std::optional<double> p1_used;  // defaults to P1

  double user_power(const PowerConfig& powers) const { return p1_used.value_or(powers.p.at(0)); }
  void validate(const PowerConfig& powers, HelperMode mode) const;
};

/// Which part of the boundary statement produced the A-B endpoint.
enum class AbBranch { SumRateCorner, PowerSplitCorner };
/// Which C-D statement applies, if any.
enum class CdBranch { None, UserAboveHelper, UserBelowHelper };

std::string_view to_string(AbBranch b);
std::string_view to_string(CdBranch b);

struct SegmentPair {
  std::optional<BoundarySegment> ab;
  std::optional<BoundarySegment> cd;
  AbBranch ab_branch = AbBranch::SumRateCorner;
  CdBranch cd_branch = CdBranch::None;
};

/// {R1 <= min(C(P0), C(P1)), R2 <= C(P2), R1 + R2 <= C(P0 + P2)}; Q1 infinite.
RateRegion outer_region_dedicated(const PowerConfig& powers);

/// High-state-power (R1, R2), or nullopt when alpha exceeds
/// 2 p00 / (1 + p00 + p01 + P1~) or the beta condition
/// p01^2 + 2 beta p00 p01 >= beta^2 p00 (p01 + P2 + 1) fails.
std::optional<RatePoint> inner_point_dedicated(const Params& params, const PowerConfig& powers);

SegmentPair capacity_segments_dedicated(const PowerConfig& powers);

/// C(P0 + P2) when P1 >= P0 + 1, unknown otherwise.
std::optional<double> sum_capacity_dedicated(const PowerConfig& powers);

/// 3-D region in (R0, R1, R2).
RateRegion outer_region_full(const PowerConfig& powers);

/// High-state-power (R0, R1, R2) with the three-way helper split.
std::optional<RatePoint> inner_point_full(const Params& params, const PowerConfig& powers);

/// Boundary pieces at the R0 level fixed by p00, as 3-D points.
SegmentPair capacity_segments_full(const PowerConfig& powers, double p00);

/// alpha bound 2 assist / (1 + assist + extra_noise + p1_used) of a dirty
/// paper code against S1 plus a known helper layer of power `assist`, with
/// `extra_noise` the power of the other unknown helper layer.
double alpha_feasible_max(double assist, double extra_noise, double p1_used);

/// own^2 + 2 beta known own >= beta^2 known (own + P2 + 1), up to rounding.
bool beta_feasible(double beta, double known, double own, double p2);

/// Largest beta in [0, 1] meeting the beta condition for a dirty paper code
/// against interference of power `known` with own layer power `own`.
double beta_feasible_max(double known, double own, double p2);

/// Sweeps p00 and p01 on `resolution` levels each with alpha, beta and the
/// user's power chosen optimally; returns the time-sharing hull in (R1, R2).
RateRegion inner_frontier_dedicated(const PowerConfig& powers, int resolution = 201);

/// One slice of the helper-message inner bound at a fixed p00.
struct FullSlice {
  double p00 = 0.0;
  std::vector<RatePoint> frontier;  // (R0, R1, R2), R0 constant, hull in (R1, R2)
};

/// `levels` values of p00 on [0, P0], each swept over the remaining power.
std::vector<FullSlice> inner_frontier_full(const PowerConfig& powers, int levels = 11, int resolution = 101);

}  // namespace helpernet::model2
