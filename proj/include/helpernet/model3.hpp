#pragma once

// K parallel users, each facing its own state, sharing one helper that
// knows all states and assists them in turn.
//
//   Y0 = X0 + N0
//   Yk = X0 + Xk + Sk + Nk,   k = 1..K

#include <optional>
#include <utility>
#include <vector>

#include "helpernet/region.hpp"
#include "helpernet/types.hpp"

namespace helpernet::model3 {

/// Time-sharing fractions gamma_k (summing to 1) and, with a helper
/// message, the assistance fractions beta_k. Empty betas means all 1.
struct TimeShare {
  std::vector<double> gammas;
  std::vector<double> betas;

  double beta(std::size_t k) const { return betas.empty() ? 1.0 : betas[k]; }
  void validate(std::size_t users) const;
};

struct GammaInterval {
  double lo = 0.0;
  double hi = 1.0;

  bool empty() const { return lo > hi; }
};

/// Helper-assisted rate of one user with power p against a helper of power p0:
///   p >= p0 + 1          C(p0)
///   p0 - 1 <= p < p0 + 1 C(4 p0 p / (4 p0 + (p0 - p - 1)^2))
///   p < p0 - 1           C(p)
double single_user_rate(double p, double p0);

/// (gamma R(P1/gamma, P0), (1-gamma) R(P2/(1-gamma), P0)); a silent slot gives 0.
RatePoint inner_timeshare_k2(double gamma, const PowerConfig& powers);

/// {R1 <= C(P1), R2 <= C(P2), R1 + R2 <= C(P0)}; both states infinite.
RateRegion outer_region_k2(const PowerConfig& powers);

struct SumCapacity {
  double rate = 0.0;
  GammaInterval gammas;
};

/// C(P0) with the gamma range achieving it when P1 + P2 >= P0 + 1.
std::optional<SumCapacity> sum_capacity_k2(const PowerConfig& powers);

/// The simplex R1 + R2 <= C(P0) when both P1, P2 >= P0 + 1.
std::optional<RateRegion> full_capacity_k2(const PowerConfig& powers);

/// Boundary pieces where the time-sharing bound meets the outer bound:
/// the sum-capacity line B-C over the gamma interval, and the single-user
/// corners A = (0, C(P2)) and D = (C(P1), 0) when Pk <= P0 - 1.
std::vector<BoundarySegment> capacity_segments_k2(const PowerConfig& powers);

/// Sweeps gamma on `resolution` points; time-sharing hull in (R1, R2).
RateRegion inner_frontier_k2(const PowerConfig& powers, int resolution = 2001);

/// Region in (R0, R1, .., RK): R0 <= C(P0), Rk <= C(Pk), sum <= C(P0).
/// Vertices are enumerated when K <= 3.
RateRegion outer_region_general(const PowerConfig& powers);

/// (R0, R1, .., RK) with R0 = sum gamma_k C((1-beta_k) P0 / (beta_k P0 + 1))
/// and Rk = gamma_k R(Pk / gamma_k, beta_k P0).
RatePoint inner_timeshare_general(const TimeShare& ts, const PowerConfig& powers);

/// Boundary point with Rk = gamma_k C(beta_k P0) when every slot has
/// Pk / gamma_k >= beta_k P0 + 1; its coordinates sum to C(P0).
std::optional<RatePoint> sum_capacity_boundary_general(const TimeShare& ts, const PowerConfig& powers);

/// Pareto points of inner_timeshare_general over a lattice with `steps`
/// divisions of the gamma simplex and of each beta_k. K <= 3.
RateRegion inner_lattice_general(const PowerConfig& powers, int steps = 10);

/// All compositions of `steps` into `parts` nonnegative integers, scaled by 1/steps.
std::vector<std::vector<double>> simplex_lattice(std::size_t parts, int steps);

}  // namespace helpernet::model3
