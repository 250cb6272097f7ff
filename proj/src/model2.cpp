#include "helpernet/model2.hpp"

#include <algorithm>
#include <cmath>

#include "helpernet/parallel.hpp"

namespace helpernet::model2 {
namespace {

void require_two_users(const PowerConfig& powers) {
  powers.validate();
  if (powers.users() != 2) throw InvalidArgument("model2: expects exactly two users, got " + std::to_string(powers.users()));
}

void require_high_state(const PowerConfig& powers, const char* what) {
  require_two_users(powers);
  if (!powers.q[0].is_infinite()) {
    throw InvalidArgument(std::string(what) + ": only valid in the infinite state power limit");
  }
}

RatePoint vec2(double a, double b) { return (RatePoint(2) << a, b).finished(); }
RatePoint vec3(double a, double b, double c) { return (RatePoint(3) << a, b, c).finished(); }

bool within_bound(double x, double bound) { return x <= bound * (1.0 + 1e-12) + 1e-15; }

double r1_rate(double alpha, double assist, double extra_noise, double p1_used) {
  if (alpha == 0.0) return 0.0;  // continuous limit: state left in full
  const double miss = 1.0 - 1.0 / alpha;
  return gaussian_rate(p1_used / (miss * miss * assist + extra_noise + 1.0));
}

// residual interference at receiver 2 after dirty paper coding of `own`
// against `known` with coefficient beta
double r2_interference(double beta, double known, double own) {
  const double den = own + beta * beta * known;
  if (den == 0.0) return known;  // V vanishes, the known layer stays as noise
  return (beta - 1.0) * (beta - 1.0) * own * known / den;
}

struct BestR1 {
  double alpha;
  double p1_used;
  double rate;
};

// closed-form optimum: P1~ = min(P1, assist + noise), alpha = min(1, bound)
BestR1 best_r1(double assist, double extra_noise, double p1) {
  const double p1_used = std::min(p1, assist + extra_noise + 1.0);
  const double alpha = std::min(1.0, alpha_feasible_max(assist, extra_noise, p1_used));
  return {alpha, p1_used, r1_rate(alpha, assist, extra_noise, p1_used)};
}

std::vector<RatePoint> hull_with_axes(std::vector<RatePoint> points) { return convex_hull_frontier(pareto_frontier(std::move(points))); }

}  // namespace

std::string_view to_string(AbBranch b) {
  return b == AbBranch::SumRateCorner ? "sum-rate-corner" : "power-split-corner";
}

std::string_view to_string(CdBranch b) {
  switch (b) {
    case CdBranch::None: return "none";
    case CdBranch::UserAboveHelper: return "user-above-helper";
    case CdBranch::UserBelowHelper: return "user-below-helper";
  }
  return "unknown";
}

void Params::validate(const PowerConfig& powers, HelperMode mode) const {
  for (double v : {p00, p01, p02}) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidArgument("model2: power splits must be finite and >= 0");
  }
  if (mode == HelperMode::Dedicated && p02 != 0.0) throw InvalidArgument("model2: p02 requires a helper message");
  if (!within_bound(p00 + p01 + p02, powers.p0)) throw InvalidArgument("model2: power splits exceed P0");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw InvalidArgument("model2: alpha must be finite and >= 0");
  if (!std::isfinite(beta)) throw InvalidArgument("model2: beta must be finite");
  if (p1_used && !(*p1_used >= 0.0 && *p1_used <= powers.p.at(0))) {
    throw InvalidArgument("model2: p1_used must lie in [0, P1]");
  }
}

double alpha_feasible_max(double assist, double extra_noise, double p1_used) {
  if (assist == 0.0) return 0.0;
  return 2.0 * assist / (1.0 + assist + extra_noise + p1_used);
}

bool beta_feasible(double beta, double known, double own, double p2) {
  const double lhs = own * own + 2.0 * beta * known * own;
  const double rhs = beta * beta * known * (own + p2 + 1.0);
  return lhs >= rhs - 1e-12 * std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

double beta_feasible_max(double known, double own, double p2) {
  if (known == 0.0) return 1.0;
  const double g = own + p2 + 1.0;
  const double root = own * (known + std::sqrt(known * known + known * g)) / (known * g);
  return std::min(1.0, root);
}

RateRegion outer_region_dedicated(const PowerConfig& powers) {
  require_high_state(powers, "model2 outer_region_dedicated");
  const double p0 = powers.p0;
  const double p1 = powers.p[0];
  const double p2 = powers.p[1];
  std::vector<HalfSpace> hs;
  hs.push_back({vec2(1, 0), std::min(gaussian_rate(p0), gaussian_rate(p1)), "R1 <= min(C(P0), C(P1))"});
  hs.push_back({vec2(0, 1), gaussian_rate(p2), "R2 <= C(P2)"});
  hs.push_back({vec2(1, 1), gaussian_rate(p0 + p2), "R1 + R2 <= C(P0 + P2)"});
  return make_polytope({"R1", "R2"}, std::move(hs));
}

std::optional<RatePoint> inner_point_dedicated(const Params& params, const PowerConfig& powers) {
  require_two_users(powers);
  params.validate(powers, HelperMode::Dedicated);
  const double p1_used = params.user_power(powers);
  const double p2 = powers.p[1];
  if (!within_bound(params.alpha, alpha_feasible_max(params.p00, params.p01, p1_used))) return std::nullopt;
  if (!beta_feasible(params.beta, params.p00, params.p01, p2)) return std::nullopt;
  return vec2(r1_rate(params.alpha, params.p00, params.p01, p1_used),
              gaussian_rate(p2 / (1.0 + r2_interference(params.beta, params.p00, params.p01))));
}

SegmentPair capacity_segments_dedicated(const PowerConfig& powers) {
  require_high_state(powers, "model2 capacity_segments_dedicated");
  const double p0 = powers.p0;
  const double p1 = powers.p[0];
  const double p2 = powers.p[1];

  SegmentPair out;
  const RatePoint a = vec2(0.0, gaussian_rate(p2));
  double b1 = 0.0;
  if (0.5 * (1.0 + p0 + p1) >= p0 * p0 / (p0 + p2 + 1.0)) {
    out.ab_branch = AbBranch::SumRateCorner;
    const double num = 4.0 * p1 * p0 * p0;
    b1 = gaussian_rate(num / ((1.0 + p0 + p1) * (1.0 + p0 + p1) * (1.0 + p0 + p2) - num));
  } else {
    out.ab_branch = AbBranch::PowerSplitCorner;
    b1 = gaussian_rate(p1 * (p0 + p2 + 1.0) / (p0 + (p0 + 1.0) * (p2 + 1.0)));
  }
  const RatePoint b = vec2(b1, gaussian_rate(p2));
  const std::string regime(to_string(out.ab_branch));
  out.ab = BoundarySegment{a, b, b1 == 0.0 ? "A=B" : "A-B", "user-2 cap met with dirty paper coding against the helper",
                           regime};

  if (p1 > p0 + 1.0) {
    out.cd_branch = CdBranch::UserAboveHelper;
    out.cd = BoundarySegment{vec2(gaussian_rate(p0), gaussian_rate(p2 / (p0 + 1.0))), vec2(gaussian_rate(p0), 0.0),
                             "C-D", "user-1 helper-limited cap met", std::string(to_string(out.cd_branch))};
  } else if (p1 <= p0 - 1.0) {
    out.cd_branch = CdBranch::UserBelowHelper;
    out.cd = BoundarySegment{vec2(gaussian_rate(p1), gaussian_rate(p2 / (p1 + 2.0))), vec2(gaussian_rate(p1), 0.0),
                             "C-D", "user-1 point-to-point cap met", std::string(to_string(out.cd_branch))};
  }
  return out;
}

std::optional<double> sum_capacity_dedicated(const PowerConfig& powers) {
  require_high_state(powers, "model2 sum_capacity_dedicated");
  if (powers.p[0] >= powers.p0 + 1.0) return gaussian_rate(powers.p0 + powers.p[1]);
  return std::nullopt;
}

RateRegion outer_region_full(const PowerConfig& powers) {
  require_high_state(powers, "model2 outer_region_full");
  const double p0 = powers.p0;
  const double p1 = powers.p[0];
  const double p2 = powers.p[1];
  std::vector<HalfSpace> hs;
  hs.push_back({vec3(1, 0, 0), gaussian_rate(p0), "R0 <= C(P0)"});
  hs.push_back({vec3(0, 1, 0), std::min(gaussian_rate(p0), gaussian_rate(p1)), "R1 <= min(C(P0), C(P1))"});
  hs.push_back({vec3(0, 0, 1), gaussian_rate(p2), "R2 <= C(P2)"});
  hs.push_back({vec3(1, 1, 1), gaussian_rate(p0 + p2), "R0 + R1 + R2 <= C(P0 + P2)"});
  return make_polytope({"R0", "R1", "R2"}, std::move(hs));
}

std::optional<RatePoint> inner_point_full(const Params& params, const PowerConfig& powers) {
  require_two_users(powers);
  params.validate(powers, HelperMode::WithMessage);
  const double p1_used = params.user_power(powers);
  const double p2 = powers.p[1];
  const double known = params.p00 + params.p01;
  if (!within_bound(params.alpha, alpha_feasible_max(params.p01, params.p02, p1_used))) return std::nullopt;
  if (!beta_feasible(params.beta, known, params.p02, p2)) return std::nullopt;
  return vec3(gaussian_rate(params.p00 / (params.p01 + params.p02 + 1.0)),
              r1_rate(params.alpha, params.p01, params.p02, p1_used),
              gaussian_rate(p2 / (1.0 + r2_interference(params.beta, known, params.p02))));
}

SegmentPair capacity_segments_full(const PowerConfig& powers, double p00) {
  require_high_state(powers, "model2 capacity_segments_full");
  const double p0 = powers.p0;
  const double p1 = powers.p[0];
  const double p2 = powers.p[1];
  if (!(p00 >= 0.0 && p00 <= p0)) throw InvalidArgument("capacity_segments_full: p00 must lie in [0, P0]");

  const double rest = p0 - p00;
  const double r0 = gaussian_rate(p00 / (rest + 1.0));
  const double cap2 = gaussian_rate(p2);
  const double split_max = p0 * p0 / (p0 + p2 + 1.0) - p00;

  SegmentPair out;
  double b1 = 0.0;
  if (0.5 * (1.0 + p1 + rest) > split_max) {
    out.ab_branch = AbBranch::SumRateCorner;
    if (split_max > 0.0) {
      const double s = 1.0 + rest + p1;
      b1 = gaussian_rate(p1 / (s * s * (1.0 + p0 + p2) / (4.0 * (p0 * p0 - p00 * (p0 + p2 + 1.0))) - p1));
    }
  } else {
    out.ab_branch = AbBranch::PowerSplitCorner;
    b1 = gaussian_rate(p1 * (p0 + p2 + 1.0) / (p0 + (p0 + 1.0) * (p2 + 1.0)));
  }
  const std::string regime(to_string(out.ab_branch));
  out.ab = BoundarySegment{vec3(r0, 0.0, cap2), vec3(r0, b1, cap2), b1 == 0.0 ? "A=B" : "A-B",
                           "user-2 cap met at fixed helper message rate", regime};

  if (p1 > rest + 1.0) {
    out.cd_branch = CdBranch::UserAboveHelper;
    const double r1 = gaussian_rate(rest);
    out.cd = BoundarySegment{vec3(r0, r1, gaussian_rate(p2 / (p0 + 1.0))), vec3(r0, r1, 0.0), "C-D",
                             "user-1 helper-limited cap at fixed helper message rate",
                             std::string(to_string(out.cd_branch))};
  } else if (p1 <= rest - 1.0) {
    out.cd_branch = CdBranch::UserBelowHelper;
    const double r1 = gaussian_rate(p1);
    out.cd = BoundarySegment{vec3(r0, r1, gaussian_rate(p2 / (p1 + 2.0))), vec3(r0, r1, 0.0), "C-D",
                             "user-1 point-to-point cap at fixed helper message rate",
                             std::string(to_string(out.cd_branch))};
  }
  return out;
}

RateRegion inner_frontier_dedicated(const PowerConfig& powers, int resolution) {
  require_two_users(powers);
  if (resolution < 2) throw InvalidArgument("inner_frontier_dedicated: resolution must be >= 2");
  const double p0 = powers.p0;
  const double p1 = powers.p[0];
  const double p2 = powers.p[1];
  const auto levels = linspace(0.0, p0, resolution);
  const auto fractions = linspace(0.0, 1.0, resolution);

  std::vector<std::vector<RatePoint>> rows(levels.size());
  parallel_for(levels.size(), [&](std::size_t i) {
    const double p00 = levels[i];
    for (double f : fractions) {
      const double p01 = f * (p0 - p00);
      const auto r1 = best_r1(p00, p01, p1);
      const double beta = beta_feasible_max(p00, p01, p2);
      rows[i].push_back(vec2(r1.rate, gaussian_rate(p2 / (1.0 + r2_interference(beta, p00, p01)))));
    }
  });

  std::vector<RatePoint> points;
  for (auto& row : rows) points.insert(points.end(), row.begin(), row.end());
  RateRegion region;
  region.axes = {"R1", "R2"};
  region.frontier = hull_with_axes(std::move(points));
  region.labels = {"inner"};
  return region;
}

std::vector<FullSlice> inner_frontier_full(const PowerConfig& powers, int levels, int resolution) {
  require_two_users(powers);
  if (levels < 1 || resolution < 2) throw InvalidArgument("inner_frontier_full: need levels >= 1 and resolution >= 2");
  const double p0 = powers.p0;
  const double p1 = powers.p[0];
  const double p2 = powers.p[1];
  const auto p00s = linspace(0.0, p0, levels);
  const auto fractions = linspace(0.0, 1.0, resolution);

  std::vector<FullSlice> slices(p00s.size());
  parallel_for(p00s.size(), [&](std::size_t i) {
    const double p00 = p00s[i];
    const double rest = p0 - p00;
    std::vector<RatePoint> pts;
    for (double f : fractions) {
      const double p01 = f * rest;
      for (double g : fractions) {
        const double p02 = g * (rest - p01);
        const auto r1 = best_r1(p01, p02, p1);
        const double known = p00 + p01;
        const double beta = beta_feasible_max(known, p02, p2);
        pts.push_back(vec2(r1.rate, gaussian_rate(p2 / (1.0 + r2_interference(beta, known, p02)))));
      }
    }
    // R0 = C(p00 / (p01 + p02 + 1)) is smallest when the rest is fully used
    const double r0 = gaussian_rate(p00 / (rest + 1.0));
    slices[i].p00 = p00;
    for (auto& p : hull_with_axes(std::move(pts))) slices[i].frontier.push_back(vec3(r0, p(0), p(1)));
  });
  return slices;
}

}  // namespace helpernet::model2
