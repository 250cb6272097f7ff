#include "helpernet/model1.hpp"

#include <algorithm>
#include <cmath>

#include "helpernet/numeric.hpp"
#include "helpernet/parallel.hpp"

namespace helpernet::model1 {
namespace {

void require_single_user(const PowerConfig& powers) {
  powers.validate();
  if (powers.users() != 1) throw InvalidArgument("model1: expects exactly one user, got " + std::to_string(powers.users()));
}

void require_high_state(const PowerConfig& powers, const char* what) {
  require_single_user(powers);
  if (!powers.q[0].is_infinite()) {
    throw InvalidArgument(std::string(what) + ": only valid in the infinite state power limit");
  }
}

RatePoint pair(double r0, double r1) { return (RatePoint(2) << r0, r1).finished(); }

// alpha may sit exactly on the bound
bool within_bound(double alpha, double bound) { return alpha <= bound * (1.0 + 1e-12) + 1e-15; }

double r0_rate(double beta, double p0) { return gaussian_rate((1.0 - beta) * p0 / (beta * p0 + 1.0)); }

double r1_rate(double alpha, double beta, double p0, double p1) {
  const double assist = beta * p0;
  if (alpha == 0.0 || assist == 0.0) return 0.0;  // state left uncanceled
  const double miss = 1.0 - 1.0 / alpha;
  return gaussian_rate(p1 / (1.0 + miss * miss * assist));
}

}  // namespace

std::string_view to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::Case1: return "case1";
    case CaseTag::Case2a: return "case2a";
    case CaseTag::Case2b: return "case2b";
    case CaseTag::Case3a: return "case3a";
    case CaseTag::Case3b: return "case3b";
  }
  return "unknown";
}

void Params::validate(const PowerConfig& powers) const {
  if (!(beta >= 0.0 && beta <= 1.0)) throw InvalidArgument("model1: beta must lie in [0, 1]");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw InvalidArgument("model1: alpha must be finite and >= 0");
  if (!(p1_used >= 0.0 && p1_used <= powers.p.at(0))) {
    throw InvalidArgument("model1: p1_used must lie in [0, P1]");
  }
}

CaseTag classify_case(const PowerConfig& powers) {
  require_single_user(powers);
  const double p0 = powers.p0;
  const double p1 = powers.p[0];
  if (p1 >= p0 + 1.0) return CaseTag::Case1;
  if (p1 >= p0 - 1.0) return p1 >= 1.0 ? CaseTag::Case2a : CaseTag::Case2b;
  return p1 >= 1.0 ? CaseTag::Case3a : CaseTag::Case3b;
}

double alpha_feasible_max(double beta, double p0, double p1, StatePower q) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw InvalidArgument("alpha_feasible_max: beta must lie in [0, 1]");
  const double assist = beta * p0;
  if (assist == 0.0) return 0.0;
  const double gain = assist + p1 + 1.0;
  if (q.is_infinite()) return 2.0 * assist / gain;
  // alpha^2 (bbar P0 + Q) gain - 2 alpha assist (bbar P0 + Q) - assist^2 <= 0, divided through by (bbar P0 + Q)
  const double c = assist * assist / ((1.0 - beta) * p0 + q.value());
  return (assist + std::sqrt(assist * assist + gain * c)) / gain;
}

double alpha_feasible_max(double beta, const PowerConfig& powers, StatePower q) {
  require_single_user(powers);
  return alpha_feasible_max(beta, powers.p0, powers.p[0], q);
}

std::optional<RatePoint> inner_point(const Params& params, const PowerConfig& powers, StatePower q) {
  require_single_user(powers);
  params.validate(powers);
  const double bound = alpha_feasible_max(params.beta, powers.p0, params.p1_used, q);
  if (!within_bound(params.alpha, bound)) return std::nullopt;
  return pair(r0_rate(params.beta, powers.p0), r1_rate(params.alpha, params.beta, powers.p0, params.p1_used));
}

std::optional<RatePoint> inner_point(const Params& params, const PowerConfig& powers) {
  require_single_user(powers);
  return inner_point(params, powers, powers.q[0]);
}

BetaOptimum optimize_beta(double beta, const PowerConfig& powers, StatePower q) {
  require_single_user(powers);
  const double p0 = powers.p0;
  const double p1 = powers.p[0];

  // R1 is increasing in alpha below 1 and decreasing above, so the bound clipped at 1 is optimal
  auto best_alpha = [&](double p1_used) { return std::min(1.0, alpha_feasible_max(beta, p0, p1_used, q)); };
  auto rate_at = [&](double p1_used) { return r1_rate(best_alpha(p1_used), beta, p0, p1_used); };

  Params best{best_alpha(p1), beta, p1};
  double best_rate = rate_at(p1);
  auto consider = [&](double p1_used, double alpha) {
    const double r = r1_rate(alpha, beta, p0, p1_used);
    if (r > best_rate + 1e-15) {
      best = Params{alpha, beta, p1_used};
      best_rate = r;
    }
  };

  const double matched = std::clamp(beta * p0 + 1.0, 0.0, p1);
  consider(matched, best_alpha(matched));

  // golden-section refinement of alpha at the matched power
  const double bound = alpha_feasible_max(beta, p0, matched, q);
  const double refined =
      golden_section_max([&](double a) { return r1_rate(a, beta, p0, matched); }, 0.0, bound);
  consider(matched, std::min(refined, bound));

  // scalar search over the user's power as a fallback
  const double searched = golden_section_max(rate_at, 0.0, p1);
  consider(searched, best_alpha(searched));

  return BetaOptimum{best, pair(r0_rate(beta, p0), best_rate)};
}

RateRegion inner_frontier(const PowerConfig& powers, StatePower q, int resolution) {
  require_single_user(powers);
  if (resolution < 1) throw InvalidArgument("inner_frontier: resolution must be positive");
  const double p0 = powers.p0;
  const double p1 = powers.p[0];

  auto betas = linspace(0.0, 1.0, resolution);
  if (p0 > 0.0) {
    for (double b : {(p1 - 1.0) / p0, (p1 + 1.0) / p0}) {
      if (b > 0.0 && b < 1.0) betas.push_back(b);
    }
  }
  std::sort(betas.begin(), betas.end());
  betas.erase(std::unique(betas.begin(), betas.end()), betas.end());

  std::vector<RatePoint> points(betas.size());
  parallel_for(betas.size(), [&](std::size_t i) { points[i] = optimize_beta(betas[i], powers, q).rates; });

  RateRegion region;
  region.axes = {"R0", "R1"};
  region.frontier = convex_hull_frontier(pareto_frontier(std::move(points)));
  region.labels = {"inner"};
  return region;
}

RateRegion outer_region(const PowerConfig& powers) {
  require_high_state(powers, "model1 outer_region");
  std::vector<HalfSpace> hs;
  hs.push_back({pair(0.0, 1.0), gaussian_rate(powers.p[0]), "R1 <= C(P1)"});
  hs.push_back({pair(1.0, 1.0), gaussian_rate(powers.p0), "R0 + R1 <= C(P0)"});
  return make_polytope({"R0", "R1"}, std::move(hs));
}

std::vector<BoundarySegment> capacity_segments(const PowerConfig& powers) {
  require_high_state(powers, "model1 capacity_segments");
  const double p0 = powers.p0;
  const double p1 = powers.p[0];
  const CaseTag tag = classify_case(powers);
  const std::string regime(to_string(tag));

  const RatePoint a = pair(gaussian_rate(p0), 0.0);
  auto point_b = [&] { return pair(gaussian_rate((p0 - p1 + 1.0) / p1), 0.5 * std::log2(p1)); };
  auto point_d = [&] { return pair(0.5 * std::log2((p0 + 1.0) / (p1 + 2.0)), gaussian_rate(p1)); };
  const RatePoint e = pair(0.0, gaussian_rate(p1));

  const std::string sum_rate = "sum-rate bound met by layered DPC";
  const std::string user_cap = "user-1 point-to-point bound met with full cancellation";

  std::vector<BoundarySegment> out;
  switch (tag) {
    case CaseTag::Case1:
      out.push_back({a, pair(0.0, gaussian_rate(p0)), "A-E'", "whole sum-rate line achieved", regime});
      break;
    case CaseTag::Case2a:
      out.push_back({a, point_b(), "A-B", sum_rate, regime});
      break;
    case CaseTag::Case2b:
      out.push_back({a, a, "A", sum_rate, regime});
      break;
    case CaseTag::Case3a:
      out.push_back({a, point_b(), "A-B", sum_rate, regime});
      out.push_back({point_d(), e, "D-E", user_cap, regime});
      break;
    case CaseTag::Case3b:
      out.push_back({a, a, "A", sum_rate, regime});
      out.push_back({point_d(), e, "D-E", user_cap, regime});
      break;
  }
  return out;
}

}  // namespace helpernet::model1
