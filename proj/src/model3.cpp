#include "helpernet/model3.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "helpernet/parallel.hpp"

namespace helpernet::model3 {
namespace {

void require_users(const PowerConfig& powers, std::size_t k, const char* what) {
  powers.validate();
  if (powers.users() != k) {
    throw InvalidArgument(std::string(what) + ": expects " + std::to_string(k) + " users, got " +
                          std::to_string(powers.users()));
  }
}

void require_high_state(const PowerConfig& powers, const char* what) {
  powers.validate();
  if (!powers.all_states_infinite()) {
    throw InvalidArgument(std::string(what) + ": only valid in the infinite state power limit");
  }
}

RatePoint vec2(double a, double b) { return (RatePoint(2) << a, b).finished(); }

// gamma * R(p / gamma, p0), with a silent slot worth nothing
double slot_rate(double gamma, double p, double p0) { return gamma > 0.0 ? gamma * single_user_rate(p / gamma, p0) : 0.0; }

void compositions(std::size_t parts, int left, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (cur.size() + 1 == parts) {
    cur.push_back(left);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int v = left; v >= 0; --v) {
    cur.push_back(v);
    compositions(parts, left - v, cur, out);
    cur.pop_back();
  }
}

}  // namespace

void TimeShare::validate(std::size_t users) const {
  if (gammas.size() != users) throw InvalidArgument("time share: expected " + std::to_string(users) + " gammas");
  if (!betas.empty() && betas.size() != users) {
    throw InvalidArgument("time share: expected " + std::to_string(users) + " betas");
  }
  for (double g : gammas) {
    if (!(g >= 0.0) || !std::isfinite(g)) throw InvalidArgument("time share: gammas must be finite and >= 0");
  }
  if (std::abs(std::accumulate(gammas.begin(), gammas.end(), 0.0) - 1.0) > 1e-12) {
    throw InvalidArgument("time share: gammas must sum to 1");
  }
  for (double b : betas) {
    if (!(b >= 0.0 && b <= 1.0)) throw InvalidArgument("time share: betas must lie in [0, 1]");
  }
}

double single_user_rate(double p, double p0) {
  if (!(p >= 0.0) || !(p0 >= 0.0)) throw InvalidArgument("single_user_rate: powers must be >= 0");
  if (p >= p0 + 1.0) return gaussian_rate(p0);
  if (p >= p0 - 1.0) {
    const double d = p0 - p - 1.0;
    return gaussian_rate(4.0 * p0 * p / (4.0 * p0 + d * d));
  }
  return gaussian_rate(p);
}

RatePoint inner_timeshare_k2(double gamma, const PowerConfig& powers) {
  require_users(powers, 2, "inner_timeshare_k2");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw InvalidArgument("inner_timeshare_k2: gamma must lie in [0, 1]");
  return vec2(slot_rate(gamma, powers.p[0], powers.p0), slot_rate(1.0 - gamma, powers.p[1], powers.p0));
}

RateRegion outer_region_k2(const PowerConfig& powers) {
  require_users(powers, 2, "outer_region_k2");
  require_high_state(powers, "outer_region_k2");
  std::vector<HalfSpace> hs;
  hs.push_back({vec2(1, 0), gaussian_rate(powers.p[0]), "R1 <= C(P1)"});
  hs.push_back({vec2(0, 1), gaussian_rate(powers.p[1]), "R2 <= C(P2)"});
  hs.push_back({vec2(1, 1), gaussian_rate(powers.p0), "R1 + R2 <= C(P0)"});
  return make_polytope({"R1", "R2"}, std::move(hs));
}

std::optional<SumCapacity> sum_capacity_k2(const PowerConfig& powers) {
  require_users(powers, 2, "sum_capacity_k2");
  require_high_state(powers, "sum_capacity_k2");
  const double p0 = powers.p0;
  const double p1 = powers.p[0];
  const double p2 = powers.p[1];
  if (!(p1 + p2 >= p0 + 1.0)) return std::nullopt;
  return SumCapacity{gaussian_rate(p0),
                     GammaInterval{std::max(1.0 - p2 / (p0 + 1.0), 0.0), std::min(p1 / (p0 + 1.0), 1.0)}};
}

std::optional<RateRegion> full_capacity_k2(const PowerConfig& powers) {
  require_users(powers, 2, "full_capacity_k2");
  require_high_state(powers, "full_capacity_k2");
  const double p0 = powers.p0;
  if (!(powers.p[0] >= p0 + 1.0 && powers.p[1] >= p0 + 1.0)) return std::nullopt;
  return make_polytope({"R1", "R2"}, {{vec2(1, 1), gaussian_rate(p0), "R1 + R2 <= C(P0)"}});
}

std::vector<BoundarySegment> capacity_segments_k2(const PowerConfig& powers) {
  require_users(powers, 2, "capacity_segments_k2");
  require_high_state(powers, "capacity_segments_k2");
  const double p0 = powers.p0;
  std::vector<BoundarySegment> out;
  if (powers.p[1] <= p0 - 1.0) {
    const RatePoint a = vec2(0.0, gaussian_rate(powers.p[1]));
    out.push_back({a, a, "A", "user-2 point-to-point cap met", "single-user"});
  }
  if (const auto sc = sum_capacity_k2(powers)) {
    const std::string regime = full_capacity_k2(powers) ? "full-capacity" : "sum-capacity";
    out.push_back({inner_timeshare_k2(sc->gammas.lo, powers), inner_timeshare_k2(sc->gammas.hi, powers), "B-C",
                   "sum capacity by time sharing over the gamma interval", regime});
  }
  if (powers.p[0] <= p0 - 1.0) {
    const RatePoint d = vec2(gaussian_rate(powers.p[0]), 0.0);
    out.push_back({d, d, "D", "user-1 point-to-point cap met", "single-user"});
  }
  return out;
}

RateRegion inner_frontier_k2(const PowerConfig& powers, int resolution) {
  require_users(powers, 2, "inner_frontier_k2");
  if (resolution < 2) throw InvalidArgument("inner_frontier_k2: resolution must be >= 2");
  auto gammas = linspace(0.0, 1.0, resolution);
  if (const auto sc = sum_capacity_k2(PowerConfig::high_state(powers.p0, powers.p))) {
    gammas.push_back(sc->gammas.lo);
    gammas.push_back(sc->gammas.hi);
  }
  std::vector<RatePoint> points(gammas.size());
  parallel_for(gammas.size(), [&](std::size_t i) { points[i] = inner_timeshare_k2(gammas[i], powers); });
  RateRegion region;
  region.axes = {"R1", "R2"};
  region.frontier = convex_hull_frontier(pareto_frontier(std::move(points)));
  region.labels = {"inner"};
  return region;
}

RateRegion outer_region_general(const PowerConfig& powers) {
  require_high_state(powers, "outer_region_general");
  const auto k = static_cast<Eigen::Index>(powers.users());
  if (k < 1) throw InvalidArgument("outer_region_general: needs at least one user");
  const Eigen::Index dim = k + 1;
  std::vector<std::string> axes;
  for (Eigen::Index i = 0; i < dim; ++i) axes.push_back("R" + std::to_string(i));

  std::vector<HalfSpace> hs;
  hs.push_back({Eigen::VectorXd::Unit(dim, 0), gaussian_rate(powers.p0), "R0 <= C(P0)"});
  for (Eigen::Index i = 1; i < dim; ++i) {
    hs.push_back({Eigen::VectorXd::Unit(dim, i), gaussian_rate(powers.p[i - 1]),
                  "R" + std::to_string(i) + " <= C(P" + std::to_string(i) + ")"});
  }
  hs.push_back({Eigen::VectorXd::Ones(dim), gaussian_rate(powers.p0), "sum of rates <= C(P0)"});
  return make_polytope(std::move(axes), std::move(hs));
}

RatePoint inner_timeshare_general(const TimeShare& ts, const PowerConfig& powers) {
  powers.validate();
  ts.validate(powers.users());
  const double p0 = powers.p0;
  RatePoint out = RatePoint::Zero(static_cast<Eigen::Index>(powers.users()) + 1);
  for (std::size_t k = 0; k < powers.users(); ++k) {
    const double g = ts.gammas[k];
    if (g == 0.0) continue;
    const double b = ts.beta(k);
    out(0) += g * gaussian_rate((1.0 - b) * p0 / (b * p0 + 1.0));
    out(static_cast<Eigen::Index>(k) + 1) = g * single_user_rate(powers.p[k] / g, b * p0);
  }
  return out;
}

std::optional<RatePoint> sum_capacity_boundary_general(const TimeShare& ts, const PowerConfig& powers) {
  powers.validate();
  ts.validate(powers.users());
  const double p0 = powers.p0;
  RatePoint out = RatePoint::Zero(static_cast<Eigen::Index>(powers.users()) + 1);
  for (std::size_t k = 0; k < powers.users(); ++k) {
    const double g = ts.gammas[k];
    if (g == 0.0) continue;
    const double b = ts.beta(k);
    if (!(powers.p[k] / g >= b * p0 + 1.0)) return std::nullopt;
    out(0) += g * gaussian_rate((1.0 - b) * p0 / (b * p0 + 1.0));
    out(static_cast<Eigen::Index>(k) + 1) = g * gaussian_rate(b * p0);
  }
  return out;
}

std::vector<std::vector<double>> simplex_lattice(std::size_t parts, int steps) {
  if (parts < 1 || steps < 1) throw InvalidArgument("simplex_lattice: parts and steps must be positive");
  std::vector<std::vector<int>> raw;
  std::vector<int> cur;
  compositions(parts, steps, cur, raw);
  std::vector<std::vector<double>> out;
  out.reserve(raw.size());
  for (const auto& c : raw) {
    std::vector<double> v(parts);
    for (std::size_t i = 0; i < parts; ++i) v[i] = static_cast<double>(c[i]) / steps;
    // exact unit sum despite rounding
    v.back() = 1.0 - std::accumulate(v.begin(), v.end() - 1, 0.0);
    out.push_back(std::move(v));
  }
  return out;
}

RateRegion inner_lattice_general(const PowerConfig& powers, int steps) {
  powers.validate();
  const std::size_t k = powers.users();
  if (k < 1 || k > 3) throw InvalidArgument("inner_lattice_general: supports 1 to 3 users");
  const auto gammas = simplex_lattice(k, steps);
  const auto levels = linspace(0.0, 1.0, steps + 1);

  std::size_t beta_count = 1;
  for (std::size_t i = 0; i < k; ++i) beta_count *= levels.size();

  std::vector<std::vector<RatePoint>> rows(gammas.size());
  parallel_for(gammas.size(), [&](std::size_t gi) {
    TimeShare ts{gammas[gi], std::vector<double>(k)};
    for (std::size_t code = 0; code < beta_count; ++code) {
      std::size_t c = code;
      for (std::size_t i = 0; i < k; ++i) {
        ts.betas[i] = levels[c % levels.size()];
        c /= levels.size();
      }
      rows[gi].push_back(inner_timeshare_general(ts, powers));
    }
    rows[gi] = pareto_frontier(std::move(rows[gi]));
  });

  std::vector<RatePoint> points;
  for (auto& r : rows) points.insert(points.end(), r.begin(), r.end());
  RateRegion region;
  for (std::size_t i = 0; i <= k; ++i) region.axes.push_back("R" + std::to_string(i));
  region.frontier = pareto_frontier(std::move(points));
  region.labels = {"inner"};
  return region;
}

}  // namespace helpernet::model3
