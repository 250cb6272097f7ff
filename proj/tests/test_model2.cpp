#include <doctest.h>

#include <random>

#include "helpernet/channel_joints.hpp"
#include "helpernet/model1.hpp"
#include "helpernet/model2.hpp"

using namespace helpernet;
using namespace helpernet::model2;

namespace {

PowerConfig hp(double p0, double p1, double p2) { return PowerConfig::high_state(p0, {p1, p2}); }

RatePoint pt(double a, double b) { return (RatePoint(2) << a, b).finished(); }
RatePoint pt(double a, double b, double c) { return (RatePoint(3) << a, b, c).finished(); }

double dist(const RatePoint& a, const RatePoint& b) { return (a - b).cwiseAbs().maxCoeff(); }

bool on_boundary(const RateRegion& outer, const RatePoint& p) {
  if (!contains(outer, p, 1e-9)) return false;
  for (const auto& h : outer.halfspaces) {
    if (std::abs(h.normal.dot(p) - h.offset) <= 1e-9) return true;
  }
  return false;
}

Params dedicated(double p00, double p01, double alpha, double beta) {
  Params p;
  p.p00 = p00;
  p.p01 = p01;
  p.alpha = alpha;
  p.beta = beta;
  return p;
}

// mpmath, 30 digits
constexpr double kHalfLog3 = 0.792481250360578091;
constexpr double kB1 = 0.131517202916896917;     // ½log2 1.2
constexpr double kHalfLog15 = 0.292481250360578091;
constexpr double kHalfLog43 = 0.207518749639421909;

}  // namespace

TEST_CASE("dedicated outer region") {
  const auto o = outer_region_dedicated(hp(1, 2, 1));
  double best_sum = 0.0;
  for (const auto& v : o.vertices) best_sum = std::max(best_sum, v.sum());
  CHECK(std::abs(best_sum - kHalfLog3) < 1e-12);

  const auto silent = outer_region_dedicated(hp(1, 0, 1));
  for (const auto& v : silent.vertices) CHECK(v(0) == 0.0);

  const auto helper_limited = outer_region_dedicated(hp(2, 2.5, 0.8));
  double r1_cap = 0.0;
  for (const auto& v : helper_limited.vertices) r1_cap = std::max(r1_cap, v(0));
  CHECK(std::abs(r1_cap - kHalfLog3) < 1e-12);

  CHECK_THROWS_AS(outer_region_dedicated(PowerConfig(1, {2, 1}, {StatePower::finite(1e8), StatePower::infinite()})),
                  InvalidArgument);
  CHECK_THROWS_AS(outer_region_dedicated(PowerConfig::high_state(1, {2})), InvalidArgument);
}

TEST_CASE("dedicated inner point examples") {
  const auto powers = hp(1, 2, 1);
  const auto full_dpc = inner_point_dedicated(dedicated(1.0 / 3.0, 2.0 / 3.0, 1.0 / 6.0, 1.0), powers);
  REQUIRE(full_dpc);
  CHECK(std::abs((*full_dpc)(1) - 0.5) < 1e-12);
  CHECK(std::abs((*full_dpc)(0) - kB1) < 1e-12);

  const auto noise = inner_point_dedicated(dedicated(0.4, 0.0, 0.1, 0.0), powers);
  REQUIRE(noise);
  CHECK(std::abs((*noise)(1) - gaussian_rate(1.0 / 1.4)) < 1e-12);

  const auto silent = inner_point_dedicated(dedicated(0.4, 0.0, 0.0, 0.0), powers);
  REQUIRE(silent);
  CHECK((*silent)(0) == 0.0);

  CHECK_FALSE(inner_point_dedicated(dedicated(1.0 / 3.0, 2.0 / 3.0, 0.2, 1.0), powers));
  CHECK_FALSE(inner_point_dedicated(dedicated(0.5, 0.1, 0.1, 1.0), powers));
  CHECK_THROWS_AS(inner_point_dedicated(dedicated(0.7, 0.7, 0.1, 0.0), powers), InvalidArgument);
  CHECK_THROWS_AS(inner_point_dedicated(dedicated(-0.1, 0.5, 0.1, 0.0), powers), InvalidArgument);
}

TEST_CASE("beta = 1 removes the helper interference at receiver 2") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.05, 5);
  for (int i = 0; i < 200; ++i) {
    const auto powers = hp(u(rng), u(rng), u(rng));
    const double p00 = powers.p0 * 0.3;
    const double p01 = powers.p0 * 0.7;
    if (!beta_feasible(1.0, p00, p01, powers.p[1])) continue;
    const auto r = inner_point_dedicated(dedicated(p00, p01, 0.0, 1.0), powers);
    REQUIRE(r);
    CHECK(std::abs((*r)(1) - gaussian_rate(powers.p[1])) < 1e-12);
  }
}

TEST_CASE("feasibility bounds") {
  CHECK(alpha_feasible_max(1.0 / 3.0, 2.0 / 3.0, 2.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(alpha_feasible_max(0.0, 1.0, 2.0) == 0.0);
  CHECK(beta_feasible(0.0, 0.5, 0.0, 1.0));
  CHECK(beta_feasible(1.0, 1.0 / 3.0, 2.0 / 3.0, 1.0));
  CHECK_FALSE(beta_feasible(1.0, 0.5, 0.5, 1.0));
  CHECK(beta_feasible_max(0.0, 0.3, 1.0) == 1.0);
  for (double known : {0.2, 1.0, 3.0}) {
    for (double own : {0.1, 0.5, 2.0}) {
      const double b = beta_feasible_max(known, own, 1.0);
      CHECK(beta_feasible(b, known, own, 1.0));
      if (b < 1.0) CHECK_FALSE(beta_feasible(b * 1.001 + 1e-9, known, own, 1.0));
    }
  }
}

TEST_CASE("dedicated capacity segments") {
  const auto first = capacity_segments_dedicated(hp(1, 2, 1));
  REQUIRE(first.ab);
  CHECK(first.ab_branch == AbBranch::SumRateCorner);
  CHECK(dist(first.ab->from, pt(0, 0.5)) < 1e-12);
  CHECK(dist(first.ab->to, pt(kB1, 0.5)) < 1e-12);
  CHECK(first.cd_branch == CdBranch::None);
  CHECK_FALSE(first.cd);

  const auto above = capacity_segments_dedicated(hp(1, 2.5, 1));
  REQUIRE(above.cd);
  CHECK(above.cd_branch == CdBranch::UserAboveHelper);
  CHECK(dist(above.cd->from, pt(0.5, kHalfLog15)) < 1e-12);
  CHECK(dist(above.cd->to, pt(0.5, 0)) < 1e-12);

  const auto below = capacity_segments_dedicated(hp(3, 1, 1));
  REQUIRE(below.cd);
  CHECK(below.cd_branch == CdBranch::UserBelowHelper);
  CHECK(dist(below.cd->from, pt(0.5, kHalfLog43)) < 1e-12);
  CHECK(dist(below.cd->to, pt(0.5, 0)) < 1e-12);

  const auto second = capacity_segments_dedicated(hp(5, 0.5, 0.1));
  CHECK(second.ab_branch == AbBranch::PowerSplitCorner);
  CHECK(to_string(second.ab_branch) == "power-split-corner");
}

TEST_CASE("dedicated sum capacity") {
  REQUIRE(sum_capacity_dedicated(hp(1, 2, 1)));
  CHECK(std::abs(*sum_capacity_dedicated(hp(1, 2, 1)) - kHalfLog3) < 1e-12);
  CHECK_FALSE(sum_capacity_dedicated(hp(1, 1.5, 1)));
  REQUIRE(sum_capacity_dedicated(hp(0, 1, 1)));
  CHECK(std::abs(*sum_capacity_dedicated(hp(0, 1, 1)) - 0.5) < 1e-12);
}

TEST_CASE("segment endpoints lie on the outer boundary and are achievable") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.05, 20);
  for (int trial = 0; trial < 500; ++trial) {
    const double p0 = u(rng);
    const double p1 = u(rng);
    const double p2 = u(rng);
    const auto powers = hp(p0, p1, p2);
    const auto outer = outer_region_dedicated(powers);
    const auto seg = capacity_segments_dedicated(powers);
    REQUIRE(seg.ab);
    CHECK(on_boundary(outer, seg.ab->from));
    CHECK(on_boundary(outer, seg.ab->to));

    std::optional<RatePoint> b;
    if (seg.ab_branch == AbBranch::SumRateCorner) {
      const double p00 = p0 * p0 / (p0 + p2 + 1.0);
      b = inner_point_dedicated(dedicated(p00, p0 - p00, 2.0 * p00 / (1.0 + p0 + p1), 1.0), powers);
    } else {
      const double p00 = p0 * p0 / (p0 + p2 + 1.0);
      b = inner_point_dedicated(dedicated(p00, p0 - p00, 1.0, 1.0), powers);
    }
    REQUIRE(b);
    CHECK(dist(*b, seg.ab->to) < 1e-6);

    if (seg.cd) {
      CHECK(on_boundary(outer, seg.cd->from));
      CHECK(on_boundary(outer, seg.cd->to));
      Params params;
      if (seg.cd_branch == CdBranch::UserAboveHelper) {
        params = dedicated(p0, 0.0, p0 / (1.0 + p0), 0.0);
        params.p1_used = p0 + 1.0;
      } else {
        params = dedicated(p1 + 1.0, 0.0, 1.0, 0.0);
      }
      const auto c = inner_point_dedicated(params, powers);
      REQUIRE(c);
      CHECK(dist(*c, seg.cd->from) < 1e-6);
    }
  }
}

TEST_CASE("closed forms match the oracle") {
  const double q = 1e8;
  const auto powers = PowerConfig(1.5, {2.2, 0.9}, {StatePower::finite(q), StatePower::finite(q)});
  const auto limit = hp(1.5, 2.2, 0.9);
  double worst = 0.0;
  for (double f : linspace(0.05, 1, 12)) {
    const double p00 = f * powers.p0;
    const double p01 = powers.p0 - p00;
    const double bmax = beta_feasible_max(p00, p01, 0.9);
    for (double a : linspace(0.05, 1, 8)) {
      for (double b : linspace(0, 1, 6)) {
        Params params = dedicated(p00, p01, a * alpha_feasible_max(p00, p01, 2.2), b * bmax);
        const auto closed = inner_point_dedicated(params, limit);
        REQUIRE(closed);
        const auto g = build_model2_joint(powers, params, q, HelperMode::Dedicated);
        worst = std::max(worst, std::abs((*closed)(0) - cond_mutual_info(g, {"X1"}, {"Y1"}, {"U"})));
        worst = std::max(worst, std::abs((*closed)(1) - cond_mutual_info(g, {"X2"}, {"Y2"}, {"V"})));
      }
    }
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("feasibility constraints match the oracle inequalities") {
  const double q = 1e8;
  const auto powers = PowerConfig(2.0, {1.4, 1.1}, {StatePower::finite(q), StatePower::finite(q)});
  const double p00 = 1.6;
  const double p01 = 0.4;
  const double amax = alpha_feasible_max(p00, p01, 1.4);
  auto alpha_slack = [&](double alpha) {
    const auto g = build_model2_joint(powers, dedicated(p00, p01, alpha, 0.0), q, HelperMode::Dedicated);
    return mutual_info(g, {"U"}, {"Y1"}) - mutual_info(g, {"U"}, {"S1"});
  };
  CHECK(std::abs(alpha_slack(amax)) < 1e-6);
  CHECK(alpha_slack(0.97 * amax) > 0.0);
  CHECK(alpha_slack(1.03 * amax) < 0.0);

  const double bmax = beta_feasible_max(p00, p01, 1.1);
  auto beta_slack = [&](double beta) {
    const auto g = build_model2_joint(powers, dedicated(p00, p01, 0.5 * amax, beta), q, HelperMode::Dedicated);
    return mutual_info(g, {"V"}, {"Y2"}) - mutual_info(g, {"V"}, {"U", "S1"});
  };
  REQUIRE(bmax < 1.0);
  CHECK(std::abs(beta_slack(bmax)) < 1e-6);
  CHECK(beta_slack(0.97 * bmax) > 0.0);
  CHECK(beta_slack(1.03 * bmax) < 0.0);
}

TEST_CASE("full model examples") {
  const auto powers = hp(2, 1, 1);
  Params params;
  params.p00 = 1.0;
  params.p01 = 1.0;
  params.alpha = 0.5;
  const auto r = inner_point_full(params, powers);
  REQUIRE(r);
  CHECK(std::abs((*r)(0) - kHalfLog15) < 1e-12);

  // no helper message: same rates as the dedicated split (p01, p02) -> (p00, p01)
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.05, 1);
  for (int i = 0; i < 100; ++i) {
    const auto pw = hp(2.0, 1.0 + u(rng), u(rng));
    Params full;
    full.p01 = 2.0 * u(rng) * 0.5;
    full.p02 = 2.0 - full.p01;
    full.alpha = u(rng) * alpha_feasible_max(full.p01, full.p02, pw.p[0]);
    full.beta = u(rng) * beta_feasible_max(full.p01, full.p02, pw.p[1]);
    const auto a = inner_point_full(full, pw);
    const auto b = inner_point_dedicated(dedicated(full.p01, full.p02, full.alpha, full.beta), pw);
    REQUIRE(a);
    REQUIRE(b);
    CHECK((*a)(0) == 0.0);
    CHECK(std::abs((*a)(1) - (*b)(0)) < 1e-12);
    CHECK(std::abs((*a)(2) - (*b)(1)) < 1e-12);
  }

  Params dpc;
  dpc.p00 = 0.5;
  dpc.p01 = 0.5;
  dpc.p02 = 1.0;
  dpc.beta = 1.0;
  if (beta_feasible(1.0, 1.0, 1.0, 1.0)) {
    const auto d = inner_point_full(dpc, powers);
    REQUIRE(d);
    CHECK(std::abs((*d)(2) - 0.5) < 1e-12);
  }
}

TEST_CASE("full model matches the oracle") {
  const double q = 1e8;
  const auto powers = PowerConfig(2.0, {1.5, 1.2}, {StatePower::finite(q), StatePower::finite(q)});
  const auto limit = hp(2.0, 1.5, 1.2);
  double worst = 0.0;
  for (double f0 : {0.1, 0.4, 0.7}) {
    for (double f1 : {0.2, 0.5, 0.8}) {
      Params params;
      params.p00 = f0 * 2.0;
      params.p01 = f1 * (2.0 - params.p00);
      params.p02 = 2.0 - params.p00 - params.p01;
      params.alpha = 0.6 * alpha_feasible_max(params.p01, params.p02, 1.5);
      params.beta = 0.7 * beta_feasible_max(params.p00 + params.p01, params.p02, 1.2);
      const auto closed = inner_point_full(params, limit);
      REQUIRE(closed);
      const auto g = build_model2_joint(powers, params, q, HelperMode::WithMessage);
      worst = std::max(worst, std::abs((*closed)(0) - mutual_info(g, {"X00"}, {"Y0"})));
      worst = std::max(worst, std::abs((*closed)(1) - cond_mutual_info(g, {"X1"}, {"Y1"}, {"U"})));
      worst = std::max(worst, std::abs((*closed)(2) - cond_mutual_info(g, {"X2"}, {"Y2"}, {"V"})));
    }
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("full outer region and segments") {
  const auto o = outer_region_full(hp(1, 2, 1));
  double best = 0.0;
  for (const auto& v : o.vertices) best = std::max(best, v.sum());
  CHECK(std::abs(best - kHalfLog3) < 1e-12);

  const auto zero = outer_region_full(hp(0, 0, 0));
  REQUIRE(zero.vertices.size() == 1);
  CHECK(zero.vertices[0].norm() == 0.0);

  for (const auto& powers : {hp(1, 2, 1), hp(1, 2.5, 1), hp(3, 1, 1), hp(5, 0.5, 0.1)}) {
    const auto d = capacity_segments_dedicated(powers);
    const auto f = capacity_segments_full(powers, 0.0);
    REQUIRE(f.ab);
    CHECK(f.ab_branch == d.ab_branch);
    CHECK(dist(f.ab->to, pt(0, d.ab->to(0), d.ab->to(1))) < 1e-12);
    CHECK(dist(f.ab->from, pt(0, d.ab->from(0), d.ab->from(1))) < 1e-12);
    CHECK(f.cd.has_value() == d.cd.has_value());
    if (f.cd) CHECK(dist(f.cd->from, pt(0, d.cd->from(0), d.cd->from(1))) < 1e-12);
  }

  const auto c = capacity_segments_full(hp(2, 4, 1), 0.5);
  REQUIRE(c.cd);
  CHECK(std::abs(c.cd->from(1) - 0.660964047443681174) < 1e-12);
  CHECK(std::abs(c.cd->from(0) - gaussian_rate(0.5 / 2.5)) < 1e-12);
  CHECK(std::abs(c.ab->from(2) - gaussian_rate(1.0)) < 1e-12);

  CHECK_THROWS_AS(capacity_segments_full(hp(2, 4, 1), 2.5), InvalidArgument);
}

TEST_CASE("inner bounds stay inside outer bounds") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.05, 20);
  std::uniform_real_distribution<double> f(0, 1);
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto powers = hp(u(rng), u(rng), u(rng));
    const auto outer = outer_region_dedicated(powers);
    const auto outer3 = outer_region_full(powers);
    const double p00 = f(rng) * powers.p0;
    const double p01 = f(rng) * (powers.p0 - p00);
    Params params = dedicated(p00, p01, 0.0, 0.0);
    params.alpha = f(rng) * alpha_feasible_max(p00, p01, powers.p[0]);
    params.beta = f(rng) * beta_feasible_max(p00, p01, powers.p[1]);
    const auto r = inner_point_dedicated(params, powers);
    REQUIRE(r);
    CHECK(contains(outer, *r, 1e-6));

    Params full;
    full.p00 = f(rng) * powers.p0;
    full.p01 = f(rng) * (powers.p0 - full.p00);
    full.p02 = powers.p0 - full.p00 - full.p01;
    full.alpha = f(rng) * alpha_feasible_max(full.p01, full.p02, powers.p[0]);
    full.beta = f(rng) * beta_feasible_max(full.p00 + full.p01, full.p02, powers.p[1]);
    const auto r3 = inner_point_full(full, powers);
    REQUIRE(r3);
    CHECK(contains(outer3, *r3, 1e-6));
    ++checked;
  }
  CHECK(checked == 1000);
}

TEST_CASE("dedicated frontier") {
  const auto powers = hp(1, 2.5, 1);
  const auto region = inner_frontier_dedicated(powers, 101);
  const auto outer = outer_region_dedicated(powers);
  for (const auto& p : region.frontier) CHECK(contains(outer, p, 1e-6));
  const auto seg = capacity_segments_dedicated(powers);
  double best_r2_at_c = 0.0;
  for (const auto& p : region.frontier) {
    if (p(0) >= seg.cd->from(0) - 1e-9) best_r2_at_c = std::max(best_r2_at_c, p(1));
  }
  CHECK(best_r2_at_c == doctest::Approx(kHalfLog15).epsilon(1e-6));

  const auto slices = inner_frontier_full(powers, 5, 41);
  REQUIRE(slices.size() == 5);
  const auto outer3 = outer_region_full(powers);
  for (const auto& s : slices) {
    for (const auto& p : s.frontier) CHECK(contains(outer3, p, 1e-6));
  }
}

TEST_CASE("silent second user matches model I with all helper power assisting") {
  for (const auto& [p0, p1] : {std::pair{1.0, 3.0}, std::pair{1.5, 1.8}, std::pair{3.0, 1.8}, std::pair{0.5, 0.8}}) {
    const auto region = inner_frontier_dedicated(hp(p0, p1, 0.0), 401);
    double best = 0.0;
    for (const auto& p : region.frontier) {
      CHECK(p(1) == 0.0);
      best = std::max(best, p(0));
    }
    const auto m1 = model1::optimize_beta(1.0, PowerConfig::high_state(p0, {p1}), StatePower::infinite());
    CHECK(std::abs(best - m1.rates(1)) < 1e-6);
  }
}
