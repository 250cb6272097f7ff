#include "helpernet/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace helpernet {
namespace {

bool lex_less(const RatePoint& a, const RatePoint& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

bool dominates(const RatePoint& q, const RatePoint& p) {
  bool strict = false;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (q(i) < p(i)) return false;
    if (q(i) > p(i)) strict = true;
  }
  return strict;
}

double cross(const RatePoint& o, const RatePoint& a, const RatePoint& b) {
  return (a(0) - o(0)) * (b(1) - o(1)) - (a(1) - o(1)) * (b(0) - o(0));
}

void require_dim(const std::vector<RatePoint>& points, Eigen::Index dim, const char* what) {
  for (const auto& p : points) {
    if (p.size() != dim) throw InvalidArgument(std::string(what) + ": point dimension mismatch");
  }
}

// Largest t >= 0 with t*dir on segment [a, b], or -inf when the ray misses it.
double ray_hit(const Eigen::Vector2d& dir, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  const Eigen::Vector2d e = b - a;
  const double den = dir(0) * e(1) - dir(1) * e(0);
  if (std::abs(den) < 1e-300) {
    // parallel: hits only if collinear with the ray
    if (std::abs(dir(0) * a(1) - dir(1) * a(0)) > 1e-15) return -std::numeric_limits<double>::infinity();
    return std::max(a.dot(dir), b.dot(dir));
  }
  // t*dir = a + s*e
  const double t = (a(0) * e(1) - a(1) * e(0)) / den;
  const double s = (a(0) * dir(1) - a(1) * dir(0)) / den;
  if (s < -1e-12 || s > 1.0 + 1e-12 || t < 0.0) return -std::numeric_limits<double>::infinity();
  return t;
}

}  // namespace

std::vector<double> linspace(double lo, double hi, int count) {
  if (count < 1) throw InvalidArgument("linspace: count must be >= 1");
  if (count == 1) return {lo};
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out[i] = lo + (hi - lo) * static_cast<double>(i) / (count - 1);
  out.back() = hi;
  return out;
}

std::vector<RatePoint> pareto_frontier(std::vector<RatePoint> points) {
  if (points.empty()) return points;
  require_dim(points, points.front().size(), "pareto_frontier");
  for (const auto& p : points) {
    if (!p.allFinite()) throw NumericalError("pareto_frontier: non-finite point");
  }
  // Any dominator of p is lexicographically larger, so a descending sweep
  // only needs to test against points already kept.
  std::sort(points.begin(), points.end(), [](const RatePoint& a, const RatePoint& b) { return lex_less(b, a); });
  points.erase(std::unique(points.begin(), points.end(), [](const RatePoint& a, const RatePoint& b) { return a == b; }),
               points.end());
  std::vector<RatePoint> kept;
  for (auto& p : points) {
    const bool dominated = std::any_of(kept.begin(), kept.end(), [&](const RatePoint& q) { return dominates(q, p); });
    if (!dominated) kept.push_back(std::move(p));
  }
  std::reverse(kept.begin(), kept.end());
  return kept;
}

std::vector<RatePoint> convex_hull_frontier(std::vector<RatePoint> points) {
  if (points.empty()) return points;
  require_dim(points, 2, "convex_hull_frontier");
  std::sort(points.begin(), points.end(), lex_less);
  points.erase(std::unique(points.begin(), points.end(), [](const RatePoint& a, const RatePoint& b) { return a == b; }),
               points.end());

  double scale = 0.0;
  for (const auto& p : points) scale = std::max(scale, p.cwiseAbs().maxCoeff());
  const double tol = 1e-13 * std::max(scale * scale, 1e-300);

  std::vector<RatePoint> hull;
  for (auto& p : points) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) >= -tol) hull.pop_back();
    hull.push_back(std::move(p));
  }
  // drop the rising part left of the highest point
  std::size_t top = 0;
  for (std::size_t i = 1; i < hull.size(); ++i) {
    if (hull[i](1) >= hull[top](1)) top = i;
  }
  return {hull.begin() + static_cast<std::ptrdiff_t>(top), hull.end()};
}

std::vector<RatePoint> vertices_from_halfspaces(const std::vector<HalfSpace>& halfspaces, Eigen::Index dim) {
  if (dim < 1 || dim > kMaxEnumerationDim) {
    throw InvalidArgument("vertices_from_halfspaces: dimension " + std::to_string(dim) + " not supported");
  }
  for (const auto& h : halfspaces) {
    if (h.normal.size() != dim) throw InvalidArgument("vertices_from_halfspaces: normal dimension mismatch");
    if ((h.normal.array() < 0.0).any()) throw InvalidArgument("vertices_from_halfspaces: negative normal entry");
  }
  for (Eigen::Index i = 0; i < dim; ++i) {
    const bool bounded =
        std::any_of(halfspaces.begin(), halfspaces.end(), [&](const HalfSpace& h) { return h.normal(i) > 0.0; });
    if (!bounded) throw InvalidArgument("vertices_from_halfspaces: region unbounded along axis " + std::to_string(i));
  }

  // rows: orthant constraints -x_i <= 0, then the half-spaces
  const auto n = static_cast<Eigen::Index>(halfspaces.size()) + dim;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, dim);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < dim; ++i) a(i, i) = -1.0;
  for (std::size_t k = 0; k < halfspaces.size(); ++k) {
    a.row(dim + static_cast<Eigen::Index>(k)) = halfspaces[k].normal.transpose();
    b(dim + static_cast<Eigen::Index>(k)) = halfspaces[k].offset;
  }
  const double slack = kVertexTolerance * std::max(1.0, b.cwiseAbs().maxCoeff());

  std::vector<RatePoint> found;
  std::vector<Eigen::Index> pick(static_cast<std::size_t>(dim));
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    Eigen::MatrixXd sa(dim, dim);
    Eigen::VectorXd sb(dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
      sa.row(r) = a.row(pick[r]);
      sb(r) = b(pick[r]);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sa);
    if (lu.rank() == dim) {
      Eigen::VectorXd x = lu.solve(sb);
      if (x.allFinite() && ((a * x - b).array() <= slack).all()) {
        x = x.cwiseMax(0.0);
        const bool dup = std::any_of(found.begin(), found.end(), [&](const RatePoint& v) {
          return (v - x).cwiseAbs().maxCoeff() <= kVertexTolerance;
        });
        if (!dup) found.push_back(x);
      }
    }
    // next combination
    Eigen::Index i = dim - 1;
    while (i >= 0 && pick[i] == n - dim + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (Eigen::Index j = i + 1; j < dim; ++j) pick[j] = pick[j - 1] + 1;
  }
  std::sort(found.begin(), found.end(), lex_less);
  return found;
}

RateRegion make_polytope(std::vector<std::string> axes, std::vector<HalfSpace> halfspaces) {
  RateRegion region;
  region.axes = std::move(axes);
  region.halfspaces = std::move(halfspaces);
  if (region.dim() <= kMaxEnumerationDim) {
    region.vertices = vertices_from_halfspaces(region.halfspaces, region.dim());
    region.frontier = pareto_frontier(region.vertices);
  }
  return region;
}

bool contains(const RateRegion& region, const RatePoint& point, double tol) {
  if (point.size() != region.dim()) {
    throw InvalidArgument("contains: point has dimension " + std::to_string(point.size()) + ", region has " +
                          std::to_string(region.dim()));
  }
  if ((point.array() < -tol).any()) return false;
  return std::all_of(region.halfspaces.begin(), region.halfspaces.end(),
                     [&](const HalfSpace& h) { return h.normal.dot(point) <= h.offset + tol; });
}

std::vector<RatePoint> boundary_polyline(const RateRegion& region) {
  if (region.dim() != 2) throw InvalidArgument("boundary_polyline: 2-D regions only");
  auto verts = region.vertices.empty() ? vertices_from_halfspaces(region.halfspaces, 2) : region.vertices;
  std::vector<RatePoint> out;
  for (auto& v : verts) {
    if (v.cwiseAbs().maxCoeff() > kVertexTolerance) out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end(), [](const RatePoint& a, const RatePoint& b) {
    if (a(0) != b(0)) return a(0) < b(0);
    return a(1) > b(1);
  });
  return out;
}

double max_gap(const std::vector<RatePoint>& inner_frontier, const RateRegion& outer, int samples) {
  if (outer.dim() != 2) throw InvalidArgument("max_gap: 2-D regions only");
  require_dim(inner_frontier, 2, "max_gap");
  if (samples < 2) throw InvalidArgument("max_gap: need at least two samples");

  const auto outer_line = boundary_polyline(outer);
  if (outer_line.empty()) return 0.0;

  // down-closure boundary of the inner hull
  std::vector<Eigen::Vector2d> inner;
  const auto hull = convex_hull_frontier(inner_frontier);
  if (!hull.empty()) {
    inner.emplace_back(0.0, hull.front()(1));
    for (const auto& h : hull) inner.emplace_back(h(0), h(1));
    inner.emplace_back(hull.back()(0), 0.0);
  }
  auto inner_radius = [&](const Eigen::Vector2d& dir) {
    double best = 0.0;
    for (std::size_t i = 0; i + 1 < inner.size(); ++i) best = std::max(best, ray_hit(dir, inner[i], inner[i + 1]));
    return best;
  };

  std::vector<double> cumulative{0.0};
  for (std::size_t i = 0; i + 1 < outer_line.size(); ++i) {
    cumulative.push_back(cumulative.back() + (outer_line[i + 1] - outer_line[i]).norm());
  }
  const double total = cumulative.back();

  double gap = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    Eigen::Vector2d o;
    if (outer_line.size() == 1 || total == 0.0) {
      o = outer_line.front().head<2>();
    } else {
      const double arc = total * s / (samples - 1);
      auto it = std::upper_bound(cumulative.begin(), cumulative.end(), arc);
      std::size_t seg = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()), outer_line.size() - 1);
      seg = seg == 0 ? 0 : seg - 1;
      const double len = cumulative[seg + 1] - cumulative[seg];
      const double frac = len > 0.0 ? (arc - cumulative[seg]) / len : 0.0;
      o = (outer_line[seg] + frac * (outer_line[seg + 1] - outer_line[seg])).head<2>();
    }
    const double radius = o.norm();
    if (radius == 0.0) continue;
    gap = std::max(gap, radius - inner_radius(o / radius));
  }
  return std::max(gap, 0.0);
}

}  // namespace helpernet
