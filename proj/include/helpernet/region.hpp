#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "helpernet/types.hpp"

namespace helpernet {

/// normal · R <= offset. Normals are nonnegative; the nonnegative orthant
/// R >= 0 is implied for every region and never stored.
struct HalfSpace {
  Eigen::VectorXd normal;
  double offset = 0.0;
  std::string label;
};

/// A piece of the capacity boundary. `from == to` marks a single point.
struct BoundarySegment {
  RatePoint from;
  RatePoint to;
  std::string label;   // "A-B", "D-E", "A", ...
  std::string source;  // which characterization produced it
  std::string regime;  // case / branch tag

  bool is_point() const { return (from - to).cwiseAbs().maxCoeff() == 0.0; }
};

struct RateRegion {
  std::vector<std::string> axes;  // coordinate names, e.g. {"R0", "R1"}
  std::vector<HalfSpace> halfspaces;
  std::vector<RatePoint> vertices;
  std::vector<RatePoint> frontier;  // Pareto-maximal, lexicographically sorted
  std::vector<std::string> labels;  // provenance of frontier pieces

  Eigen::Index dim() const { return static_cast<Eigen::Index>(axes.size()); }
};

inline constexpr double kVertexTolerance = 1e-9;
inline constexpr int kMaxEnumerationDim = 4;

/// Points not dominated by any other input point, deduplicated exactly and
/// sorted lexicographically.
std::vector<RatePoint> pareto_frontier(std::vector<RatePoint> points);

/// Upper-right concave hull of 2-D points (the time-sharing boundary),
/// ordered by increasing first coordinate. Collinear interior points are
/// dropped.
std::vector<RatePoint> convex_hull_frontier(std::vector<RatePoint> points);

/// All extreme points of {x >= 0, normal·x <= offset} for dim <= 4.
/// Throws InvalidArgument if some coordinate is not bounded by any half-space.
std::vector<RatePoint> vertices_from_halfspaces(const std::vector<HalfSpace>& halfspaces, Eigen::Index dim);

/// Region from half-spaces with vertices enumerated when dim allows it.
RateRegion make_polytope(std::vector<std::string> axes, std::vector<HalfSpace> halfspaces);

bool contains(const RateRegion& region, const RatePoint& point, double tol = 1e-9);

/// 2-D only. Largest radial distance, along rays from the origin, between
/// the outer region's boundary and the down-closure of the time-sharing
/// hull of `inner_frontier`. Zero when the bounds coincide.
double max_gap(const std::vector<RatePoint>& inner_frontier, const RateRegion& outer, int samples = 2001);

/// Outer boundary of a 2-D region, from the R-second-axis intercept to the
/// first-axis intercept (origin excluded).
std::vector<RatePoint> boundary_polyline(const RateRegion& region);

/// Evenly spaced values on [lo, hi], endpoints included.
std::vector<double> linspace(double lo, double hi, int count);

}  // namespace helpernet
