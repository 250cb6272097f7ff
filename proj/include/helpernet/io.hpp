#pragma once

// CSV and JSON serialization of computed regions.
//
// CSV: '#'-prefixed header lines (tool version, log base, q_mode, seed,
// preset source, model, axes), a column line, then one row per point with
// columns curve,label,<axes...> at 12 significant digits. Segment endpoints
// use curve "segment:<segment label>" and the endpoint name as label.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "helpernet/region.hpp"
#include "helpernet/types.hpp"

namespace helpernet {

inline constexpr const char* kToolVersion = "helpernet 0.1.0";

struct OutputMeta {
  std::string model;
  std::string q_mode = "inf";
  std::uint64_t seed = 0;
  std::string preset = "";
  std::string preset_source = "user";  // "published", "chosen" or "user"
};

struct InnerCurve {
  std::string label;
  std::vector<RatePoint> points;
};

struct Report {
  OutputMeta meta;
  PowerConfig powers;
  std::vector<std::string> axes;
  std::vector<InnerCurve> inner;
  std::optional<RateRegion> outer;
  std::vector<BoundarySegment> segments;
  std::optional<double> sum_capacity;
  std::optional<std::pair<double, double>> gamma_interval;
  std::vector<std::string> notes;
};

enum class CsvPart { All, Inner, Outer, Segments };

/// Endpoint names of a segment label: "A-B" -> {"A", "B"}, "A" -> {"A"}.
std::vector<std::string> endpoint_names(const BoundarySegment& seg);

void write_csv(std::ostream& os, const Report& report, CsvPart part = CsvPart::All);
void write_json(std::ostream& os, const Report& report);

}  // namespace helpernet
