#include "helpernet/io.hpp"

#include <cctype>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace helpernet {
namespace {

using Json = nlohmann::ordered_json;

std::string lower(std::string s) {
  for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

std::string format_rate(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

// commas and quotes are not expected in labels, but keep the CSV well-formed anyway
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void row(std::ostream& os, const std::string& curve, const std::string& label, const RatePoint& p) {
  os << csv_field(curve) << ',' << csv_field(label);
  for (Eigen::Index i = 0; i < p.size(); ++i) os << ',' << format_rate(p(i));
  os << '\n';
}

Json point_json(const RatePoint& p) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < p.size(); ++i) arr.push_back(p(i));
  return arr;
}

Json points_json(const std::vector<RatePoint>& pts) {
  Json arr = Json::array();
  for (const auto& p : pts) arr.push_back(point_json(p));
  return arr;
}

Json meta_json(const Report& r) {
  Json q = Json::array();
  for (const auto& s : r.powers.q) {
    if (s.is_infinite()) {
      q.push_back("inf");
    } else {
      q.push_back(s.value());
    }
  }
  Json m;
  m["tool_version"] = kToolVersion;
  m["log_base"] = 2;
  m["q_mode"] = r.meta.q_mode;
  m["seed"] = r.meta.seed;
  m["preset"] = r.meta.preset;
  m["preset_source"] = r.meta.preset_source;
  m["model"] = r.meta.model;
  m["powers"] = {{"p0", r.powers.p0}, {"p", r.powers.p}, {"q", q}};
  return m;
}

std::vector<RatePoint> outer_outline(const RateRegion& outer) {
  if (outer.dim() == 2) return boundary_polyline(outer);
  return outer.frontier;
}

}  // namespace

std::vector<std::string> endpoint_names(const BoundarySegment& seg) {
  if (seg.is_point()) return {seg.label};
  const auto dash = seg.label.find('-');
  if (dash == std::string::npos) return {seg.label + "0", seg.label + "1"};
  return {seg.label.substr(0, dash), seg.label.substr(dash + 1)};
}

void write_csv(std::ostream& os, const Report& r, CsvPart part) {
  os << "# tool_version=" << kToolVersion << '\n';
  os << "# log_base=2\n";
  os << "# q_mode=" << r.meta.q_mode << '\n';
  os << "# seed=" << r.meta.seed << '\n';
  os << "# preset=" << r.meta.preset << '\n';
  os << "# preset_source=" << r.meta.preset_source << '\n';
  os << "# model=" << r.meta.model << '\n';
  os << "# p0=" << format_rate(r.powers.p0);
  for (std::size_t k = 0; k < r.powers.p.size(); ++k) os << " p" << k + 1 << '=' << format_rate(r.powers.p[k]);
  os << '\n';
  if (r.sum_capacity) os << "# sum_capacity=" << format_rate(*r.sum_capacity) << '\n';
  if (r.gamma_interval) {
    os << "# gamma_interval=" << format_rate(r.gamma_interval->first) << ',' << format_rate(r.gamma_interval->second)
       << '\n';
  }
  for (const auto& n : r.notes) os << "# note=" << n << '\n';

  os << "curve,label";
  for (const auto& a : r.axes) os << ',' << lower(a);
  os << '\n';

  const bool all = part == CsvPart::All;
  if (all || part == CsvPart::Inner) {
    for (const auto& c : r.inner) {
      for (const auto& p : c.points) row(os, "inner", c.label, p);
    }
  }
  if ((all || part == CsvPart::Outer) && r.outer) {
    for (const auto& p : outer_outline(*r.outer)) row(os, "outer", "", p);
  }
  if (all || part == CsvPart::Segments) {
    for (const auto& s : r.segments) {
      const auto names = endpoint_names(s);
      row(os, "segment:" + s.label, names.front(), s.from);
      if (!s.is_point()) row(os, "segment:" + s.label, names.back(), s.to);
    }
  }
}

void write_json(std::ostream& os, const Report& r) {
  Json j;
  j["meta"] = meta_json(r);
  j["axes"] = r.axes;

  Json inner = Json::array();
  for (const auto& c : r.inner) inner.push_back({{"label", c.label}, {"frontier", points_json(c.points)}});
  j["inner"] = inner;

  if (r.outer) {
    Json hs = Json::array();
    for (const auto& h : r.outer->halfspaces) {
      hs.push_back({{"normal", point_json(h.normal)}, {"offset", h.offset}, {"label", h.label}});
    }
    j["outer"] = {{"halfspaces", hs},
                  {"vertices", points_json(r.outer->vertices)},
                  {"frontier", points_json(r.outer->frontier)}};
  } else {
    j["outer"] = nullptr;
  }

  Json segs = Json::array();
  for (const auto& s : r.segments) {
    segs.push_back({{"label", s.label},
                    {"endpoints", endpoint_names(s)},
                    {"from", point_json(s.from)},
                    {"to", point_json(s.to)},
                    {"source", s.source},
                    {"regime", s.regime}});
  }
  j["capacity_segments"] = segs;
  j["sum_capacity"] = r.sum_capacity ? Json(*r.sum_capacity) : Json(nullptr);
  j["gamma_interval"] =
      r.gamma_interval ? Json::array({r.gamma_interval->first, r.gamma_interval->second}) : Json(nullptr);
  j["notes"] = r.notes;
  os << j.dump(2) << '\n';
}

}  // namespace helpernet
