#pragma once

#include <fstream>
#include <iomanip>

#include <json.hpp>

#include "mcflab/cones.hpp"
#include "mcflab/orbit.hpp"
#include "mcflab/return_map.hpp"

namespace mcflab {

using json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";
inline constexpr const char* kToolVersion = "0.1.0";

// Every exactly-determined number is emitted both as "num/den" and as a
// decimal rendering.
inline json rat_json(const Rat& r, int digits = 12) {
  return json{{"exact", rat_string(r)}, {"decimal", rat_decimal(r, digits)}};
}

template <class T>
json point_json(const Vec<T>& x) {
  json arr = json::array();
  for (const auto& v : x) arr.push_back(rat_string(v));
  return arr;
}

inline json matrix_json(const TransitionMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.n; ++i) {
    json row = json::array();
    for (int j = 0; j < m.n; ++j) row.push_back(m.at(i, j).str());
    rows.push_back(row);
  }
  return json{{"n", m.n},
              {"kind", m.kind == MatKind::forward ? "forward" : "inverse"},
              {"rows", rows}};
}

inline json params_json(const MapParams& p) {
  json j{{"a", p.a}, {"b", p.b}};
  if (p.is_variant()) j["variant_index"] = p.sub_index;
  return j;
}

template <class T>
json orbit_summary_json(const OrbitSummary<T>& s) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["params"] = params_json(s.params);
  j["start"] = point_json(s.start);
  j["steps_taken"] = s.steps_taken;
  j["stop_reason"] = to_string(s.stop_reason);
  j["first_hit_A"] = s.first_hit_A ? json(*s.first_hit_A) : json(nullptr);
  j["first_hit_D"] = s.first_hit_D ? json(*s.first_hit_D) : json(nullptr);
  j["final_point"] = point_json(s.final_point);
  j["limit_estimate"] = point_json(s.limit_estimate);
  j["partial_sum_xa"] = rat_string(s.partial_sum_xa);
  return j;
}

inline json absorption_json(const AbsorptionReport& r) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["params"] = params_json(r.params);
  j["region"] = r.region == SampleRegion::cA ? "cA" : "lambda";
  j["n_samples"] = r.n_samples;
  j["cap"] = r.cap;
  j["seed"] = r.seed;
  j["absorbed_A"] = r.absorbed_A;
  j["absorbed_D"] = r.absorbed_D;
  j["unabsorbed"] = r.unabsorbed;
  j["limit_checks"] = r.limit_checks;
  j["limit_mismatches"] = r.limit_mismatches;
  return j;
}

inline json alpha_json(const AlphaEstimate& e) {
  return json{{"n_samples", e.n_samples},
              {"theta_hits", e.theta_hits},
              {"gamma_hits", e.gamma_hits},
              {"leb_theta", e.leb_theta},
              {"leb_gamma", e.leb_gamma},
              {"theta_ci_halfwidth", e.theta_halfwidth},
              {"gamma_ci_halfwidth", e.gamma_halfwidth},
              {"alpha_lower", e.alpha_lower},
              {"conclusive", e.conclusive}};
}

inline json tree_json(const SubdivisionTree& t) {
  json depths = json::array();
  for (int k = 0; k <= t.max_depth; ++k) {
    json cones = json::array();
    for (const auto& c : t.complement[k]) {
      json basis = json::array();
      for (const auto& v : c.f)
        basis.push_back({v[0].str(), v[1].str(), v[2].str()});
      cones.push_back(json{{"basis", basis},
                           {"area", rat_json(normalized_area(c))}});
    }
    depths.push_back(json{{"depth", k},
                          {"complement_cones", cones},
                          {"complement_area", rat_json(t.complement_area[k])},
                          {"absorbed_area", rat_json(t.absorbed_area[k])}});
  }
  return json{{"schema_version", kSchemaVersion}, {"depths", depths}};
}

// ---------------------------------------------------------------------------
// CSV

inline std::string histogram_csv(const std::map<long, long>& hist,
                                 const std::string& key = "k") {
  std::ostringstream os;
  os << key << ",count\n";
  for (const auto& [k, v] : hist) os << k << ',' << v << '\n';
  return os.str();
}

inline std::string areas_csv(const SubdivisionTree& t) {
  std::ostringstream os;
  os << "depth,complement_area,complement_area_decimal\n";
  for (int k = 0; k <= t.max_depth; ++k)
    os << k << ',' << rat_string(t.complement_area[k]) << ','
       << rat_decimal(t.complement_area[k]) << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// SVG rendering of simplex triangles

/// Barycentric to planar: equilateral triangle of side 1000, apex (0,0,1)
/// on top. Planar corners: (1,0,0) -> (0, 866.025404), (0,1,0) ->
/// (1000, 866.025404), (0,0,1) -> (500, 0). Coordinates printed with six
/// decimals; this is the only float formatting in any output.
inline std::pair<double, double> to_plane(const std::array<Rat, 3>& bary) {
  auto d = [](const Rat& r) {
    return static_cast<double>(numerator(r)) / static_cast<double>(denominator(r));
  };
  double x1 = d(bary[0]), x2 = d(bary[1]), x3 = d(bary[2]);
  const double h = 866.0254037844386;
  return {x2 * 1000.0 + x3 * 500.0, x1 * h + x2 * h};
}

struct SvgTriangle {
  std::array<std::array<Rat, 3>, 3> vertices;
  std::string css_class;
};

inline std::string svg_document(const std::vector<SvgTriangle>& tris) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-20 -20 1040 "
        "926\">\n";
  os << "<style>.complement{fill:none;stroke:#444;stroke-width:1.5}"
        ".absorbed{fill:#9ecae1;fill-opacity:0.6;stroke:#3182bd;stroke-width:1}"
        ".frame{fill:none;stroke:#000;stroke-width:2}"
        ".aux{fill:none;stroke:#bbb;stroke-width:1;stroke-dasharray:4 3}"
        "</style>\n";
  for (const auto& t : tris) {
    os << "<polygon class=\"" << t.css_class << "\" points=\"";
    for (int i = 0; i < 3; ++i) {
      auto [px, py] = to_plane(t.vertices[i]);
      os << px << ',' << py << (i < 2 ? " " : "");
    }
    os << "\" data-bary=\"";
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j)
        os << rat_string(t.vertices[i][j]) << (j < 2 ? "," : "");
      os << (i < 2 ? ";" : "");
    }
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

/// The figure for one depth: the outer simplex, the root subdivision by
/// smallest coordinate, and all complement cones up to this depth with their
/// absorbed middle cones.
inline std::string render_depth_svg(const SubdivisionTree& t, int depth) {
  if (depth < 0 || depth > t.max_depth)
    throw usage_error("render depth outside of the computed tree");
  std::vector<SvgTriangle> tris;
  ConeBasis root = ConeBasis::canonical();
  tris.push_back({triangle_vertices(root), "frame"});
  for (const auto& c : subdivide(root))
    tris.push_back({triangle_vertices(c), "aux"});
  for (int k = 0; k <= depth; ++k) {
    for (const auto& c : t.complement[k])
      tris.push_back({triangle_vertices(c), "complement"});
    for (const auto& c : t.absorbed[k])
      tris.push_back({triangle_vertices(c), "absorbed"});
  }
  return svg_document(tris);
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw usage_error("cannot open output file: " + path);
  f << content;
  if (!f) throw usage_error("failed writing output file: " + path);
}

inline void write_json(const std::string& path, const json& j) {
  write_file(path, j.dump(2) + "\n");
}

}  // namespace mcflab
