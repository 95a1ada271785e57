#include "mforge/geometry_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mforge/axioms.hpp"
#include "mforge/errors.hpp"

namespace mforge {

using nlohmann::json;

std::string geometry_to_json(const PolarSpace& g) {
  const auto& parts = g.parts();
  json doc;
  doc["schema"] = kGeomSchema;
  doc["form"] = {{"kind", parts.form.kind_name()}, {"space", parts.form.space_name()}, {"coeffs", parts.form.coeffs}};
  doc["q"] = parts.form.q;
  json pts = json::array();
  for (const auto& v : parts.points) {
    json row = json::array();
    for (int i = 0; i < g.dim(); ++i) row.push_back(v[i]);
    pts.push_back(std::move(row));
  }
  doc["points"] = std::move(pts);
  doc["lines"] = parts.lines;
  doc["planes"] = parts.planes;
  return doc.dump() + "\n";
}

PolarSpace geometry_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw CacheError(std::string("not valid JSON: ") + e.what());
  }
  try {
    if (!doc.is_object() || doc.value("schema", "") != kGeomSchema) throw CacheError("missing or unknown schema tag");
    FormSpec spec;
    const std::string kind = doc.at("form").at("kind").get<std::string>();
    if (kind == "alternating") {
      spec.kind = FormKind::Alternating;
    } else if (kind == "quadratic-parabolic") {
      spec.kind = FormKind::Parabolic;
    } else {
      throw CacheError("unknown form kind '" + kind + "'");
    }
    spec.q = doc.at("q").get<int>();
    spec.coeffs = doc.at("form").at("coeffs").get<std::vector<std::vector<int>>>();

    PolarSpace::Parts parts;
    parts.form = spec;
    const Form form(spec);
    const int dim = spec.dim();
    for (const auto& row : doc.at("points")) {
      auto coords = row.get<std::vector<int>>();
      if (static_cast<int>(coords.size()) != dim) throw CacheError("point vector has wrong length");
      Vec v{};
      for (int i = 0; i < dim; ++i) {
        if (coords[i] < 0 || coords[i] >= spec.q) throw CacheError("coordinate out of range");
        v[i] = static_cast<std::uint8_t>(coords[i]);
      }
      if (!form.is_singular(v)) throw CacheError("stored point is not singular");
      parts.points.push_back(v);
    }
    if (!std::is_sorted(parts.points.begin(), parts.points.end())) throw CacheError("points not in canonical order");
    parts.lines = doc.at("lines").get<std::vector<std::vector<int>>>();
    parts.planes = doc.at("planes").get<std::vector<std::vector<int>>>();

    const int n = static_cast<int>(parts.points.size());
    parts.adjacency.assign(n, PointSet(n));
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (form.bilinear(parts.points[a], parts.points[b]) == 0) parts.adjacency[a].set(b);
      }
    }
    PolarSpace g(std::move(parts));
    axiom_check(g);
    return g;
  } catch (const CacheError&) {
    throw;
  } catch (const std::exception& e) {
    throw CacheError(std::string("invalid geometry cache: ") + e.what());
  }
}

void save_geometry(const PolarSpace& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CacheError("cannot write " + path);
  out << geometry_to_json(g);
}

PolarSpace load_geometry(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CacheError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return geometry_from_json(ss.str());
}

}  // namespace mforge
