#include "mag/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mag {

namespace {

using nlohmann::json;

Rat jrat(const json& j, const char* what) {
  try {
    if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return parse_rational(j.get<std::string>());
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("bad rational for ") + what + ": " + e.what());
  }
  throw std::runtime_error(std::string("expected a rational string for ") + what);
}

std::pair<Rat, Rat> jpoint2(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2)
    throw std::runtime_error(std::string(what) + ": expected [x, y]");
  return {jrat(j[0], what), jrat(j[1], what)};
}

FiniteMetricSpace parse_finite_metric(const json& j) {
  const auto& dist = j.at("dist");
  size_t n = dist.size();
  std::vector<std::string> labels;
  if (j.contains("labels"))
    for (const auto& l : j.at("labels")) labels.push_back(l.get<std::string>());
  else
    for (size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  if (labels.size() != n) throw std::runtime_error("labels/dist size mismatch");
  std::vector<std::vector<ExactLength>> d(n);
  for (size_t i = 0; i < n; ++i) {
    if (dist[i].size() != n) throw std::runtime_error("distance matrix is not square");
    for (const auto& e : dist[i]) d[i].emplace_back(jrat(e, "dist"));
  }
  return FiniteMetricSpace(std::move(labels), std::move(d));
}

FiniteMetricSpace parse_graph(const json& j) {
  size_t n = j.at("vertices").get<size_t>();
  std::vector<std::pair<size_t, size_t>> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw std::runtime_error("edge must be [i, j]");
    edges.emplace_back(e[0].get<size_t>(), e[1].get<size_t>());
  }
  std::vector<std::string> labels;
  if (j.contains("labels"))
    for (const auto& l : j.at("labels")) labels.push_back(l.get<std::string>());
  return FiniteMetricSpace::from_graph(n, edges, std::move(labels));
}

PointSet parse_points(const json& j) {
  std::vector<Vec> pts;
  size_t dim = 0;
  for (const auto& row : j.at("points")) {
    Vec v;
    for (const auto& c : row) v.push_back(jrat(c, "points"));
    if (pts.empty()) dim = v.size();
    else if (v.size() != dim)
      throw std::runtime_error("inconsistent point dimensions");
    pts.push_back(std::move(v));
  }
  if (j.contains("dim")) dim = j.at("dim").get<size_t>();
  return PointSet(dim, std::move(pts));
}

OuterBody parse_outer(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "plane") return Plane2{};
  if (kind == "halfplane")
    return HalfPlane2{jrat(j.at("a"), "a"), jrat(j.at("b"), "b"), jrat(j.at("c"), "c")};
  if (kind == "polygon") {
    Polygon2 p;
    for (const auto& v : j.at("verts")) p.verts.push_back(jpoint2(v, "verts"));
    return p;
  }
  if (kind == "disc")
    return Disc2{jrat(j.at("cx"), "cx"), jrat(j.at("cy"), "cy"), jrat(j.at("r2"), "r2")};
  throw std::runtime_error("unknown outer body kind: " + kind);
}

HoleBody parse_hole(const json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "polygon") {
    Polygon2 p;
    for (const auto& v : j.at("verts")) p.verts.push_back(jpoint2(v, "verts"));
    return p;
  }
  if (kind == "disc")
    return Disc2{jrat(j.at("cx"), "cx"), jrat(j.at("cy"), "cy"), jrat(j.at("r2"), "r2")};
  if (kind == "segment") return Segment2{jpoint2(j.at("a"), "a"), jpoint2(j.at("b"), "b")};
  throw std::runtime_error("unknown hole kind: " + kind);
}

Shape2D parse_shape(const json& j) {
  Shape2D s;
  s.outer = parse_outer(j.at("outer"));
  if (j.contains("holes"))
    for (const auto& h : j.at("holes")) s.holes.push_back(parse_hole(h));
  s.validate();
  return s;
}

}  // namespace

SpaceInput parse_space_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("JSON parse error: ") + e.what());
  }
  std::string type = j.value("type", "");
  try {
    if (type == "finite_metric") return parse_finite_metric(j);
    if (type == "graph") return parse_graph(j);
    if (type == "points") return parse_points(j);
    if (type == "shape2d") return parse_shape(j);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed ") + type + " input: " + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("invalid ") + type + " input: " + e.what());
  }
  throw std::runtime_error("unknown input type: \"" + type + "\"");
}

PointSet points_from_csv(std::istream& in) {
  std::vector<Vec> pts;
  size_t dim = 0;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    Vec v;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      // trim blanks
      size_t b = cell.find_first_not_of(" \t\r");
      size_t e = cell.find_last_not_of(" \t\r");
      if (b == std::string::npos) continue;
      try {
        v.push_back(parse_rational(cell.substr(b, e - b + 1)));
      } catch (const std::exception& ex) {
        throw std::runtime_error("CSV line " + std::to_string(lineno) + ": " + ex.what());
      }
    }
    if (v.empty()) continue;
    if (pts.empty()) dim = v.size();
    else if (v.size() != dim)
      throw std::runtime_error("CSV line " + std::to_string(lineno) +
                               ": inconsistent dimension");
    pts.push_back(std::move(v));
  }
  return PointSet(dim, std::move(pts));
}

SpaceInput load_space(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  if (path.size() > 4 && path.substr(path.size() - 4) == ".csv") return points_from_csv(in);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_space_json(buf.str());
}

std::string homology_table_to_json(const HomologyTable& t) {
  json j;
  j["n_max"] = t.n_max;
  j["l_max"] = t.l_max.str();
  j["computed_to_degree"] = t.computed_to_degree;
  j["groups"] = json::array();
  for (const auto& [key, g] : t.groups) {
    json e;
    e["n"] = key.n;
    e["l"] = key.len.str();
    e["rank"] = g.free_rank;
    e["torsion"] = json::array();
    for (const Int& f : g.torsion) e["torsion"].push_back(f.str());
    j["groups"].push_back(std::move(e));
  }
  return j.dump(2);
}

std::string alignedness_to_json(const AlignednessReport& r,
                                const std::vector<std::string>& labels) {
  json j;
  j["aligned"] = r.aligned;
  auto names = [&](const std::array<size_t, 4>& w) {
    json a = json::array();
    for (size_t i : w) a.push_back(labels.at(i));
    return a;
  };
  if (r.geodetic_violation) j["geodetic_violation"] = names(*r.geodetic_violation);
  if (r.four_cut) j["four_cut"] = names(*r.four_cut);
  return j.dump(2);
}

}  // namespace mag
