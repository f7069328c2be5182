#include "c1mortar/geometry_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "c1mortar/error.hpp"

namespace c1mortar {

using nlohmann::json;

namespace {

SideRef parse_side_ref(const json& j) {
  return {j.at("patch").get<int>(), side_from_string(j.at("side").get<std::string>())};
}

json side_ref_json(SideRef s) { return {{"patch", s.patch}, {"side", to_string(s.side)}}; }

PatchGeometry parse_patch(const json& j) {
  int pu, pv;
  const json& deg = j.at("degree");
  if (deg.is_array()) {
    pu = deg.at(0).get<int>();
    pv = deg.at(1).get<int>();
  } else {
    pu = pv = deg.get<int>();
  }
  KnotVector ku(pu, j.at("knots_u").get<std::vector<double>>());
  KnotVector kv(pv, j.at("knots_v").get<std::vector<double>>());
  std::vector<Eigen::Vector2d> cps;
  for (const auto& c : j.at("control_points")) {
    if (c.size() != 2) fail(ErrorCode::ParseError, "control points must have 2 coordinates");
    cps.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
  }
  std::vector<double> w;
  if (j.contains("weights")) w = j.at("weights").get<std::vector<double>>();
  return PatchGeometry(std::move(ku), std::move(kv), std::move(cps), std::move(w));
}

}  // namespace

MultiPatchTopology parse_geometry(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
  try {
    std::vector<PatchGeometry> patches;
    for (const auto& p : doc.at("patches")) patches.push_back(parse_patch(p));
    std::vector<InterfaceOverride> ov;
    if (doc.contains("interfaces"))
      for (const auto& i : doc.at("interfaces"))
        ov.push_back({parse_side_ref(i.at("primary")), parse_side_ref(i.at("secondary"))});
    MultiPatchTopology topo = build_topology(std::move(patches), -1.0, ov);
    if (doc.contains("dirichlet_sides")) {
      topo.dirichlet_sides.clear();
      for (const auto& s : doc.at("dirichlet_sides")) {
        const SideRef r = parse_side_ref(s);
        if (!topo.is_boundary(r))
          fail(ErrorCode::InvalidConfig, "dirichlet side is not on the boundary");
        topo.dirichlet_sides.push_back(r);
      }
    }
    return topo;
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
}

MultiPatchTopology load_geometry_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoFailure, "cannot open geometry file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_geometry(ss.str());
}

std::string geometry_to_json(const MultiPatchTopology& topo) {
  json doc;
  doc["patches"] = json::array();
  for (const auto& g : topo.patches) {
    json p;
    p["degree"] = {g.knots_u().degree(), g.knots_v().degree()};
    p["knots_u"] = std::vector<double>(g.knots_u().knots().begin(), g.knots_u().knots().end());
    p["knots_v"] = std::vector<double>(g.knots_v().knots().begin(), g.knots_v().knots().end());
    json cps = json::array();
    for (const auto& c : g.control_points()) cps.push_back({c.x(), c.y()});
    p["control_points"] = cps;
    if (g.is_rational()) p["weights"] = g.weights();
    doc["patches"].push_back(p);
  }
  doc["interfaces"] = json::array();
  for (const auto& I : topo.interfaces)
    doc["interfaces"].push_back({{"primary", side_ref_json(I.primary)},
                                 {"secondary", side_ref_json(I.secondary)}});
  doc["dirichlet_sides"] = json::array();
  for (const auto& s : topo.dirichlet_sides) doc["dirichlet_sides"].push_back(side_ref_json(s));
  return doc.dump(2);
}

}  // namespace c1mortar
