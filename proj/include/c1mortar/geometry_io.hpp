#pragma once

// JSON geometry files:
// {
//   "patches": [ { "degree": 2 | [pu, pv], "knots_u": [...], "knots_v": [...],
//                  "control_points": [[x, y], ...], "weights": [...] } ],
//   "interfaces": [ { "primary": {"patch": 0, "side": "east"},
//                     "secondary": {"patch": 1, "side": "west"} } ],
//   "dirichlet_sides": [ {"patch": 0, "side": "west"}, ... ]
// }
// Control points run u-fastest. "interfaces" only overrides the primary /
// secondary designation; matching is always geometric. Without
// "dirichlet_sides" every boundary side is clamped.

#include <string>

#include "c1mortar/topology.hpp"

namespace c1mortar {

MultiPatchTopology parse_geometry(const std::string& text);
MultiPatchTopology load_geometry_file(const std::string& path);
std::string geometry_to_json(const MultiPatchTopology& topo);

}  // namespace c1mortar
