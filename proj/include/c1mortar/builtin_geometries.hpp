#pragma once

// Built-in multipatch domains.
//   square2         [0,2]x[0,1] as two unit squares
//   square4         [0,2]^2 as a 2x2 grid of unit squares
//   square12        [0,1]^2 as a 4x3 grid of bilinear patches
//   quartercircle3  quarter disk of radius 1: a square core [0,1/2]^2 and
//                   two rational patches reaching the arc

#include <string>
#include <vector>

#include "c1mortar/topology.hpp"

namespace c1mortar {

/// Bilinear patch through corners (u,v) = (0,0), (1,0), (0,1), (1,1).
PatchGeometry bilinear_patch(const Eigen::Vector2d& p00, const Eigen::Vector2d& p10,
                             const Eigen::Vector2d& p01, const Eigen::Vector2d& p11);

std::vector<PatchGeometry> builtin_patches(const std::string& name);
MultiPatchTopology builtin_geometry(const std::string& name);
const std::vector<std::string>& builtin_names();
bool is_builtin(const std::string& name);

}  // namespace c1mortar
