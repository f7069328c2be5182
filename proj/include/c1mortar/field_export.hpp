#pragma once

// Sampled solution fields as CSV and legacy ASCII VTK structured grids.

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "c1mortar/discretization.hpp"
#include "c1mortar/manufactured.hpp"

namespace c1mortar {

struct PatchSamples {
  int nx = 0, ny = 0;  // points per direction, x fastest
  std::vector<Eigen::Vector2d> points;
  std::vector<double> u_h, u_ex;
};

/// s >= 2 samples per element and direction, element end points shared.
std::vector<PatchSamples> sample_field(const MultiPatchTopology& topo, const Discretization& disc,
                                       const Eigen::VectorXd& u_full,
                                       const ManufacturedSolution& u_ex, int s);

/// Columns patch,x,y,u_h,u_ex,diff. `header` lines are written as '#'
/// comments first.
void write_field_csv(const std::string& path, const std::vector<PatchSamples>& samples,
                     const std::vector<std::string>& header);

/// One file per patch: <prefix>_patch<k>.vtk. Returns the paths written.
std::vector<std::string> write_field_vtk(const std::string& prefix,
                                         const std::vector<PatchSamples>& samples,
                                         const std::string& title);

}  // namespace c1mortar
