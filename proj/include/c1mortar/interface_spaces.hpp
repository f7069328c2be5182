#pragma once

// Trace derivative space W_l and multiplier space M_l of one interface.

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "c1mortar/constraints.hpp"
#include "c1mortar/discretization.hpp"
#include "c1mortar/topology.hpp"

namespace c1mortar {

enum class MultiplierMode { merged, unmerged, none };

std::string to_string(MultiplierMode m);
std::string to_string(VertexMode m);

/// Degree-p space along the interface in the primary parameter yhat.
const SplineSpace1D& interface_primal_space(const MultiPatchTopology& topo,
                                            const Discretization& disc, int l);

/// Generators: second control layer of the secondary patch, skipping the
/// two functions nearest each end of the interface.
struct TraceSpaceHandle {
  int interface = 0;
  int patch = 0;
  Side side = Side::west;
  int n_along = 0;
  std::vector<int> generators;  // local flat indices in the secondary patch

  int dimension() const { return static_cast<int>(generators.size()); }
  /// w_i(yhat) = normal derivative of generator i from the secondary side.
  Eigen::VectorXd eval(const MultiPatchTopology& topo, const Discretization& disc,
                       double yhat) const;
};

TraceSpaceHandle build_trace_space(const MultiPatchTopology& topo, const Discretization& disc,
                                   int l);

struct MultiplierSpaceHandle {
  int interface = 0;
  MultiplierMode mode = MultiplierMode::merged;
  SplineSpace1D space;  // in yhat

  int dimension() const { return mode == MultiplierMode::none ? 0 : space.dimension(); }
};

/// Degree p-2 splines on the interface breakpoints (same multiplicities),
/// with the end elements merged in merged mode.
MultiplierSpaceHandle build_multiplier_space(const MultiPatchTopology& topo,
                                             const Discretization& disc, int l,
                                             MultiplierMode mode);

}  // namespace c1mortar
