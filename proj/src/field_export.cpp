#include "c1mortar/field_export.hpp"

#include <fstream>
#include <iomanip>

#include "c1mortar/error.hpp"
#include "c1mortar/error_norms.hpp"

namespace c1mortar {

namespace {

std::vector<double> sample_params(const SplineSpace1D& s, int per_element) {
  const auto& bp = s.knot_vector().breakpoints();
  std::vector<double> out = {bp.front()};
  for (std::size_t e = 0; e + 1 < bp.size(); ++e)
    for (int i = 1; i < per_element; ++i)
      out.push_back(i + 1 == per_element ? bp[e + 1]
                                         : bp[e] + (bp[e + 1] - bp[e]) * i / (per_element - 1));
  return out;
}

std::ofstream open_or_fail(const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoFailure, "cannot write " + path);
  out << std::setprecision(16);
  return out;
}

}  // namespace

std::vector<PatchSamples> sample_field(const MultiPatchTopology& topo, const Discretization& disc,
                                       const Eigen::VectorXd& u_full,
                                       const ManufacturedSolution& u_ex, int s) {
  if (s < 2) fail(ErrorCode::InvalidConfig, "need at least 2 samples per element");
  std::vector<PatchSamples> out;
  for (int k = 0; k < disc.num_patches(); ++k) {
    const auto us = sample_params(disc.spaces[k].u(), s);
    const auto vs = sample_params(disc.spaces[k].v(), s);
    PatchSamples ps;
    ps.nx = static_cast<int>(us.size());
    ps.ny = static_cast<int>(vs.size());
    for (double v : vs)
      for (double u : us) {
        const Eigen::Vector2d x = topo.patches[k].point(u, v);
        ps.points.push_back(x);
        ps.u_h.push_back(evaluate_field(topo, disc, u_full, k, u, v));
        ps.u_ex.push_back(u_ex.u(x.x(), x.y()));
      }
    out.push_back(std::move(ps));
  }
  return out;
}

void write_field_csv(const std::string& path, const std::vector<PatchSamples>& samples,
                     const std::vector<std::string>& header) {
  std::ofstream out = open_or_fail(path);
  for (const auto& h : header) out << "# " << h << "\n";
  out << "patch,x,y,u_h,u_ex,diff\n";
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const auto& ps = samples[k];
    for (std::size_t i = 0; i < ps.points.size(); ++i)
      out << k << ',' << ps.points[i].x() << ',' << ps.points[i].y() << ',' << ps.u_h[i] << ','
          << ps.u_ex[i] << ',' << ps.u_h[i] - ps.u_ex[i] << "\n";
  }
  if (!out) fail(ErrorCode::IoFailure, "write failed: " + path);
}

std::vector<std::string> write_field_vtk(const std::string& prefix,
                                         const std::vector<PatchSamples>& samples,
                                         const std::string& title) {
  std::vector<std::string> paths;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const auto& ps = samples[k];
    const std::string path = prefix + "_patch" + std::to_string(k) + ".vtk";
    std::ofstream out = open_or_fail(path);
    out << "# vtk DataFile Version 3.0\n" << title.substr(0, 255) << "\nASCII\n";
    out << "DATASET STRUCTURED_GRID\nDIMENSIONS " << ps.nx << ' ' << ps.ny << " 1\n";
    out << "POINTS " << ps.points.size() << " double\n";
    for (const auto& p : ps.points) out << p.x() << ' ' << p.y() << " 0\n";
    out << "POINT_DATA " << ps.points.size() << "\n";
    auto scalar = [&](const char* name, auto value) {
      out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
      for (std::size_t i = 0; i < ps.points.size(); ++i) out << value(i) << "\n";
    };
    scalar("u_h", [&](std::size_t i) { return ps.u_h[i]; });
    scalar("u_ex", [&](std::size_t i) { return ps.u_ex[i]; });
    scalar("diff", [&](std::size_t i) { return ps.u_h[i] - ps.u_ex[i]; });
    if (!out) fail(ErrorCode::IoFailure, "write failed: " + path);
    paths.push_back(path);
  }
  return paths;
}

}  // namespace c1mortar
