#include "c1mortar/constraints.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "c1mortar/error.hpp"

namespace c1mortar {

std::vector<int> clamp_boundary(const TensorSpace2D& space, const std::vector<Side>& sides) {
  std::vector<int> out;
  for (Side s : sides)
    for (int layer = 0; layer < 2; ++layer)
      for (int i = 0; i < side_length(space, s); ++i) out.push_back(side_dof(space, s, layer, i));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

C0Gluing glue_c0(const MultiPatchTopology& topo, const Discretization& disc) {
  const int N = disc.total_dofs();
  std::vector<int> parent(N);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Interface& I : topo.interfaces) {
    const TensorSpace2D& sm = disc.spaces[I.primary.patch];
    const TensorSpace2D& ss = disc.spaces[I.secondary.patch];
    const int n = side_length(sm, I.primary.side);
    if (n != side_length(ss, I.secondary.side))
      fail(ErrorCode::NonConformingInterface, "trace dimensions differ across an interface");
    for (int i = 0; i < n; ++i) {
      const int a = find(disc.global(I.primary.patch, side_dof(sm, I.primary.side, 0, i)));
      const int b = find(disc.global(I.secondary.patch,
                                     side_dof(ss, I.secondary.side, 0, I.reversed ? n - 1 - i : i)));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  C0Gluing out;
  out.class_of.assign(N, -1);
  std::vector<int> root_class(N, -1);
  for (int d = 0; d < N; ++d) {
    const int r = find(d);
    if (root_class[r] < 0) root_class[r] = out.num_classes++;
    out.class_of[d] = root_class[r];
  }
  return out;
}

namespace {

// Jet functionals (6 rows) of one patch corner, as (global dof, coefficients).
void corner_jet(const MultiPatchTopology& topo, const Discretization& disc, const PatchCorner& pc,
                std::vector<int>& dofs, Eigen::MatrixXd& jet) {
  const TensorSpace2D& sp = disc.spaces[pc.patch];
  const int cu = pc.corner & 1, cv = pc.corner >> 1;
  const int eu = cu ? sp.u().num_elements() - 1 : 0;
  const int ev = cv ? sp.v().num_elements() - 1 : 0;
  PhysicalBasis pb;
  eval_physical_basis(sp, topo.patches[pc.patch], eu, ev, cu, cv, 2, pb);
  const int n = static_cast<int>(pb.local.size());
  dofs.resize(n);
  jet.resize(6, n);
  for (int k = 0; k < n; ++k) {
    dofs[k] = disc.global(pc.patch, pb.local[k]);
    jet(0, k) = pb.value[k];
    jet(1, k) = pb.grad(k, 0);
    jet(2, k) = pb.grad(k, 1);
    jet(3, k) = pb.hess(k, 0);
    jet(4, k) = pb.hess(k, 1);
    jet(5, k) = pb.hess(k, 2);
  }
}

}  // namespace

VertexRows vertex_c2_constraints(const MultiPatchTopology& topo, const Discretization& disc,
                                 int vertex) {
  const Vertex& v = topo.vertices.at(vertex);
  VertexRows out;
  if (v.corners.size() < 2) return out;
  std::vector<std::vector<int>> dofs(v.corners.size());
  std::vector<Eigen::MatrixXd> jets(v.corners.size());
  for (std::size_t c = 0; c < v.corners.size(); ++c)
    corner_jet(topo, disc, v.corners[c], dofs[c], jets[c]);
  std::map<int, int> col;
  for (const auto& d : dofs)
    for (int g : d) col.emplace(g, 0);
  int idx = 0;
  for (auto& [g, c] : col) {
    c = idx++;
    out.columns.push_back(g);
  }
  const int m = 6 * static_cast<int>(v.corners.size() - 1);
  out.rows = Eigen::MatrixXd::Zero(m, idx);
  for (std::size_t c = 1; c < v.corners.size(); ++c) {
    const int r0 = 6 * static_cast<int>(c - 1);
    for (std::size_t k = 0; k < dofs[c].size(); ++k)
      out.rows.block(r0, col[dofs[c][k]], 6, 1) += jets[c].col(k);
    for (std::size_t k = 0; k < dofs[0].size(); ++k)
      out.rows.block(r0, col[dofs[0][k]], 6, 1) -= jets[0].col(k);
  }
  return out;
}

ConstraintMap build_constraint_map(const MultiPatchTopology& topo, const Discretization& disc,
                                   VertexMode mode) {
  ConstraintMap cm;
  const int N = disc.total_dofs();
  cm.full_dim = N;
  const C0Gluing glue = glue_c0(topo, disc);
  cm.class_of = glue.class_of;
  cm.num_classes = glue.num_classes;

  std::vector<char> clamped(cm.num_classes, 0);
  for (const SideRef& s : topo.dirichlet_sides)
    for (int local : clamp_boundary(disc.spaces[s.patch], {s.side}))
      clamped[cm.class_of[disc.global(s.patch, local)]] = 1;
  cm.clamped_index.assign(cm.num_classes, -1);
  for (int c = 0; c < cm.num_classes; ++c)
    if (clamped[c]) {
      cm.clamped_index[c] = static_cast<int>(cm.clamped_classes.size());
      cm.clamped_classes.push_back(c);
    }

  // vertex rows in class space, split into free and clamped parts
  std::vector<std::map<int, double>> rows;
  if (mode == VertexMode::c2) {
    for (std::size_t v = 0; v < topo.vertices.size(); ++v) {
      const VertexRows vr = vertex_c2_constraints(topo, disc, static_cast<int>(v));
      for (int r = 0; r < vr.rows.rows(); ++r) {
        std::map<int, double> row;
        for (std::size_t k = 0; k < vr.columns.size(); ++k)
          if (vr.rows(r, k) != 0.0) row[cm.class_of[vr.columns[k]]] += vr.rows(r, k);
        rows.push_back(std::move(row));
      }
    }
  }
  cm.vertex_rows = static_cast<int>(rows.size());

  std::map<int, int> free_col, fixed_col;
  for (const auto& row : rows)
    for (const auto& [c, a] : row) (clamped[c] ? fixed_col : free_col).emplace(c, 0);
  std::vector<int> free_classes, fixed_classes;
  for (auto& [c, i] : free_col) {
    i = static_cast<int>(free_classes.size());
    free_classes.push_back(c);
  }
  for (auto& [c, i] : fixed_col) {
    i = static_cast<int>(fixed_classes.size());
    fixed_classes.push_back(c);
  }
  const int m = static_cast<int>(rows.size());
  const int nf = static_cast<int>(free_classes.size());
  const int nc = static_cast<int>(fixed_classes.size());
  Eigen::MatrixXd Cf = Eigen::MatrixXd::Zero(m, nf), Cc = Eigen::MatrixXd::Zero(m, nc);
  for (int r = 0; r < m; ++r) {
    for (const auto& [c, a] : rows[r]) {
      if (clamped[c])
        Cc(r, fixed_col[c]) = a;
      else
        Cf(r, free_col[c]) = a;
    }
    const double norm = std::sqrt(Cf.row(r).squaredNorm() + Cc.row(r).squaredNorm());
    if (norm > 0.0) {
      Cf.row(r) /= norm;
      Cc.row(r) /= norm;
    }
  }

  std::vector<int> slave_of(cm.num_classes, -1);  // class -> slave position
  Eigen::MatrixXd X;                             // slaves x (nf + nc)
  std::vector<int> slaves;
  if (m > 0 && nf > 0) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(Cf);
    lu.setThreshold(1e-10);
    const int r = static_cast<int>(lu.rank());
    for (int i = 0; i < r; ++i) slaves.push_back(lu.permutationQ().indices()(i));
    cm.vertex_rank = r;
  }
  if (cm.vertex_rank > 0) {
    const int r = cm.vertex_rank;
    Eigen::MatrixXd CS(m, r), rhs(m, nf + nc);
    for (int i = 0; i < r; ++i) CS.col(i) = Cf.col(slaves[i]);
    rhs << Cf, Cc;
    X = CS.colPivHouseholderQr().solve(rhs);
    for (int i = 0; i < r; ++i) slave_of[free_classes[slaves[i]]] = i;
  }

  cm.master_column.assign(cm.num_classes, -1);
  int nr = 0;
  for (int c = 0; c < cm.num_classes; ++c)
    if (!clamped[c] && slave_of[c] < 0) cm.master_column[c] = nr++;
  cm.reduced_dim = nr;

  std::vector<Eigen::Triplet<double>> tr, tf;
  for (int d = 0; d < N; ++d) {
    const int c = cm.class_of[d];
    if (cm.master_column[c] >= 0) {
      tr.emplace_back(d, cm.master_column[c], 1.0);
    } else if (clamped[c]) {
      tf.emplace_back(d, cm.clamped_index[c], 1.0);
    } else {
      const int s = slave_of[c];
      for (int j = 0; j < nf; ++j) {
        const double x = X(s, j);
        const int mc = free_classes[j];
        if (slave_of[mc] >= 0 || std::abs(x) < 1e-14) continue;
        tr.emplace_back(d, cm.master_column[mc], -x);
      }
      for (int j = 0; j < nc; ++j) {
        const double x = X(s, nf + j);
        if (std::abs(x) < 1e-14) continue;
        tf.emplace_back(d, cm.clamped_index[fixed_classes[j]], -x);
      }
    }
  }
  cm.R.resize(N, nr);
  cm.R.setFromTriplets(tr.begin(), tr.end());
  cm.fixed_map.resize(N, static_cast<int>(cm.clamped_classes.size()));
  cm.fixed_map.setFromTriplets(tf.begin(), tf.end());
  return cm;
}

}  // namespace c1mortar
