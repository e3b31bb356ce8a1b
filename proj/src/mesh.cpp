#include "vilab/mesh.hpp"

#include <cmath>

namespace vilab {

std::vector<int> Mesh::nodes_with_tag(BoundaryTag tag) const {
  std::vector<int> out;
  for (int i = 0; i < num_nodes(); ++i)
    if (node_tag[i] == tag) out.push_back(i);
  return out;
}

void Mesh::validate() const {
  require(num_nodes() > 1, "mesh: too few nodes");
  require(static_cast<int>(node_tag.size()) == num_nodes(),
          "mesh: node_tag size mismatch");
  require(!nodes_with_tag(BoundaryTag::Gamma1).empty(),
          "mesh: Gamma1 empty (coercivity needs meas(Gamma1) > 0)");
}

Mesh Mesh::interval(int num_elements, double length) {
  require(num_elements >= 1, "interval: need at least one element");
  Mesh m;
  m.dim = 1;
  const int n = num_elements + 1;
  m.nodes.resize(n, 1);
  for (int i = 0; i < n; ++i) m.nodes(i, 0) = length * i / num_elements;
  for (int e = 0; e < num_elements; ++e) m.segments.push_back({e, e + 1});
  m.node_tag.assign(n, BoundaryTag::None);
  m.node_tag[0] = BoundaryTag::Gamma1;
  m.node_tag[n - 1] = BoundaryTag::Gamma3;
  return m;
}

namespace {

Mesh structured_rectangle(int nx, int ny, double Lx, double Ly) {
  require(nx >= 1 && ny >= 1, "rectangle: need at least one cell per side");
  Mesh m;
  m.dim = 2;
  const int n = (nx + 1) * (ny + 1);
  m.nodes.resize(n, 2);
  auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) {
      m.nodes(id(i, j), 0) = Lx * i / nx;
      m.nodes(id(i, j), 1) = Ly * j / ny;
    }
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const int a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1),
                d = id(i, j + 1);
      m.triangles.push_back({a, b, c});
      m.triangles.push_back({a, c, d});
    }
  m.node_tag.assign(n, BoundaryTag::None);
  return m;
}

void tag_edge_run(Mesh& m, const std::vector<int>& run, BoundaryTag tag) {
  for (int v : run)
    if (m.node_tag[v] == BoundaryTag::None) m.node_tag[v] = tag;
  for (size_t k = 0; k + 1 < run.size(); ++k)
    m.boundary_edges.push_back({{run[k], run[k + 1]}, tag});
}

}  // namespace

Mesh Mesh::rectangle(int nx, int ny, double Lx, double Ly) {
  Mesh m = structured_rectangle(nx, ny, Lx, Ly);
  auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
  std::vector<int> left, top, bottom, right;
  for (int j = 0; j <= ny; ++j) left.push_back(id(0, j));
  for (int i = 0; i <= nx; ++i) top.push_back(id(i, ny));
  for (int i = 0; i <= nx; ++i) bottom.push_back(id(i, 0));
  for (int j = 0; j <= ny; ++j) right.push_back(id(nx, j));
  // Clamped edge first so corner nodes resolve to Gamma1.
  tag_edge_run(m, left, BoundaryTag::Gamma1);
  tag_edge_run(m, bottom, BoundaryTag::Gamma3);
  tag_edge_run(m, top, BoundaryTag::Gamma2);
  tag_edge_run(m, right, BoundaryTag::Gamma2);
  return m;
}

Mesh Mesh::rectangle_heat(int nx, int ny, double Lx, double Ly) {
  Mesh m = structured_rectangle(nx, ny, Lx, Ly);
  auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
  std::vector<int> left, top, bottom, right;
  for (int j = 0; j <= ny; ++j) left.push_back(id(0, j));
  for (int i = 0; i <= nx; ++i) top.push_back(id(i, ny));
  for (int i = 0; i <= nx; ++i) bottom.push_back(id(i, 0));
  for (int j = 0; j <= ny; ++j) right.push_back(id(nx, j));
  tag_edge_run(m, left, BoundaryTag::Gamma1);
  tag_edge_run(m, right, BoundaryTag::Gamma3);
  tag_edge_run(m, top, BoundaryTag::Gamma2);
  tag_edge_run(m, bottom, BoundaryTag::Gamma2);
  return m;
}

}  // namespace vilab
