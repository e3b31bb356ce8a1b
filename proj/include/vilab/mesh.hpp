#pragma once

#include <array>
#include <vector>

#include "vilab/types.hpp"

namespace vilab {

enum class BoundaryTag { None, Gamma1, Gamma2, Gamma3 };

// Conforming simplicial mesh: segments in 1-D, triangles in 2-D. Boundary
// nodes carry one of the three partition tags; in 2-D the boundary edges are
// tagged as well (for flux and boundary-mass integrals).
struct Mesh {
  int dim = 1;
  Matrix nodes;                               // n x dim coordinates
  std::vector<std::array<int, 3>> triangles;  // 2-D only
  std::vector<std::array<int, 2>> segments;   // 1-D only
  std::vector<BoundaryTag> node_tag;
  struct BoundaryEdge {
    std::array<int, 2> nodes;
    BoundaryTag tag;
  };
  std::vector<BoundaryEdge> boundary_edges;   // 2-D only

  int num_nodes() const { return static_cast<int>(nodes.rows()); }

  std::vector<int> nodes_with_tag(BoundaryTag tag) const;
  void validate() const;

  // 1-D uniform mesh on (0, length); Gamma1 = left node, Gamma3 = right node.
  static Mesh interval(int num_elements, double length = 1.0);

  // Structured triangulated rectangle (0,Lx) x (0,Ly), nx x ny cells, two
  // triangles each. Tags: Gamma1 = left edge, Gamma2 = top edge,
  // Gamma3 = bottom edge, right edge + remaining boundary -> Gamma2.
  static Mesh rectangle(int nx, int ny, double Lx = 1.0, double Ly = 1.0);

  // Same geometry with Gamma3 = right edge instead (heat-problem layout:
  // prescribed temperature on the right, flux on top/bottom).
  static Mesh rectangle_heat(int nx, int ny, double Lx = 1.0, double Ly = 1.0);
};

}  // namespace vilab
