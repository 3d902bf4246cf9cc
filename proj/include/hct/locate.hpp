#ifndef HCT_LOCATE_HPP
#define HCT_LOCATE_HPP

#include <array>
#include <vector>

#include "hct/core.hpp"
#include "hct/mesh.hpp"

namespace hct {

struct LocateResult {
  int element = -1;
  Bary bary{};         // clamped to >= -1e-12, sums to 1
  int subtriangle = 0;  // 0-based index of the barycentric subtriangle
                        // {G, a_{i+1}, a_{i+2}} containing the point
};

// Area-comparison membership test: the absolute sub-areas against o must sum
// to the triangle area within 1e-12 relative. Boundary inclusive.
bool point_in_triangle(const std::array<Vec2, 3>& tri, const Vec2& p);

// Binary tree of axis-aligned boxes over the mesh triangles.
class Bvh {
 public:
  static Bvh build(const TriMesh& mesh);

  // Containing element with the lowest index, or -1. `pad` expands the boxes
  // during traversal; membership itself stays the point_in_triangle test.
  int find(const Vec2& p, double pad = 0.0) const;

  // All elements whose triangle contains some point of the square around p
  // with half-width eps (used by the limiter); ascending order.
  std::vector<int> find_near(const Vec2& p, double eps) const;

  int depth() const;
  int leaf_count() const;
  const TriMesh& mesh() const { return *mesh_; }

 private:
  struct Node {
    BBox box;
    int left = -1, right = -1;  // children, or
    int first = 0, count = 0;   // leaf triangle range in order_
  };
  int build_node(std::vector<int>& tris, int lo, int hi,
                 const std::vector<BBox>& boxes,
                 const std::vector<Vec2>& centers);

  const TriMesh* mesh_ = nullptr;
  std::vector<Node> nodes_;
  std::vector<int> order_;
};

// Containing element (lowest index on shared boundaries), barycentric
// coordinates and HCT subtriangle. Falls back to an epsilon-padded pass, then
// fails with Error for points outside the mesh.
LocateResult locate(const Bvh& bvh, const Vec2& p);

// Subtriangle of a barycentric point, lowest-index tie-break.
int locate_subtriangle(const Bary& b);

}  // namespace hct

#endif
