#ifndef HCT_MESH_HPP
#define HCT_MESH_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hct/core.hpp"

namespace hct {

struct Edge {
  int v0 = -1;
  int v1 = -1;
  int left = -1;   // triangle containing directed edge v0->v1 (always valid)
  int right = -1;  // triangle containing v1->v0, -1 on the boundary
  Vec2 normal;     // unit normal, fixed orientation (see TriMesh::build)

  bool boundary() const { return right < 0; }
};

// Immutable triangulation. All triangles are counterclockwise, every interior
// edge has exactly two incident triangles, h is the maximum element diameter.
class TriMesh {
 public:
  // Validates orientation and edge manifoldness; builds adjacency tables.
  // Edge normals point from the lower to the higher incident triangle index
  // (outward on the boundary).
  static TriMesh build(std::vector<Vec2> vertices,
                       std::vector<std::array<int, 3>> triangles);

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int triangle_count() const { return static_cast<int>(triangles_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const Vec2& vertex(int v) const { return vertices_[v]; }
  const std::array<int, 3>& triangle(int t) const { return triangles_[t]; }
  const Edge& edge(int e) const { return edges_[e]; }
  // Global edge index opposite local vertex i of triangle t.
  int triangle_edge(int t, int i) const { return tri_edges_[t][i]; }
  const std::vector<int>& vertex_triangles(int v) const {
    return vertex_tris_[v];
  }

  std::array<Vec2, 3> triangle_points(int t) const {
    const auto& tri = triangles_[t];
    return {vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]};
  }
  double triangle_area(int t) const;
  Vec2 map_to_physical(int t, const Bary& b) const;

  double h() const { return h_; }
  const BBox& bounds() const { return bounds_; }

  const std::vector<Vec2>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  const std::vector<Edge>& edges() const { return edges_; }

 private:
  std::vector<Vec2> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<Edge> edges_;
  std::vector<std::array<int, 3>> tri_edges_;
  std::vector<std::vector<int>> vertex_tris_;
  double h_ = 0.0;
  BBox bounds_;
};

// n x n uniform cells, each split along the bottom-left -> top-right diagonal;
// 2*n^2 triangles.
TriMesh generate_structured(const Domain& domain, int n);

// Boundary-conforming lattice at spacing target_h/sqrt(2) with deterministic
// jitter (amplitude 0.25*target_h) on interior points, Delaunay-triangulated.
// The realized maximum element diameter comes out near target_h.
TriMesh generate_unstructured(const Domain& domain, double target_h,
                              std::uint64_t seed);

// Plain-text format: "tri-mesh v1", vertex count, "x y" lines, triangle
// count, "i j k" lines (0-based). Full round-trip precision.
TriMesh read_mesh(const std::string& path);
void write_mesh(const TriMesh& mesh, const std::string& path);
TriMesh read_mesh_stream(std::istream& in, const std::string& name);
void write_mesh_stream(const TriMesh& mesh, std::ostream& out);

}  // namespace hct

#endif
