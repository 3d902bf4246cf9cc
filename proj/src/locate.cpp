#include "hct/locate.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace hct {

namespace {

double tri_area2(const Vec2& a, const Vec2& b, const Vec2& c) {
  return (b - a).cross(c - a);  // twice the signed area
}

}  // namespace

bool point_in_triangle(const std::array<Vec2, 3>& tri, const Vec2& p) {
  const double area2 = tri_area2(tri[0], tri[1], tri[2]);
  if (area2 == 0.0) throw Error("point_in_triangle: degenerate triangle");
  const double s1 = std::fabs(tri_area2(tri[0], tri[1], p));
  const double s2 = std::fabs(tri_area2(tri[1], tri[2], p));
  const double s3 = std::fabs(tri_area2(tri[2], tri[0], p));
  const double total = std::fabs(area2);
  return s1 + s2 + s3 <= total * (1.0 + 1e-12);
}

Bvh Bvh::build(const TriMesh& mesh) {
  if (mesh.triangle_count() == 0) throw Error("Bvh::build: empty mesh");
  Bvh bvh;
  bvh.mesh_ = &mesh;
  const int nt = mesh.triangle_count();
  std::vector<BBox> boxes(nt);
  std::vector<Vec2> centers(nt);
  const double pad = 1e-12 * mesh.bounds().diameter();
  for (int t = 0; t < nt; ++t) {
    BBox b;
    for (const Vec2& p : mesh.triangle_points(t)) b.expand(p);
    b.lo = b.lo - Vec2{pad, pad};
    b.hi = b.hi + Vec2{pad, pad};
    boxes[t] = b;
    centers[t] = (b.lo + b.hi) * 0.5;
  }
  std::vector<int> tris(nt);
  for (int t = 0; t < nt; ++t) tris[t] = t;
  bvh.nodes_.reserve(2 * nt / 4 + 2);
  bvh.order_.reserve(nt);
  bvh.build_node(tris, 0, nt, boxes, centers);
  return bvh;
}

int Bvh::build_node(std::vector<int>& tris, int lo, int hi,
                    const std::vector<BBox>& boxes,
                    const std::vector<Vec2>& centers) {
  const int idx = static_cast<int>(nodes_.size());
  nodes_.emplace_back();
  BBox box;
  for (int i = lo; i < hi; ++i) box.expand(boxes[tris[i]]);
  nodes_[idx].box = box;

  const int count = hi - lo;
  if (count <= 1) {
    nodes_[idx].first = static_cast<int>(order_.size());
    nodes_[idx].count = count;
    for (int i = lo; i < hi; ++i) order_.push_back(tris[i]);
    return idx;
  }
  // median split along the wider axis; index tie-break keeps it deterministic
  const bool split_x = box.hi.x - box.lo.x >= box.hi.y - box.lo.y;
  std::sort(tris.begin() + lo, tris.begin() + hi, [&](int a, int b) {
    const double ca = split_x ? centers[a].x : centers[a].y;
    const double cb = split_x ? centers[b].x : centers[b].y;
    if (ca != cb) return ca < cb;
    return a < b;
  });
  const int mid = lo + count / 2;
  const int l = build_node(tris, lo, mid, boxes, centers);
  const int r = build_node(tris, mid, hi, boxes, centers);
  nodes_[idx].left = l;
  nodes_[idx].right = r;
  return idx;
}

int Bvh::find(const Vec2& p, double pad) const {
  int best = -1;
  int stack[128];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const Node& node = nodes_[stack[--top]];
    if (!node.box.contains(p, pad)) continue;
    if (node.count > 0) {
      for (int i = node.first; i < node.first + node.count; ++i) {
        const int t = order_[i];
        if (best >= 0 && t >= best) continue;
        if (point_in_triangle(mesh_->triangle_points(t), p)) best = t;
      }
    } else {
      stack[top++] = node.right;
      stack[top++] = node.left;
    }
  }
  return best;
}

std::vector<int> Bvh::find_near(const Vec2& p, double eps) const {
  std::vector<int> out;
  int stack[128];
  int top = 0;
  stack[top++] = 0;
  const Vec2 corners[4] = {{p.x - eps, p.y - eps},
                           {p.x + eps, p.y - eps},
                           {p.x - eps, p.y + eps},
                           {p.x + eps, p.y + eps}};
  while (top > 0) {
    const Node& node = nodes_[stack[--top]];
    if (!node.box.contains(p, eps)) continue;
    if (node.count > 0) {
      for (int i = node.first; i < node.first + node.count; ++i) {
        const int t = order_[i];
        const auto pts = mesh_->triangle_points(t);
        bool hit = point_in_triangle(pts, p);
        for (int c = 0; c < 4 && !hit; ++c)
          hit = point_in_triangle(pts, corners[c]);
        if (hit) out.push_back(t);
      }
    } else {
      stack[top++] = node.right;
      stack[top++] = node.left;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int Bvh::leaf_count() const {
  int count = 0;
  for (const Node& n : nodes_)
    if (n.count > 0) ++count;
  return count;
}

int Bvh::depth() const {
  // iterative depth over the implicit tree
  std::vector<std::pair<int, int>> stack{{0, 1}};
  int depth = 0;
  while (!stack.empty()) {
    auto [n, d] = stack.back();
    stack.pop_back();
    depth = std::max(depth, d);
    if (nodes_[n].count == 0) {
      stack.push_back({nodes_[n].left, d + 1});
      stack.push_back({nodes_[n].right, d + 1});
    }
  }
  return depth;
}

int locate_subtriangle(const Bary& b) {
  // Subtriangle i of the barycentric split at G spans {G, a_{i+1}, a_{i+2}}.
  // Area test against each subtriangle in reference coordinates, lowest index
  // on ties.
  const Vec2 ref[3] = {{0, 0}, {1, 0}, {0, 1}};
  const Vec2 gp{1.0 / 3.0, 1.0 / 3.0};
  const Vec2 p{b[1], b[2]};
  for (int i = 0; i < 3; ++i) {
    const std::array<Vec2, 3> sub = {gp, ref[(i + 1) % 3], ref[(i + 2) % 3]};
    if (point_in_triangle(sub, p)) return i;
  }
  throw Error("locate_subtriangle: point outside the reference triangle");
}

LocateResult locate(const Bvh& bvh, const Vec2& p) {
  const TriMesh& mesh = bvh.mesh();
  const double diam = mesh.bounds().diameter();
  if (!mesh.bounds().contains(p, 1e-9 * diam))
    throw Error("locate: point (" + std::to_string(p.x) + ", " +
                std::to_string(p.y) + ") outside the mesh bounding box");
  int elem = bvh.find(p);
  if (elem < 0) elem = bvh.find(p, 1e-9 * diam);  // recovery pass
  if (elem < 0)
    throw Error("locate: no containing element for point (" +
                std::to_string(p.x) + ", " + std::to_string(p.y) + ")");

  const auto pts = mesh.triangle_points(elem);
  const double area2 = tri_area2(pts[0], pts[1], pts[2]);
  const double l0 = tri_area2(p, pts[1], pts[2]) / area2;
  const double l1 = tri_area2(pts[0], p, pts[2]) / area2;
  const double l2 = 1.0 - l0 - l1;
  LocateResult r;
  r.element = elem;
  r.bary = {l0, l1, l2};
  r.subtriangle = locate_subtriangle(r.bary);
  return r;
}

}  // namespace hct
