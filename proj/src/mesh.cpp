#include "hct/mesh.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

namespace hct {

namespace {

double signed_area(const Vec2& a, const Vec2& b, const Vec2& c) {
  return 0.5 * (b - a).cross(c - a);
}

}  // namespace

TriMesh TriMesh::build(std::vector<Vec2> vertices,
                       std::vector<std::array<int, 3>> triangles) {
  TriMesh m;
  m.vertices_ = std::move(vertices);
  m.triangles_ = std::move(triangles);
  const int nv = m.vertex_count();
  const int nt = m.triangle_count();

  for (const Vec2& p : m.vertices_) m.bounds_.expand(p);

  m.vertex_tris_.resize(nv);
  m.tri_edges_.assign(nt, {-1, -1, -1});
  m.h_ = 0.0;

  // edge key (min,max) -> edge index
  std::map<std::pair<int, int>, int> edge_ids;
  for (int t = 0; t < nt; ++t) {
    const auto& tri = m.triangles_[t];
    for (int i = 0; i < 3; ++i) {
      if (tri[i] < 0 || tri[i] >= nv)
        throw Error("triangle " + std::to_string(t) +
                    " references vertex index out of range");
    }
    const auto pts = m.triangle_points(t);
    if (!(signed_area(pts[0], pts[1], pts[2]) > 0.0))
      throw Error("triangle " + std::to_string(t) +
                  " is not counterclockwise / has non-positive area");
    for (int i = 0; i < 3; ++i) {
      m.vertex_tris_[tri[i]].push_back(t);
      m.h_ = std::max(m.h_, (pts[(i + 1) % 3] - pts[i]).norm());
      // edge opposite local vertex i, directed tri[i+1] -> tri[i+2] (CCW)
      const int a = tri[(i + 1) % 3];
      const int b = tri[(i + 2) % 3];
      const auto key = std::minmax(a, b);
      auto [it, inserted] = edge_ids.try_emplace(key, m.edge_count());
      if (inserted) {
        Edge e;
        e.v0 = a;
        e.v1 = b;
        e.left = t;
        m.edges_.push_back(e);
      } else {
        Edge& e = m.edges_[it->second];
        if (e.right >= 0 || (e.v0 == a && e.v1 == b))
          throw Error("edge " + std::to_string(key.first) + "-" +
                      std::to_string(key.second) +
                      " is incident to more than two triangles or repeated");
        e.right = t;
      }
      m.tri_edges_[t][i] = it->second;
    }
  }

  for (Edge& e : m.edges_) {
    // Keep the directed v0->v1 edge owned by `left`; orient the normal from
    // the lower to the higher incident triangle index, outward on boundary.
    // For a CCW triangle the right-hand perpendicular of v0->v1 points away
    // from it.
    Vec2 d = m.vertices_[e.v1] - m.vertices_[e.v0];
    const double len = d.norm();
    if (!(len > 0.0)) throw Error("zero-length edge");
    Vec2 n{d.y / len, -d.x / len};
    if (!e.boundary()) {
      if (e.left > e.right) {
        std::swap(e.left, e.right);
        std::swap(e.v0, e.v1);
        n = {-n.x, -n.y};
      }
    }
    e.normal = n;
  }
  return m;
}

double TriMesh::triangle_area(int t) const {
  const auto pts = triangle_points(t);
  return signed_area(pts[0], pts[1], pts[2]);
}

Vec2 TriMesh::map_to_physical(int t, const Bary& b) const {
  const auto pts = triangle_points(t);
  return pts[0] * b[0] + pts[1] * b[1] + pts[2] * b[2];
}

TriMesh generate_structured(const Domain& domain, int n) {
  if (!domain.valid()) throw Error("generate_structured: empty domain");
  if (n < 1) throw Error("generate_structured: n must be >= 1");
  const int nv1 = n + 1;
  std::vector<Vec2> verts;
  verts.reserve(nv1 * nv1);
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      verts.push_back({domain.x0 + domain.width() * i / n,
                       domain.y0 + domain.height() * j / n});
  std::vector<std::array<int, 3>> tris;
  tris.reserve(2 * n * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int bl = j * nv1 + i;
      const int br = bl + 1;
      const int tl = bl + nv1;
      const int tr = tl + 1;
      tris.push_back({bl, br, tr});
      tris.push_back({bl, tr, tl});
    }
  return TriMesh::build(std::move(verts), std::move(tris));
}

namespace {

// ---- Bowyer-Watson Delaunay over a rectangle -------------------------------

struct DelTriangle {
  std::array<int, 3> v;
  std::array<int, 3> adj;  // neighbor opposite v[i], -1 if none
  bool alive = true;
};

// Orientation with a relative threshold: >0 CCW, <0 CW, 0 near-degenerate.
int orient(const Vec2& a, const Vec2& b, const Vec2& c) {
  const double l = (b.x - a.x) * (c.y - a.y);
  const double r = (b.y - a.y) * (c.x - a.x);
  const double det = l - r;
  const double mag = std::fabs(l) + std::fabs(r);
  if (det > 1e-13 * mag) return 1;
  if (det < -1e-13 * mag) return -1;
  return 0;
}

// Strictly-inside-circumcircle test with a relative threshold.
bool in_circle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& p) {
  const double ax = a.x - p.x, ay = a.y - p.y;
  const double bx = b.x - p.x, by = b.y - p.y;
  const double cx = c.x - p.x, cy = c.y - p.y;
  const double al = ax * ax + ay * ay;
  const double bl = bx * bx + by * by;
  const double cl = cx * cx + cy * cy;
  const double t1 = ax * (by * cl - bl * cy);
  const double t2 = ay * (bx * cl - bl * cx);
  const double t3 = al * (bx * cy - by * cx);
  const double det = t1 - t2 + t3;
  const double perm = std::fabs(t1) + std::fabs(t2) + std::fabs(t3);
  return det > 1e-12 * perm;
}

class Delaunay {
 public:
  // Points must all lie inside the bounding box passed here; the first point
  // is inserted into a synthetic enclosing triangle.
  explicit Delaunay(const BBox& box) {
    const Vec2 c = (box.lo + box.hi) * 0.5;
    const double r = std::max(box.diameter(), 1e-30) * 2.0;
    pts_ = {{c.x, c.y + 8.0 * r}, {c.x - 8.0 * r, c.y - 6.0 * r},
            {c.x + 8.0 * r, c.y - 6.0 * r}};
    tris_.push_back({{0, 1, 2}, {-1, -1, -1}, true});
    last_ = 0;
  }

  void insert(const Vec2& p) {
    const int pi = static_cast<int>(pts_.size());
    pts_.push_back(p);
    const int seed = locate(p);
    cavity(seed, p);
    retriangulate(pi);
  }

  // Triangles not touching the synthetic corner vertices, indices shifted
  // down by 3 to address the inserted points.
  std::vector<std::array<int, 3>> result() const {
    std::vector<std::array<int, 3>> out;
    for (const auto& t : tris_) {
      if (!t.alive) continue;
      if (t.v[0] < 3 || t.v[1] < 3 || t.v[2] < 3) continue;
      out.push_back({t.v[0] - 3, t.v[1] - 3, t.v[2] - 3});
    }
    return out;
  }

 private:
  bool contains(int ti, const Vec2& p) const {
    const auto& t = tris_[ti];
    for (int i = 0; i < 3; ++i)
      if (orient(pts_[t.v[(i + 1) % 3]], pts_[t.v[(i + 2) % 3]], p) < 0)
        return false;
    return true;
  }

  int locate(const Vec2& p) const {
    int cur = last_;
    if (cur >= static_cast<int>(tris_.size()) || !tris_[cur].alive) cur = -1;
    if (cur >= 0) {
      const int cap = static_cast<int>(tris_.size()) * 4 + 64;
      int prev = -1;
      for (int step = 0; step < cap; ++step) {
        const auto& t = tris_[cur];
        int next = -1;
        for (int i = 0; i < 3; ++i) {
          const Vec2& a = pts_[t.v[(i + 1) % 3]];
          const Vec2& b = pts_[t.v[(i + 2) % 3]];
          if (orient(a, b, p) < 0 && t.adj[i] >= 0 && t.adj[i] != prev) {
            next = t.adj[i];
            break;
          }
        }
        if (next < 0) {
          if (contains(cur, p)) return cur;
          break;  // walk stuck near a degeneracy; fall back to a scan
        }
        prev = cur;
        cur = next;
      }
    }
    for (int i = static_cast<int>(tris_.size()) - 1; i >= 0; --i)
      if (tris_[i].alive && contains(i, p)) return i;
    throw Error("delaunay: point location failed (degenerate input)");
  }

  void cavity(int seed, const Vec2& p) {
    bad_.clear();
    stack_.clear();
    stack_.push_back(seed);
    tris_[seed].alive = false;
    bad_.push_back(seed);
    while (!stack_.empty()) {
      const int ti = stack_.back();
      stack_.pop_back();
      for (int i = 0; i < 3; ++i) {
        const int nb = tris_[ti].adj[i];
        if (nb < 0 || !tris_[nb].alive) continue;
        const auto& t = tris_[nb];
        if (in_circle(pts_[t.v[0]], pts_[t.v[1]], pts_[t.v[2]], p)) {
          tris_[nb].alive = false;
          bad_.push_back(nb);
          stack_.push_back(nb);
        }
      }
    }
  }

  void retriangulate(int pi) {
    // rim = edges of bad triangles bordering a live triangle or the outside
    rim_.clear();
    for (const int ti : bad_) {
      const auto& t = tris_[ti];
      for (int i = 0; i < 3; ++i) {
        const int nb = t.adj[i];
        if (nb >= 0 && !tris_[nb].alive) continue;
        rim_.push_back({t.v[(i + 1) % 3], t.v[(i + 2) % 3], nb});
      }
    }
    const int first_new = static_cast<int>(tris_.size());
    edge_to_tri_.clear();
    for (const auto& r : rim_) {
      const int ni = static_cast<int>(tris_.size());
      if (orient(pts_[r.a], pts_[r.b], pts_[pi]) <= 0)
        throw Error("delaunay: degenerate cavity face (collinear points)");
      DelTriangle nt;
      nt.v = {r.a, r.b, pi};
      nt.adj = {-1, -1, r.outside};  // adj[2] faces edge (a,b)
      tris_.push_back(nt);
      if (r.outside >= 0) {
        auto& o = tris_[r.outside];
        for (int i = 0; i < 3; ++i) {
          const int oa = o.v[(i + 1) % 3], ob = o.v[(i + 2) % 3];
          if ((oa == r.b && ob == r.a) || (oa == r.a && ob == r.b)) o.adj[i] = ni;
        }
      }
      // stitch the fan: each interior half-edge appears exactly twice
      link(r.a, pi, ni, 1);  // edge (r.a, pi) is opposite v[1]=r.b
      link(pi, r.b, ni, 0);  // edge (pi, r.b) is opposite v[0]=r.a
    }
    last_ = first_new;
  }

  void link(int a, int b, int tri, int slot) {
    const auto key = std::minmax(a, b);
    auto it = edge_to_tri_.find(key);
    if (it == edge_to_tri_.end()) {
      edge_to_tri_.emplace(key, std::make_pair(tri, slot));
    } else {
      const auto [other, oslot] = it->second;
      tris_[tri].adj[slot] = other;
      tris_[other].adj[oslot] = tri;
      edge_to_tri_.erase(it);
    }
  }

  struct RimEdge {
    int a, b;     // directed edge, cavity on the left
    int outside;  // neighbor across the edge, -1 if none
  };

  std::vector<Vec2> pts_;
  std::vector<DelTriangle> tris_;
  std::vector<int> bad_;
  std::vector<int> stack_;
  std::vector<RimEdge> rim_;
  std::map<std::pair<int, int>, std::pair<int, int>> edge_to_tri_;
  int last_ = 0;
};

// Uniform double in [-1,1] from raw engine bits; avoids distribution
// implementation differences across standard libraries.
double symmetric_unit(std::mt19937_64& rng) {
  const std::uint64_t bits = rng();
  const double u = static_cast<double>(bits >> 11) * 0x1.0p-53;  // [0,1)
  return 2.0 * u - 1.0;
}

}  // namespace

TriMesh generate_unstructured(const Domain& domain, double target_h,
                              std::uint64_t seed) {
  if (!domain.valid()) throw Error("generate_unstructured: empty domain");
  if (!(target_h > 0.0)) throw Error("generate_unstructured: target_h must be > 0");

  // Lattice spacing chosen so near-right triangles with legs ~s have
  // diameter ~target_h.
  const double s = target_h / std::sqrt(2.0);
  const int mx = std::max(1, static_cast<int>(std::lround(domain.width() / s)));
  const int my = std::max(1, static_cast<int>(std::lround(domain.height() / s)));
  const double dx = domain.width() / mx;
  const double dy = domain.height() / my;

  std::vector<Vec2> pts;
  // boundary loop, exactly on the rectangle, corner-to-corner order
  for (int i = 0; i < mx; ++i) pts.push_back({domain.x0 + i * dx, domain.y0});
  for (int j = 0; j < my; ++j) pts.push_back({domain.x1, domain.y0 + j * dy});
  for (int i = mx; i > 0; --i) pts.push_back({domain.x0 + i * dx, domain.y1});
  for (int j = my; j > 0; --j) pts.push_back({domain.x0, domain.y0 + j * dy});
  const double jitter = 0.25 * target_h;
  std::mt19937_64 rng(seed);
  for (int j = 1; j < my; ++j)
    for (int i = 1; i < mx; ++i) {
      const double px = domain.x0 + i * dx + jitter * symmetric_unit(rng);
      const double py = domain.y0 + j * dy + jitter * symmetric_unit(rng);
      pts.push_back({px, py});
    }

  BBox box;
  for (const Vec2& p : pts) box.expand(p);
  Delaunay dt(box);
  for (const Vec2& p : pts) dt.insert(p);

  std::vector<std::array<int, 3>> tris = dt.result();
  if (tris.empty()) throw Error("generate_unstructured: triangulation failed");
  // normalize orientation
  for (auto& t : tris) {
    if (signed_area(pts[t[0]], pts[t[1]], pts[t[2]]) < 0.0) std::swap(t[1], t[2]);
  }
  TriMesh mesh = TriMesh::build(std::move(pts), std::move(tris));

  // every generated point must be used and the rectangle fully covered
  double area = 0.0;
  for (int t = 0; t < mesh.triangle_count(); ++t) area += mesh.triangle_area(t);
  if (std::fabs(area - domain.area()) > 1e-12 * domain.area())
    throw Error("generate_unstructured: triangulation does not cover the domain");
  return mesh;
}

namespace {

void fail_parse(const std::string& name, int line, const std::string& what) {
  throw Error(name + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

TriMesh read_mesh_stream(std::istream& in, const std::string& name) {
  std::string line;
  int lineno = 0;
  auto next_line = [&]() -> std::string& {
    if (!std::getline(in, line)) fail_parse(name, lineno + 1, "unexpected end of file");
    ++lineno;
    return line;
  };
  if (next_line() != "tri-mesh v1") fail_parse(name, lineno, "expected header 'tri-mesh v1'");
  long nv = 0;
  if (std::sscanf(next_line().c_str(), "%ld", &nv) != 1 || nv < 0)
    fail_parse(name, lineno, "bad vertex count");
  std::vector<Vec2> verts(nv);
  for (long i = 0; i < nv; ++i) {
    double x, y;
    if (std::sscanf(next_line().c_str(), "%lf %lf", &x, &y) != 2)
      fail_parse(name, lineno, "bad vertex line");
    verts[i] = {x, y};
  }
  long nt = 0;
  if (std::sscanf(next_line().c_str(), "%ld", &nt) != 1 || nt < 0)
    fail_parse(name, lineno, "bad triangle count");
  std::vector<std::array<int, 3>> tris(nt);
  for (long t = 0; t < nt; ++t) {
    int a, b, c;
    if (std::sscanf(next_line().c_str(), "%d %d %d", &a, &b, &c) != 3)
      fail_parse(name, lineno, "bad triangle line");
    if (a < 0 || b < 0 || c < 0 || a >= nv || b >= nv || c >= nv)
      fail_parse(name, lineno, "triangle vertex index out of range");
    tris[t] = {a, b, c};
  }
  try {
    return TriMesh::build(std::move(verts), std::move(tris));
  } catch (const Error& e) {
    throw Error(name + ": " + e.what());
  }
}

TriMesh read_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open mesh file: " + path);
  return read_mesh_stream(in, path);
}

void write_mesh_stream(const TriMesh& mesh, std::ostream& out) {
  char buf[80];
  out << "tri-mesh v1\n" << mesh.vertex_count() << "\n";
  for (const Vec2& p : mesh.vertices()) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.x, p.y);
    out << buf;
  }
  out << mesh.triangle_count() << "\n";
  for (const auto& t : mesh.triangles())
    out << t[0] << " " << t[1] << " " << t[2] << "\n";
}

void write_mesh(const TriMesh& mesh, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open mesh file for writing: " + path);
  write_mesh_stream(mesh, out);
  if (!out) throw Error("failed writing mesh file: " + path);
}

}  // namespace hct
