#include "hct/spline.hpp"

#include <cmath>

#include "hct/linalg.hpp"
#include "hct/locate.hpp"
#include "hct/parallel.hpp"

namespace hct {

namespace {

constexpr int kMonoX[10] = {0, 1, 0, 2, 1, 0, 3, 2, 1, 0};
constexpr int kMonoY[10] = {0, 0, 1, 0, 1, 2, 0, 1, 2, 3};

void mono_eval(double xi, double eta, double out[10]) {
  for (int m = 0; m < 10; ++m)
    out[m] = std::pow(xi, kMonoX[m]) * std::pow(eta, kMonoY[m]);
}

void mono_grad(double xi, double eta, double dxi[10], double deta[10]) {
  for (int m = 0; m < 10; ++m) {
    const int a = kMonoX[m], b = kMonoY[m];
    dxi[m] = a == 0 ? 0.0 : a * std::pow(xi, a - 1) * std::pow(eta, b);
    deta[m] = b == 0 ? 0.0 : b * std::pow(xi, a) * std::pow(eta, b - 1);
  }
}

const Vec2 kRefVertex[3] = {{0, 0}, {1, 0}, {0, 1}};
const Vec2 kRefG{1.0 / 3.0, 1.0 / 3.0};

// Orthogonal projection of a onto the line through p, q.
Vec2 project_onto_line(const Vec2& a, const Vec2& p, const Vec2& q) {
  const Vec2 d = q - p;
  const double t = (a - p).dot(d) / d.norm2();
  return p + d * t;
}

struct ElementFrame {
  std::array<Vec2, 3> pts;
  Vec2 e1, e2;  // columns of the affine map Jacobian
  double det;

  explicit ElementFrame(const std::array<Vec2, 3>& tri) : pts(tri) {
    e1 = pts[1] - pts[0];
    e2 = pts[2] - pts[0];
    det = e1.cross(e2);
    if (det == 0.0) throw Error("degenerate element (zero area)");
  }
  // pullback of a physical direction: grad_x q . d = grad_ref q . pull(d)
  Vec2 pull(const Vec2& d) const {
    return {(e2.y * d.x - e2.x * d.y) / det, (-e1.y * d.x + e1.x * d.y) / det};
  }
  // push a reference gradient to physical coordinates (J^-T)
  Vec2 push_grad(double sxi, double seta) const {
    return {(sxi * e2.y - seta * e1.y) / det, (-sxi * e2.x + seta * e1.x) / det};
  }
};

}  // namespace

std::array<double, 3> eccentricities(const std::array<Vec2, 3>& tri) {
  double len2[3];
  for (int i = 0; i < 3; ++i) {
    const Vec2 l = tri[(i + 2) % 3] - tri[(i + 1) % 3];  // edge opposite vertex i
    len2[i] = l.norm2();
    if (len2[i] == 0.0) throw Error("eccentricities: zero-length edge");
  }
  std::array<double, 3> e;
  for (int i = 0; i < 3; ++i)
    e[i] = (len2[(i + 2) % 3] - len2[(i + 1) % 3]) / len2[i];
  return e;
}

HctCoeffs solve_element_cubics(const std::array<Vec2, 3>& tri,
                               const HctDofs& dofs) {
  const ElementFrame frame(tri);
  constexpr int kRows = 33, kCols = 30;
  std::vector<double> a(kRows * kCols, 0.0);
  std::vector<double> rhs(kRows, 0.0);
  int row = 0;

  auto value_row = [&](int block, double xi, double eta, double sign) {
    double phi[10];
    mono_eval(xi, eta, phi);
    for (int m = 0; m < 10; ++m) a[row * kCols + block * 10 + m] += sign * phi[m];
  };
  auto deriv_row = [&](int block, double xi, double eta, const Vec2& ref_dir,
                       double sign) {
    double dxi[10], deta[10];
    mono_grad(xi, eta, dxi, deta);
    for (int m = 0; m < 10; ++m)
      a[row * kCols + block * 10 + m] +=
          sign * (dxi[m] * ref_dir.x + deta[m] * ref_dir.y);
  };

  // interpolation conditions on the DOF set
  for (int i = 0; i < 3; ++i) {
    const int block = (i + 1) % 3;  // a subtriangle containing vertex a_i
    const Vec2 rv = kRefVertex[i];
    value_row(block, rv.x, rv.y, 1.0);
    rhs[row++] = dofs[i];
    // derivative toward a_{i+2} then a_{i+1}: exact reference directions
    deriv_row(block, rv.x, rv.y, kRefVertex[(i + 2) % 3] - rv, 1.0);
    rhs[row++] = dofs[3 + 2 * i];
    deriv_row(block, rv.x, rv.y, kRefVertex[(i + 1) % 3] - rv, 1.0);
    rhs[row++] = dofs[4 + 2 * i];
  }
  for (int i = 0; i < 3; ++i) {
    // midpoint of the edge opposite vertex i lies on subtriangle i
    const Vec2 bm = (kRefVertex[(i + 1) % 3] + kRefVertex[(i + 2) % 3]) * 0.5;
    const Vec2 ci =
        project_onto_line(tri[i], tri[(i + 1) % 3], tri[(i + 2) % 3]);
    deriv_row(i, bm.x, bm.y, frame.pull(tri[i] - ci), 1.0);
    rhs[row++] = dofs[9 + i];
  }

  // C0 and C1 matching along the internal edges {G, a_m} shared by
  // subtriangles (m+1) and (m+2); a cubic trace needs 4 samples, its
  // transversal derivative (a quadratic) needs 3
  for (int m = 0; m < 3; ++m) {
    const int p = (m + 1) % 3, q = (m + 2) % 3;
    const Vec2 dir = kRefVertex[m] - kRefG;
    const Vec2 perp{-dir.y, dir.x};
    for (const double t : {0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0}) {
      const Vec2 g = kRefG + dir * t;
      value_row(p, g.x, g.y, 1.0);
      value_row(q, g.x, g.y, -1.0);
      ++row;
    }
    for (const double t : {0.0, 0.5, 1.0}) {
      const Vec2 g = kRefG + dir * t;
      deriv_row(p, g.x, g.y, perp, 1.0);
      deriv_row(q, g.x, g.y, perp, -1.0);
      ++row;
    }
  }
  if (row != kRows) throw Error("hct: row count mismatch");

  double rhs_norm = 0.0;
  for (double v : rhs) rhs_norm += v * v;
  rhs_norm = std::sqrt(rhs_norm);

  HctCoeffs coeffs{};
  const double residual = householder_lstsq(kRows, kCols, std::move(a),
                                            std::move(rhs), coeffs);
  if (residual > 1e-9 * (1.0 + rhs_norm))
    throw Error("hct: local system residual " + std::to_string(residual) +
                " too large (degenerate element geometry)");
  return coeffs;
}

double eval_hct_element(const std::array<Vec2, 3>& tri, const HctCoeffs& c,
                        const Bary& b) {
  (void)tri;
  const int sub = locate_subtriangle(b);
  double phi[10];
  mono_eval(b[1], b[2], phi);
  double s = 0.0;
  for (int m = 0; m < 10; ++m) s += c[sub * 10 + m] * phi[m];
  return s;
}

Vec2 grad_hct_element(const std::array<Vec2, 3>& tri, const HctCoeffs& c,
                      const Bary& b) {
  const ElementFrame frame(tri);
  const int sub = locate_subtriangle(b);
  double dxi[10], deta[10];
  mono_grad(b[1], b[2], dxi, deta);
  double sxi = 0.0, seta = 0.0;
  for (int m = 0; m < 10; ++m) {
    sxi += c[sub * 10 + m] * dxi[m];
    seta += c[sub * 10 + m] * deta[m];
  }
  return frame.push_grad(sxi, seta);
}

SyncData synchronize(const DGField& field) {
  const TriMesh& mesh = field.mesh();
  SyncData sync;
  sync.vertex_value.assign(mesh.vertex_count(), 0.0);
  sync.vertex_grad.assign(mesh.vertex_count(), Vec2{});
  sync.edge_normal_deriv.assign(mesh.edge_count(), 0.0);

  parallel_for(mesh.vertex_count(), [&](int v) {
    const auto& incident = mesh.vertex_triangles(v);
    if (incident.empty()) return;
    double value = 0.0;
    Vec2 grad;
    for (const int t : incident) {
      const auto& tri = mesh.triangle(t);
      Bary b{0, 0, 0};
      for (int i = 0; i < 3; ++i)
        if (tri[i] == v) b[i] = 1.0;
      value += field.evaluate(t, b);
      grad += field.gradient(t, b);
    }
    const double inv = 1.0 / static_cast<double>(incident.size());
    sync.vertex_value[v] = value * inv;
    sync.vertex_grad[v] = grad * inv;
  });

  parallel_for(mesh.edge_count(), [&](int e) {
    const Edge& edge = mesh.edge(e);
    double sum = 0.0;
    int count = 0;
    for (const int t : {edge.left, edge.right}) {
      if (t < 0) continue;
      const auto& tri = mesh.triangle(t);
      Bary b{0, 0, 0};
      for (int i = 0; i < 3; ++i)
        if (tri[i] == edge.v0 || tri[i] == edge.v1) b[i] = 0.5;
      sum += field.gradient(t, b).dot(edge.normal);
      ++count;
    }
    sync.edge_normal_deriv[e] = count > 0 ? sum / count : 0.0;
  });
  return sync;
}

HctSurrogate build_surrogate(const DGField& field, const SyncData& sync) {
  const TriMesh& mesh = field.mesh();
  if (static_cast<int>(sync.vertex_value.size()) != mesh.vertex_count() ||
      static_cast<int>(sync.edge_normal_deriv.size()) != mesh.edge_count())
    throw Error("build_surrogate: sync data does not match the field's mesh");

  HctSurrogate s;
  s.mesh_ = &mesh;
  const int nt = mesh.triangle_count();
  s.dofs_.resize(nt);
  s.ecc_.resize(nt);
  s.coeffs_.resize(nt);

  parallel_for(nt, [&](int t) {
    const auto tri = mesh.triangle_points(t);
    const auto& idx = mesh.triangle(t);
    HctDofs dofs{};
    for (int i = 0; i < 3; ++i) {
      dofs[i] = sync.vertex_value[idx[i]];
      const Vec2 g = sync.vertex_grad[idx[i]];
      dofs[3 + 2 * i] = g.dot(tri[(i + 2) % 3] - tri[i]);
      dofs[4 + 2 * i] = g.dot(tri[(i + 1) % 3] - tri[i]);
    }
    for (int i = 0; i < 3; ++i) {
      const int e = mesh.triangle_edge(t, i);
      const Vec2 ci = project_onto_line(tri[i], tri[(i + 1) % 3], tri[(i + 2) % 3]);
      // (a_i - c_i) is normal to the edge, so the directional DOF is the
      // synchronized normal derivative rescaled by the signed altitude
      dofs[9 + i] = sync.edge_normal_deriv[e] * (tri[i] - ci).dot(mesh.edge(e).normal);
    }
    try {
      s.coeffs_[t] = solve_element_cubics(tri, dofs);
    } catch (const Error& e) {
      throw Error("element " + std::to_string(t) + ": " + e.what());
    }
    s.dofs_[t] = dofs;
    s.ecc_[t] = eccentricities(tri);
  });
  return s;
}

double HctSurrogate::value(int elem, const Bary& b) const {
  if (elem < 0 || elem >= mesh_->triangle_count())
    throw Error("HctSurrogate::value: element out of range");
  return eval_hct_element(mesh_->triangle_points(elem), coeffs_[elem], b);
}

Vec2 HctSurrogate::gradient(int elem, const Bary& b) const {
  if (elem < 0 || elem >= mesh_->triangle_count())
    throw Error("HctSurrogate::gradient: element out of range");
  return grad_hct_element(mesh_->triangle_points(elem), coeffs_[elem], b);
}

}  // namespace hct
