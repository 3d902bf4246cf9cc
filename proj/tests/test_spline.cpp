#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "hct/spline.hpp"
#include "oracles.hpp"

using namespace hct;

namespace {

const CompositeRule& rule15x1() {
  static const CompositeRule r = realize({15, 1});
  return r;
}

struct Cubic {
  double c[10];
  double operator()(double x, double y) const {
    return c[0] + c[1] * x + c[2] * y + c[3] * x * x + c[4] * x * y +
           c[5] * y * y + c[6] * x * x * x + c[7] * x * x * y +
           c[8] * x * y * y + c[9] * y * y * y;
  }
  Vec2 grad(double x, double y) const {
    return {c[1] + 2 * c[3] * x + c[4] * y + 3 * c[6] * x * x + 2 * c[7] * x * y +
                c[8] * y * y,
            c[2] + c[4] * x + 2 * c[5] * y + c[7] * x * x + 2 * c[8] * x * y +
                3 * c[9] * y * y};
  }
};

Vec2 altitude_foot(const std::array<Vec2, 3>& tri, int i) {
  const Vec2 p = tri[(i + 1) % 3];
  const Vec2 d = tri[(i + 2) % 3] - tri[(i + 1) % 3];
  const double t = (tri[i] - p).dot(d) / d.norm2();
  return p + d * t;
}

HctDofs dofs_from(const Cubic& q, const std::array<Vec2, 3>& tri) {
  HctDofs dofs{};
  for (int i = 0; i < 3; ++i) {
    dofs[i] = q(tri[i].x, tri[i].y);
    const Vec2 g = q.grad(tri[i].x, tri[i].y);
    dofs[3 + 2 * i] = g.dot(tri[(i + 2) % 3] - tri[i]);
    dofs[4 + 2 * i] = g.dot(tri[(i + 1) % 3] - tri[i]);
  }
  for (int i = 0; i < 3; ++i) {
    const Vec2 b = (tri[(i + 1) % 3] + tri[(i + 2) % 3]) * 0.5;
    dofs[9 + i] = q.grad(b.x, b.y).dot(tri[i] - altitude_foot(tri, i));
  }
  return dofs;
}

// apply the 12 DOF functionals to a solved element
HctDofs functionals(const std::array<Vec2, 3>& tri, const HctCoeffs& c) {
  HctDofs out{};
  const Bary corners[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (int i = 0; i < 3; ++i) {
    out[i] = eval_hct_element(tri, c, corners[i]);
    const Vec2 g = grad_hct_element(tri, c, corners[i]);
    out[3 + 2 * i] = g.dot(tri[(i + 2) % 3] - tri[i]);
    out[4 + 2 * i] = g.dot(tri[(i + 1) % 3] - tri[i]);
  }
  for (int i = 0; i < 3; ++i) {
    Bary mid{0, 0, 0};
    mid[(i + 1) % 3] = 0.5;
    mid[(i + 2) % 3] = 0.5;
    out[9 + i] =
        grad_hct_element(tri, c, mid).dot(tri[i] - altitude_foot(tri, i));
  }
  return out;
}

}  // namespace

TEST_CASE("eccentricity parameters") {
  // equilateral: all zero by symmetry
  const std::array<Vec2, 3> eq = {Vec2{0, 0}, Vec2{1, 0},
                                  Vec2{0.5, std::sqrt(3.0) / 2.0}};
  for (const double e : eccentricities(eq)) CHECK(std::fabs(e) <= 1e-14);

  // unit right triangle
  const std::array<Vec2, 3> right = {Vec2{0, 0}, Vec2{1, 0}, Vec2{0, 1}};
  const auto er = eccentricities(right);
  CHECK(er[0] == doctest::Approx(0.0));
  CHECK(er[1] == doctest::Approx(1.0));
  CHECK(er[2] == doctest::Approx(-1.0));

  // invariant under rigid motion
  oracles::Rng rng(2);
  const std::array<Vec2, 3> tri = {Vec2{rng.uniform(0, 1), rng.uniform(0, 1)},
                                   Vec2{rng.uniform(2, 3), rng.uniform(0, 1)},
                                   Vec2{rng.uniform(1, 2), rng.uniform(2, 3)}};
  const double ang = 1.234;
  const Vec2 shift{5.5, -2.5};
  std::array<Vec2, 3> moved;
  for (int i = 0; i < 3; ++i)
    moved[i] = Vec2{std::cos(ang) * tri[i].x - std::sin(ang) * tri[i].y,
                    std::sin(ang) * tri[i].x + std::cos(ang) * tri[i].y} +
               shift;
  const auto a = eccentricities(tri);
  const auto b = eccentricities(moved);
  for (int i = 0; i < 3; ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));

  CHECK_THROWS_AS(eccentricities({Vec2{0, 0}, Vec2{0, 0}, Vec2{1, 1}}), Error);
}

TEST_CASE("element solve: DOF delta duality") {
  const std::array<Vec2, 3> tri = {Vec2{0.1, 0.2}, Vec2{1.9, 0.4}, Vec2{0.7, 1.6}};
  for (int d = 0; d < 12; ++d) {
    HctDofs unit{};
    unit[d] = 1.0;
    const HctCoeffs c = solve_element_cubics(tri, unit);
    const HctDofs got = functionals(tri, c);
    for (int j = 0; j < 12; ++j)
      CHECK(std::fabs(got[j] - (j == d ? 1.0 : 0.0)) <= 1e-10);
  }
}

TEST_CASE("element solve: constant and cubic reproduction") {
  oracles::Rng rng(9);
  const std::array<Vec2, 3> tri = {Vec2{rng.uniform(5, 6), rng.uniform(5, 6)},
                                   Vec2{rng.uniform(7, 8), rng.uniform(5, 6)},
                                   Vec2{rng.uniform(6, 7), rng.uniform(7, 8)}};
  // constant
  Cubic constant{};
  constant.c[0] = 3.25;
  const HctCoeffs cc = solve_element_cubics(tri, dofs_from(constant, tri));
  for (int s = 0; s < 20; ++s) {
    const Bary b = rng.bary();
    CHECK(eval_hct_element(tri, cc, b) == doctest::Approx(3.25).epsilon(1e-12));
    const Vec2 g = grad_hct_element(tri, cc, b);
    CHECK(std::fabs(g.x) <= 1e-10);
    CHECK(std::fabs(g.y) <= 1e-10);
  }
  // full cubic, 50 random points
  Cubic q{};
  for (double& v : q.c) v = rng.uniform(-1, 1);
  const HctCoeffs cq = solve_element_cubics(tri, dofs_from(q, tri));
  for (int s = 0; s < 50; ++s) {
    const Bary b = rng.bary();
    const Vec2 x = tri[0] * b[0] + tri[1] * b[1] + tri[2] * b[2];
    CHECK(std::fabs(eval_hct_element(tri, cq, b) - q(x.x, x.y)) <= 1e-10);
  }
  // interpolation conditions hold exactly at the DOFs
  const HctDofs sigma = dofs_from(q, tri);
  const HctDofs got = functionals(tri, cq);
  for (int j = 0; j < 12; ++j) CHECK(std::fabs(got[j] - sigma[j]) <= 1e-10);

  CHECK_THROWS_AS(solve_element_cubics({Vec2{0, 0}, Vec2{1, 0}, Vec2{2, 0}}, sigma),
                  Error);
}

TEST_CASE("synchronize: averages, boundary traces, identity on C1 data") {
  // two constant elements sharing the diagonal: averages at shared vertices
  const TriMesh mesh =
      TriMesh::build({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1, 2}, {0, 2, 3}});
  DGField field(mesh, 1);
  {
    // element 0 constant 1, element 1 constant 3 (modal coefficient 0 scales
    // the constant basis function)
    const ModalBasis& basis = ModalBasis::get(1);
    double psi[3];
    basis.eval(0.25, 0.25, psi);
    field.coeffs(0)[0] = 1.0 / psi[0];
    field.coeffs(1)[0] = 3.0 / psi[0];
  }
  const SyncData sync = synchronize(field);
  // vertices 0 and 2 are shared, 1 is only in element 0, 3 only in element 1
  CHECK(sync.vertex_value[0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(sync.vertex_value[2] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(sync.vertex_value[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sync.vertex_value[3] == doctest::Approx(3.0).epsilon(1e-14));

  // synchronization is the identity on a globally linear projection
  const TriMesh grid = generate_unstructured(Domain{0, 1, 0, 1}, 0.3, 5);
  auto lin = [](double x, double y) { return 2 * x - 3 * y + 0.5; };
  const DGField lf = project_analytic(grid, 1, lin, rule15x1());
  const SyncData ls = synchronize(lf);
  for (int v = 0; v < grid.vertex_count(); ++v) {
    const Vec2 p = grid.vertex(v);
    CHECK(ls.vertex_value[v] == doctest::Approx(lin(p.x, p.y)).epsilon(1e-12));
    CHECK(ls.vertex_grad[v].x == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(ls.vertex_grad[v].y == doctest::Approx(-3.0).epsilon(1e-12));
  }
  for (int e = 0; e < grid.edge_count(); ++e) {
    const Vec2 n = grid.edge(e).normal;
    CHECK(ls.edge_normal_deriv[e] ==
          doctest::Approx(2 * n.x - 3 * n.y).epsilon(1e-11));
  }
}

TEST_CASE("surrogate: cubic reproduction through the full pipeline") {
  const TestFunction u1 = test_function("u1");
  const TriMesh mesh = generate_unstructured(u1.domain, 0.883883, 1);
  oracles::Rng rng(13);
  Cubic q{};
  for (double& v : q.c) v = rng.uniform(-0.5, 0.5);
  // center for conditioning over the [5,15] domain
  auto f = [&](double x, double y) { return q((x - 10) / 5, (y - 10) / 5); };
  const DGField field = project_analytic(mesh, 3, f, rule15x1());
  const HctSurrogate s = build_surrogate(field, synchronize(field));
  for (int t = 0; t < mesh.triangle_count(); t += 3) {
    for (int k = 0; k < 5; ++k) {
      const Bary b = rng.bary();
      const Vec2 x = mesh.map_to_physical(t, b);
      CHECK(std::fabs(s.value(t, b) - f(x.x, x.y)) <= 1e-10);
    }
  }
}

TEST_CASE("surrogate: global C0/C1 continuity across mesh edges") {
  const TestFunction u1 = test_function("u1");
  const TriMesh mesh = generate_unstructured(u1.domain, 0.883883, 1);
  const DGField field = project_analytic(mesh, 1, u1.f, rule15x1());
  const HctSurrogate s = build_surrogate(field, synchronize(field));

  auto bary_of = [&](int t, const Vec2& p) {
    const auto pts = mesh.triangle_points(t);
    const double area2 = (pts[1] - pts[0]).cross(pts[2] - pts[0]);
    const double l0 = (pts[1] - p).cross(pts[2] - p) / area2;
    const double l1 = (pts[2] - p).cross(pts[0] - p) / area2;
    return Bary{l0, l1, 1 - l0 - l1};
  };
  double worst_c0 = 0.0, worst_c1 = 0.0;
  for (int e = 0; e < mesh.edge_count(); ++e) {
    const Edge& edge = mesh.edge(e);
    if (edge.boundary()) continue;
    for (int k = 0; k <= 10; ++k) {
      const double t = k / 10.0;
      const Vec2 p = mesh.vertex(edge.v0) * (1 - t) + mesh.vertex(edge.v1) * t;
      const double dv =
          s.value(edge.left, bary_of(edge.left, p)) -
          s.value(edge.right, bary_of(edge.right, p));
      const Vec2 gl = s.gradient(edge.left, bary_of(edge.left, p));
      const Vec2 gr = s.gradient(edge.right, bary_of(edge.right, p));
      worst_c0 = std::max(worst_c0, std::fabs(dv));
      worst_c1 = std::max(worst_c1, std::hypot(gl.x - gr.x, gl.y - gr.y));
    }
  }
  CHECK(worst_c0 <= 1e-10);
  CHECK(worst_c1 <= 1e-10);
}

TEST_CASE("surrogate: stored DOFs, eccentricities, gradient oracle") {
  const TestFunction u3 = test_function("u3");
  const TriMesh mesh = generate_unstructured(u3.domain, 1.767767, 2);
  const DGField field = project_analytic(mesh, 2, u3.f, rule15x1());
  const HctSurrogate s = build_surrogate(field, synchronize(field));

  oracles::Rng rng(19);
  const Bary corners[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (int t = 0; t < mesh.triangle_count(); t += 5) {
    const auto tri = mesh.triangle_points(t);
    // evaluation at each vertex returns the stored vertex value
    for (int i = 0; i < 3; ++i)
      CHECK(std::fabs(s.value(t, corners[i]) - s.dofs(t)[i]) <= 1e-10);
    // midpoint directional derivative returns the stored midpoint DOF
    for (int i = 0; i < 3; ++i) {
      Bary mid{0, 0, 0};
      mid[(i + 1) % 3] = 0.5;
      mid[(i + 2) % 3] = 0.5;
      const double got =
          s.gradient(t, mid).dot(tri[i] - altitude_foot(tri, i));
      CHECK(std::fabs(got - s.dofs(t)[9 + i]) <= 1e-9);
    }
    // eccentricities exposed per element
    const auto ecc = eccentricities(tri);
    for (int i = 0; i < 3; ++i)
      CHECK(s.eccentricity(t)[i] == doctest::Approx(ecc[i]).epsilon(1e-14));
  }

  // finite-difference gradient at interior points
  for (int sgn = 0; sgn < 100; ++sgn) {
    const int t = static_cast<int>(rng.uniform(0, mesh.triangle_count()));
    // stay away from the element boundary so the FD stencil stays inside
    Bary b{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    b[0] += rng.uniform(-0.05, 0.05);
    b[1] += rng.uniform(-0.05, 0.05);
    b[2] = 1 - b[0] - b[1];
    const Vec2 p = mesh.map_to_physical(t, b);
    const auto pts = mesh.triangle_points(t);
    auto value_at = [&](double x, double y) {
      const double area2 = (pts[1] - pts[0]).cross(pts[2] - pts[0]);
      const Vec2 q{x, y};
      const double l0 = (pts[1] - q).cross(pts[2] - q) / area2;
      const double l1 = (pts[2] - q).cross(pts[0] - q) / area2;
      return s.value(t, {l0, l1, 1 - l0 - l1});
    };
    const Vec2 fd = oracles::fd_gradient(value_at, p.x, p.y);
    const Vec2 g = s.gradient(t, b);
    CHECK(std::fabs(g.x - fd.x) <= 1e-6);
    CHECK(std::fabs(g.y - fd.y) <= 1e-6);
  }

  CHECK_THROWS_AS(s.value(mesh.triangle_count(), corners[0]), Error);
}
