// Independent oracles shared by the test suites. These deliberately avoid
// the library code paths they are used to check.
#ifndef HCT_TESTS_ORACLES_HPP
#define HCT_TESTS_ORACLES_HPP

#include <cmath>
#include <functional>
#include <random>

#include "hct/field.hpp"
#include "hct/locate.hpp"
#include "hct/mesh.hpp"
#include "hct/quadrature.hpp"

namespace oracles {

// Closed form of the monomial integral over the unit reference triangle:
// integral of x^a y^b = a! b! / (a+b+2)!
inline double monomial_integral(int a, int b) {
  double r = 1.0;
  for (int i = 1; i <= a; ++i) r *= i;
  for (int i = 1; i <= b; ++i) r *= i;
  for (int i = 1; i <= a + b + 2; ++i) r /= i;
  return r;
}

// Lowest-index containing triangle by scanning every triangle.
inline int brute_force_locate(const hct::TriMesh& mesh, const hct::Vec2& p) {
  for (int t = 0; t < mesh.triangle_count(); ++t)
    if (hct::point_in_triangle(mesh.triangle_points(t), p)) return t;
  return -1;
}

// Central finite differences of a scalar function.
inline hct::Vec2 fd_gradient(const std::function<double(double, double)>& f,
                             double x, double y, double step = 1e-5) {
  return {(f(x + step, y) - f(x - step, y)) / (2 * step),
          (f(x, y + step) - f(x, y - step)) / (2 * step)};
}

// Integral of a DG field element-by-element with an n x n tensor Gauss rule
// through the Duffy map of the square onto each triangle. Independent of the
// symmetric triangle rules used by the library's own mass().
inline double duffy_field_integral(const hct::DGField& field, int n = 40) {
  const hct::GaussRule1D g = hct::tensor_gauss_1d(n);
  const hct::TriMesh& mesh = field.mesh();
  double sum = 0.0, comp = 0.0;
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const double area2 = 2.0 * mesh.triangle_area(t);
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double u = 0.5 * (g.nodes[i] + 1.0);
        const double v = 0.5 * (g.nodes[j] + 1.0);
        const double xi = u;
        const double eta = v * (1.0 - u);
        const double w = 0.25 * g.weights[i] * g.weights[j] * (1.0 - u);
        acc += w * field.evaluate(t, hct::bary_from_ref(xi, eta));
      }
    const double y = acc * area2 - comp;
    const double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  }
  return sum;
}

// Deterministic uniform doubles for test data.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) {
    const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }
  hct::Bary bary() {
    const double a = uniform(0.0, 1.0);
    const double b = uniform(0.0, 1.0 - a);
    return {1.0 - a - b, a, b};
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracles

#endif
