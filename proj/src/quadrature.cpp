#include "hct/quadrature.hpp"

#include <array>
#include <cmath>
#include <cstdio>

namespace hct {

namespace {

struct BaseRule {
  std::vector<Bary> points;
  std::vector<double> weights;  // normalized to sum 1
  int degree;
};

void orbit3(std::vector<Bary>& pts, std::vector<double>& ws, double a, double w) {
  const double c = 1.0 - 2.0 * a;
  pts.push_back({a, a, c});
  pts.push_back({a, c, a});
  pts.push_back({c, a, a});
  ws.insert(ws.end(), 3, w);
}

void orbit6(std::vector<Bary>& pts, std::vector<double>& ws, double a, double b,
            double w) {
  const double c = 1.0 - a - b;
  pts.push_back({a, b, c});
  pts.push_back({a, c, b});
  pts.push_back({b, a, c});
  pts.push_back({b, c, a});
  pts.push_back({c, a, b});
  pts.push_back({c, b, a});
  ws.insert(ws.end(), 6, w);
}

BaseRule base_rule(int base_points) {
  BaseRule r;
  switch (base_points) {
    case 3:
      r.degree = 2;
      orbit3(r.points, r.weights, 1.0 / 6.0, 1.0 / 3.0);
      break;
    case 6:
      r.degree = 4;
      orbit3(r.points, r.weights, 0.44594849091596488632, 0.22338158967801146570);
      orbit3(r.points, r.weights, 0.09157621350977074346, 0.10995174365532186764);
      break;
    case 15:
      r.degree = 7;
      orbit3(r.points, r.weights, 0.03587087769573620445, 0.01791545501230394030);
      orbit3(r.points, r.weights, 0.24172939576796287504, 0.12771219588127222056);
      orbit3(r.points, r.weights, 0.47430878777707998633, 0.07620606238553276502);
      orbit6(r.points, r.weights, 0.20150388188180024507, 0.75118363110648618948,
             0.05574981002711220375);
      break;
    default:
      throw Error("unknown base quadrature rule: " + std::to_string(base_points) +
                  " points (accepted: 3, 6, 15)");
  }
  return r;
}

// Barycentric corners of the 4 midpoint subtriangles of a parent triangle,
// expressed in the parent's barycentric coordinates.
using TriBary = std::array<Bary, 3>;

std::array<TriBary, 4> split4(const TriBary& t) {
  auto mid = [](const Bary& a, const Bary& b) {
    return Bary{0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1]), 0.5 * (a[2] + b[2])};
  };
  const Bary m01 = mid(t[0], t[1]);
  const Bary m12 = mid(t[1], t[2]);
  const Bary m20 = mid(t[2], t[0]);
  return {TriBary{t[0], m01, m20}, TriBary{m01, t[1], m12},
          TriBary{m20, m12, t[2]}, TriBary{m01, m12, m20}};
}

void emit(const BaseRule& base, const TriBary& tri, double area_factor,
          int levels, CompositeRule& out) {
  if (levels == 0) {
    for (int q = 0; q < static_cast<int>(base.points.size()); ++q) {
      const Bary& l = base.points[q];
      Bary p;
      for (int c = 0; c < 3; ++c)
        p[c] = l[0] * tri[0][c] + l[1] * tri[1][c] + l[2] * tri[2][c];
      out.points.push_back(p);
      out.weights.push_back(0.5 * area_factor * base.weights[q]);
    }
    return;
  }
  for (const TriBary& sub : split4(tri))
    emit(base, sub, 0.25 * area_factor, levels - 1, out);
}

const TriBary kRefTri = {Bary{1, 0, 0}, Bary{0, 1, 0}, Bary{0, 0, 1}};

}  // namespace

int QuadSpec::degree() const { return base_rule(base_points).degree; }

std::string QuadSpec::str() const {
  return std::to_string(base_points) + "x" + std::to_string(refinement_level);
}

QuadSpec parse_quad_spec(const std::string& text) {
  int base = 0, level = 0;
  char extra = 0;
  if (std::sscanf(text.c_str(), "%dx%d%c", &base, &level, &extra) != 2)
    throw Error("bad quadrature spec '" + text + "' (expected BASExLEVEL, e.g. 15x1)");
  QuadSpec spec{base, level};
  if (!spec.valid())
    throw Error("bad quadrature spec '" + text + "' (bases 3/6/15, level 0..4)");
  return spec;
}

CompositeRule realize(const QuadSpec& spec) {
  if (!spec.valid())
    throw Error("invalid quadrature spec " + std::to_string(spec.base_points) +
                "x" + std::to_string(spec.refinement_level));
  const BaseRule base = base_rule(spec.base_points);
  CompositeRule out;
  out.degree = base.degree;
  emit(base, kRefTri, 1.0, spec.refinement_level, out);
  return out;
}

CompositeRule realize_nonuniform(int base_points,
                                 const std::array<int, 4>& levels) {
  const BaseRule base = base_rule(base_points);
  CompositeRule out;
  out.degree = base.degree;
  const auto subs = split4(kRefTri);
  for (int q = 0; q < 4; ++q) {
    if (levels[q] < 0 || levels[q] > 4)
      throw Error("realize_nonuniform: level out of range");
    emit(base, subs[q], 0.25, levels[q], out);
  }
  return out;
}

double integrate_reference(const CompositeRule& rule,
                           const std::function<double(const Bary&)>& f) {
  double sum = 0.0, comp = 0.0;
  for (int q = 0; q < rule.size(); ++q) {
    const double y = rule.weights[q] * f(rule.points[q]) - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

GaussRule1D tensor_gauss_1d(int n) {
  if (n < 1 || n > 64) throw Error("tensor_gauss_1d: n must be in 1..64");
  GaussRule1D r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton on P_n from the Chebyshev-like initial guess
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.weights[i] = w;
    r.nodes[n - 1 - i] = x;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

RectRule tensor_rule_on(const Domain& d, int n) {
  const GaussRule1D g = tensor_gauss_1d(n);
  RectRule r;
  r.points.reserve(n * n);
  r.weights.reserve(n * n);
  const double sx = 0.5 * d.width(), cx = 0.5 * (d.x0 + d.x1);
  const double sy = 0.5 * d.height(), cy = 0.5 * (d.y0 + d.y1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      r.points.push_back({cx + sx * g.nodes[i], cy + sy * g.nodes[j]});
      r.weights.push_back(sx * sy * g.weights[i] * g.weights[j]);
    }
  return r;
}

}  // namespace hct
