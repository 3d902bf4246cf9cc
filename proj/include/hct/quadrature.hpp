#ifndef HCT_QUADRATURE_HPP
#define HCT_QUADRATURE_HPP

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hct/core.hpp"

namespace hct {

// Symmetric base rules on the reference triangle {(0,0),(1,0),(0,1)}:
// 3-point (degree 2), 6-point (degree 4), 15-point (degree 7).
// Coordinates follow Williams, Shunn & Jameson (2014).
struct QuadSpec {
  int base_points = 15;       // 3, 6 or 15
  int refinement_level = 0;   // each level splits every subtriangle in 4

  bool valid() const {
    return (base_points == 3 || base_points == 6 || base_points == 15) &&
           refinement_level >= 0 && refinement_level <= 4;
  }
  int degree() const;  // polynomial degree integrated exactly
  std::string str() const;  // "15x1"
};

QuadSpec parse_quad_spec(const std::string& text);  // "15x1" -> {15,1}

struct CompositeRule {
  std::vector<Bary> points;     // barycentric w.r.t. the reference triangle
  std::vector<double> weights;  // sum to the reference area 1/2
  int degree = 0;

  int size() const { return static_cast<int>(points.size()); }
};

// Realizes a spec into points/weights. Each h-refinement splits every
// (sub)triangle into 4 equal subtriangles at edge midpoints and rescales
// the weights by 1/4.
CompositeRule realize(const QuadSpec& spec);

// Non-uniform variant: the reference triangle is split once into its 4
// midpoint subtriangles and subtriangle q receives levels[q] further uniform
// refinements (subtriangle order: corner 0, corner 1, corner 2, center).
CompositeRule realize_nonuniform(int base_points,
                                 const std::array<int, 4>& levels);

// Integral of f over the reference triangle.
double integrate_reference(const CompositeRule& rule,
                           const std::function<double(const Bary&)>& f);

// 1D Gauss-Legendre rule on [-1,1], n in 1..64; exact for degree 2n-1.
struct GaussRule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule1D tensor_gauss_1d(int n);

// n x n tensor-product points over a rectangle; weights sum to its area.
struct RectRule {
  std::vector<Vec2> points;
  std::vector<double> weights;
};
RectRule tensor_rule_on(const Domain& d, int n);

}  // namespace hct

#endif
