#ifndef HCT_TRANSFER_HPP
#define HCT_TRANSFER_HPP

#include <span>
#include <string>
#include <vector>

#include "hct/field.hpp"
#include "hct/mesh.hpp"
#include "hct/quadrature.hpp"

namespace hct {

enum class Method { TRANS1, TRANS2, TRANS3, LINEAR, QUADRATIC };

Method parse_method(const std::string& name);
std::string method_name(Method m);

// TRANS1 -- L2-projection of the raw discontinuous source, no limiting.
// TRANS2 -- L2-projection of the C1 spline surrogate, no limiting.
// TRANS3 -- TRANS1 followed by the clamp limiter (k = 1 only).
// LINEAR / QUADRATIC -- nodal interpolation, degree 1 / 2 output.
struct TransferConfig {
  Method method = Method::TRANS2;
  int degree = 1;        // source polynomial degree k
  QuadSpec quad{15, 1};  // projection quadrature
  bool limiter_enabled = false;  // forced true for TRANS3, false otherwise

  void validate() const;
  int output_degree() const;
};

// Per-target-element projection system: mass matrix, forcing vector and the
// solved modal coefficients, all carrying the physical/reference area ratio.
struct ProjectionSystem {
  std::vector<double> mass;     // nb x nb, row-major
  std::vector<double> forcing;  // nb
  std::vector<double> coeffs;   // nb
  double area_ratio = 0.0;
};

// Assembles and solves one element's system from integrand values at the
// rule points.
ProjectionSystem project_element(const ModalBasis& basis,
                                 const CompositeRule& rule, double area_ratio,
                                 std::span<const double> integrand);

// Moves the source field onto the target mesh. Both meshes must cover the
// same domain; a quadrature or nodal point that cannot be located in the
// source mesh aborts the transfer.
DGField transfer(const DGField& source, const TriMesh& target,
                 const TransferConfig& cfg);

// Clamps every nodal value of the target field into the [min, max] of the
// source nodal values over the source elements near that node (k = 1).
DGField limit(const DGField& target, const DGField& source);

// Integral of the field over its mesh with the given rule.
double mass(const DGField& field, const CompositeRule& rule);

}  // namespace hct

#endif
