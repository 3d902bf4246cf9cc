#ifndef HCT_SPLINE_HPP
#define HCT_SPLINE_HPP

#include <array>
#include <vector>

#include "hct/core.hpp"
#include "hct/field.hpp"
#include "hct/mesh.hpp"

namespace hct {

// Single-valued C1 data extracted from a discontinuous field: vertex values
// and gradients averaged over the incident elements, edge-midpoint normal
// derivatives averaged over the (<=2) incident elements with the edge's fixed
// normal.
struct SyncData {
  std::vector<double> vertex_value;
  std::vector<Vec2> vertex_grad;
  std::vector<double> edge_normal_deriv;  // along TriMesh::edge(e).normal
};

SyncData synchronize(const DGField& field);

// Eccentricity parameters E_i = (|l_{i+2}|^2 - |l_{i+1}|^2) / |l_i|^2 with
// l_i the edge opposite vertex i (indices mod 3).
std::array<double, 3> eccentricities(const std::array<Vec2, 3>& tri);

// Element degrees of freedom, 12 entries:
//   [0..2]   v(a_i)
//   [3..8]   grad v(a_i) . (a_{i+2} - a_i), grad v(a_i) . (a_{i+1} - a_i)
//            for i = 0,1,2 (slots 3+2i, 4+2i)
//   [9..11]  grad v(b_i) . (a_i - c_i), the midpoint of the edge opposite
//            vertex i dotted with the altitude foot direction
using HctDofs = std::array<double, 12>;

// Per-element cubic coefficients: 3 subtriangle blocks of 10 monomial
// coefficients in the parent element's reference coordinates {1, xi, eta,
// xi^2, xi*eta, eta^2, xi^3, xi^2*eta, xi*eta^2, eta^3}.
using HctCoeffs = std::array<double, 30>;

// Solves the local interpolation problem on one element: the 12 DOF
// conditions plus C0/C1 matching of the three subtriangle cubics along the
// internal edges {G, a_i}; consistent overdetermined system solved by
// least squares with a residual guard.
HctCoeffs solve_element_cubics(const std::array<Vec2, 3>& tri,
                               const HctDofs& dofs);

// Value / physical gradient of the element interpolant at a barycentric
// point (the containing subtriangle is resolved with the locate tie-break).
double eval_hct_element(const std::array<Vec2, 3>& tri, const HctCoeffs& c,
                        const Bary& b);
Vec2 grad_hct_element(const std::array<Vec2, 3>& tri, const HctCoeffs& c,
                      const Bary& b);

// Globally C1 piecewise-cubic surrogate over a mesh.
class HctSurrogate {
 public:
  const TriMesh& mesh() const { return *mesh_; }
  const HctDofs& dofs(int elem) const { return dofs_[elem]; }
  const std::array<double, 3>& eccentricity(int elem) const {
    return ecc_[elem];
  }
  const HctCoeffs& coeffs(int elem) const { return coeffs_[elem]; }

  double value(int elem, const Bary& b) const;
  Vec2 gradient(int elem, const Bary& b) const;

  friend HctSurrogate build_surrogate(const DGField&, const SyncData&);

 private:
  const TriMesh* mesh_ = nullptr;
  std::vector<HctDofs> dofs_;
  std::vector<std::array<double, 3>> ecc_;
  std::vector<HctCoeffs> coeffs_;
};

// Builds the surrogate from synchronized data (sync must come from a field
// on the same mesh).
HctSurrogate build_surrogate(const DGField& field, const SyncData& sync);

}  // namespace hct

#endif
