#ifndef HCT_FIELD_HPP
#define HCT_FIELD_HPP

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hct/core.hpp"
#include "hct/mesh.hpp"
#include "hct/quadrature.hpp"

namespace hct {

inline int basis_size(int degree) { return (degree + 1) * (degree + 2) / 2; }

// Orthonormal polynomial basis on the reference triangle: Gram-factor
// orthonormalization of the monomials {1, xi, eta, xi^2, ...} against the
// exact monomial moments, with one refinement pass, so the reference mass
// matrix is the identity to machine precision.
class ModalBasis {
 public:
  static const ModalBasis& get(int degree);  // degree in 1..3, cached

  int degree() const { return degree_; }
  int size() const { return size_; }

  // values of all basis functions at reference point (xi, eta)
  void eval(double xi, double eta, std::span<double> out) const;
  // reference-coordinate gradients (d/dxi, d/deta)
  void eval_grad(double xi, double eta, std::span<double> out_xi,
                 std::span<double> out_eta) const;

 private:
  explicit ModalBasis(int degree);
  int degree_;
  int size_;
  std::vector<double> coeff_;  // coeff_[j*size_+m]: psi_j in monomial basis
};

// Exact integral of xi^a * eta^b over the reference triangle.
double reference_monomial_integral(int a, int b);

// Interpolation node layout in barycentric coordinates: vertices; for k=2
// also the three edge midpoints; for k=3 two equispaced nodes per edge plus
// the centroid. Edge nodes are listed per edge i (the edge opposite vertex i).
class NodalLayout {
 public:
  static const NodalLayout& get(int degree);

  int degree() const { return degree_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<Bary>& nodes() const { return nodes_; }

  // modal coefficients -> values at the nodes
  void modal_to_nodal(std::span<const double> modal,
                      std::span<double> nodal) const;
  // values at the nodes -> modal coefficients
  void nodal_to_modal(std::span<const double> nodal,
                      std::span<double> modal) const;

 private:
  explicit NodalLayout(int degree);
  int degree_;
  std::vector<Bary> nodes_;
  std::vector<double> vander_;  // V[i*n+j] = psi_j(node_i)
};

// Piecewise-polynomial field of degree k on a TriMesh, discontinuous across
// edges; per-element modal coefficients.
class DGField {
 public:
  DGField(const TriMesh& mesh, int degree);

  const TriMesh& mesh() const { return *mesh_; }
  int degree() const { return degree_; }
  int block() const { return block_; }

  std::span<double> coeffs(int elem) {
    return {coeffs_.data() + static_cast<size_t>(elem) * block_,
            static_cast<size_t>(block_)};
  }
  std::span<const double> coeffs(int elem) const {
    return {coeffs_.data() + static_cast<size_t>(elem) * block_,
            static_cast<size_t>(block_)};
  }

  double evaluate(int elem, const Bary& b) const;
  Vec2 gradient(int elem, const Bary& b) const;  // physical x,y derivatives

 private:
  void check_elem(int elem) const;
  const TriMesh* mesh_;
  int degree_;
  int block_;
  std::vector<double> coeffs_;
};

// Element-wise L2 projection of an analytic function with the given
// quadrature rule (rule degree must be >= 2k).
DGField project_analytic(const TriMesh& mesh, int degree,
                         const std::function<double(double, double)>& f,
                         const CompositeRule& rule);

// Test functions of the study suite with their domains.
struct TestFunction {
  std::string name;
  std::function<double(double, double)> f;
  Domain domain;
};
TestFunction test_function(const std::string& name);  // u1, u2, u3

// Field file format: "dg-field v1", degree, element count, then one line of
// modal coefficients per element at full precision.
DGField read_field(const std::string& path, const TriMesh& mesh);
void write_field(const DGField& field, const std::string& path);

}  // namespace hct

#endif
