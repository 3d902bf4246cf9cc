#include "hct/field.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hct/linalg.hpp"
#include "hct/parallel.hpp"

namespace hct {

namespace {

// monomial exponents in total-degree order: 1, xi, eta, xi^2, xi*eta, ...
constexpr int kMonoX[10] = {0, 1, 0, 2, 1, 0, 3, 2, 1, 0};
constexpr int kMonoY[10] = {0, 0, 1, 0, 1, 2, 0, 1, 2, 3};

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

void check_degree(int degree) {
  if (degree < 1 || degree > 3)
    throw Error("polynomial degree must be 1, 2 or 3");
}

}  // namespace

double reference_monomial_integral(int a, int b) {
  return factorial(a) * factorial(b) / factorial(a + b + 2);
}

ModalBasis::ModalBasis(int degree) : degree_(degree), size_(basis_size(degree)) {
  check_degree(degree);
  const int n = size_;
  // Gram matrix of the monomials from the exact moments; the factorization
  // runs in extended precision with refinement passes so the double-precision
  // basis carries an identity mass matrix to roundoff.
  std::vector<long double> gram(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      long double v = 1.0L;
      const int a = kMonoX[i] + kMonoX[j], b = kMonoY[i] + kMonoY[j];
      for (int k = 1; k <= a; ++k) v *= k;
      for (int k = 1; k <= b; ++k) v *= k;
      for (int k = 1; k <= a + b + 2; ++k) v /= k;
      gram[i * n + j] = v;
    }

  // C = L^-1 from G = L L^T
  auto orthonormalize = [n](const std::vector<long double>& g,
                            std::vector<long double>& c) {
    std::vector<long double> l(g);
    for (int j = 0; j < n; ++j) {
      long double d = l[j * n + j];
      for (int k = 0; k < j; ++k) d -= l[j * n + k] * l[j * n + k];
      if (!(d > 0.0L)) throw Error("modal basis: Gram matrix not SPD");
      d = std::sqrt(d);
      l[j * n + j] = d;
      for (int i = j + 1; i < n; ++i) {
        long double s = l[i * n + j];
        for (int k = 0; k < j; ++k) s -= l[i * n + k] * l[j * n + k];
        l[i * n + j] = s / d;
      }
    }
    c.assign(n * n, 0.0L);
    for (int i = 0; i < n; ++i) {
      c[i * n + i] = 1.0L / l[i * n + i];
      for (int j = i - 1; j >= 0; --j) {
        long double s = 0.0L;
        for (int k = j + 1; k <= i; ++k) s += l[k * n + j] * c[i * n + k];
        c[i * n + j] = -s / l[j * n + j];
      }
    }
  };

  std::vector<long double> basis;
  orthonormalize(gram, basis);
  for (int pass = 0; pass < 2; ++pass) {
    std::vector<long double> gb(n * n, 0.0L);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        long double s = 0.0L;
        for (int p = 0; p < n; ++p)
          for (int q = 0; q < n; ++q)
            s += basis[i * n + p] * basis[j * n + q] * gram[p * n + q];
        gb[i * n + j] = s;
      }
    std::vector<long double> fix;
    orthonormalize(gb, fix);
    std::vector<long double> next(n * n, 0.0L);
    for (int i = 0; i < n; ++i)
      for (int m = 0; m < n; ++m) {
        long double s = 0.0L;
        for (int p = 0; p < n; ++p) s += fix[i * n + p] * basis[p * n + m];
        next[i * n + m] = s;
      }
    basis = std::move(next);
  }
  coeff_.assign(n * n, 0.0);
  for (int i = 0; i < n * n; ++i) coeff_[i] = static_cast<double>(basis[i]);
}

const ModalBasis& ModalBasis::get(int degree) {
  check_degree(degree);
  static const ModalBasis k1(1), k2(2), k3(3);
  switch (degree) {
    case 1: return k1;
    case 2: return k2;
    default: return k3;
  }
}

void ModalBasis::eval(double xi, double eta, std::span<double> out) const {
  const int n = size_;
  double mono[10];
  for (int m = 0; m < n; ++m)
    mono[m] = std::pow(xi, kMonoX[m]) * std::pow(eta, kMonoY[m]);
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (int m = 0; m < n; ++m) s += coeff_[j * n + m] * mono[m];
    out[j] = s;
  }
}

void ModalBasis::eval_grad(double xi, double eta, std::span<double> out_xi,
                           std::span<double> out_eta) const {
  const int n = size_;
  double dxi[10], deta[10];
  for (int m = 0; m < n; ++m) {
    const int a = kMonoX[m], b = kMonoY[m];
    dxi[m] = a == 0 ? 0.0 : a * std::pow(xi, a - 1) * std::pow(eta, b);
    deta[m] = b == 0 ? 0.0 : b * std::pow(xi, a) * std::pow(eta, b - 1);
  }
  for (int j = 0; j < n; ++j) {
    double sx = 0.0, se = 0.0;
    for (int m = 0; m < n; ++m) {
      sx += coeff_[j * n + m] * dxi[m];
      se += coeff_[j * n + m] * deta[m];
    }
    out_xi[j] = sx;
    out_eta[j] = se;
  }
}

NodalLayout::NodalLayout(int degree) : degree_(degree) {
  check_degree(degree);
  const Bary v0{1, 0, 0}, v1{0, 1, 0}, v2{0, 0, 1};
  nodes_ = {v0, v1, v2};
  auto blend = [](const Bary& a, const Bary& b, double t) {
    return Bary{(1 - t) * a[0] + t * b[0], (1 - t) * a[1] + t * b[1],
                (1 - t) * a[2] + t * b[2]};
  };
  const Bary corners[3] = {v0, v1, v2};
  if (degree == 2) {
    for (int i = 0; i < 3; ++i)
      nodes_.push_back(blend(corners[(i + 1) % 3], corners[(i + 2) % 3], 0.5));
  } else if (degree == 3) {
    for (int i = 0; i < 3; ++i) {
      nodes_.push_back(blend(corners[(i + 1) % 3], corners[(i + 2) % 3], 1.0 / 3.0));
      nodes_.push_back(blend(corners[(i + 1) % 3], corners[(i + 2) % 3], 2.0 / 3.0));
    }
    nodes_.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
  }
  const int n = size();
  if (n != basis_size(degree)) throw Error("nodal layout size mismatch");
  const ModalBasis& basis = ModalBasis::get(degree);
  vander_.resize(n * n);
  std::vector<double> row(n);
  for (int i = 0; i < n; ++i) {
    basis.eval(nodes_[i][1], nodes_[i][2], row);
    for (int j = 0; j < n; ++j) vander_[i * n + j] = row[j];
  }
}

const NodalLayout& NodalLayout::get(int degree) {
  check_degree(degree);
  static const NodalLayout k1(1), k2(2), k3(3);
  switch (degree) {
    case 1: return k1;
    case 2: return k2;
    default: return k3;
  }
}

void NodalLayout::modal_to_nodal(std::span<const double> modal,
                                 std::span<double> nodal) const {
  const int n = size();
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += vander_[i * n + j] * modal[j];
    nodal[i] = s;
  }
}

void NodalLayout::nodal_to_modal(std::span<const double> nodal,
                                 std::span<double> modal) const {
  const int n = size();
  std::vector<double> rhs(nodal.begin(), nodal.end());
  std::vector<double> a(vander_);
  gauss_solve(n, std::move(a), rhs);
  for (int j = 0; j < n; ++j) modal[j] = rhs[j];
}

DGField::DGField(const TriMesh& mesh, int degree)
    : mesh_(&mesh), degree_(degree), block_(basis_size(degree)) {
  check_degree(degree);
  coeffs_.assign(static_cast<size_t>(mesh.triangle_count()) * block_, 0.0);
}

void DGField::check_elem(int elem) const {
  if (elem < 0 || elem >= mesh_->triangle_count())
    throw Error("element index " + std::to_string(elem) + " out of range");
}

double DGField::evaluate(int elem, const Bary& b) const {
  check_elem(elem);
  const ModalBasis& basis = ModalBasis::get(degree_);
  double psi[10];
  basis.eval(b[1], b[2], {psi, static_cast<size_t>(block_)});
  const auto c = coeffs(elem);
  double s = 0.0;
  for (int j = 0; j < block_; ++j) s += c[j] * psi[j];
  return s;
}

Vec2 DGField::gradient(int elem, const Bary& b) const {
  check_elem(elem);
  const ModalBasis& basis = ModalBasis::get(degree_);
  double gxi[10], geta[10];
  basis.eval_grad(b[1], b[2], {gxi, static_cast<size_t>(block_)},
                  {geta, static_cast<size_t>(block_)});
  const auto c = coeffs(elem);
  double sxi = 0.0, seta = 0.0;
  for (int j = 0; j < block_; ++j) {
    sxi += c[j] * gxi[j];
    seta += c[j] * geta[j];
  }
  // chain rule through the inverse of the affine element map
  const auto pts = mesh_->triangle_points(elem);
  const Vec2 e1 = pts[1] - pts[0];
  const Vec2 e2 = pts[2] - pts[0];
  const double det = e1.cross(e2);
  return {(sxi * e2.y - seta * e1.y) / det, (-sxi * e2.x + seta * e1.x) / det};
}

DGField project_analytic(const TriMesh& mesh, int degree,
                         const std::function<double(double, double)>& f,
                         const CompositeRule& rule) {
  check_degree(degree);
  if (rule.degree < 2 * degree)
    throw Error("project_analytic: quadrature degree " +
                std::to_string(rule.degree) + " too weak for 2k = " +
                std::to_string(2 * degree));
  DGField field(mesh, degree);
  const ModalBasis& basis = ModalBasis::get(degree);
  const int nb = field.block();
  const int nq = rule.size();
  // basis values at the rule points are element independent
  std::vector<double> psi(static_cast<size_t>(nq) * nb);
  for (int q = 0; q < nq; ++q)
    basis.eval(rule.points[q][1], rule.points[q][2],
               {psi.data() + static_cast<size_t>(q) * nb, static_cast<size_t>(nb)});

  parallel_for(mesh.triangle_count(), [&](int t) {
    const auto pts = mesh.triangle_points(t);
    double m[100] = {0};
    double rhs[10] = {0};
    for (int q = 0; q < nq; ++q) {
      const Bary& l = rule.points[q];
      const double w = rule.weights[q];
      const Vec2 x = pts[0] * l[0] + pts[1] * l[1] + pts[2] * l[2];
      const double fv = f(x.x, x.y);
      const double* p = psi.data() + static_cast<size_t>(q) * nb;
      for (int i = 0; i < nb; ++i) {
        rhs[i] += w * fv * p[i];
        for (int j = i; j < nb; ++j) m[i * nb + j] += w * p[i] * p[j];
      }
    }
    for (int i = 0; i < nb; ++i)
      for (int j = 0; j < i; ++j) m[i * nb + j] = m[j * nb + i];
    std::vector<double> a(m, m + nb * nb);
    cholesky_solve(nb, std::move(a), {rhs, static_cast<size_t>(nb)});
    auto c = field.coeffs(t);
    for (int j = 0; j < nb; ++j) c[j] = rhs[j];
  });
  return field;
}

TestFunction test_function(const std::string& name) {
  if (name == "u1") {
    return {"u1",
            [](double x, double y) {
              return std::exp(-1.5 * ((x - 10) * (x - 10) + (y - 10) * (y - 10)));
            },
            Domain{5, 15, 5, 15}};
  }
  if (name == "u2") {
    return {"u2",
            [](double x, double y) {
              return std::tanh(100.0 * (y + 0.3 * std::sin(-2.0 * x)));
            },
            Domain{-1, 1, -1, 1}};
  }
  if (name == "u3") {
    return {"u3",
            [](double x, double y) {
              return 12.0 * std::exp(-0.3 * ((x - 10) * (x - 10) + (y - 10) * (y - 10))) +
                     std::sin(2.0 * x) * std::sin(2.0 * y);
            },
            Domain{5, 15, 5, 15}};
  }
  throw Error("unknown test function '" + name + "' (known: u1, u2, u3)");
}

DGField read_field(const std::string& path, const TriMesh& mesh) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open field file: " + path);
  std::string line;
  int lineno = 0;
  auto next_line = [&]() -> std::string& {
    if (!std::getline(in, line))
      throw Error(path + ":" + std::to_string(lineno + 1) + ": unexpected end of file");
    ++lineno;
    return line;
  };
  if (next_line() != "dg-field v1")
    throw Error(path + ":1: expected header 'dg-field v1'");
  int degree = 0;
  if (std::sscanf(next_line().c_str(), "%d", &degree) != 1)
    throw Error(path + ":" + std::to_string(lineno) + ": bad degree");
  long ne = 0;
  if (std::sscanf(next_line().c_str(), "%ld", &ne) != 1)
    throw Error(path + ":" + std::to_string(lineno) + ": bad element count");
  if (ne != mesh.triangle_count())
    throw Error(path + ": element count " + std::to_string(ne) +
                " does not match mesh (" + std::to_string(mesh.triangle_count()) + ")");
  DGField field(mesh, degree);
  const int nb = field.block();
  for (long t = 0; t < ne; ++t) {
    std::istringstream row(next_line());
    auto c = field.coeffs(static_cast<int>(t));
    for (int j = 0; j < nb; ++j)
      if (!(row >> c[j]))
        throw Error(path + ":" + std::to_string(lineno) + ": bad coefficient row");
  }
  return field;
}

void write_field(const DGField& field, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open field file for writing: " + path);
  out << "dg-field v1\n" << field.degree() << "\n"
      << field.mesh().triangle_count() << "\n";
  char buf[32];
  for (int t = 0; t < field.mesh().triangle_count(); ++t) {
    const auto c = field.coeffs(t);
    for (int j = 0; j < field.block(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", c[j]);
      out << buf << (j + 1 == field.block() ? "\n" : " ");
    }
  }
  if (!out) throw Error("failed writing field file: " + path);
}

}  // namespace hct
