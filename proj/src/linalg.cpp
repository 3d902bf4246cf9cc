#include "hct/linalg.hpp"

#include <cmath>
#include <cstdlib>

#include "hct/core.hpp"

namespace hct {

void cholesky_solve(int n, std::vector<double> a, std::span<double> b) {
  // a -> lower factor L, in place
  for (int j = 0; j < n; ++j) {
    double d = a[j * n + j];
    for (int k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
    if (!(d > 0.0)) throw Error("cholesky_solve: matrix not positive definite");
    d = std::sqrt(d);
    a[j * n + j] = d;
    for (int i = j + 1; i < n; ++i) {
      double s = a[i * n + j];
      for (int k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
      a[i * n + j] = s / d;
    }
  }
  // forward then backward substitution
  for (int i = 0; i < n; ++i) {
    double s = b[i];
    for (int k = 0; k < i; ++k) s -= a[i * n + k] * b[k];
    b[i] = s / a[i * n + i];
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int k = i + 1; k < n; ++k) s -= a[k * n + i] * b[k];
    b[i] = s / a[i * n + i];
  }
}

void gauss_solve(int n, std::vector<double> a, std::span<double> b) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int i = c + 1; i < n; ++i)
      if (std::fabs(a[perm[i] * n + c]) > std::fabs(a[perm[piv] * n + c])) piv = i;
    std::swap(perm[c], perm[piv]);
    const int pr = perm[c];
    if (a[pr * n + c] == 0.0) throw Error("gauss_solve: singular matrix");
    for (int i = c + 1; i < n; ++i) {
      const int ir = perm[i];
      const double m = a[ir * n + c] / a[pr * n + c];
      a[ir * n + c] = 0.0;
      for (int j = c + 1; j < n; ++j) a[ir * n + j] -= m * a[pr * n + j];
      b[ir] -= m * b[pr];
    }
  }
  std::vector<double> x(n);
  for (int i = n - 1; i >= 0; --i) {
    const int ir = perm[i];
    double s = b[ir];
    for (int j = i + 1; j < n; ++j) s -= a[ir * n + j] * x[j];
    x[i] = s / a[ir * n + i];
  }
  for (int i = 0; i < n; ++i) b[i] = x[i];
}

double householder_lstsq(int m, int n, std::vector<double> a,
                         std::vector<double> b, std::span<double> x) {
  std::vector<double> v(m);
  for (int c = 0; c < n; ++c) {
    double nrm = 0.0;
    for (int i = c; i < m; ++i) nrm += a[i * n + c] * a[i * n + c];
    nrm = std::sqrt(nrm);
    if (nrm == 0.0) throw Error("householder_lstsq: rank-deficient column");
    const double alpha = a[c * n + c] >= 0.0 ? -nrm : nrm;
    double vnorm2 = 0.0;
    for (int i = c; i < m; ++i) {
      v[i] = a[i * n + c];
      if (i == c) v[i] -= alpha;
      vnorm2 += v[i] * v[i];
    }
    if (vnorm2 == 0.0) continue;
    for (int j = c; j < n; ++j) {
      double s = 0.0;
      for (int i = c; i < m; ++i) s += v[i] * a[i * n + j];
      const double f = 2.0 * s / vnorm2;
      for (int i = c; i < m; ++i) a[i * n + j] -= f * v[i];
    }
    double s = 0.0;
    for (int i = c; i < m; ++i) s += v[i] * b[i];
    const double f = 2.0 * s / vnorm2;
    for (int i = c; i < m; ++i) b[i] -= f * v[i];
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= a[i * n + j] * x[j];
    if (a[i * n + i] == 0.0) throw Error("householder_lstsq: singular R");
    x[i] = s / a[i * n + i];
  }
  double res2 = 0.0;
  for (int i = n; i < m; ++i) res2 += b[i] * b[i];
  return std::sqrt(res2);
}

double kahan_sum(std::span<const double> values) {
  double sum = 0.0, comp = 0.0;
  for (double v : values) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace hct
