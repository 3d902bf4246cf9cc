#ifndef HCT_LINALG_HPP
#define HCT_LINALG_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace hct {

// Small dense solvers for the local element systems (n <= 33 throughout).
// Matrices are row-major.

// Cholesky solve of an SPD system in place. Throws Error if not SPD.
void cholesky_solve(int n, std::vector<double> a, std::span<double> b);

// Gaussian elimination with partial pivoting. Throws Error on singularity.
void gauss_solve(int n, std::vector<double> a, std::span<double> b);

// Least-squares solution of an m x n system (m >= n) via Householder QR.
// Returns the residual 2-norm. A and b are consumed.
double householder_lstsq(int m, int n, std::vector<double> a,
                         std::vector<double> b, std::span<double> x);

// Compensated (Kahan) summation in index order.
double kahan_sum(std::span<const double> values);

}  // namespace hct

#endif
