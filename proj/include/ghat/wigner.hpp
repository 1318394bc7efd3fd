#pragma once

#include <vector>

#include "ghat/types.hpp"

namespace ghat {

// ZYZ Euler angles of g in SU(2): g = Rz(alpha) Ry(beta) Rz(gamma) with
// R_axis(t) = exp(-i t sigma_axis / 2), beta in [0, pi]. The extraction is
// exact (the reconstructed product equals g to rounding, including the sign
// of the half-angle cover).
struct EulerZYZ {
  double alpha, beta, gamma;
};
EulerZYZ euler_zyz(const Eigen::Matrix2cd& g);

// Small Wigner matrices d^j(beta) for all 2j = 0..lmax, computed by the
// three-term recursion in j (Jacobi-polynomial recurrence); rows/columns are
// indexed by m' = j..-j, m = j..-j descending. Stable in double precision
// well past l = 64.
std::vector<Eigen::MatrixXd> wigner_d_all(int lmax, double beta);
// Allocation-free variant for hot loops; `out` keeps its shape across calls.
void wigner_d_all(int lmax, double beta, std::vector<Eigen::MatrixXd>& out);

// Full Wigner matrix D^j with l = 2j from precomputed d^j(beta):
// D_{m'm} = e^{-i m' alpha} d_{m'm} e^{-i m gamma}.
Mat wigner_D(const Eigen::MatrixXd& d_small, double alpha, double gamma);

// Spin-l/2 angular momentum matrices (Jx, Jy, Jz) in the same basis.
void spin_matrices(long l, Mat& jx, Mat& jy, Mat& jz);

// Unitary Clebsch-Gordan matrix for (spin 1/2) x (spin j), l = 2j: rows are
// the coupled basis, block J = j+1/2 first then J = j-1/2 (absent for l = 0),
// columns the tensor basis (a, m) with a the spin-1/2 index. Real
// ladder-consistent coefficients.
Eigen::MatrixXd clebsch_half(long l);

}  // namespace ghat
