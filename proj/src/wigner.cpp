#include "ghat/wigner.hpp"

#include <cmath>

namespace ghat {

EulerZYZ euler_zyz(const Eigen::Matrix2cd& g) {
  const cplx a = g(0, 0), b = g(0, 1);
  EulerZYZ e;
  e.beta = 2.0 * std::atan2(std::abs(b), std::abs(a));
  // a = e^{-i(alpha+gamma)/2} cos(beta/2), -b = e^{-i(alpha-gamma)/2} sin(beta/2)
  const double p = (std::abs(a) > 0.0) ? -2.0 * std::arg(a) : 0.0;
  const double q = (std::abs(b) > 0.0) ? -2.0 * std::arg(-b) : 0.0;
  e.alpha = 0.5 * (p + q);
  e.gamma = 0.5 * (p - q);
  return e;
}

namespace {

// sqrt of binomial C(n, k) via log-gamma; n stays modest (<= 4*band) so this
// is accurate to ~1e-14 relative.
double sqrt_binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return std::exp(0.5 * (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
}

// d^j_{m',m} at j = max(|m'|,|m|), the recursion seed. Arguments in
// half-integer units: L = 2j, M2 = 2m', N2 = 2m.
double d_seed(int L, int M2, int N2, double c, double s) {
  // c = cos(beta/2), s = sin(beta/2)
  if (std::abs(N2) < std::abs(M2)) {
    // d_{m',m} = (-1)^{m'-m} d_{m,m'}
    const int diff = (M2 - N2) / 2;
    return ((diff & 1) ? -1.0 : 1.0) * d_seed(L, N2, M2, c, s);
  }
  if (N2 >= 0) {
    // m = j: sqrt(C(2j, j+m')) c^{j+m'} s^{j-m'}
    const int k = (L + M2) / 2;
    return sqrt_binom(L, k) * std::pow(c, k) * std::pow(s, L - k);
  }
  // m = -j: sqrt(C(2j, j-m')) c^{j-m'} (-s)^{j+m'}
  const int k = (L - M2) / 2;
  const int sp = (L + M2) / 2;
  return sqrt_binom(L, k) * std::pow(c, k) * ((sp & 1) ? -1.0 : 1.0) * std::pow(s, sp);
}

}  // namespace

std::vector<Eigen::MatrixXd> wigner_d_all(int lmax, double beta) {
  std::vector<Eigen::MatrixXd> d;
  wigner_d_all(lmax, beta, d);
  return d;
}

void wigner_d_all(int lmax, double beta, std::vector<Eigen::MatrixXd>& d) {
  d.resize(lmax + 1);
  const double cb = std::cos(beta);
  const double c = std::cos(0.5 * beta), s = std::sin(0.5 * beta);
  for (int l = 0; l <= lmax; ++l) {
    d[l].resize(l + 1, l + 1);
    const double j = 0.5 * l;
    for (int r = 0; r <= l; ++r) {
      const double mp = j - r;  // m'
      const int M2 = l - 2 * r;
      for (int col = 0; col <= l; ++col) {
        const double m = j - col;
        const int N2 = l - 2 * col;
        const int lmin = std::max(std::abs(M2), std::abs(N2));
        if (l == lmin) {
          d[l](r, col) = d_seed(l, M2, N2, c, s);
        } else {
          // three-term recursion in j at fixed (m', m)
          const double aj = std::sqrt((j * j - mp * mp) * (j * j - m * m)) / j;
          const double jm = j - 1.0;
          const double prev = d[l - 2](r - 1, col - 1);
          double prev2 = 0.0;
          double ajm = 0.0;
          if (l - 4 >= lmin) {
            ajm = std::sqrt((jm * jm - mp * mp) * (jm * jm - m * m)) / jm;
            prev2 = d[l - 4](r - 2, col - 2);
          }
          const double mid = (jm * j > 0) ? mp * m / (jm * j) : 0.0;
          d[l](r, col) = ((2.0 * jm + 1.0) * (cb - mid) * prev - ajm * prev2) / aj;
        }
      }
    }
  }
}

Mat wigner_D(const Eigen::MatrixXd& dm, double alpha, double gamma) {
  const int n = static_cast<int>(dm.rows());
  const int l = n - 1;
  const double j = 0.5 * l;
  Mat D(n, n);
  const cplx I(0.0, 1.0);
  CVec ea(n), eg(n);
  for (int r = 0; r < n; ++r) {
    const double m = j - r;
    ea(r) = std::exp(-I * (m * alpha));
    eg(r) = std::exp(-I * (m * gamma));
  }
  for (int r = 0; r < n; ++r)
    for (int col = 0; col < n; ++col) D(r, col) = ea(r) * dm(r, col) * eg(col);
  return D;
}

void spin_matrices(long l, Mat& jx, Mat& jy, Mat& jz) {
  const long n = l + 1;
  const double j = 0.5 * l;
  jx = Mat::Zero(n, n);
  jy = Mat::Zero(n, n);
  jz = Mat::Zero(n, n);
  for (long r = 0; r < n; ++r) {
    const double m = j - r;
    jz(r, r) = m;
    if (r + 1 < n) {
      // J+ |j,m-1> = sqrt(j(j+1) - (m-1)m) |j,m>
      const double mp = m - 1.0;
      const double cp = std::sqrt(j * (j + 1.0) - mp * (mp + 1.0));
      jx(r, r + 1) += 0.5 * cp;
      jy(r, r + 1) += cplx(0.0, -0.5) * cp;
      jx(r + 1, r) += 0.5 * cp;
      jy(r + 1, r) += cplx(0.0, 0.5) * cp;
    }
  }
}

Eigen::MatrixXd clebsch_half(long l) {
  const long dp = l + 1;         // dim of spin j = l/2
  const long dt = 2 * dp;        // tensor dimension
  Eigen::MatrixXd U = Eigen::MatrixXd::Zero(dt, dt);
  const double j = 0.5 * l;
  const double denom = 2.0 * j + 1.0;
  // tensor column index: (a, r) -> a*dp + r, a = 0 (+1/2), 1 (-1/2); m = j - r
  auto col_of = [&](int a, double m) -> long {
    const double r = j - m;
    const long ri = static_cast<long>(std::lround(r));
    if (ri < 0 || ri >= dp) return -1;
    return a * dp + ri;
  };
  // upper block J = j + 1/2 (rows 0..l+1), M = J - row
  const double J1 = j + 0.5;
  for (long row = 0; row < l + 2; ++row) {
    const double M = J1 - row;
    const long cup = col_of(0, M - 0.5);
    const long cdn = col_of(1, M + 0.5);
    if (cup >= 0) U(row, cup) = std::sqrt((j + M + 0.5) / denom);
    if (cdn >= 0) U(row, cdn) = std::sqrt((j - M + 0.5) / denom);
  }
  // lower block J = j - 1/2 (absent for l = 0)
  if (l >= 1) {
    const double J2 = j - 0.5;
    for (long row = 0; row < l; ++row) {
      const double M = J2 - row;
      const long cup = col_of(0, M - 0.5);
      const long cdn = col_of(1, M + 0.5);
      if (cup >= 0) U(l + 2 + row, cup) = std::sqrt((j - M + 0.5) / denom);
      if (cdn >= 0) U(l + 2 + row, cdn) = -std::sqrt((j + M + 0.5) / denom);
    }
  }
  return U;
}

}  // namespace ghat
