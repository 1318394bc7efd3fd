#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ghat {

using cplx = std::complex<double>;
using Mat  = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

// Thrown on contract violations (mismatched groups, insufficient band/margin,
// bad input files). The CLI maps these to exit code 2.
class error : public std::runtime_error {
public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

inline double hs_norm_sq(const Mat& m) { return m.squaredNorm(); }

// Largest singular value.
double operator_norm(const Mat& m);

// Sum of singular values (Schatten-1).
double trace_norm(const Mat& m);

}  // namespace ghat
