#pragma once

#include "ghat/fourier.hpp"

namespace ghat {

enum class WeightKind {
  Q1,      // sum_phi ||phi(x) - I||_HS^2
  Qs,      // multi-index weight, integer s
  Q1Pow,   // q_1(x)^s, any real s >= 0
  DistPow  // |x|^{2s}
};

struct WeightTable {
  RulePtr rule;
  WeightKind kind;
  double s = 1.0;
  RVec values;
};

WeightTable q1_values(const RulePtr& rule);
WeightTable qs_values(int s, const RulePtr& rule);
WeightTable weight_table(const RulePtr& rule, WeightKind kind, double s);

// Difference-operator side: sqrt( sum_{|alpha|=s} sum_pi d_pi ||Delta^alpha
// sigma(pi)||_HS^2 ) over the interior band. Requires margin >= s for the
// band sum to equal the full-dual sum.
double hs_norm_diffside(const Field& sigma, int s);

// Kernel side: || F^-1 sigma ||_{L^2(weight dx)} by quadrature.
double hs_norm_kernelside(const Field& sigma, double s, WeightKind kind);

// Building blocks for batched use: the weighted quadrature L^2 norm of an
// already synthesized function.
double weighted_l2_norm(const GridFunction& f, const WeightTable& w);

// Same, recomputed on a refined rule; gap estimates the quadrature error for
// non-band-limited weights (|x|^{2s}, noninteger q_1 powers).
struct NormWithEstimate {
  double value = 0.0;
  double quadrature_error_estimate = 0.0;
};
NormWithEstimate hs_norm_kernelside_refined(const Field& sigma, double s, WeightKind kind);

// max_{|alpha|=s} sup_pi ||Delta^alpha sigma(pi)||_op; s = 0 is linf_norm.
double linfs_norm(const Field& sigma, int s);

// sum_{|alpha|=s0} sum_pi d_pi Tr|Delta^alpha sigma(pi)|.
double l1s_norm(const Field& sigma, int s0);

// max over nodes of |x_k|^{s0} |f(x_k)|.
double weighted_sup(const GridFunction& f, int s0);

}  // namespace ghat
