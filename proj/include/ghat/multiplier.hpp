#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ghat/sobolev.hpp"

namespace ghat {

struct ScalarSpectralFunction {
  std::function<cplx(double)> evaluator;
  std::string description;
};

// Smooth bump supported in (0,1), used by the scaling probes.
ScalarSpectralFunction unit_bump();

// Littlewood-Paley family eta(lambda) = chi(lambda/2) - chi(lambda) from a
// smooth cutoff chi (1 on (-inf,1], 0 on [2,inf)); supp eta in (1,4) and
// sum_j eta(2^-j lambda) = 1 on the covered dyadic span.
enum class CutoffShape { Bump, Smoothstep };
struct DyadicPartition {
  CutoffShape shape = CutoffShape::Bump;
  std::function<double(double)> chi;
  double eta(double lambda) const { return chi(0.5 * lambda) - chi(lambda); }
};
DyadicPartition make_partition(CutoffShape shape);

Field heat_symbol(const DualPtr& dual, double t);

// Inverse transform of the heat symbol; checks the spectral truncation tail
// sum_{lambda > Lambda} d^2 e^{-t lambda} < 1e-12 and throws when t is too
// small for the band.
GridFunction heat_kernel(const DualPtr& dual, const RulePtr& rule, double t);
double heat_tail(const GroupDescriptor& G, double lambda_max, double t);

// sum_k w_k |x_k|^s p_t(x_k)
double heat_moment(const GridFunction& pt, double s);

struct BlockValue {
  int j;
  double value;
};

struct HormanderReport {
  double value = 0.0;  // linf + sup over admissible blocks
  double linf = 0.0;
  double s = 0.0;
  std::vector<BlockValue> blocks;    // r = 2^{j/2}: r^{s-n/2} * Hdot^s(sigma eta_j)
  std::vector<int> excluded_blocks;  // straddle the margin-adjusted band edge
};

// ||sigma||_{M_s,eta} = linf + sup_j 2^{(j/2)(s-n/2)} || sigma eta(2^-j L) ||_{Hdot^s},
// integer s, diff-side norms; blocks not fully inside the depth-s interior are
// excluded and reported.
HormanderReport hormander_norm(const Field& sigma, int s, const DyadicPartition& eta);

struct MihlinReport {
  double value = 0.0;               // max over |alpha| <= smax, interior pi
  int smax = 0;                     // [n/2] + 1
  std::vector<double> per_order;    // max over |alpha| = k of (1+lambda)^{k/2} ||Delta^alpha||_op
};
MihlinReport mihlin_constant(const Field& sigma);

struct MarcinkiewiczReport {
  double value = 0.0;  // max over blocks of 2^{-j(n-s0)/2} l1s(sigma 1_block)
  double linf = 0.0;
  int s0 = 1;
  std::vector<BlockValue> blocks;
  std::vector<int> excluded_blocks;
};
MarcinkiewiczReport marcinkiewicz_constant(const Field& sigma, int s0);

// Least-squares slope of log ||f(t L)||_{Hdot^s} against log t. Builds its own
// dual large enough that the compactly supported f(t.) is exactly band-limited
// for every t in the grid.
struct SlopeFit {
  double slope = 0.0;
  std::vector<double> t;
  std::vector<double> value;
};
SlopeFit heat_scaling_probe(const GroupDescriptor& G, const ScalarSpectralFunction& f, int s,
                            const std::vector<double>& t_grid);

// hormander_norm of lambda^{i a} (set to 1 at the trivial rep) over a grid of
// exponents a, plus the scalar local-uniform Sobolev majorant it is known to
// be controlled by.
struct ImaginaryPowerRow {
  double alpha;
  double hormander;
  double lu_sobolev;  // ||lambda^{i alpha}||_{l.u. H^{s'}} via 1-D quadrature
};
std::vector<ImaginaryPowerRow> imaginary_power_probe(const DualPtr& dual, int s,
                                                     const std::vector<double>& alphas,
                                                     const DyadicPartition& eta);

// max over the family of ||Op(sigma) f||_p / ||f||_p (quadrature norms)
double lp_ratio_probe(const Field& sigma, double p, const std::vector<GridFunction>& family,
                      const DualPtr& dual);

// least-squares slope of log y against log x
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace ghat
