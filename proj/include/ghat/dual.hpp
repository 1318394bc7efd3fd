#pragma once

#include <map>
#include <memory>
#include <vector>

#include "ghat/rep.hpp"

namespace ghat {

// The truncated dual G^_Lambda = { pi : lambda_pi <= Lambda } with cached
// dimensions, Casimir eigenvalues, fundamental tensor decompositions and the
// interior-depth table used by difference operators. Immutable after
// construction; shared across symbols.
class Dual {
public:
  struct Decomp {
    std::vector<int> summands;        // index into the dual, -1 if outside band
    std::vector<IrrepLabel> labels;   // summand labels (also for out-of-band ones)
    std::vector<int> dims;
    Mat U;                            // intertwiner of phi (x) pi
  };

  static std::shared_ptr<const Dual> make(const GroupDescriptor& G, double lambda_max);

  const GroupDescriptor& group() const { return group_; }
  double lambda_max() const { return lambda_max_; }
  int size() const { return static_cast<int>(labels_.size()); }
  const IrrepLabel& label(int p) const { return labels_[p]; }
  int dim(int p) const { return dims_[p]; }
  double casimir(int p) const { return casimirs_[p]; }
  int index_of(const IrrepLabel& l) const;  // -1 if absent
  int trivial_index() const { return trivial_; }

  int fund_count() const { return static_cast<int>(fund_.size()); }
  const IrrepLabel& fundamental(int f) const { return fund_[f]; }
  int fund_dim(int f) const { return fund_dims_[f]; }
  const std::vector<IrrepLabel>& fundamentals() const { return fund_; }

  const Decomp& decomp(int f, int p) const { return decomp_[f][p]; }

  // Largest s such that every tensor word of length <= s applied to pi stays
  // inside the band.
  int depth(int p) const { return depth_[p]; }
  int max_depth() const { return max_depth_; }

  // Smallest lambda over labels with depth < s (the shallow shell); +inf when
  // all labels have depth >= s.
  double lambda_interior_edge(int s) const;

  // Largest one-step Casimir jump |lambda_rho - lambda_pi| over the band.
  double max_step() const { return max_step_; }

  long sum_dim_sq() const { return sum_dim_sq_; }
  // offset of pi's d x d block in the Peter-Weyl coefficient vector
  long pw_offset(int p) const { return pw_offset_[p]; }

  // Matrices of all irreps at g, in label order (batched Wigner recursion).
  std::vector<Mat> evaluate_all(const GroupElement& g) const;

  // Allocation-free evaluation for hot loops: one workspace per thread.
  struct EvalWorkspace {
    std::vector<std::vector<Eigen::MatrixXd>> dtabs;  // per su2 leaf
    std::vector<std::vector<cplx>> pa, pg;            // phase tables e^{-im alpha/gamma}
    std::vector<Mat> mats;                            // per label
    CVec pw;                                          // flattened, sqrt(d)-scaled
    Mat scratch;
  };
  void init_workspace(EvalWorkspace& ws) const;
  void evaluate_all(const GroupElement& g, EvalWorkspace& ws) const;  // fills ws.mats
  void pw_vector(const GroupElement& g, EvalWorkspace& ws) const;     // fills ws.pw

  // Flattened Peter-Weyl vector: for each pi, the d_pi^2 entries of pi(g)
  // in row-major order, scaled by sqrt(d_pi) (an orthonormal family).
  CVec pw_vector(const GroupElement& g) const;

  Mat generator(int p, int j) const;  // cached pi(X_j)

private:
  GroupDescriptor group_;
  double lambda_max_ = 0.0;
  std::vector<IrrepLabel> labels_;
  std::vector<int> dims_;
  std::vector<double> casimirs_;
  std::map<IrrepLabel, int> index_;
  int trivial_ = -1;
  std::vector<IrrepLabel> fund_;
  std::vector<int> fund_dims_;
  std::vector<std::vector<Decomp>> decomp_;  // [fund][label]
  std::vector<int> depth_;
  int max_depth_ = 0;
  double max_step_ = 0.0;
  long sum_dim_sq_ = 0;
  std::vector<long> pw_offset_;
  mutable std::vector<std::vector<Mat>> gens_;  // lazily filled, guarded in cpp
};

using DualPtr = std::shared_ptr<const Dual>;

}  // namespace ghat
