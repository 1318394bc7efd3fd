#pragma once

#include <compare>
#include <vector>

#include "ghat/group.hpp"
#include "ghat/types.hpp"

namespace ghat {

// Canonical irrep label, flattened like GroupElement: one integer per circle
// coordinate, one l in N0 per SU2 leaf. Equivalent irreps get equal labels by
// construction.
struct IrrepLabel {
  std::vector<long> torus;
  std::vector<long> su2;

  friend auto operator<=>(const IrrepLabel&, const IrrepLabel&) = default;
  bool trivial() const;
  std::string to_string() const;
};

IrrepLabel trivial_label(const GroupDescriptor& G);

int irrep_dim(const GroupDescriptor& G, const IrrepLabel& p);

// lambda_pi for the fixed metric: sum of l_k^2 over circles plus l(l+2)/4 per
// SU2 leaf.
double casimir_eigenvalue(const GroupDescriptor& G, const IrrepLabel& p);
double casimir_eigenvalue(const IrrepLabel& p);

// Unitary matrix of pi at g. SU2 leaves go through the Wigner-D evaluation,
// torus leaves are characters.
Mat evaluate_irrep(const GroupDescriptor& G, const IrrepLabel& p, const GroupElement& g);

// pi(X_j), skew-Hermitian, 0-based generator index in the fixed Lie basis.
Mat infinitesimal(const GroupDescriptor& G, const IrrepLabel& p, int j);

// pi(X^beta) = pi(X_1)^{b_1} ... pi(X_n)^{b_n}.
Mat enveloping_monomial(const GroupDescriptor& G, const IrrepLabel& p, const std::vector<int>& beta);

// Fundamental set: +-unit characters per circle, l=1 per SU2 leaf (lifted by
// the trivial label elsewhere), in leaf order.
std::vector<IrrepLabel> fundamental_set(const GroupDescriptor& G);

struct TensorDecomposition {
  IrrepLabel left;   // fundamental factor
  IrrepLabel right;
  std::vector<IrrepLabel> summands;  // multiplicity-free for these backends
  Mat intertwiner;   // U with U (phi x pi)(g) U^* = blockdiag(rho(g))
};

TensorDecomposition decompose_fund_tensor(const GroupDescriptor& G, const IrrepLabel& phi,
                                          const IrrepLabel& pi);

// All labels with lambda_pi <= lambda_max, sorted by (lambda, label).
std::vector<IrrepLabel> enumerate_band(const GroupDescriptor& G, double lambda_max);

// Largest per-leaf label magnitude within the band (used to size quadratures).
int label_bound(const GroupDescriptor& G, double lambda_max);

bool canonical_less(const IrrepLabel& a, const IrrepLabel& b);

}  // namespace ghat
