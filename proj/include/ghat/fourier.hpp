#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "ghat/field.hpp"
#include "ghat/group.hpp"

namespace ghat {

using RulePtr = std::shared_ptr<const QuadratureRule>;

// f: G -> C sampled on the quadrature nodes.
struct GridFunction {
  RulePtr rule;
  CVec values;

  GridFunction() = default;
  GridFunction(RulePtr r, CVec v);
};

GridFunction make_grid(const RulePtr& rule,
                       const std::function<cplx(const GroupElement&)>& f);

// f^(pi) = sum_k w_k f(x_k) pi(x_k)^*, for every pi in the dual. Requires the
// rule's exactness band to cover the dual's label bound (else the transform
// of band-limited data would be inexact).
Field forward_transform(const GridFunction& f, const DualPtr& dual);

// f(x_k) = sum_pi d_pi Tr(pi(x_k) sigma(pi)); only valid entries contribute.
GridFunction inverse_transform(const Field& sigma, const RulePtr& rule);
// One pass over the nodes for many fields on the same dual.
std::vector<GridFunction> inverse_transform_batch(const std::vector<Field>& sigmas,
                                                  const RulePtr& rule);

double plancherel_norm_sq(const Field& sigma);  // alias of l2_norm_sq

// F(f * g) = g^ f^, computed coefficientwise.
Field convolve(const GridFunction& f, const GridFunction& g, const DualPtr& dual);

// Direct quadrature convolution sample (f*g)(x) = sum_k w_k f(y_k) g(y_k^-1 x)
// from closed-form integrands; O(nodes) per call, an oracle on small grids.
cplx convolve_direct_at(const std::function<cplx(const GroupElement&)>& f,
                        const std::function<cplx(const GroupElement&)>& g, const RulePtr& rule,
                        const GroupElement& x);

// Op(sigma) f = inverse(sigma * forward(f)).
GridFunction apply(const Field& sigma, const GridFunction& f, const DualPtr& dual);

// quadrature L^p norm (p < inf); p = inf handled by max abs
double lp_norm(const GridFunction& f, double p);

// Gram matrix of the scaled Peter-Weyl coefficients sqrt(d_pi) pi_ij under the
// rule: exact orthonormality makes it the identity.
Mat pw_gram(const DualPtr& dual, const RulePtr& rule);

double l2_norm_sq_grid(const GridFunction& f);

}  // namespace ghat
