#pragma once

#include "ghat/fourier.hpp"

// Serial reference implementations of the parallel kernels, kept for testing
// and for the kernel benchmark. Plain loops, no thread-local accumulators.
namespace ghat::ref {

Field forward_transform(const GridFunction& f, const DualPtr& dual);
GridFunction inverse_transform(const Field& sigma, const RulePtr& rule);
Mat pw_gram(const DualPtr& dual, const RulePtr& rule);
Field delta(int fund_index, const Field& field);

}  // namespace ghat::ref
