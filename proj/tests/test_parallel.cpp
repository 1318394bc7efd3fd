// The OpenMP kernels must agree with the serial reference implementations.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ghat/reference.hpp"
#include "ghat/rng.hpp"

using namespace ghat;

namespace {
double field_dev(const Field& a, const Field& b) {
  double d = 0.0;
  for (int p = 0; p < a.dual()->size(); ++p) {
    CHECK(a.valid(p) == b.valid(p));
    if (a.valid(p)) d = std::max(d, (a.at(p) - b.at(p)).cwiseAbs().maxCoeff());
  }
  return d;
}
}  // namespace

TEST_CASE("forward transform matches the serial reference") {
  for (const auto& G : {GroupDescriptor::su2(), GroupDescriptor::torus(2),
                        GroupDescriptor::product({GroupDescriptor::su2(), GroupDescriptor::torus(1)})}) {
    const auto dual = Dual::make(G, 12.0);
    const auto rule = haar_quadrature(G, label_bound(G, 12.0));
    const GridFunction f = inverse_transform(random_symbol(dual, 0, 11, 0.5), rule);
    const Field a = forward_transform(f, dual);
    const Field b = ref::forward_transform(f, dual);
    CHECK(field_dev(a, b) < 1e-13);
  }
}

TEST_CASE("inverse transform matches the serial reference") {
  const auto dual = Dual::make(GroupDescriptor::su2(), 20.0);
  const auto rule = haar_quadrature(GroupDescriptor::su2(), 6);
  const Field sig = random_symbol(dual, 1, 13, 0.3);
  const GridFunction a = inverse_transform(sig, rule);
  const GridFunction b = ref::inverse_transform(sig, rule);
  double dev = 0.0;
  for (long k = 0; k < a.values.size(); ++k)
    dev = std::max(dev, std::abs(a.values(k) - b.values(k)));
  CHECK(dev < 1e-12);
}

TEST_CASE("gram kernel matches the serial reference") {
  const auto dual = Dual::make(GroupDescriptor::su2(), 6.0);
  const auto rule = haar_quadrature(GroupDescriptor::su2(), 2);
  const Mat a = pw_gram(dual, rule);
  const Mat b = ref::pw_gram(dual, rule);
  CHECK((a - b).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("delta matches the serial reference") {
  const auto dual = Dual::make(GroupDescriptor::su2(), 20.0);
  for (int margin : {0, 1, 2}) {
    const Field sig = random_symbol(dual, margin, 17 + margin, 0.0);
    const Field a = delta(0, sig);
    const Field b = ref::delta(0, sig);
    CHECK(field_dev(a, b) == 0.0);
    if (margin >= 1) {
      const Field a2 = delta(0, a);
      const Field b2 = ref::delta(0, b);
      CHECK(field_dev(a2, b2) == 0.0);
    }
  }
}
