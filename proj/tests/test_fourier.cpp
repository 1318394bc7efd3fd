#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ghat/multiplier.hpp"
#include "ghat/rng.hpp"

using namespace ghat;

namespace {
const GroupDescriptor kSu2 = GroupDescriptor::su2();
const GroupDescriptor kT1 = GroupDescriptor::torus(1);

IrrepLabel su2_label(long l) {
  IrrepLabel p = trivial_label(kSu2);
  p.su2[0] = l;
  return p;
}
IrrepLabel t1_label(long k) {
  IrrepLabel p = trivial_label(kT1);
  p.torus[0] = k;
  return p;
}
}  // namespace

TEST_CASE("forward transform of simple functions") {
  const auto dual = Dual::make(kT1, 25.0);
  const auto rule = haar_quadrature(kT1, 5);

  const GridFunction one = make_grid(rule, [](const GroupElement&) { return cplx(1, 0); });
  const Field oh = forward_transform(one, dual);
  for (int p = 0; p < dual->size(); ++p) {
    const cplx expect = dual->label(p).trivial() ? cplx(1, 0) : cplx(0, 0);
    CHECK(std::abs(oh.at(p)(0, 0) - expect) < 1e-12);
  }

  const GridFunction e3 =
      make_grid(rule, [](const GroupElement& x) { return std::exp(cplx(0, 3.0 * x.angles[0])); });
  const Field e3h = forward_transform(e3, dual);
  for (int p = 0; p < dual->size(); ++p) {
    const cplx expect = (dual->label(p).torus[0] == 3) ? cplx(1, 0) : cplx(0, 0);
    CHECK(std::abs(e3h.at(p)(0, 0) - expect) < 1e-12);
  }
}

TEST_CASE("peter-weyl coefficient transforms (d_pi pi^(pi') = delta I)") {
  const auto dual = Dual::make(kSu2, 4.0);  // l <= 2
  const auto rule = haar_quadrature(kSu2, 3);

  // sqrt(2) [phi]_{00} has transform with single entry 1/sqrt(2) at phi
  const GridFunction f = make_grid(rule, [&](const GroupElement& g) {
    return std::sqrt(2.0) * evaluate_irrep(kSu2, su2_label(1), g)(0, 0);
  });
  const Field fh = forward_transform(f, dual);
  for (int p = 0; p < dual->size(); ++p) {
    Mat expect = Mat::Zero(dual->dim(p), dual->dim(p));
    if (dual->label(p).su2[0] == 1) expect(0, 0) = 1.0 / std::sqrt(2.0);
    CHECK((fh.at(p) - expect).cwiseAbs().maxCoeff() < 1e-12);
  }

  // the full identity: d_pi F(pi_{ij})(pi') = delta_{pi pi'} E_{ji}
  for (int p = 0; p < dual->size(); ++p) {
    const int d = dual->dim(p);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const GridFunction coef = make_grid(rule, [&](const GroupElement& g) {
          return evaluate_irrep(kSu2, dual->label(p), g)(i, j);
        });
        const Field ch = forward_transform(coef, dual);
        for (int q = 0; q < dual->size(); ++q) {
          Mat expect = Mat::Zero(dual->dim(q), dual->dim(q));
          if (q == p) expect(j, i) = 1.0 / d;
          CHECK((ch.at(q) - expect).cwiseAbs().maxCoeff() < 1e-12);
        }
      }
  }
}

TEST_CASE("inverse transform and round trips") {
  for (const auto& G : {kT1, kSu2}) {
    const auto dual = Dual::make(G, G.kind == GroupKind::Torus ? 36.0 : 20.0);
    const auto rule = haar_quadrature(G, label_bound(G, dual->lambda_max()));

    // delta at the trivial rep synthesizes the constant 1
    Field c(dual);
    c.at(dual->trivial_index())(0, 0) = 1.0;
    const GridFunction g = inverse_transform(c, rule);
    for (long k = 0; k < g.values.size(); ++k) CHECK(std::abs(g.values(k) - cplx(1, 0)) < 1e-12);

    // random band-limited round trip
    const Field sig = random_symbol(dual, 0, 99, 0.5);
    const GridFunction f = inverse_transform(sig, rule);
    const Field back = forward_transform(f, dual);
    double dev = 0.0, scale = 0.0;
    for (int p = 0; p < dual->size(); ++p) {
      dev = std::max(dev, (back.at(p) - sig.at(p)).cwiseAbs().maxCoeff());
      scale = std::max(scale, sig.at(p).cwiseAbs().maxCoeff());
    }
    CHECK(dev / scale < 1e-10);
  }
}

TEST_CASE("heat coefficients synthesize a positive function") {
  const auto dual = Dual::make(kSu2, 20.0);
  const auto rule = haar_quadrature(kSu2, 8);
  const GridFunction pt = inverse_transform(heat_symbol(dual, 1.0), rule);
  for (long k = 0; k < pt.values.size(); ++k) {
    CHECK(pt.values(k).real() > 0.0);
    CHECK(std::abs(pt.values(k).imag()) < 1e-12);
  }
}

TEST_CASE("plancherel") {
  const auto dual = Dual::make(kT1, 36.0);
  const auto rule = haar_quadrature(kT1, 6);

  CHECK(plancherel_norm_sq(zero_symbol(dual)) == 0.0);

  const GridFunction e3 =
      make_grid(rule, [](const GroupElement& x) { return std::exp(cplx(0, 3.0 * x.angles[0])); });
  CHECK(plancherel_norm_sq(forward_transform(e3, dual)) == doctest::Approx(1.0).epsilon(1e-12));

  for (const auto& G : {kT1, kSu2}) {
    const auto d2 = Dual::make(G, 16.0);
    const auto r2 = haar_quadrature(G, label_bound(G, 16.0));
    for (int i = 0; i < 20; ++i) {
      const Field sig = random_symbol(d2, 0, 1000 + i, 0.0);
      const GridFunction f = inverse_transform(sig, r2);
      const double a = l2_norm_sq_grid(f);
      const double b = plancherel_norm_sq(sig);
      CHECK(std::abs(a - b) / b < 1e-10);
    }
  }
}

TEST_CASE("convolution") {
  const auto dual = Dual::make(kT1, 36.0);
  const auto rule = haar_quadrature(kT1, 6);

  // identity of convolution: the all-ones coefficient field acts as a delta
  Field ones(dual);
  for (int p = 0; p < dual->size(); ++p) ones.at(p)(0, 0) = 1.0;
  const GridFunction deltaish = inverse_transform(ones, rule);
  const Field f = random_symbol(dual, 0, 5, 0.8);
  const GridFunction fg = inverse_transform(f, rule);
  const Field conv = convolve(fg, deltaish, dual);
  for (int p = 0; p < dual->size(); ++p)
    CHECK((conv.at(p) - f.at(p)).cwiseAbs().maxCoeff() < 1e-11);

  // characters are orthogonal: e_2 * e_3 = 0
  auto e2f = [](const GroupElement& x) { return std::exp(cplx(0, 2.0 * x.angles[0])); };
  auto e3f = [](const GroupElement& x) { return std::exp(cplx(0, 3.0 * x.angles[0])); };
  const Field c23 = convolve(make_grid(rule, e2f), make_grid(rule, e3f), dual);
  for (int p = 0; p < dual->size(); ++p) CHECK(c23.at(p).cwiseAbs().maxCoeff() < 1e-12);
  // the direct double-quadrature oracle agrees
  for (long k = 0; k < rule->size(); k += 7)
    CHECK(std::abs(convolve_direct_at(e2f, e3f, rule, rule->nodes[k])) < 1e-12);
}

TEST_CASE("convolution homomorphism against the direct oracle on SU(2)") {
  const auto dual = Dual::make(kSu2, 2.0);  // l <= 1
  const auto rule = haar_quadrature(kSu2, 2);
  auto f1 = [](const GroupElement& g) {
    return g.su2[0](0, 0) + 0.3 * g.su2[0](1, 0);
  };
  auto f2 = [](const GroupElement& g) {
    return g.su2[0](0, 1) - cplx(0, 0.7) * g.su2[0](1, 1);
  };
  // sample f1 * f2 by double quadrature, then transform
  const GridFunction samples = make_grid(
      rule, [&](const GroupElement& x) { return convolve_direct_at(f1, f2, rule, x); });
  const Field direct = forward_transform(samples, dual);
  const Field viahat = convolve(make_grid(rule, f1), make_grid(rule, f2), dual);
  for (int p = 0; p < dual->size(); ++p)
    CHECK((direct.at(p) - viahat.at(p)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("noncommutativity witness on SU(2)") {
  const auto dual = Dual::make(kSu2, 6.0);
  const Field a = random_symbol(dual, 0, 41, 0.0);
  const Field b = random_symbol(dual, 0, 43, 0.0);
  const Field comm = a * b - b * a;
  double nrm = 0.0;
  for (int p = 0; p < dual->size(); ++p) nrm = std::max(nrm, comm.at(p).cwiseAbs().maxCoeff());
  CHECK(nrm > 1e-3);
}

TEST_CASE("generator delta-kernel transforms") {
  // F of the kernel of X^beta reproduces the symbol {pi(X)^beta}
  for (const auto& G : {kT1, kSu2}) {
    const auto dual = Dual::make(G, 16.0);
    const auto rule = haar_quadrature(G, label_bound(G, 16.0));
    std::vector<int> beta(G.dim(), 0);
    beta[G.dim() - 1] = 2;  // X_n^2
    const Field sym = fourier_of_monomial(dual, beta);
    const Field back = forward_transform(inverse_transform(sym, rule), dual);
    double dev = 0.0;
    for (int p = 0; p < dual->size(); ++p)
      dev = std::max(dev, (back.at(p) - sym.at(p)).cwiseAbs().maxCoeff());
    CHECK(dev / std::max(1.0, linf_norm(sym)) < 1e-10);
  }
}

TEST_CASE("transform contracts reject mismatched inputs") {
  const auto dual = Dual::make(kT1, 100.0);
  const auto small_rule = haar_quadrature(kT1, 2);  // exactness 8 < 2 * 10
  const GridFunction f = make_grid(small_rule, [](const GroupElement&) { return cplx(1, 0); });
  CHECK_THROWS_AS(forward_transform(f, dual), ghat::error);

  const auto wrong = haar_quadrature(kSu2, 2);
  const GridFunction g = make_grid(wrong, [](const GroupElement&) { return cplx(1, 0); });
  CHECK_THROWS_AS(forward_transform(g, dual), ghat::error);
}
