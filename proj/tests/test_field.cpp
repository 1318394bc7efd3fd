#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ghat/multiplier.hpp"
#include "ghat/rng.hpp"

using namespace ghat;

namespace {
const GroupDescriptor kSu2 = GroupDescriptor::su2();
const GroupDescriptor kT1 = GroupDescriptor::torus(1);

Field torus_sequence(const DualPtr& dual, const std::function<cplx(long)>& f) {
  return scalar_symbol(dual, [&](const IrrepLabel& l) { return f(l.torus[0]); });
}
}  // namespace

TEST_CASE("extend_at on the torus is a shift") {
  const auto dual = Dual::make(kT1, 64.0);
  const Field sig = torus_sequence(dual, [](long m) { return cplx(double(m * m), -double(m)); });
  for (int p = 0; p < dual->size(); ++p) {
    const long m = dual->label(p).torus[0];
    if (std::abs(m + 1) > 8) continue;
    const Mat e = extend_at(sig, 0, p);  // e_{+1}
    CHECK(e.rows() == 1);
    CHECK(std::abs(e(0, 0) - cplx(double((m + 1) * (m + 1)), -double(m + 1))) == 0.0);
  }
}

TEST_CASE("extend_at of the identity is the identity") {
  const auto dual = Dual::make(kSu2, 12.0);
  const Field id = identity_symbol(dual);
  for (int p = 0; p + 1 < dual->size(); ++p) {
    const Mat e = extend_at(id, 0, p);
    CHECK((e - Mat::Identity(e.rows(), e.cols())).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("extend_at of a generator symbol obeys the tensor derivation rule") {
  // sigma(phi (x) pi) = phi(X) (x) I + I (x) pi(X)
  for (const auto& G : {kSu2, kT1}) {
    const auto dual = Dual::make(G, 9.0);
    for (int j = 0; j < G.dim(); ++j) {
      std::vector<int> beta(G.dim(), 0);
      beta[j] = 1;
      const Field sig = fourier_of_monomial(dual, beta);
      for (int f = 0; f < dual->fund_count(); ++f) {
        const Mat phix = infinitesimal(G, dual->fundamental(f), j);
        for (int p = 0; p < dual->size(); ++p) {
          bool inside = true;
          for (int s : dual->decomp(f, p).summands) inside = inside && s >= 0;
          if (!inside) continue;
          const long dphi = dual->fund_dim(f), dpi = dual->dim(p);
          const Mat pix = dual->generator(p, j);
          Mat expect = Mat::Zero(dphi * dpi, dphi * dpi);
          for (long a = 0; a < dphi; ++a)
            for (long b = 0; b < dphi; ++b) {
              expect.block(a * dpi, b * dpi, dpi, dpi) =
                  phix(a, b) * Mat::Identity(dpi, dpi);
              if (a == b) expect.block(a * dpi, b * dpi, dpi, dpi) += pix;
            }
          CHECK((extend_at(sig, f, p) - expect).cwiseAbs().maxCoeff() < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("delta examples") {
  const auto dual = Dual::make(kT1, 144.0);
  // forward difference of a linear sequence is 1
  const Field lin = torus_sequence(dual, [](long m) { return cplx(double(m), 0); });
  const Field d = delta(0, lin);
  for (int p = 0; p < dual->size(); ++p) {
    if (std::abs(dual->label(p).torus[0]) > 10) continue;
    CHECK(std::abs(d.at(p)(0, 0) - cplx(1, 0)) == 0.0);
  }

  // delta of the identity vanishes identically
  const auto ds = Dual::make(kSu2, 12.0);
  const Field did = delta(0, identity_symbol(ds));
  for (int p = 0; p < ds->size(); ++p)
    if (did.valid(p)) CHECK(did.at(p).cwiseAbs().maxCoeff() < 1e-13);

  // delta of F_G(X) is phi(X) (x) I, constant in pi
  for (int j = 0; j < 3; ++j) {
    std::vector<int> beta(3, 0);
    beta[j] = 1;
    const Field fx = fourier_of_monomial(ds, beta);
    const Field dfx = delta(0, fx);
    const Mat phix = infinitesimal(kSu2, ds->fundamental(0), j);
    for (int p = 0; p < ds->size(); ++p) {
      if (!dfx.valid(p)) continue;
      const long dpi = ds->dim(p);
      Mat expect = Mat::Zero(2 * dpi, 2 * dpi);
      for (long a = 0; a < 2; ++a)
        for (long b = 0; b < 2; ++b)
          expect.block(a * dpi, b * dpi, dpi, dpi) = phix(a, b) * Mat::Identity(dpi, dpi);
      CHECK((dfx.at(p) - expect).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("delta words annihilate enveloping symbols") {
  for (const auto& G : {kT1, kSu2}) {
    const auto dual = Dual::make(G, 30.0);
    const int n = G.dim();
    const int nf = dual->fund_count();

    // |alpha| = 2 on F_G(X)
    for (int j = 0; j < n; ++j) {
      std::vector<int> beta(n, 0);
      beta[j] = 1;
      const Field fx = fourier_of_monomial(dual, beta);
      for (const auto& alpha : multi_indices(nf, 2)) {
        const Field dd = delta_word(alpha, fx);
        CHECK(linf_norm(dd) < 1e-10);
      }
    }

    // |alpha| = |beta| + 1 on all degree <= 2 monomials
    for (int deg = 0; deg <= 2; ++deg)
      for (const auto& beta : multi_indices(n, deg)) {
        const Field fb = fourier_of_monomial(dual, beta);
        for (const auto& alpha : multi_indices(nf, deg + 1))
          CHECK(linf_norm(delta_word(alpha, fb)) < 1e-10);
      }
  }

  // torus second difference of m^2 is the constant 2
  const auto dt = Dual::make(kT1, 144.0);
  const Field sq = torus_sequence(dt, [](long m) { return cplx(double(m * m), 0); });
  std::vector<int> alpha = {2, 0};
  const Field dd = delta_word(alpha, sq);
  for (int p = 0; p < dt->size(); ++p) {
    if (std::abs(dt->label(p).torus[0]) > 9) continue;
    CHECK(std::abs(dd.at(p)(0, 0) - cplx(2, 0)) < 1e-13);
  }
}

TEST_CASE("leibniz residual") {
  const auto ds = Dual::make(kSu2, 0.25 * 10 * 12);  // l <= 10
  // sigma2 = identity: algebraically zero residual (floating point leaves the
  // U*U rounding of the intertwiner conjugation)
  const Field s1 = random_symbol(ds, 1, 71, 0.0);
  const Field id = identity_symbol(ds);
  for (int p = 0; p < ds->size(); ++p) {
    if (ds->depth(p) < 1) continue;  // identity has no support margin
    CHECK(leibniz_residual(0, s1, id, p) <= 1e-12 * std::max(1.0, linf_norm(s1)));
  }

  // random pairs: identity is algebraically exact
  for (int i = 0; i < 10; ++i) {
    const Field a = random_symbol(ds, 1, 100 + 2 * i, 0.0);
    const Field b = random_symbol(ds, 1, 101 + 2 * i, 0.0);
    const double scale = std::max(1.0, linf_norm(a) * linf_norm(b));
    for (int p = 0; p < ds->size(); ++p)
      CHECK(leibniz_residual(0, a, b, p) / scale < 1e-12);
  }

  // torus scalars commute, residual at machine precision
  const auto dt = Dual::make(kT1, 64.0);
  const Field ta = random_symbol(dt, 1, 7, 0.0);
  const Field tb = random_symbol(dt, 1, 8, 0.0);
  for (int p = 0; p < dt->size(); ++p)
    for (int f = 0; f < 2; ++f) CHECK(leibniz_residual(f, ta, tb, p) < 1e-13);
}

TEST_CASE("word splitting and commutation") {
  const auto ds = Dual::make(kSu2, 20.0);
  const Field sig = random_symbol(ds, 2, 301, 0.0);
  const Field d01 = delta(0, delta(0, sig));
  // one fundamental on SU(2): the swap is within the same factor pair
  const Field d10 = delta(0, delta(0, sig));
  for (int p = 0; p < ds->size(); ++p)
    if (d01.valid(p)) CHECK((d01.at(p) - d10.at(p)).cwiseAbs().maxCoeff() == 0.0);

  // torus: two distinct fundamentals commute exactly (1-dim factors, P = I)
  const auto dt = Dual::make(kT1, 100.0);
  const Field ts = random_symbol(dt, 2, 303, 0.0);
  const Field a = delta(1, delta(0, ts));
  const Field b = delta(0, delta(1, ts));
  for (int p = 0; p < dt->size(); ++p)
    if (a.valid(p) && b.valid(p))
      CHECK((a.at(p) - b.at(p)).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("torus reduction is the exact forward difference") {
  const auto dual = Dual::make(kT1, 4096.0);
  for (int i = 0; i < 50; ++i) {
    const Field sig = random_symbol(dual, 1, 500 + i, 0.0);
    const Field d = delta(0, sig);
    for (int p = 0; p < dual->size(); ++p) {
      if (!d.valid(p)) continue;
      IrrepLabel up = dual->label(p);
      up.torus[0] += 1;
      const int q = dual->index_of(up);
      const cplx hi = (q >= 0) ? sig.at(q)(0, 0) : cplx(0, 0);
      CHECK(std::abs(d.at(p)(0, 0) - (hi - sig.at(p)(0, 0))) <= 1e-14);
    }
  }
}

TEST_CASE("annihilation test and converse projection") {
  const auto ds = Dual::make(kSu2, 30.0);

  const Field cid = identity_symbol(ds) * cplx(2.5, -0.5);
  const auto r1 = annihilation_test(cid, 1, 1e-12);
  CHECK(r1.max_norm <= 1e-12);
  CHECK(r1.annihilated);

  // F_G(X1 X2): annihilated at order 3
  const Field x12 = fourier_of_monomial(ds, {1, 1, 0});
  const auto r3 = annihilation_test(x12, 3, 1e-10);
  CHECK(r3.annihilated);

  // F_G(X1): NOT annihilated at order 1; the max norm is ||phi(X1)||_op = 1/2
  const Field x1 = fourier_of_monomial(ds, {1, 0, 0});
  const auto rn = annihilation_test(x1, 1, 1e-10);
  CHECK(!rn.annihilated);
  CHECK(rn.max_norm > 1e-3);
  CHECK(rn.max_norm == doctest::Approx(0.5).epsilon(1e-12));

  // least-squares projection residuals discriminate membership
  Rng rng(77);
  Field span = zero_symbol(ds);
  for (int k = 0; k <= 1; ++k)
    for (const auto& beta : multi_indices(3, k))
      span = span + fourier_of_monomial(ds, beta) * cplx(rng.normal(), rng.normal());
  CHECK(enveloping_projection_residual(span, 1) < 1e-10);
  const Field rnd = random_symbol(ds, 1, 55, 0.0);
  CHECK(enveloping_projection_residual(rnd, 1) > 1e-2);
}

TEST_CASE("op_matrix") {
  const auto ds = Dual::make(kSu2, 12.0);
  const Field id = identity_symbol(ds);
  const Mat mid = op_matrix(id, 12.0);
  CHECK((mid - Mat::Identity(mid.rows(), mid.cols())).cwiseAbs().maxCoeff() == 0.0);

  const Field c = identity_symbol(ds) * cplx(0.0, -2.5);
  CHECK(operator_norm(op_matrix(c, 12.0)) == doctest::Approx(2.5).epsilon(1e-10));

  // spectral norm equals the sup of the per-irrep operator norms
  for (int i = 0; i < 10; ++i) {
    const Field sig = random_symbol(ds, 0, 600 + i, 0.3);
    const double a = operator_norm(op_matrix(sig, 12.0));
    const double b = linf_norm(sig);
    CHECK(std::abs(a - b) / b < 1e-8);
  }

  // homomorphism on the common band
  const Field s1 = random_symbol(ds, 0, 610, 0.0);
  const Field s2 = random_symbol(ds, 0, 611, 0.0);
  const Mat lhs = op_matrix(s1 * s2, 12.0);
  const Mat rhs = op_matrix(s1, 12.0) * op_matrix(s2, 12.0);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() / std::max(1.0, linf_norm(s1) * linf_norm(s2)) < 1e-10);
}

TEST_CASE("apply") {
  const auto ds = Dual::make(kSu2, 20.0);
  const auto rule = haar_quadrature(kSu2, label_bound(kSu2, 20.0));

  const Field id = identity_symbol(ds);
  const Field sig = random_symbol(ds, 0, 621, 0.5);
  const GridFunction f = inverse_transform(sig, rule);
  const GridFunction idf = apply(id, f, ds);
  double dev = 0.0, scale = 0.0;
  for (long k = 0; k < f.values.size(); ++k) {
    dev = std::max(dev, std::abs(idf.values(k) - f.values(k)));
    scale = std::max(scale, std::abs(f.values(k)));
  }
  CHECK(dev / scale < 1e-10);

  // Op(F_G(X3)) is the left-invariant derivative along X3
  IrrepLabel l2 = trivial_label(kSu2);
  l2.su2[0] = 2;
  auto coef = [&](const GroupElement& g) { return evaluate_irrep(kSu2, l2, g)(0, 1); };
  const GridFunction cf = make_grid(rule, coef);
  const Field x3 = fourier_of_monomial(ds, {0, 0, 1});
  const GridFunction deriv = apply(x3, cf, ds);
  const double h = 1e-5;
  for (long k = 0; k < rule->size(); k += 997) {
    const GroupElement xp = multiply(kSu2, rule->nodes[k], exp_map(kSu2, {0, 0, h}));
    const GroupElement xm = multiply(kSu2, rule->nodes[k], exp_map(kSu2, {0, 0, -h}));
    const cplx fd = (coef(xp) - coef(xm)) / (2.0 * h);
    CHECK(std::abs(deriv.values(k) - fd) < 1e-6);
  }

  // torus spectral projection onto nonnegative frequencies
  const auto dt = Dual::make(kT1, 36.0);
  const auto rt = haar_quadrature(kT1, 6);
  const Field proj = scalar_symbol(dt, [](const IrrepLabel& l) {
    return cplx(l.torus[0] >= 0 ? 1.0 : 0.0, 0.0);
  });
  const GridFunction mix = make_grid(rt, [](const GroupElement& x) {
    return std::exp(cplx(0, 2.0 * x.angles[0])) + std::exp(cplx(0, -x.angles[0]));
  });
  const GridFunction projected = apply(proj, mix, dt);
  for (long k = 0; k < rt->size(); ++k) {
    const cplx expect = std::exp(cplx(0, 2.0 * rt->nodes[k].angles[0]));
    CHECK(std::abs(projected.values(k) - expect) < 1e-11);
  }
}

TEST_CASE("linf and l2 norms of symbols") {
  const auto ds = Dual::make(kSu2, 12.0);
  CHECK(linf_norm(identity_symbol(ds)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(linf_norm(zero_symbol(ds)) == 0.0);
  CHECK(l2_norm_sq(zero_symbol(ds)) == 0.0);

  // the transform of an integrable function is bounded by its L^1 norm
  const auto rule = haar_quadrature(kSu2, label_bound(kSu2, 12.0));
  const Field sig = random_symbol(ds, 0, 700, 1.0);
  const GridFunction f = inverse_transform(sig, rule);
  const Field fh = forward_transform(f, ds);
  double l1 = 0.0;
  for (long k = 0; k < rule->size(); ++k) l1 += rule->weights[k] * std::abs(f.values(k));
  CHECK(linf_norm(fh) <= l1 * (1.0 + 1e-10));
}

TEST_CASE("margin bookkeeping") {
  const auto ds = Dual::make(kSu2, 20.0);
  const Field m2 = random_symbol(ds, 2, 800, 0.0);
  CHECK(m2.measured_margin() >= 2);

  // margin-2 symbols keep full-band validity through two difference steps
  const Field d1 = delta(0, m2);
  for (int p = 0; p < ds->size(); ++p) CHECK(d1.valid(p));
  CHECK(d1.margin() == 1);
  const Field d2 = delta(0, d1);
  for (int p = 0; p < ds->size(); ++p) CHECK(d2.valid(p));

  // margin-0 symbols lose the band edge
  const Field spec = heat_symbol(ds, 0.5);
  const Field dspec = delta(0, spec);
  bool some_invalid = false;
  for (int p = 0; p < ds->size(); ++p) some_invalid = some_invalid || !dspec.valid(p);
  CHECK(some_invalid);
  // and extend_at refuses at the edge
  int edge = -1;
  for (int p = 0; p < ds->size(); ++p)
    if (ds->depth(p) == 0) edge = p;
  REQUIRE(edge >= 0);
  CHECK_THROWS_AS(extend_at(spec, 0, edge), ghat::error);
}
