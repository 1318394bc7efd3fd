#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ghat/multiplier.hpp"
#include "ghat/rng.hpp"

using namespace ghat;

namespace {
const GroupDescriptor kSu2 = GroupDescriptor::su2();
const GroupDescriptor kT1 = GroupDescriptor::torus(1);

// q1 at an arbitrary element, straight from the defining sum
double q1_at(const GroupDescriptor& G, const GroupElement& x) {
  double s = 0.0;
  for (const auto& phi : fundamental_set(G)) {
    const Mat m = evaluate_irrep(G, phi, x);
    s += (m - Mat::Identity(m.rows(), m.cols())).squaredNorm();
  }
  return s;
}
}  // namespace

TEST_CASE("q1 values") {
  // SU(2) at -I: ||x - I||_HS^2 = 4 - 2 tr(x) = 8
  GroupElement minus = identity(kSu2);
  minus.su2[0] = -Eigen::Matrix2cd::Identity();
  CHECK(q1_at(kSu2, minus) == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(q1_at(kSu2, identity(kSu2)) == 0.0);
  CHECK(q1_at(kT1, identity(kT1)) == 0.0);

  const auto rule = haar_quadrature(kT1, 4);
  const WeightTable q1 = q1_values(rule);
  for (long k = 0; k < rule->size(); ++k) {
    const double theta = rule->nodes[k].angles[0];
    CHECK(q1.values(k) == doctest::Approx(4.0 * (1.0 - std::cos(theta))).epsilon(1e-12));
    CHECK(q1.values(k) >= 0.0);
  }
}

TEST_CASE("qs values") {
  // single fundamental on SU(2): q_s = q1^s exactly
  const auto rs = haar_quadrature(kSu2, 3);
  const WeightTable q1 = q1_values(rs);
  for (int s = 1; s <= 3; ++s) {
    const WeightTable qs = qs_values(s, rs);
    for (long k = 0; k < rs->size(); k += 11)
      CHECK(qs.values(k) == doctest::Approx(std::pow(q1.values(k), s)).epsilon(1e-12));
  }

  // T^1: q2 = a^2 + ab + b^2 = 3 a^2 with a = b = 2(1 - cos theta)
  const auto rt = haar_quadrature(kT1, 4);
  const WeightTable q2 = qs_values(2, rt);
  for (long k = 0; k < rt->size(); ++k) {
    const double a = 2.0 * (1.0 - std::cos(rt->nodes[k].angles[0]));
    CHECK(q2.values(k) == doctest::Approx(3.0 * a * a).epsilon(1e-12));
  }
}

TEST_CASE("diff-side Sobolev norm examples") {
  const auto dt = Dual::make(kT1, 4096.0);
  CHECK(hs_norm_diffside(identity_symbol(dt), 1) == 0.0);

  // delta at l = 0: two fundamentals, two unit differences each
  Field d0(dt);
  d0.at(dt->index_of(trivial_label(kT1)))(0, 0) = 1.0;
  d0.set_margin(dt->max_depth() > 3 ? 3 : dt->max_depth());
  CHECK(hs_norm_diffside(d0, 1) == doctest::Approx(2.0).epsilon(1e-12));

  // generator symbols sit in the kernel at order 2
  const auto ds = Dual::make(kSu2, 20.0);
  const Field x3 = fourier_of_monomial(ds, {0, 0, 1});
  CHECK(hs_norm_diffside(x3, 2) < 1e-10);
}

TEST_CASE("kernel-side norm examples") {
  const auto dt = Dual::make(kT1, 4096.0);
  Field d0(dt);
  d0.at(dt->index_of(trivial_label(kT1)))(0, 0) = 1.0;
  d0.set_margin(3);
  // f == 1, int q1 = int 4(1-cos) = 4
  CHECK(hs_norm_kernelside(d0, 1, WeightKind::Q1) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(hs_norm_kernelside(zero_symbol(dt), 1, WeightKind::Q1) == 0.0);
  // and the closed-form case matches the diff side exactly
  CHECK(std::abs(hs_norm_diffside(d0, 1) - hs_norm_kernelside(d0, 1, WeightKind::Qs)) < 1e-10);
}

TEST_CASE("exact isometry between the two formulations") {
  for (const auto& G : {kT1, kSu2}) {
    const double band = (G.kind == GroupKind::Torus) ? 400.0 : 30.0;
    const auto dual = Dual::make(G, band);
    for (int s = 1; s <= 3; ++s) {
      for (int i = 0; i < 6; ++i) {
        const Field sig = random_symbol(dual, s, 900 + 10 * s + i, 0.5);
        const double a = hs_norm_diffside(sig, s);
        const double b = hs_norm_kernelside(sig, s, WeightKind::Qs);
        CHECK(std::abs(a - b) / a < 1e-8);
      }
    }
  }
}

TEST_CASE("seminorm kernel is the enveloping span") {
  const auto ds = Dual::make(kSu2, 20.0);
  Rng rng(41);
  for (int s = 1; s <= 2; ++s) {
    Field sig = zero_symbol(ds);
    for (int k = 0; k <= s - 1; ++k)
      for (const auto& beta : multi_indices(3, k))
        sig = sig + fourier_of_monomial(ds, beta) * cplx(rng.normal(), rng.normal());
    CHECK(hs_norm_diffside(sig, s) / std::max(1.0, linf_norm(sig)) < 1e-10);
  }
}

TEST_CASE("weight equivalence with the squared distance") {
  const auto rs = haar_quadrature(kSu2, 8);
  const WeightTable qs = q1_values(rs);
  double lo = 1e9, hi = 0.0;
  for (long k = 0; k < rs->size(); ++k) {
    const double d = distance_to_identity(kSu2, rs->nodes[k]);
    if (d < 1e-9) continue;
    const double r = qs.values(k) / (d * d);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  CHECK(lo >= 0.19);
  CHECK(hi <= 0.51);

  const auto rt = haar_quadrature(kT1, 16);
  const WeightTable qt = q1_values(rt);
  lo = 1e9;
  hi = 0.0;
  for (long k = 0; k < rt->size(); ++k) {
    const double d = distance_to_identity(kT1, rt->nodes[k]);
    if (d < 1e-9) continue;
    const double r = qt.values(k) / (d * d);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  CHECK(lo >= 0.79);
  CHECK(hi <= 2.01);
}

TEST_CASE("interpolation inequality (exact Cauchy-Schwarz on the kernel side)") {
  const auto ds = Dual::make(kSu2, 20.0);
  const auto rule = haar_quadrature(kSu2, label_bound(kSu2, 20.0));
  const WeightTable w1 = weight_table(rule, WeightKind::Q1Pow, 1.0);
  const WeightTable w2 = weight_table(rule, WeightKind::Q1Pow, 2.0);
  const WeightTable w3 = weight_table(rule, WeightKind::Q1Pow, 3.0);
  std::vector<Field> sigs;
  for (int i = 0; i < 25; ++i) sigs.push_back(random_symbol(ds, 3, 950 + i, 0.0));
  const auto grids = inverse_transform_batch(sigs, rule);
  for (const auto& g : grids) {
    const double h1 = weighted_l2_norm(g, w1);
    const double h2 = weighted_l2_norm(g, w2);
    const double h3 = weighted_l2_norm(g, w3);
    CHECK(h2 <= std::sqrt(h1 * h3) * (1.0 + 1e-8));
  }
}

TEST_CASE("monotone embedding with the compactness constant") {
  const auto ds = Dual::make(kSu2, 20.0);
  const auto rule = haar_quadrature(kSu2, label_bound(kSu2, 20.0));
  const double qmax = q1_values(rule).values.maxCoeff();
  const WeightTable w1 = weight_table(rule, WeightKind::Q1Pow, 1.0);
  const WeightTable w2 = weight_table(rule, WeightKind::Q1Pow, 2.0);
  for (int i = 0; i < 10; ++i) {
    const GridFunction g =
        inverse_transform(random_symbol(ds, 0, 980 + i, 0.0), rule);
    CHECK(weighted_l2_norm(g, w2) <=
          std::sqrt(qmax) * weighted_l2_norm(g, w1) * (1.0 + 1e-12));
  }
}

TEST_CASE("sup-norm scale") {
  const auto dt = Dual::make(kT1, 4096.0);
  CHECK(linfs_norm(identity_symbol(dt), 1) == 0.0);
  const Field lin = scalar_symbol(dt, [](const IrrepLabel& l) { return cplx(double(l.torus[0]), 0); });
  CHECK(linfs_norm(lin, 1) == doctest::Approx(1.0).epsilon(1e-14));

  // transform of an integrable function: the first difference is bounded by
  // the weighted L1 norm with the sharp per-backend constant
  for (const auto& G : {kT1, kSu2}) {
    const double c = (G.kind == GroupKind::Torus) ? 1.0 : 0.5;  // ||phi(x)-I||_op <= c |x|
    const auto dual = Dual::make(G, 16.0);
    const auto rule = haar_quadrature(G, label_bound(G, 16.0));
    for (int i = 0; i < 5; ++i) {
      const Field sig = random_symbol(dual, 1, 1200 + i, 1.0);
      const GridFunction f = inverse_transform(sig, rule);
      double wl1 = 0.0;
      for (long k = 0; k < rule->size(); ++k)
        wl1 += rule->weights[k] * std::abs(f.values(k)) *
               distance_to_identity(G, rule->nodes[k]);
      CHECK(linfs_norm(sig, 1) <= c * wl1 * (1.0 + 1e-10));
    }
  }
}

TEST_CASE("trace-norm scale") {
  const auto dt = Dual::make(kT1, 4096.0);
  CHECK(l1s_norm(identity_symbol(dt), 1) == 0.0);
  CHECK(l1s_norm(identity_symbol(dt), 2) == 0.0);

  Field d0(dt);
  d0.at(dt->index_of(trivial_label(kT1)))(0, 0) = 1.0;
  d0.set_margin(3);
  CHECK(l1s_norm(d0, 1) == doctest::Approx(4.0).epsilon(1e-12));

  const Field scaled = d0 * cplx(0.0, 3.0);
  CHECK(l1s_norm(scaled, 1) == doctest::Approx(3.0 * l1s_norm(d0, 1)).epsilon(1e-12));
}

TEST_CASE("weighted sup") {
  const auto rs = haar_quadrature(kSu2, 8);
  const GridFunction zero(rs, CVec::Zero(rs->size()));
  CHECK(weighted_sup(zero, 1) == 0.0);

  const GridFunction one = make_grid(rs, [](const GroupElement&) { return cplx(1, 0); });
  // sup_x |x| = diameter 2*pi; the node set misses the antipode by the first
  // Gauss-Legendre gap
  CHECK(weighted_sup(one, 1) == doctest::Approx(2.0 * M_PI).epsilon(0.05));
  CHECK(weighted_sup(one, 1) <= 2.0 * M_PI);

  // heat kernels concentrate: the weighted sup decreases in t
  const auto ds = Dual::make(kSu2, 110.0);
  double prev = 1e300;
  for (double t : {0.4, 0.8, 1.6}) {
    const double v = weighted_sup(heat_kernel(ds, rs, t), 1);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("weak leibniz estimates have uniform constants") {
  const auto ds = Dual::make(kSu2, 20.0);
  for (int s = 1; s <= 2; ++s) {
    double c2 = 0.0, cinf = 0.0;
    for (int i = 0; i < 40; ++i) {
      const Field a = random_symbol(ds, s, 1300 + 2 * i, 0.0);
      const Field b = random_symbol(ds, s, 1301 + 2 * i, 0.0);
      const Field prod = a * b;
      double rhs2 = 0.0, rhsi = 0.0;
      for (int k = 0; k <= s; ++k) {
        rhs2 += linfs_norm(a, k) * hs_norm_diffside(b, s - k);
        rhsi += linfs_norm(a, k) * linfs_norm(b, s - k);
      }
      c2 = std::max(c2, hs_norm_diffside(prod, s) / rhs2);
      cinf = std::max(cinf, linfs_norm(prod, s) / rhsi);
    }
    CHECK(c2 < 4.0);
    CHECK(cinf < 4.0);
  }
}

TEST_CASE("power symbol bound for spectral symbols") {
  const auto ds = Dual::make(kSu2, 20.0);
  const Field sig = spectral_symbol(ds, [](double lam) {
    return cplx(0.8 * std::cos(0.3 * lam), 0.8 * std::sin(0.7 * lam));
  });
  const double sup = linf_norm(sig);
  const double b2 = hs_norm_diffside(sig, 1);
  const double bi = linfs_norm(sig, 1);
  Field pw = sig;
  for (int k = 2; k <= 16; ++k) {
    pw = pw * sig;
    CHECK(hs_norm_diffside(pw, 1) <= b2 * k * std::pow(sup, k - 1) * (1.0 + 1e-10));
    CHECK(linfs_norm(pw, 1) <= bi * k * std::pow(sup, k - 1) * (1.0 + 1e-10));
  }
}

TEST_CASE("refined kernel-side estimate flags nothing for band-limited weights") {
  const auto dt = Dual::make(kT1, 100.0);
  const Field sig = random_symbol(dt, 2, 1500, 0.0);
  const auto est = hs_norm_kernelside_refined(sig, 2.0, WeightKind::Qs);
  CHECK(est.quadrature_error_estimate < 1e-10);
  // |x|^{2s} weights are not band-limited; the estimate is honest but small
  const auto est2 = hs_norm_kernelside_refined(sig, 1.5, WeightKind::DistPow);
  CHECK(est2.value > 0.0);
  CHECK(est2.quadrature_error_estimate < 0.05 * est2.value);
}
