#include "verify_suite.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "ghat/io.hpp"
#include "ghat/multiplier.hpp"
#include "ghat/rng.hpp"

namespace ghat {

namespace {

struct Suite {
  const RunConfig& cfg;
  std::vector<CheckResult> results;
  DualPtr dual;
  RulePtr rule;
  std::chrono::steady_clock::time_point mark = std::chrono::steady_clock::now();

  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double dt = std::chrono::duration<double>(now - mark).count();
    mark = now;
    return dt;
  }

  void pass_if(const std::string& name, double measured, double threshold,
               const std::string& note = "") {
    results.push_back(
        {name, measured <= threshold ? "pass" : "fail", measured, threshold, note, lap()});
  }
  void pass_in(const std::string& name, double measured, double lo, double hi,
               const std::string& note = "") {
    const bool ok = measured >= lo && measured <= hi;
    std::ostringstream os;
    os << "interval [" << lo << ", " << hi << "] " << note;
    results.push_back({name, ok ? "pass" : "fail", measured, hi, os.str(), lap()});
  }
  void skip(const std::string& name, const std::string& why) {
    results.push_back({name, "skip", 0.0, 0.0, why, lap()});
  }
};

Field random_margin_symbol(const DualPtr& dual, int margin, std::uint64_t seed) {
  return random_symbol(dual, margin, seed, 1.0);
}

void group_checks(Suite& S) {
  const auto& G = S.cfg.group;
  Rng rng(S.cfg.seed);
  double worst_bi = 0.0, worst_tri = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const GroupElement g = random_element(G, rng), h = random_element(G, rng);
    const double dg = distance_to_identity(G, g);
    const GroupElement conj = multiply(G, multiply(G, h, g), inverse(G, h));
    worst_bi = std::max(worst_bi, std::abs(distance_to_identity(G, conj) - dg));
    const double dh = distance_to_identity(G, h);
    const double dgh = distance_to_identity(G, multiply(G, g, h));
    worst_tri = std::max(worst_tri, dgh - dg - dh);
  }
  S.pass_if("group.bi_invariance", worst_bi, S.cfg.tol("bi_invariance", 1e-10));
  S.pass_if("group.triangle_inequality", worst_tri, S.cfg.tol("triangle", 1e-10));

  // Peter-Weyl orthogonality of the quadrature; a rule sized for coefficient
  // pairs within the band suffices here
  const int lb = label_bound(G, S.cfg.band);
  const RulePtr gram_rule = haar_quadrature(G, (lb + 1) / 2);
  const Mat gram = pw_gram(S.dual, gram_rule);
  const double dev = (gram - Mat::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  S.pass_if("group.quadrature_orthogonality", dev, S.cfg.tol("pw_orth", 1e-10));
}

void rep_checks(Suite& S) {
  const auto& G = S.cfg.group;
  const Dual& dual = *S.dual;
  Rng rng(S.cfg.seed + 1);

  // neighbor eigenvalue equivalence: measure C with (1+l_rho)/(1+l_pi) in [1/C, C]
  double C = 1.0;
  for (int p = 0; p < dual.size(); ++p)
    for (int f = 0; f < dual.fund_count(); ++f)
      for (size_t t = 0; t < dual.decomp(f, p).labels.size(); ++t) {
        const double r = (1.0 + casimir_eigenvalue(dual.decomp(f, p).labels[t])) /
                         (1.0 + dual.casimir(p));
        C = std::max(C, std::max(r, 1.0 / r));
      }
  S.results.push_back({"rep.neighbor_eigenvalue_ratio", std::isfinite(C) ? "pass" : "fail", C,
                       0.0, "measured equivalence constant", S.lap()});

  // intertwining identity on random elements
  double worst = 0.0;
  for (int f = 0; f < dual.fund_count(); ++f)
    for (int p = 0; p < dual.size(); ++p) {
      const auto& dc = dual.decomp(f, p);
      for (int i = 0; i < 50; ++i) {
        const GroupElement g = random_element(G, rng);
        const Mat a = evaluate_irrep(G, dual.fundamental(f), g);
        const Mat b = evaluate_irrep(G, dual.label(p), g);
        Mat tp(a.rows() * b.rows(), a.cols() * b.cols());
        for (long r = 0; r < a.rows(); ++r)
          for (long c = 0; c < a.cols(); ++c)
            tp.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
        const Mat lhs = dc.U * tp * dc.U.adjoint();
        Mat rhs = Mat::Zero(lhs.rows(), lhs.cols());
        long off = 0;
        for (size_t t = 0; t < dc.labels.size(); ++t) {
          const Mat m = evaluate_irrep(G, dc.labels[t], g);
          rhs.block(off, off, m.rows(), m.cols()) = m;
          off += m.rows();
        }
        worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
      }
    }
  S.pass_if("rep.intertwining_identity", worst, S.cfg.tol("intertwine", 1e-10));

  // finite-difference consistency of the infinitesimal action. Second-order
  // one-sided stencil with a per-label step: negative steps would wrap torus
  // angles mod 2*pi and the reduction noise, amplified by l/h, swamps the
  // 1e-8 contract at large labels.
  double worst_fd = 0.0;
  for (int p = 0; p < dual.size(); ++p)
    for (int j = 0; j < G.dim(); ++j) {
      const double h = 1e-5 / (1.0 + std::sqrt(dual.casimir(p)));
      std::vector<double> c(G.dim(), 0.0);
      c[j] = h;
      const Mat f1 = evaluate_irrep(G, dual.label(p), exp_map(G, c));
      c[j] = 2.0 * h;
      const Mat f2 = evaluate_irrep(G, dual.label(p), exp_map(G, c));
      const int d = dual.dim(p);
      const Mat fd = (-3.0 * Mat::Identity(d, d) + 4.0 * f1 - f2) / (2.0 * h);
      worst_fd = std::max(worst_fd, (fd - dual.generator(p, j)).cwiseAbs().maxCoeff());
    }
  S.pass_if("rep.generator_finite_difference", worst_fd, S.cfg.tol("generator_fd", 1e-8));
}

void fourier_checks(Suite& S) {
  const Dual& dual = *S.dual;
  Rng rng(S.cfg.seed + 2);

  // Plancherel identity on random band-limited functions
  std::vector<Field> fields;
  for (int i = 0; i < 100; ++i) fields.push_back(random_margin_symbol(S.dual, 0, S.cfg.seed + 100 + i));
  const auto grids = inverse_transform_batch(fields, S.rule);
  double worst = 0.0;
  for (size_t i = 0; i < fields.size(); ++i) {
    const double a = l2_norm_sq_grid(grids[i]);
    const double b = plancherel_norm_sq(fields[i]);
    worst = std::max(worst, std::abs(a - b) / std::max(1e-300, b));
  }
  S.pass_if("fourier.plancherel_identity", worst, S.cfg.tol("plancherel", 1e-10));

  // delta-kernel transforms reproduce the generator symbols
  double worst_x = 0.0;
  const int n = S.cfg.group.dim();
  for (int j = 0; j < n; ++j) {
    std::vector<int> beta(n, 0);
    beta[j] = 1;
    const Field sym = fourier_of_monomial(S.dual, beta);
    const Field back = forward_transform(inverse_transform(sym, S.rule), S.dual);
    double num = 0.0;
    for (int p = 0; p < dual.size(); ++p)
      num = std::max(num, (back.at(p) - sym.at(p)).cwiseAbs().maxCoeff());
    worst_x = std::max(worst_x, num / std::max(1.0, linf_norm(sym)));
  }
  S.pass_if("fourier.generator_kernel_roundtrip", worst_x, S.cfg.tol("kernel_roundtrip", 1e-10));

  // convolution-transform homomorphism on band-limited pairs
  const Field f1 = random_margin_symbol(S.dual, 0, S.cfg.seed + 300);
  const Field f2 = random_margin_symbol(S.dual, 0, S.cfg.seed + 301);
  const auto pair = inverse_transform_batch({f1, f2}, S.rule);
  const Field conv = convolve(pair[0], pair[1], S.dual);
  const Field expect = f2 * f1;
  double dev = 0.0;
  for (int p = 0; p < dual.size(); ++p)
    dev = std::max(dev, (conv.at(p) - expect.at(p)).cwiseAbs().maxCoeff());
  S.pass_if("fourier.convolution_homomorphism", dev / std::max(1.0, linf_norm(expect)),
            S.cfg.tol("convolution", 1e-10));
}

void symbol_checks(Suite& S) {
  const Dual& dual = *S.dual;

  // Leibniz identity, relative residual over random pairs (fields computed
  // once per pair, then compared entrywise)
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Field s1 = random_margin_symbol(S.dual, 1, S.cfg.seed + 400 + 2 * i);
    const Field s2 = random_margin_symbol(S.dual, 1, S.cfg.seed + 401 + 2 * i);
    const double scale = std::max(1.0, linf_norm(s1) * linf_norm(s2));
    for (int f = 0; f < dual.fund_count(); ++f) {
      const Field lhs = delta(f, s1 * s2);
      const Field d1 = delta(f, s1);
      const Field d2 = delta(f, s2);
      const long dphi = dual.fund_dim(f);
      for (int p = 0; p < dual.size(); ++p) {
        if (!lhs.valid(p)) continue;
        const long dpi = dual.dim(p);
        Mat i_s2 = Mat::Zero(dphi * dpi, dphi * dpi);
        for (long a = 0; a < dphi; ++a) i_s2.block(a * dpi, a * dpi, dpi, dpi) = s2.at(p);
        const Mat rhs = d1.at(p) * i_s2 + extend_at(s1, f, p) * d2.at(p);
        worst = std::max(worst, (lhs.at(p) - rhs).norm() / scale);
      }
    }
  }
  S.pass_if("symbols.leibniz_identity", worst, S.cfg.tol("leibniz", 1e-12));

  if (dual.max_depth() >= 2) {
    // word splitting: Delta_{phi1 (x) phi2} sigma(pi) built through the
    // two-step extension equals Delta_{phi1} sigma(phi2 (x) pi)
    // + I_{phi1} (x) Delta_{phi2} sigma(pi)
    const Field sig = random_margin_symbol(S.dual, 2, S.cfg.seed + 500);
    double dev = 0.0;
    for (int f1 = 0; f1 < dual.fund_count(); ++f1)
      for (int f2 = 0; f2 < dual.fund_count(); ++f2) {
        const Field d1 = delta(f1, sig);
        const Field d2 = delta(f2, sig);
        const long dq1 = dual.fund_dim(f1);
        const long dq2 = dual.fund_dim(f2);
        for (int p = 0; p < dual.size(); ++p) {
          if (dual.depth(p) < 2) continue;
          const long dpi = dual.dim(p);
          const Mat ext_d1 = extend_at(d1, f2, p);
          const Mat ext_s = extend_at(sig, f2, p);
          const long R = ext_s.rows();
          // sigma(phi1 (x) phi2 (x) pi) - I_{phi1 phi2} (x) sigma(pi)
          Mat lhs = ext_d1;
          for (long a = 0; a < dq1; ++a) lhs.block(a * R, a * R, R, R) += ext_s;
          for (long c = 0; c < dq1 * dq2; ++c)
            lhs.block(c * dpi, c * dpi, dpi, dpi) -= sig.at(p);
          Mat rhs = ext_d1;
          const Mat& d2p = d2.at(p);
          for (long a = 0; a < dq1; ++a) rhs.block(a * R, a * R, R, R) += d2p;
          dev = std::max(dev, (lhs - rhs).cwiseAbs().maxCoeff());
        }
      }
    S.pass_if("symbols.word_splitting", dev, S.cfg.tol("word_split", 1e-12));

    // commutation up to the factor swap
    const Field sig2 = random_margin_symbol(S.dual, 2, S.cfg.seed + 501);
    double dev2 = 0.0;
    for (int f1 = 0; f1 < dual.fund_count(); ++f1)
      for (int f2 = 0; f2 < dual.fund_count(); ++f2) {
        const Field a = delta(f2, delta(f1, sig2));  // word [f1, f2]
        const Field b = delta(f1, delta(f2, sig2));  // word [f2, f1]
        const long d1 = dual.fund_dim(f1), d2 = dual.fund_dim(f2);
        for (int p = 0; p < dual.size(); ++p) {
          if (!a.valid(p)) continue;
          const long dpi = dual.dim(p);
          // swap the two word factors of a: rows (i1,i2,k) -> (i2,i1,k)
          const Mat& ma = a.at(p);
          Mat swapped(ma.rows(), ma.cols());
          for (long i1 = 0; i1 < d1; ++i1)
            for (long i2 = 0; i2 < d2; ++i2)
              for (long j1 = 0; j1 < d1; ++j1)
                for (long j2 = 0; j2 < d2; ++j2)
                  swapped.block((i2 * d1 + i1) * dpi, (j2 * d1 + j1) * dpi, dpi, dpi) =
                      ma.block((i1 * d2 + i2) * dpi, (j1 * d2 + j2) * dpi, dpi, dpi);
          dev2 = std::max(dev2, (swapped - b.at(p)).cwiseAbs().maxCoeff());
        }
      }
    S.pass_if("symbols.delta_commutation", dev2, S.cfg.tol("commutation", 1e-10));
  } else {
    S.skip("symbols.word_splitting", "needs interior depth >= 2");
    S.skip("symbols.delta_commutation", "needs interior depth >= 2");
  }

  // torus reduction: forward difference, exact
  if (S.cfg.group.kind == GroupKind::Torus && S.cfg.group.torus_dim == 1) {
    double dev = 0.0;
    for (int i = 0; i < 50; ++i) {
      const Field sig = random_margin_symbol(S.dual, 1, S.cfg.seed + 600 + i);
      const Field d = delta(0, sig);  // e_{+1}
      for (int p = 0; p < dual.size(); ++p) {
        if (!d.valid(p)) continue;
        IrrepLabel shifted = dual.label(p);
        shifted.torus[0] += 1;
        const int q = dual.index_of(shifted);
        const cplx up = (q >= 0) ? sig.at(q)(0, 0) : cplx(0.0, 0.0);
        const cplx direct = up - sig.at(p)(0, 0);
        dev = std::max(dev, std::abs(d.at(p)(0, 0) - direct));
      }
    }
    S.pass_if("symbols.torus_forward_difference", dev, S.cfg.tol("torus_reduction", 1e-14));
  } else {
    S.skip("symbols.torus_forward_difference", "torus:1 only");
  }

  // Op homomorphism on the common band
  const Field s1 = random_margin_symbol(S.dual, 0, S.cfg.seed + 700);
  const Field s2 = random_margin_symbol(S.dual, 0, S.cfg.seed + 701);
  const double sub = dual.lambda_max();
  const Mat m12 = op_matrix(s1 * s2, sub);
  const Mat m1 = op_matrix(s1, sub), m2 = op_matrix(s2, sub);
  const double dev3 = (m12 - m1 * m2).cwiseAbs().maxCoeff() /
                      std::max(1.0, linf_norm(s1) * linf_norm(s2));
  S.pass_if("symbols.op_homomorphism", dev3, S.cfg.tol("op_hom", 1e-10));
}

void sobolev_checks(Suite& S) {
  const Dual& dual = *S.dual;
  const auto& G = S.cfg.group;

  // exact isometry, diff side vs q_s kernel side (transforms batched, weight
  // tables built once per order)
  for (int s = 1; s <= 3; ++s) {
    const std::string name = "sobolev.isometry_s" + std::to_string(s);
    if (S.cfg.margin < s || dual.max_depth() < s) {
      S.skip(name, "needs margin >= " + std::to_string(s));
      continue;
    }
    std::vector<Field> sigs;
    for (int i = 0; i < 8; ++i)
      sigs.push_back(random_margin_symbol(S.dual, s, S.cfg.seed + 800 + 8 * s + i));
    const auto grids = inverse_transform_batch(sigs, S.rule);
    const WeightTable wtab = qs_values(s, S.rule);
    double worst = 0.0;
    for (size_t i = 0; i < sigs.size(); ++i) {
      const double a = hs_norm_diffside(sigs[i], s);
      const double b = weighted_l2_norm(grids[i], wtab);
      worst = std::max(worst, std::abs(a - b) / std::max(1e-300, a));
    }
    S.pass_if(name, worst, S.cfg.tol("isometry", 1e-8));
  }

  // seminorm kernel: generator-span symbols have zero Hdot^s norm
  if (S.cfg.margin >= 2 && dual.max_depth() >= 2) {
    Rng rng(S.cfg.seed + 8);
    double worst = 0.0;
    const int n = G.dim();
    for (int trial = 0; trial < 5; ++trial) {
      Field sig = zero_symbol(S.dual);
      for (int k = 0; k <= 1; ++k)
        for (const auto& beta : multi_indices(n, k)) {
          const cplx c(rng.normal(), rng.normal());
          sig = sig + fourier_of_monomial(S.dual, beta) * c;
        }
      worst = std::max(worst, hs_norm_diffside(sig, 2) / std::max(1.0, linf_norm(sig)));
    }
    S.pass_if("sobolev.seminorm_kernel", worst, S.cfg.tol("seminorm_kernel", 1e-10));
  } else {
    S.skip("sobolev.seminorm_kernel", "needs margin >= 2");
  }

  // weight equivalence q1 / |x|^2
  const bool pure_su2 = (G.kind == GroupKind::SU2);
  const bool pure_t1 = (G.kind == GroupKind::Torus && G.torus_dim == 1);
  if (pure_su2 || pure_t1) {
    const WeightTable q1 = q1_values(S.rule);
    double lo = 1e999, hi = 0.0;
    for (long k = 0; k < S.rule->size(); ++k) {
      const double d = distance_to_identity(G, S.rule->nodes[k]);
      if (d < 1e-9) continue;
      const double r = q1.values(k) / (d * d);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    if (pure_su2) {
      S.pass_in("sobolev.weight_equivalence_low", lo, 0.19, 0.51, "q1/|x|^2 on SU(2)");
      S.pass_in("sobolev.weight_equivalence_high", hi, 0.19, 0.51, "q1/|x|^2 on SU(2)");
    } else {
      S.pass_in("sobolev.weight_equivalence_low", lo, 0.79, 2.01, "q1/|x|^2 on T^1");
      S.pass_in("sobolev.weight_equivalence_high", hi, 0.79, 2.01, "q1/|x|^2 on T^1");
    }
  } else {
    S.skip("sobolev.weight_equivalence_low", "stated intervals cover SU(2) and T^1 only");
  }

  // interpolation on kernel-side q1-power norms
  if (S.cfg.margin >= 3 && dual.max_depth() >= 3) {
    const WeightTable w1 = weight_table(S.rule, WeightKind::Q1Pow, 1.0);
    const WeightTable w2 = weight_table(S.rule, WeightKind::Q1Pow, 2.0);
    const WeightTable w3 = weight_table(S.rule, WeightKind::Q1Pow, 3.0);
    std::vector<Field> sigs;
    for (int i = 0; i < 20; ++i)
      sigs.push_back(random_margin_symbol(S.dual, 3, S.cfg.seed + 900 + i));
    const auto grids = inverse_transform_batch(sigs, S.rule);
    double worst = 1.0;
    for (const auto& g : grids) {
      const double h1 = weighted_l2_norm(g, w1);
      const double h2 = weighted_l2_norm(g, w2);
      const double h3 = weighted_l2_norm(g, w3);
      if (h1 > 0 && h3 > 0) worst = std::max(worst, h2 / std::sqrt(h1 * h3));
    }
    S.pass_if("sobolev.interpolation", worst, 1.0 + S.cfg.tol("interpolation", 1e-8));
  } else {
    S.skip("sobolev.interpolation", "needs margin >= 3");
  }

  // monotone embedding with the compactness constant
  {
    const Field sig = random_margin_symbol(S.dual, 0, S.cfg.seed + 950);
    const GridFunction g = inverse_transform(sig, S.rule);
    const WeightTable w1 = weight_table(S.rule, WeightKind::Q1Pow, 1.0);
    const WeightTable w2 = weight_table(S.rule, WeightKind::Q1Pow, 2.0);
    const double qmax = q1_values(S.rule).values.maxCoeff();
    const double lhs = weighted_l2_norm(g, w2);
    const double rhs = std::pow(qmax, 0.5) * weighted_l2_norm(g, w1);
    S.pass_if("sobolev.monotone_embedding", lhs / std::max(1e-300, rhs), 1.0 + 1e-12,
              "||.||_{H^2} <= (max q1)^{1/2} ||.||_{H^1}");
  }

  // weak Leibniz measured constants
  if (S.cfg.margin >= 2 && dual.max_depth() >= 2) {
    for (int s = 1; s <= 2; ++s)
      for (int pcase = 0; pcase < 2; ++pcase) {
        const bool p2 = (pcase == 0);
        double C = 0.0;
        for (int i = 0; i < 200; ++i) {
          const Field s1 = random_margin_symbol(S.dual, s, S.cfg.seed + 1000 + 2 * i);
          const Field s2 = random_margin_symbol(S.dual, s, S.cfg.seed + 1001 + 2 * i);
          const double lhs = p2 ? hs_norm_diffside(s1 * s2, s) : linfs_norm(s1 * s2, s);
          double rhs = 0.0;
          for (int s1k = 0; s1k <= s; ++s1k) {
            const int s2k = s - s1k;
            const double a = linfs_norm(s1, s1k);
            const double b = p2 ? hs_norm_diffside(s2, s2k) : linfs_norm(s2, s2k);
            rhs += a * b;
          }
          if (rhs > 0) C = std::max(C, lhs / rhs);
        }
        const std::string name =
            std::string("sobolev.weak_leibniz_") + (p2 ? "l2" : "linf") + "_s" + std::to_string(s);
        S.results.push_back({name, std::isfinite(C) ? "pass" : "fail", C, 0.0,
                             "measured constant over 200 random pairs", S.lap()});
      }
  } else {
    S.skip("sobolev.weak_leibniz_l2_s1", "needs margin >= 2");
  }

  // power-symbol bound for spectral (commuting) symbols
  if (dual.max_depth() >= 1) {
    const Field sig = spectral_symbol(S.dual, [](double lam) {
      return cplx(0.9 * std::cos(lam), 0.9 * std::sin(0.37 * lam));
    });
    double worst2 = 0.0, worstInf = 0.0;
    const double base2 = hs_norm_diffside(sig, 1), baseInf = linfs_norm(sig, 1);
    const double sup = linf_norm(sig);
    Field pow = sig;
    for (int k = 2; k <= 16; ++k) {
      pow = pow * sig;
      const double b2 = base2 * k * std::pow(sup, k - 1);
      const double bI = baseInf * k * std::pow(sup, k - 1);
      if (b2 > 0) worst2 = std::max(worst2, hs_norm_diffside(pow, 1) / b2);
      if (bI > 0) worstInf = std::max(worstInf, linfs_norm(pow, 1) / bI);
    }
    S.pass_if("sobolev.power_bound_l2", worst2, 1.0 + S.cfg.tol("power_bound", 1e-10));
    S.pass_if("sobolev.power_bound_linf", worstInf, 1.0 + S.cfg.tol("power_bound", 1e-10));
  }
}

void multiplier_checks(Suite& S) {
  const Dual& dual = *S.dual;
  const auto& G = S.cfg.group;
  const int n = G.dim();
  const int s_default = n / 2 + 1;

  // partition of unity over the covered dyadic span
  for (auto shape : {CutoffShape::Bump, CutoffShape::Smoothstep}) {
    const DyadicPartition part = make_partition(shape);
    double dev = 0.0;
    for (double lam = 4.0; lam <= 4096.0; lam *= 1.1) {
      double sum = 0.0;
      for (int j = -16; j <= 24; ++j) sum += part.eta(lam / std::exp2(double(j)));
      dev = std::max(dev, std::abs(sum - 1.0));
    }
    S.pass_if(shape == CutoffShape::Bump ? "multipliers.partition_unity_bump"
                                         : "multipliers.partition_unity_smoothstep",
              dev, S.cfg.tol("partition", 1e-12));
  }

  // band projectors are exact idempotents
  {
    const Field proj = spectral_symbol(S.dual, [&](double lam) {
      return cplx((lam >= 2.0 && lam <= dual.lambda_max() / 2.0) ? 1.0 : 0.0, 0.0);
    });
    double dev = 0.0;
    const Field sq = proj * proj;
    for (int p = 0; p < dual.size(); ++p)
      dev = std::max(dev, (sq.at(p) - proj.at(p)).cwiseAbs().maxCoeff());
    S.pass_if("multipliers.projector_idempotent", dev, 0.0);
  }

  if (S.cfg.margin >= s_default && dual.max_depth() >= s_default) {
    const DyadicPartition part = make_partition(CutoffShape::Bump);

    // unitary-conjugation invariance of the Hormander norm for spectral symbols
    {
      Rng rng(S.cfg.seed + 5);
      const Field spec = spectral_symbol(S.dual, [](double lam) {
        return cplx(1.0 / (1.0 + lam), std::sin(lam) / (1.0 + lam));
      });
      Field conj = spec;
      for (int p = 0; p < dual.size(); ++p) {
        const int d = dual.dim(p);
        Eigen::HouseholderQR<Mat> qr(rng.gaussian_matrix(d, d));
        const Mat Q = qr.householderQ();
        conj.at(p) = Q * spec.at(p) * Q.adjoint();
      }
      const double a = hormander_norm(spec, s_default, part).value;
      const double b = hormander_norm(conj, s_default, part).value;
      S.pass_if("multipliers.hormander_unitary_invariance",
                std::abs(a - b) / std::max(1e-300, a), S.cfg.tol("unitary_invariance", 1e-10));
    }

    // checker coherence: hormander <= C * mihlin on a mixed family
    {
      double C = 0.0;
      std::vector<Field> family;
      family.push_back(identity_symbol(S.dual));
      family.push_back(spectral_symbol(S.dual, [](double lam) { return cplx(1.0 / (1.0 + lam), 0.0); }));
      family.push_back(spectral_symbol(S.dual, [](double lam) {
        return std::exp(cplx(0.0, 1.5 * std::log1p(lam)));
      }));
      for (const auto& sig : family) {
        const double h = hormander_norm(sig, s_default, part).value;
        const double m = mihlin_constant(sig).value;
        if (m > 0) C = std::max(C, h / m);
      }
      S.results.push_back({"multipliers.checker_coherence", std::isfinite(C) ? "pass" : "fail",
                           C, 0.0, "measured hormander/mihlin ratio", S.lap()});
    }

    // indicator blocks vs smooth cutoff
    {
      const Field sig = spectral_symbol(S.dual, [](double lam) {
        return std::exp(cplx(0.0, 2.0 * std::log1p(lam)));
      });
      const double smooth = hormander_norm(sig, s_default, part).value;
      // indicator variant: chi = 1_{lam < 1} makes eta the block indicator 1_{[1,2)}
      DyadicPartition ind;
      ind.chi = [](double lam) { return (lam < 1.0) ? 1.0 : 0.0; };
      const double boxed = hormander_norm(sig, s_default, ind).value;
      const double ratio = (boxed > 0) ? smooth / boxed : 0.0;
      S.results.push_back({"multipliers.indicator_vs_smooth",
                           (std::isfinite(ratio) && ratio > 0) ? "pass" : "fail", ratio, 0.0,
                           "measured ratio of the two norms", S.lap()});
    }
  } else {
    S.skip("multipliers.hormander_unitary_invariance",
           "needs margin >= " + std::to_string(s_default));
    S.skip("multipliers.checker_coherence", "needs margin >= " + std::to_string(s_default));
    S.skip("multipliers.indicator_vs_smooth", "needs margin >= " + std::to_string(s_default));
  }

  // heat kernel: positivity, mass, symmetry, and the Gaussian bound at an
  // admissible t for this band
  {
    double tlo = 1e-4;
    while (tlo < 64.0 && heat_tail(G, dual.lambda_max(), tlo) >= 1e-13) tlo *= 1.25;
    if (tlo >= 64.0) {
      S.skip("multipliers.heat_positivity", "no admissible t for this band");
    } else {
      const GridFunction pt = heat_kernel(S.dual, S.rule, tlo);
      double minv = 1e300, maxv = 0.0;
      for (long k = 0; k < pt.values.size(); ++k) {
        minv = std::min(minv, pt.values(k).real());
        maxv = std::max(maxv, pt.values(k).real());
      }
      // true values at far nodes can underflow the alternating-series
      // roundoff, so positivity is asserted up to a relative floor
      const bool pos = minv > -1e-12 * maxv;
      S.results.push_back({"multipliers.heat_positivity", pos ? "pass" : "fail", minv, 0.0,
                           "min over nodes at t=" + std::to_string(tlo), S.lap()});
      // mass = trivial coefficient
      const Field back = forward_transform(pt, S.dual);
      const double mass = std::abs(back.at(dual.trivial_index())(0, 0) - 1.0);
      S.pass_if("multipliers.heat_mass", mass, S.cfg.tol("heat_mass", 1e-12));
      // symmetry p_t(x inverse) = p_t(x): compare synthesis at inverted nodes
      double dev = 0.0;
      const Field hs = heat_symbol(S.dual, tlo);
      Rng rng(S.cfg.seed + 6);
      for (int i = 0; i < 64; ++i) {
        const long k = rng.uniform_int(0, S.rule->size() - 1);
        const GroupElement inv = inverse(G, S.rule->nodes[k]);
        const auto mats = dual.evaluate_all(inv);
        cplx at_inv(0.0, 0.0);
        for (int p = 0; p < dual.size(); ++p)
          at_inv += double(dual.dim(p)) * (mats[p] * hs.at(p)).trace();
        dev = std::max(dev, std::abs(at_inv - pt.values(k)));
      }
      S.pass_if("multipliers.heat_symmetry", dev, S.cfg.tol("heat_symmetry", 1e-10));
      // Gaussian upper bound with a measured constant
      double C = 1.0;
      for (int it = 0; it < 60; ++it) {
        bool ok = true;
        for (long k = 0; k < pt.values.size(); ++k) {
          const double d = distance_to_identity(G, S.rule->nodes[k]);
          const double bound = C / std::max(1e-300, ball_volume(G, std::sqrt(tlo))) *
                               std::exp(-d * d / (C * tlo));
          if (pt.values(k).real() > bound) {
            ok = false;
            break;
          }
        }
        if (ok) break;
        C *= 1.3;
      }
      S.results.push_back({"multipliers.heat_gaussian_bound", C < 1e10 ? "pass" : "fail", C,
                           0.0, "measured Gaussian constant", S.lap()});
    }
  }

  // heat moment scaling: needs an admissible and unsaturated t window
  {
    double tlo = 1e-4;
    while (tlo < 64.0 && heat_tail(G, dual.lambda_max(), tlo) >= 1e-13) tlo *= 1.25;
    const double diam = group_diameter(G);
    const double thi_max = std::pow(diam / 6.0, 2.0);
    if (tlo >= 64.0 || 4.0 * tlo > thi_max) {
      S.skip("multipliers.heat_moment_slope", "band too small for an unsaturated t window");
    } else {
      std::vector<double> ts, m1, m2;
      for (double t = tlo; t <= 4.0 * tlo * 1.0001; t *= std::sqrt(2.0)) {
        const GridFunction pt = heat_kernel(S.dual, S.rule, t);
        ts.push_back(t);
        m1.push_back(heat_moment(pt, 1.0));
        m2.push_back(heat_moment(pt, 2.0));
      }
      const double sl1 = fit_loglog_slope(ts, m1);
      const double sl2 = fit_loglog_slope(ts, m2);
      S.pass_in("multipliers.heat_moment_slope_s1", sl1, 0.45, 0.55, "target 1/2");
      S.pass_in("multipliers.heat_moment_slope_s2", sl2, 0.9, 1.1, "target 1");
    }
  }
}

}  // namespace

std::vector<CheckResult> run_invariant_suite(const RunConfig& cfg) {
  Suite S{cfg, {}, nullptr, nullptr};
  S.dual = Dual::make(cfg.group, cfg.band);
  S.rule = haar_quadrature(cfg.group, label_bound(cfg.group, cfg.band));
  group_checks(S);
  rep_checks(S);
  fourier_checks(S);
  symbol_checks(S);
  sobolev_checks(S);
  multiplier_checks(S);
  return S.results;
}

std::string suite_to_json(const RunConfig& cfg, const std::vector<CheckResult>& results) {
  JsonWriter w;
  w.begin_object();
  w.key("group");
  group_emit(w, cfg.group);
  w.kv("band", cfg.band);
  w.kv("margin", long(cfg.margin));
  w.kv("seed", long(cfg.seed));
  w.key("checks");
  w.begin_array();
  for (const auto& r : results) {
    w.begin_object();
    w.kv("name", r.name);
    w.kv("status", r.status);
    w.kv("measured", r.measured);
    w.kv("threshold", r.threshold);
    w.kv("note", r.note);
    w.kv("seconds", r.seconds);
    w.end_object();
  }
  w.end_array();
  int fails = 0;
  for (const auto& r : results) fails += (r.status == "fail");
  w.kv("failures", long(fails));
  w.end_object();
  return w.str();
}

}  // namespace ghat
