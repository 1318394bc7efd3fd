#include "ghat/multiplier.hpp"

#include <algorithm>
#include <cmath>

namespace ghat {

ScalarSpectralFunction unit_bump() {
  return {[](double lam) -> cplx {
            if (lam <= 0.0 || lam >= 1.0) return 0.0;
            return std::exp(-1.0 / (lam * (1.0 - lam))) * std::exp(4.0);
          },
          "bump01"};
}

DyadicPartition make_partition(CutoffShape shape) {
  DyadicPartition p;
  p.shape = shape;
  if (shape == CutoffShape::Bump) {
    // transition by the normalized C^inf step h(t)/(h(t)+h(1-t)), h = e^{-1/t}
    p.chi = [](double lam) -> double {
      if (lam <= 1.0) return 1.0;
      if (lam >= 2.0) return 0.0;
      const double t = lam - 1.0;
      auto h = [](double u) { return u <= 0.0 ? 0.0 : std::exp(-1.0 / u); };
      return h(1.0 - t) / (h(t) + h(1.0 - t));
    };
  } else {
    // quintic smoothstep, exactly 0/1 outside the transition
    p.chi = [](double lam) -> double {
      if (lam <= 1.0) return 1.0;
      if (lam >= 2.0) return 0.0;
      const double t = lam - 1.0;
      return 1.0 - t * t * t * (10.0 - 15.0 * t + 6.0 * t * t);
    };
  }
  return p;
}

Field heat_symbol(const DualPtr& dual, double t) {
  return spectral_symbol(dual, [t](double lam) { return cplx(std::exp(-t * lam), 0.0); });
}

double heat_tail(const GroupDescriptor& G, double lambda_max, double t) {
  // chunked enumeration beyond the band until increments die out
  double tail = 0.0;
  double lo = lambda_max;
  double hi = std::max(2.0 * lambda_max, lambda_max + 16.0);
  for (int it = 0; it < 48; ++it) {
    const auto labels = enumerate_band(G, hi);
    double chunk = 0.0;
    for (const auto& l : labels) {
      const double lam = casimir_eigenvalue(l);
      if (lam <= lo) continue;
      const double d = irrep_dim(G, l);
      chunk += d * d * std::exp(-t * lam);
    }
    tail += chunk;
    if (chunk < 1e-18 * std::max(1.0, tail) || chunk == 0.0) break;
    lo = hi;
    hi *= 2.0;
  }
  return tail;
}

GridFunction heat_kernel(const DualPtr& dual, const RulePtr& rule, double t) {
  if (t <= 0.0) throw error("heat_kernel: t must be positive");
  const double tail = heat_tail(dual->group(), dual->lambda_max(), t);
  if (tail >= 1e-12)
    throw error("heat_kernel: truncation tail " + std::to_string(tail) +
                " too large for band (increase the band or t)");
  return inverse_transform(heat_symbol(dual, t), rule);
}

double heat_moment(const GridFunction& pt, double s) {
  const auto& rule = *pt.rule;
  double m = 0.0;
  for (long k = 0; k < rule.size(); ++k)
    m += rule.weights[k] * std::pow(distance_to_identity(rule.group, rule.nodes[k]), s) *
         std::abs(pt.values(k));
  return m;
}

namespace {

Field masked(const Field& sigma, const std::function<double(double)>& mask) {
  Field out = sigma;
  const Dual& dual = *sigma.dual();
  for (int p = 0; p < dual.size(); ++p)
    if (out.valid(p)) out.at(p) = mask(dual.casimir(p)) * sigma.at(p);
  return out;
}

// Dyadic block bookkeeping: block j covers (2^j, 2^{j+2}) for the smooth eta
// and [2^j, 2^{j+1}) for indicators. A block is admissible at order s when the
// localized piece is supported s steps inside the band (measured margin), so
// the band sums below equal the full-dual sums exactly.
struct BlockRange {
  int jmin, jmax;
};

BlockRange block_range(const Dual& dual) {
  double lmin = std::numeric_limits<double>::infinity(), lmax = 0.0;
  for (int p = 0; p < dual.size(); ++p) {
    const double lam = dual.casimir(p);
    if (lam > 0.0) {
      lmin = std::min(lmin, lam);
      lmax = std::max(lmax, lam);
    }
  }
  if (!std::isfinite(lmin)) return {0, -1};
  return {static_cast<int>(std::floor(std::log2(lmin))),
          static_cast<int>(std::floor(std::log2(lmax)))};
}

}  // namespace

HormanderReport hormander_norm(const Field& sigma, int s, const DyadicPartition& eta) {
  const Dual& dual = *sigma.dual();
  const double n = dual.group().dim();
  HormanderReport rep;
  rep.s = s;
  rep.linf = linf_norm(sigma);
  const BlockRange br = block_range(dual);
  double sup = 0.0;
  for (int j = br.jmin; j <= br.jmax; ++j) {
    const double scale = std::exp2(double(j));
    Field piece = masked(sigma, [&](double lam) { return eta.eta(lam / scale); });
    piece.set_margin(piece.measured_margin());
    if (piece.margin() < s) {
      rep.excluded_blocks.push_back(j);
      continue;
    }
    const double h = hs_norm_diffside(piece, s);
    const double r_pow = std::pow(std::exp2(0.5 * double(j)), double(s) - 0.5 * n);
    rep.blocks.push_back({j, r_pow * h});
    sup = std::max(sup, r_pow * h);
  }
  rep.value = rep.linf + sup;
  return rep;
}

MihlinReport mihlin_constant(const Field& sigma) {
  const Dual& dual = *sigma.dual();
  const int n = dual.group().dim();
  MihlinReport rep;
  rep.smax = n / 2 + 1;
  rep.per_order.assign(rep.smax + 1, 0.0);
  const int nf = dual.fund_count();
  for (int k = 0; k <= rep.smax; ++k) {
    double m = 0.0;
    for (const auto& alpha : multi_indices(nf, k)) {
      const Field d = delta_word(alpha, sigma);
      for (int p = 0; p < dual.size(); ++p)
        if (d.valid(p))
          m = std::max(m, std::pow(1.0 + dual.casimir(p), 0.5 * k) * operator_norm(d.at(p)));
    }
    rep.per_order[k] = m;
    rep.value = std::max(rep.value, m);
  }
  return rep;
}

MarcinkiewiczReport marcinkiewicz_constant(const Field& sigma, int s0) {
  const Dual& dual = *sigma.dual();
  const double n = dual.group().dim();
  if (s0 < 1 || s0 > n) throw error("marcinkiewicz_constant: need 1 <= s0 <= n");
  MarcinkiewiczReport rep;
  rep.s0 = s0;
  rep.linf = linf_norm(sigma);
  const BlockRange br = block_range(dual);
  for (int j = br.jmin; j <= br.jmax; ++j) {
    const double lo = std::exp2(double(j)), hi = std::exp2(double(j + 1));
    Field piece = masked(sigma, [&](double lam) { return (lam >= lo && lam < hi) ? 1.0 : 0.0; });
    piece.set_margin(piece.measured_margin());
    if (piece.margin() < s0) {
      rep.excluded_blocks.push_back(j);
      continue;
    }
    const double v = std::exp2(-0.5 * double(j) * (n - s0)) * l1s_norm(piece, s0);
    rep.blocks.push_back({j, v});
    rep.value = std::max(rep.value, v);
  }
  return rep;
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw error("fit_loglog_slope: need >= 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = double(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

SlopeFit heat_scaling_probe(const GroupDescriptor& G, const ScalarSpectralFunction& f, int s,
                            const std::vector<double>& t_grid) {
  if (t_grid.empty()) throw error("heat_scaling_probe: empty t grid");
  if (2 * s == G.dim())
    throw error("heat_scaling_probe: degenerate exponent s = n/2 (the fitted slope vanishes)");
  double tmin = t_grid.front();
  for (double t : t_grid) {
    if (t <= 0.0) throw error("heat_scaling_probe: t must be positive");
    tmin = std::min(tmin, t);
  }
  // supp f(t .) = [0, 1/t]; pad so the support sits s steps inside the band
  const double pad = 1.0 / tmin;
  DualPtr dual = Dual::make(G, pad + (s + 1) * (2.0 * std::sqrt(pad) + 4.0));
  SlopeFit fit;
  for (double t : t_grid) {
    Field sym = spectral_symbol(dual, [&](double lam) { return f.evaluator(t * lam); });
    sym.set_margin(sym.measured_margin());
    if (sym.margin() < s)
      throw error("heat_scaling_probe: t=" + std::to_string(t) + " inadmissible for the band");
    fit.t.push_back(t);
    fit.value.push_back(hs_norm_diffside(sym, s));
  }
  fit.slope = fit_loglog_slope(fit.t, fit.value);
  return fit;
}

namespace {

// || g ||_{H^m(R)}^2 ~ sum_{k<=m} || g^(k) ||_{L^2}^2 on a fine grid, with
// derivatives by central differences. Good enough for a measured-constant
// probe.
double sobolev_1d(const std::function<cplx(double)>& g, double lo, double hi, int m) {
  const int N = 4096;
  const double h = (hi - lo) / N;
  std::vector<cplx> v(N + 1);
  for (int i = 0; i <= N; ++i) v[i] = g(lo + i * h);
  double total = 0.0;
  for (int k = 0; k <= m; ++k) {
    double acc = 0.0;
    for (int i = 0; i <= N; ++i) acc += std::norm(v[i]);
    total += acc * h;
    // difference once more
    std::vector<cplx> d(N + 1, cplx(0, 0));
    for (int i = 1; i < N; ++i) d[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
    v = std::move(d);
  }
  return std::sqrt(total);
}

}  // namespace

std::vector<ImaginaryPowerRow> imaginary_power_probe(const DualPtr& dual, int s,
                                                     const std::vector<double>& alphas,
                                                     const DyadicPartition& eta) {
  std::vector<ImaginaryPowerRow> out;
  for (double a : alphas) {
    const Field sym = spectral_symbol(dual, [a](double lam) -> cplx {
      if (lam <= 0.0) return 1.0;  // trivial mode split off
      return std::exp(cplx(0.0, a * std::log(lam)));
    });
    ImaginaryPowerRow row;
    row.alpha = a;
    row.hormander = hormander_norm(sym, s, eta).value;
    // l.u. H^{s'} with integer s' = s + 1 > s, eta_1 = the same cutoff bump on
    // (1,4); sup over r on a dyadic grid spanning the band.
    const int sp = s + 1;
    double sup = 0.0;
    for (double r = 0.25; r <= 4.0 * dual->lambda_max(); r *= 2.0) {
      const double v = sobolev_1d(
          [&](double lam) -> cplx {
            const double x = r * lam;
            if (x <= 0.0) return 0.0;
            return std::exp(cplx(0.0, a * std::log(x))) * eta.eta(lam);
          },
          0.5, 5.0, sp);
      sup = std::max(sup, v);
    }
    row.lu_sobolev = sup;
    out.push_back(row);
  }
  return out;
}

double lp_ratio_probe(const Field& sigma, double p, const std::vector<GridFunction>& family,
                      const DualPtr& dual) {
  if (family.empty()) throw error("lp_ratio_probe: empty family");
  double m = 0.0;
  for (const auto& f : family) {
    const double nf = lp_norm(f, p);
    if (nf == 0.0) throw error("lp_ratio_probe: zero-norm input");
    m = std::max(m, lp_norm(apply(sigma, f, dual), p) / nf);
  }
  return m;
}

}  // namespace ghat
