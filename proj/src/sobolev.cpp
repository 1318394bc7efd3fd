#include "ghat/sobolev.hpp"

#include <cmath>

namespace ghat {

namespace {

// per-node ||phi(x)-I||_HS^2 for each fundamental rep
std::vector<RVec> fund_defects(const RulePtr& rule) {
  const GroupDescriptor& G = rule->group;
  const auto fund = fundamental_set(G);
  std::vector<RVec> out(fund.size(), RVec(rule->size()));
  for (long k = 0; k < rule->size(); ++k)
    for (size_t f = 0; f < fund.size(); ++f) {
      const Mat m = evaluate_irrep(G, fund[f], rule->nodes[k]);
      out[f](k) = (m - Mat::Identity(m.rows(), m.cols())).squaredNorm();
    }
  return out;
}

}  // namespace

WeightTable q1_values(const RulePtr& rule) {
  const auto defects = fund_defects(rule);
  WeightTable t{rule, WeightKind::Q1, 1.0, RVec::Zero(rule->size())};
  for (const auto& d : defects) t.values += d;
  return t;
}

WeightTable qs_values(int s, const RulePtr& rule) {
  if (s < 1) throw error("qs_values: s must be >= 1");
  const auto defects = fund_defects(rule);
  const int nf = static_cast<int>(defects.size());
  WeightTable t{rule, WeightKind::Qs, double(s), RVec::Zero(rule->size())};
  for (const auto& alpha : multi_indices(nf, s)) {
    RVec term = RVec::Ones(rule->size());
    for (int f = 0; f < nf; ++f)
      for (int k = 0; k < alpha[f]; ++k) term = term.cwiseProduct(defects[f]);
    t.values += term;
  }
  return t;
}

WeightTable weight_table(const RulePtr& rule, WeightKind kind, double s) {
  switch (kind) {
    case WeightKind::Q1: return q1_values(rule);
    case WeightKind::Qs: return qs_values(static_cast<int>(s), rule);
    case WeightKind::Q1Pow: {
      WeightTable t = q1_values(rule);
      t.kind = WeightKind::Q1Pow;
      t.s = s;
      for (long k = 0; k < t.values.size(); ++k) t.values(k) = std::pow(t.values(k), s);
      return t;
    }
    case WeightKind::DistPow: {
      WeightTable t{rule, WeightKind::DistPow, s, RVec(rule->size())};
      for (long k = 0; k < rule->size(); ++k)
        t.values(k) = std::pow(distance_to_identity(rule->group, rule->nodes[k]), 2.0 * s);
      return t;
    }
  }
  throw error("unknown weight kind");
}

double hs_norm_diffside(const Field& sigma, int s) {
  if (sigma.word_size() != 0) throw error("hs_norm_diffside expects a symbol");
  if (s == 0) return std::sqrt(l2_norm_sq(sigma));
  const int nf = sigma.dual()->fund_count();
  double sum = 0.0;
  for (const auto& alpha : multi_indices(nf, s)) sum += l2_norm_sq(delta_word(alpha, sigma));
  return std::sqrt(sum);
}

namespace {

double weighted_l2(const GridFunction& f, const RVec& w) {
  double s = 0.0;
  for (long k = 0; k < f.values.size(); ++k)
    s += f.rule->weights[k] * w(k) * std::norm(f.values(k));
  return std::sqrt(std::max(0.0, s));
}

}  // namespace

double weighted_l2_norm(const GridFunction& f, const WeightTable& w) {
  if (f.rule != w.rule) throw error("weighted_l2_norm: rule mismatch");
  return weighted_l2(f, w.values);
}

double hs_norm_kernelside(const Field& sigma, double s, WeightKind kind) {
  const RulePtr rule = haar_quadrature(sigma.dual()->group(),
                                       label_bound(sigma.dual()->group(), sigma.dual()->lambda_max()));
  const GridFunction f = inverse_transform(sigma, rule);
  const WeightTable w = weight_table(rule, kind, s);
  return weighted_l2(f, w.values);
}

NormWithEstimate hs_norm_kernelside_refined(const Field& sigma, double s, WeightKind kind) {
  const int b = label_bound(sigma.dual()->group(), sigma.dual()->lambda_max());
  NormWithEstimate out;
  double prev = 0.0;
  for (int pass = 0; pass < 2; ++pass) {
    const RulePtr rule = haar_quadrature(sigma.dual()->group(), pass == 0 ? b : 2 * b);
    const GridFunction f = inverse_transform(sigma, rule);
    const WeightTable w = weight_table(rule, kind, s);
    const double v = weighted_l2(f, w.values);
    if (pass == 0)
      prev = v;
    else {
      out.value = prev;
      out.quadrature_error_estimate = std::abs(v - prev);
    }
  }
  return out;
}

double linfs_norm(const Field& sigma, int s) {
  if (s == 0) return linf_norm(sigma);
  const int nf = sigma.dual()->fund_count();
  double m = 0.0;
  for (const auto& alpha : multi_indices(nf, s))
    m = std::max(m, linf_norm(delta_word(alpha, sigma)));
  return m;
}

double l1s_norm(const Field& sigma, int s0) {
  if (s0 < 1) throw error("l1s_norm: s0 must be >= 1");
  const Dual& dual = *sigma.dual();
  const int nf = dual.fund_count();
  double sum = 0.0;
  for (const auto& alpha : multi_indices(nf, s0)) {
    const Field d = delta_word(alpha, sigma);
    for (int p = 0; p < dual.size(); ++p)
      if (d.valid(p)) sum += dual.dim(p) * trace_norm(d.at(p));
  }
  return sum;
}

double weighted_sup(const GridFunction& f, int s0) {
  double m = 0.0;
  for (long k = 0; k < f.values.size(); ++k) {
    const double d = distance_to_identity(f.rule->group, f.rule->nodes[k]);
    m = std::max(m, std::pow(d, s0) * std::abs(f.values(k)));
  }
  return m;
}

}  // namespace ghat
