#include "ghat/reference.hpp"

namespace ghat::ref {

Field forward_transform(const GridFunction& f, const DualPtr& dual) {
  Field out(dual);
  for (long k = 0; k < f.rule->size(); ++k) {
    const cplx wf = f.rule->weights[k] * f.values(k);
    const auto mats = dual->evaluate_all(f.rule->nodes[k]);
    for (int p = 0; p < dual->size(); ++p) out.at(p) += wf * mats[p].adjoint();
  }
  return out;
}

GridFunction inverse_transform(const Field& sigma, const RulePtr& rule) {
  const DualPtr& dual = sigma.dual();
  CVec v = CVec::Zero(rule->size());
  for (long k = 0; k < rule->size(); ++k) {
    const auto mats = dual->evaluate_all(rule->nodes[k]);
    cplx s(0.0, 0.0);
    for (int p = 0; p < dual->size(); ++p) {
      if (!sigma.valid(p)) continue;
      s += double(dual->dim(p)) * (mats[p] * sigma.at(p)).trace();
    }
    v(k) = s;
  }
  return GridFunction(rule, std::move(v));
}

Mat pw_gram(const DualPtr& dual, const RulePtr& rule) {
  const long D = dual->sum_dim_sq();
  Mat G = Mat::Zero(D, D);
  for (long k = 0; k < rule->size(); ++k) {
    const CVec v = dual->pw_vector(rule->nodes[k]);
    G.noalias() += rule->weights[k] * v * v.adjoint();
  }
  return G;
}

Field delta(int f, const Field& field) {
  const DualPtr& dual = field.dual();
  std::vector<int> w = field.word();
  w.push_back(f);
  std::vector<char> mask = field.valid_mask();
  if (field.margin() < 1) {
    for (int p = 0; p < dual->size(); ++p) {
      if (!mask[p]) continue;
      bool ok = true;
      for (int s : dual->decomp(f, p).summands)
        if (s < 0 || !field.valid(s)) ok = false;
      mask[p] = ok;
    }
  }
  Field out(dual, w, &mask);
  out.set_margin(std::max(0, field.margin() - 1));
  const long Dw = field.word_dim();
  const long dphi = dual->fund_dim(f);
  for (int p = 0; p < dual->size(); ++p) {
    if (!out.valid(p)) continue;
    const long dpi = dual->dim(p);
    Mat M = extend_at(field, f, p);
    const Mat& E = field.at(p);
    for (long w1 = 0; w1 < Dw; ++w1)
      for (long w2 = 0; w2 < Dw; ++w2)
        for (long a = 0; a < dphi; ++a)
          M.block((w1 * dphi + a) * dpi, (w2 * dphi + a) * dpi, dpi, dpi) -=
              E.block(w1 * dpi, w2 * dpi, dpi, dpi);
    out.at(p) = std::move(M);
  }
  return out;
}

}  // namespace ghat::ref
