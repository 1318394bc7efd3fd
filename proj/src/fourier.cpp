#include "ghat/fourier.hpp"

#include <cmath>

#include "ghat/parallel.hpp"

namespace ghat {

GridFunction::GridFunction(RulePtr r, CVec v) : rule(std::move(r)), values(std::move(v)) {
  if (values.size() != rule->size()) throw error("grid function length != node count");
}

GridFunction make_grid(const RulePtr& rule, const std::function<cplx(const GroupElement&)>& f) {
  CVec v(rule->size());
  for (long k = 0; k < rule->size(); ++k) v(k) = f(rule->nodes[k]);
  return GridFunction(rule, std::move(v));
}

static void check_rule_covers(const QuadratureRule& rule, const Dual& dual) {
  if (!(rule.group == dual.group())) throw error("quadrature rule group mismatch");
  const int need = label_bound(dual.group(), dual.lambda_max());
  if (rule.exactness_band < 2 * need)
    throw error("quadrature exactness band " + std::to_string(rule.exactness_band) +
                " insufficient for dual label bound " + std::to_string(need));
}

static constexpr long kChunk = 256;

Field forward_transform(const GridFunction& f, const DualPtr& dual) {
  check_rule_covers(*f.rule, *dual);
  const long n = f.rule->size();
  const long D = dual->sum_dim_sq();
  const int nthreads = num_threads();

  // y = sum_k conj(w_k f_k) * pw(x_k); thread accumulators merged in order.
  std::vector<CVec> acc(nthreads, CVec::Zero(D));
#if defined(_OPENMP)
#pragma omp parallel
  {
    const int t = thread_id();
    Dual::EvalWorkspace ws;
    dual->init_workspace(ws);
    Mat V(D, kChunk);
    CVec wf(kChunk);
#pragma omp for schedule(static)
    for (long c0 = 0; c0 < n; c0 += kChunk) {
      const long m = std::min(n, c0 + kChunk) - c0;
      for (long k = 0; k < m; ++k) {
        dual->pw_vector(f.rule->nodes[c0 + k], ws);
        V.col(k) = ws.pw;
        wf(k) = std::conj(f.rule->weights[c0 + k] * f.values(c0 + k));
      }
      acc[t].noalias() += V.leftCols(m) * wf.head(m);
    }
  }
#else
  {
    Dual::EvalWorkspace ws;
    dual->init_workspace(ws);
    Mat V(D, kChunk);
    CVec wf(kChunk);
    for (long c0 = 0; c0 < n; c0 += kChunk) {
      const long m = std::min(n, c0 + kChunk) - c0;
      for (long k = 0; k < m; ++k) {
        dual->pw_vector(f.rule->nodes[c0 + k], ws);
        V.col(k) = ws.pw;
        wf(k) = std::conj(f.rule->weights[c0 + k] * f.values(c0 + k));
      }
      acc[0].noalias() += V.leftCols(m) * wf.head(m);
    }
  }
#endif
  CVec y = std::move(acc[0]);
  for (int t = 1; t < nthreads; ++t) y += acc[t];

  // f^(pi)_{ij} = conj(y[off + j*d + i]) / sqrt(d)
  Field out(dual);
  for (int p = 0; p < dual->size(); ++p) {
    const long d = dual->dim(p);
    const double sc = 1.0 / std::sqrt(double(d));
    Mat& mp = out.at(p);
    const long off = dual->pw_offset(p);
    for (long r = 0; r < d; ++r)
      for (long c = 0; c < d; ++c) mp(c, r) = sc * std::conj(y(off + r * d + c));
  }
  return out;
}

std::vector<GridFunction> inverse_transform_batch(const std::vector<Field>& sigmas,
                                                  const RulePtr& rule) {
  if (sigmas.empty()) return {};
  const DualPtr& dual = sigmas.front().dual();
  for (const auto& s : sigmas)
    if (s.dual() != dual || s.word_size() != 0)
      throw error("inverse_transform_batch: symbols must share a dual and have empty word");
  if (!(rule->group == dual->group())) throw error("quadrature rule group mismatch");
  const long n = rule->size();
  const int P = dual->size();
  const int B = static_cast<int>(sigmas.size());
  const long D = dual->sum_dim_sq();

  // Row b holds sqrt(d_pi) * sigma_b(pi)^T flattened, so that
  // f_b(x) = sum_pi d_pi Tr(pi(x) sigma_b(pi)) = S.row(b) . pw(x).
  Mat S = Mat::Zero(B, D);
  for (int b = 0; b < B; ++b)
    for (int p = 0; p < P; ++p) {
      if (!sigmas[b].valid(p)) continue;
      const long d = dual->dim(p);
      const double sc = std::sqrt(double(d));
      const Mat& sp = sigmas[b].at(p);
      const long off = dual->pw_offset(p);
      for (long r = 0; r < d; ++r)
        for (long c = 0; c < d; ++c) S(b, off + r * d + c) = sc * sp(c, r);
    }

  Mat vals(B, n);
#if defined(_OPENMP)
#pragma omp parallel
  {
    Dual::EvalWorkspace ws;
    dual->init_workspace(ws);
    Mat V(D, kChunk);
#pragma omp for schedule(static)
    for (long c0 = 0; c0 < n; c0 += kChunk) {
      const long m = std::min(n, c0 + kChunk) - c0;
      for (long k = 0; k < m; ++k) {
        dual->pw_vector(rule->nodes[c0 + k], ws);
        V.col(k) = ws.pw;
      }
      vals.middleCols(c0, m).noalias() = S * V.leftCols(m);
    }
  }
#else
  {
    Dual::EvalWorkspace ws;
    dual->init_workspace(ws);
    Mat V(D, kChunk);
    for (long c0 = 0; c0 < n; c0 += kChunk) {
      const long m = std::min(n, c0 + kChunk) - c0;
      for (long k = 0; k < m; ++k) {
        dual->pw_vector(rule->nodes[c0 + k], ws);
        V.col(k) = ws.pw;
      }
      vals.middleCols(c0, m).noalias() = S * V.leftCols(m);
    }
  }
#endif

  std::vector<GridFunction> out;
  out.reserve(B);
  for (int b = 0; b < B; ++b) out.emplace_back(rule, vals.row(b).transpose());
  return out;
}

GridFunction inverse_transform(const Field& sigma, const RulePtr& rule) {
  return inverse_transform_batch({sigma}, rule).front();
}

double plancherel_norm_sq(const Field& sigma) { return l2_norm_sq(sigma); }

Field convolve(const GridFunction& f, const GridFunction& g, const DualPtr& dual) {
  if (f.rule != g.rule) throw error("convolve: functions must share a quadrature rule");
  const Field fh = forward_transform(f, dual);
  const Field gh = forward_transform(g, dual);
  return gh * fh;
}

cplx convolve_direct_at(const std::function<cplx(const GroupElement&)>& f,
                        const std::function<cplx(const GroupElement&)>& g, const RulePtr& rule,
                        const GroupElement& x) {
  const GroupDescriptor& G = rule->group;
  cplx s(0.0, 0.0);
  for (long k = 0; k < rule->size(); ++k) {
    const GroupElement& y = rule->nodes[k];
    s += rule->weights[k] * f(y) * g(multiply(G, inverse(G, y), x));
  }
  return s;
}

GridFunction apply(const Field& sigma, const GridFunction& f, const DualPtr& dual) {
  const Field fh = forward_transform(f, dual);
  return inverse_transform(sigma * fh, f.rule);
}

double lp_norm(const GridFunction& f, double p) {
  const auto& w = f.rule->weights;
  if (std::isinf(p)) {
    double m = 0.0;
    for (long k = 0; k < f.values.size(); ++k) m = std::max(m, std::abs(f.values(k)));
    return m;
  }
  double s = 0.0;
  for (long k = 0; k < f.values.size(); ++k) s += w[k] * std::pow(std::abs(f.values(k)), p);
  return std::pow(s, 1.0 / p);
}

double l2_norm_sq_grid(const GridFunction& f) {
  double s = 0.0;
  for (long k = 0; k < f.values.size(); ++k)
    s += f.rule->weights[k] * std::norm(f.values(k));
  return s;
}

Mat pw_gram(const DualPtr& dual, const RulePtr& rule) {
  check_rule_covers(*rule, *dual);
  const long n = rule->size();
  const long D = dual->sum_dim_sq();
  const int nthreads = num_threads();
  std::vector<Mat> acc(nthreads, Mat::Zero(D, D));

#if defined(_OPENMP)
#pragma omp parallel
  {
    const int t = thread_id();
    Dual::EvalWorkspace ws;
    dual->init_workspace(ws);
    Mat V(D, kChunk);
#pragma omp for schedule(static)
    for (long c0 = 0; c0 < n; c0 += kChunk) {
      const long m = std::min(n, c0 + kChunk) - c0;
      for (long k = 0; k < m; ++k) {
        dual->pw_vector(rule->nodes[c0 + k], ws);
        V.col(k) = std::sqrt(rule->weights[c0 + k]) * ws.pw;
      }
      acc[t].selfadjointView<Eigen::Lower>().rankUpdate(V.leftCols(m), 1.0);
    }
  }
#else
  {
    Dual::EvalWorkspace ws;
    dual->init_workspace(ws);
    Mat V(D, kChunk);
    for (long c0 = 0; c0 < n; c0 += kChunk) {
      const long m = std::min(n, c0 + kChunk) - c0;
      for (long k = 0; k < m; ++k) {
        dual->pw_vector(rule->nodes[c0 + k], ws);
        V.col(k) = std::sqrt(rule->weights[c0 + k]) * ws.pw;
      }
      acc[0].selfadjointView<Eigen::Lower>().rankUpdate(V.leftCols(m), 1.0);
    }
  }
#endif
  Mat G = std::move(acc[0]);
  for (int t = 1; t < nthreads; ++t) G += acc[t];
  Mat full = G.selfadjointView<Eigen::Lower>();
  return full;
}

}  // namespace ghat
