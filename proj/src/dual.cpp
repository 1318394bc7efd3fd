#include "ghat/dual.hpp"

#include <algorithm>
#include <cmath>

#include "ghat/wigner.hpp"

namespace ghat {

std::shared_ptr<const Dual> Dual::make(const GroupDescriptor& G, double lambda_max) {
  auto d = std::make_shared<Dual>();
  d->group_ = G;
  d->lambda_max_ = lambda_max;
  d->labels_ = enumerate_band(G, lambda_max);
  const int n = static_cast<int>(d->labels_.size());
  d->dims_.resize(n);
  d->casimirs_.resize(n);
  d->pw_offset_.resize(n);
  long off = 0;
  for (int p = 0; p < n; ++p) {
    d->dims_[p] = irrep_dim(G, d->labels_[p]);
    d->casimirs_[p] = casimir_eigenvalue(d->labels_[p]);
    d->index_[d->labels_[p]] = p;
    d->pw_offset_[p] = off;
    off += static_cast<long>(d->dims_[p]) * d->dims_[p];
  }
  d->sum_dim_sq_ = off;
  d->trivial_ = d->index_.at(trivial_label(G));

  d->fund_ = fundamental_set(G);
  d->fund_dims_.resize(d->fund_.size());
  for (size_t f = 0; f < d->fund_.size(); ++f) d->fund_dims_[f] = irrep_dim(G, d->fund_[f]);

  d->decomp_.resize(d->fund_.size());
  d->max_step_ = 0.0;
  for (size_t f = 0; f < d->fund_.size(); ++f) {
    d->decomp_[f].resize(n);
    for (int p = 0; p < n; ++p) {
      TensorDecomposition td = decompose_fund_tensor(G, d->fund_[f], d->labels_[p]);
      Decomp& dc = d->decomp_[f][p];
      dc.labels = td.summands;
      dc.U = std::move(td.intertwiner);
      for (const auto& s : td.summands) {
        auto it = d->index_.find(s);
        dc.summands.push_back(it == d->index_.end() ? -1 : it->second);
        dc.dims.push_back(irrep_dim(G, s));
        d->max_step_ =
            std::max(d->max_step_, std::abs(casimir_eigenvalue(s) - d->casimirs_[p]));
      }
    }
  }

  // interior depth: depth 0 = in band; depth k+1 requires every one-step
  // neighbor to exist in band with depth >= k.
  d->depth_.assign(n, 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int p = 0; p < n; ++p) {
      int dmin = INT32_MAX;
      bool ok = true;
      for (size_t f = 0; f < d->fund_.size() && ok; ++f)
        for (int s : d->decomp_[f][p].summands) {
          if (s < 0) {
            ok = false;
            break;
          }
          dmin = std::min(dmin, d->depth_[s]);
        }
      const int want = ok ? std::min(dmin + 1, n + 1) : 0;
      if (want > d->depth_[p]) {
        d->depth_[p] = want;
        changed = true;
      }
    }
  }
  d->max_depth_ = 0;
  for (int p = 0; p < n; ++p) d->max_depth_ = std::max(d->max_depth_, d->depth_[p]);

  // eager generator cache
  d->gens_.resize(n);
  for (int p = 0; p < n; ++p) {
    d->gens_[p].resize(G.dim());
    for (int j = 0; j < G.dim(); ++j) d->gens_[p][j] = infinitesimal(G, d->labels_[p], j);
  }
  return d;
}

int Dual::index_of(const IrrepLabel& l) const {
  auto it = index_.find(l);
  return it == index_.end() ? -1 : it->second;
}

double Dual::lambda_interior_edge(int s) const {
  double lo = std::numeric_limits<double>::infinity();
  for (int p = 0; p < size(); ++p)
    if (depth_[p] < s) lo = std::min(lo, casimirs_[p]);
  return lo;
}

Mat Dual::generator(int p, int j) const { return gens_[p][j]; }

void Dual::init_workspace(EvalWorkspace& ws) const {
  std::vector<long> lmax(group_.su2_leaves(), 0);
  for (const auto& l : labels_)
    for (size_t i = 0; i < l.su2.size(); ++i) lmax[i] = std::max(lmax[i], l.su2[i]);
  ws.dtabs.resize(group_.su2_leaves());
  ws.pa.resize(group_.su2_leaves());
  ws.pg.resize(group_.su2_leaves());
  for (size_t i = 0; i < ws.dtabs.size(); ++i) {
    ws.dtabs[i].resize(lmax[i] + 1);
    for (long l = 0; l <= lmax[i]; ++l) ws.dtabs[i][l].resize(l + 1, l + 1);
    ws.pa[i].resize(2 * lmax[i] + 1);
    ws.pg[i].resize(2 * lmax[i] + 1);
  }
  ws.mats.resize(labels_.size());
  long dm = 1;
  for (size_t p = 0; p < labels_.size(); ++p) {
    ws.mats[p].resize(dims_[p], dims_[p]);
    dm = std::max<long>(dm, dims_[p]);
  }
  ws.pw.resize(sum_dim_sq_);
  ws.scratch.resize(dm, dm);
}

void Dual::evaluate_all(const GroupElement& g, EvalWorkspace& ws) const {
  const cplx I(0.0, 1.0);
  for (size_t i = 0; i < ws.dtabs.size(); ++i) {
    const EulerZYZ e = euler_zyz(g.su2[i]);
    const int lmax = static_cast<int>(ws.dtabs[i].size()) - 1;
    wigner_d_all(lmax, e.beta, ws.dtabs[i]);
    // phase tables for 2m = -lmax..lmax, indexed by 2m + lmax
    for (int t = -lmax; t <= lmax; ++t) {
      ws.pa[i][t + lmax] = std::exp(-I * (0.5 * t * e.alpha));
      ws.pg[i][t + lmax] = std::exp(-I * (0.5 * t * e.gamma));
    }
  }
  for (size_t p = 0; p < labels_.size(); ++p) {
    const IrrepLabel& l = labels_[p];
    cplx phase(1.0, 0.0);
    for (size_t i = 0; i < l.torus.size(); ++i)
      phase *= std::exp(I * (double(l.torus[i]) * g.angles[i]));
    Mat& m = ws.mats[p];
    if (dims_[p] == 1) {
      m(0, 0) = phase;
      continue;
    }
    // build the tensor product over su2 leaves directly into m
    bool first = true;
    long cur = 1;
    for (size_t i = 0; i < l.su2.size(); ++i) {
      const long li = l.su2[i];
      if (li == 0) continue;
      const Eigen::MatrixXd& dm = ws.dtabs[i][li];
      const long n = li + 1;
      const int lmax = static_cast<int>(ws.dtabs[i].size()) - 1;
      const cplx* pa = ws.pa[i].data() + lmax;  // pa[2m]
      const cplx* pg = ws.pg[i].data() + lmax;
      if (first) {
        for (long r = 0; r < n; ++r) {
          const cplx ea = pa[li - 2 * r] * phase;  // 2m' = li - 2r
          for (long c = 0; c < n; ++c) m(r, c) = ea * dm(r, c) * pg[li - 2 * c];
        }
        cur = n;
        first = false;
      } else {
        ws.scratch.topLeftCorner(cur, cur) = m.topLeftCorner(cur, cur);
        for (long r = 0; r < n; ++r) {
          const cplx ea = pa[li - 2 * r];
          for (long c = 0; c < n; ++c) {
            const cplx D = ea * dm(r, c) * pg[li - 2 * c];
            for (long r0 = 0; r0 < cur; ++r0)
              for (long c0 = 0; c0 < cur; ++c0)
                m(r0 * n + r, c0 * n + c) = ws.scratch(r0, c0) * D;
          }
        }
        cur *= n;
      }
    }
  }
}

void Dual::pw_vector(const GroupElement& g, EvalWorkspace& ws) const {
  evaluate_all(g, ws);
  for (int p = 0; p < size(); ++p) {
    const double sc = std::sqrt(double(dims_[p]));
    const Mat& m = ws.mats[p];
    long k = pw_offset_[p];
    for (long r = 0; r < m.rows(); ++r)
      for (long c = 0; c < m.cols(); ++c) ws.pw(k++) = sc * m(r, c);
  }
}

std::vector<Mat> Dual::evaluate_all(const GroupElement& g) const {
  EvalWorkspace ws;
  init_workspace(ws);
  evaluate_all(g, ws);
  return ws.mats;
}

CVec Dual::pw_vector(const GroupElement& g) const {
  EvalWorkspace ws;
  init_workspace(ws);
  pw_vector(g, ws);
  return ws.pw;
}

}  // namespace ghat
