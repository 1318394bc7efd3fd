#include "ghat/field.hpp"

#include <algorithm>
#include <cmath>

#include "ghat/parallel.hpp"
#include "ghat/rng.hpp"

namespace ghat {

double operator_norm(const Mat& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  if (std::max(m.rows(), m.cols()) <= 32) {
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues()(0);
  }
  // Power iteration on m^H m. The Rayleigh values increase monotonically, and
  // stagnation with a clustered top cluster still means the value converged;
  // an unconverged run falls back to the dense eigensolver.
  CVec v(m.cols());
  for (long i = 0; i < v.size(); ++i) v(i) = cplx(1.0 + 0.01 * std::sin(1.7 * double(i)), 0.0);
  v.normalize();
  double prev = 0.0;
  for (int it = 0; it < 500; ++it) {
    const CVec av = m * v;
    const double val = av.norm();
    if (val == 0.0) return 0.0;
    if (it > 2 && std::abs(val - prev) <= 1e-13 * val) return val;
    prev = val;
    v = m.adjoint() * av;
    const double n = v.norm();
    if (n == 0.0) return val;
    v /= n;
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(m.adjoint() * m, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double trace_norm(const Mat& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  if (std::max(m.rows(), m.cols()) <= 64) {
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues().sum();
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(m.adjoint() * m, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (long i = 0; i < es.eigenvalues().size(); ++i)
    s += std::sqrt(std::max(0.0, es.eigenvalues()(i)));
  return s;
}

Field::Field(DualPtr dual, std::vector<int> word_fund, const std::vector<char>* valid_mask)
    : dual_(std::move(dual)), word_(std::move(word_fund)) {
  word_dim_ = 1;
  for (int f : word_) word_dim_ *= dual_->fund_dim(f);
  const int n = dual_->size();
  valid_.assign(n, 1);
  if (valid_mask) valid_ = *valid_mask;
  entries_.resize(n);
  for (int p = 0; p < n; ++p) {
    if (valid_[p]) {
      const long d = word_dim_ * dual_->dim(p);
      entries_[p] = Mat::Zero(d, d);
    }
  }
}

const Mat& Field::at(int p) const {
  if (p < 0 || p >= dual_->size() || !valid_[p])
    throw error("field entry not defined at index " + std::to_string(p));
  return entries_[p];
}

Mat& Field::at(int p) {
  if (p < 0 || p >= dual_->size() || !valid_[p])
    throw error("field entry not defined at index " + std::to_string(p));
  return entries_[p];
}

void Field::set(int p, Mat m) {
  Mat& e = at(p);
  if (m.rows() != e.rows() || m.cols() != e.cols()) throw error("field entry size mismatch");
  e = std::move(m);
}

int Field::measured_margin() const {
  int m = 0;
  while (true) {
    bool all_zero = true;
    for (int p = 0; p < dual_->size() && all_zero; ++p)
      if (valid_[p] && dual_->depth(p) < m + 1 && entries_[p].squaredNorm() != 0.0) all_zero = false;
    if (!all_zero) break;
    if (m > dual_->max_depth()) break;
    ++m;
  }
  return m;
}

static void check_same_shape(const Field& a, const Field& b) {
  if (a.dual() != b.dual() || a.word() != b.word()) throw error("field shape mismatch");
}

namespace {

std::vector<char> intersect_masks(const std::vector<char>& a, const std::vector<char>& b) {
  std::vector<char> out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] && b[i];
  return out;
}

}  // namespace

Field Field::operator*(const Field& o) const {
  check_same_shape(*this, o);
  const auto mask = intersect_masks(valid_, o.valid_);
  Field r(dual_, word_, &mask);
  for (int p = 0; p < dual_->size(); ++p)
    if (r.valid(p)) r.entries_[p] = entries_[p] * o.entries_[p];
  r.margin_ = std::min(margin_, o.margin_);
  return r;
}

Field Field::operator+(const Field& o) const {
  check_same_shape(*this, o);
  const auto mask = intersect_masks(valid_, o.valid_);
  Field r(dual_, word_, &mask);
  for (int p = 0; p < dual_->size(); ++p)
    if (r.valid(p)) r.entries_[p] = entries_[p] + o.entries_[p];
  r.margin_ = std::min(margin_, o.margin_);
  return r;
}

Field Field::operator-(const Field& o) const {
  check_same_shape(*this, o);
  const auto mask = intersect_masks(valid_, o.valid_);
  Field r(dual_, word_, &mask);
  for (int p = 0; p < dual_->size(); ++p)
    if (r.valid(p)) r.entries_[p] = entries_[p] - o.entries_[p];
  r.margin_ = std::min(margin_, o.margin_);
  return r;
}

Field Field::operator*(cplx c) const {
  Field r(dual_, word_, &valid_);
  for (int p = 0; p < dual_->size(); ++p)
    if (r.valid(p)) r.entries_[p] = c * entries_[p];
  r.margin_ = margin_;
  return r;
}

Field identity_symbol(const DualPtr& dual) {
  Field f(dual);
  for (int p = 0; p < dual->size(); ++p) f.at(p) = Mat::Identity(dual->dim(p), dual->dim(p));
  return f;
}

Field zero_symbol(const DualPtr& dual) { return Field(dual); }

Field fourier_of_monomial(const DualPtr& dual, const std::vector<int>& beta) {
  Field f(dual);
  for (int p = 0; p < dual->size(); ++p)
    f.at(p) = enveloping_monomial(dual->group(), dual->label(p), beta);
  return f;
}

Field spectral_symbol(const DualPtr& dual, const std::function<cplx(double)>& fn) {
  Field f(dual);
  for (int p = 0; p < dual->size(); ++p) {
    const int d = dual->dim(p);
    f.at(p) = fn(dual->casimir(p)) * Mat::Identity(d, d);
  }
  return f;
}

Field scalar_symbol(const DualPtr& dual, const std::function<cplx(const IrrepLabel&)>& fn) {
  Field f(dual);
  for (int p = 0; p < dual->size(); ++p) {
    const int d = dual->dim(p);
    f.at(p) = fn(dual->label(p)) * Mat::Identity(d, d);
  }
  return f;
}

Field random_symbol(const DualPtr& dual, int margin, std::uint64_t seed, double decay) {
  Rng rng(seed);
  Field f(dual);
  f.set_margin(margin);
  for (int p = 0; p < dual->size(); ++p) {
    const int d = dual->dim(p);
    Mat m = rng.gaussian_matrix(d, d);  // draw unconditionally to keep streams aligned
    if (dual->depth(p) >= margin)
      f.at(p) = std::pow(1.0 + dual->casimir(p), -0.5 * decay) * m;
  }
  return f;
}

Mat extend_at(const Field& field, int f, int p) {
  const Dual& dual = *field.dual();
  const auto& dc = dual.decomp(f, p);
  const long Dw = field.word_dim();
  const long dphi = dual.fund_dim(f);
  const long dpi = dual.dim(p);
  const long dext = dphi * dpi;

  // N on H_word (x) (+)_t H_rho, block diagonal across summands inside the
  // rep factor. Summands outside the band (or outside the valid mask)
  // contribute zero blocks when the field carries support margin, and are an
  // error otherwise.
  Mat N = Mat::Zero(Dw * dext, Dw * dext);
  long off = 0;
  for (size_t t = 0; t < dc.summands.size(); ++t) {
    const int s = dc.summands[t];
    const long dr = dc.dims[t];
    if (s < 0 || !field.valid(s)) {
      if (field.margin() >= 1) {
        off += dr;
        continue;
      }
      throw error("extend_at: summand " + dc.labels[t].to_string() +
                  " outside the valid band (insufficient margin)");
    }
    const Mat& E = field.at(s);  // (Dw*dr) x (Dw*dr)
    for (long w = 0; w < Dw; ++w)
      for (long w2 = 0; w2 < Dw; ++w2)
        N.block(w * dext + off, w2 * dext + off, dr, dr) =
            E.block(w * dr, w2 * dr, dr, dr);
    off += dr;
  }
  // conjugate the rep factor by U: M = (I_w (x) U)^* N (I_w (x) U)
  const Mat& U = dc.U;
  Mat M(Dw * dext, Dw * dext);
  for (long w = 0; w < Dw; ++w)
    for (long w2 = 0; w2 < Dw; ++w2)
      M.block(w * dext, w2 * dext, dext, dext) =
          U.adjoint() * N.block(w * dext, w2 * dext, dext, dext) * U;
  return M;
}

Field delta(int f, const Field& field) {
  const DualPtr& dual = field.dual();
  std::vector<int> w = field.word();
  w.push_back(f);
  // With margin the difference stays defined wherever the field is; without
  // it the domain shrinks to labels whose one-step neighborhood is covered.
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

  std::vector<int> todo;
  for (int p = 0; p < dual->size(); ++p)
    if (out.valid(p)) todo.push_back(p);

  parallel_for(static_cast<long>(todo.size()), [&](long k) {
    const int p = todo[k];
    const long dpi = dual->dim(p);
    Mat M = extend_at(field, f, p);
    // subtract I_phi inserted between the word block and H_pi
    const Mat& E = field.at(p);
    for (long w1 = 0; w1 < Dw; ++w1)
      for (long w2 = 0; w2 < Dw; ++w2)
        for (long a = 0; a < dphi; ++a)
          M.block((w1 * dphi + a) * dpi, (w2 * dphi + a) * dpi, dpi, dpi) -=
              E.block(w1 * dpi, w2 * dpi, dpi, dpi);
    out.at(p) = std::move(M);
  });
  return out;
}

Field delta_word(const std::vector<int>& alpha, const Field& symbol) {
  if (static_cast<int>(alpha.size()) != symbol.dual()->fund_count())
    throw error("delta_word: multi-index size must equal the fundamental count");
  Field cur = symbol;
  for (size_t f = 0; f < alpha.size(); ++f)
    for (int k = 0; k < alpha[f]; ++k) cur = delta(static_cast<int>(f), cur);
  return cur;
}

std::vector<std::vector<int>> multi_indices(int slots, int s) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(slots, 0);
  std::function<void(int, int)> rec = [&](int pos, int rem) {
    if (pos == slots - 1) {
      cur[pos] = rem;
      out.push_back(cur);
      return;
    }
    for (int k = rem; k >= 0; --k) {
      cur[pos] = k;
      rec(pos + 1, rem - k);
    }
  };
  if (slots == 0) {
    if (s == 0) out.push_back({});
    return out;
  }
  rec(0, s);
  return out;
}

double leibniz_residual(int f, const Field& s1, const Field& s2, int p) {
  const DualPtr& dual = s1.dual();
  if (s1.word_size() != 0 || s2.word_size() != 0) throw error("leibniz_residual expects symbols");
  const Field prod = s1 * s2;
  const Mat lhs = delta(f, prod).at(p);
  const long dphi = dual->fund_dim(f);
  const long dpi = dual->dim(p);
  const Mat d1 = delta(f, s1).at(p);
  const Mat d2 = delta(f, s2).at(p);
  Mat i_s2 = Mat::Zero(dphi * dpi, dphi * dpi);
  for (long a = 0; a < dphi; ++a) i_s2.block(a * dpi, a * dpi, dpi, dpi) = s2.at(p);
  const Mat ext1 = extend_at(s1, f, p);
  const Mat rhs = d1 * i_s2 + ext1 * d2;
  return (lhs - rhs).norm();
}

double l2_norm_sq(const Field& f) {
  const Dual& dual = *f.dual();
  double s = 0.0;
  for (int p = 0; p < dual.size(); ++p)
    if (f.valid(p)) s += dual.dim(p) * f.at(p).squaredNorm();
  return s;
}

double linf_norm(const Field& f) {
  const Dual& dual = *f.dual();
  double s = 0.0;
  for (int p = 0; p < dual.size(); ++p)
    if (f.valid(p)) s = std::max(s, operator_norm(f.at(p)));
  return s;
}

AnnihilationReport annihilation_test(const Field& sigma, int s, double tol, bool with_projection) {
  AnnihilationReport rep;
  const int nf = sigma.dual()->fund_count();
  for (const auto& alpha : multi_indices(nf, s)) {
    const Field d = delta_word(alpha, sigma);
    rep.max_norm = std::max(rep.max_norm, linf_norm(d));
  }
  rep.annihilated = rep.max_norm <= tol;
  if (with_projection) rep.projection_residual = enveloping_projection_residual(sigma, s - 1);
  return rep;
}

double enveloping_projection_residual(const Field& sigma, int deg) {
  const DualPtr& dual = sigma.dual();
  const int n = dual->group().dim();
  std::vector<Field> basis;
  for (int k = 0; k <= deg; ++k)
    for (const auto& beta : multi_indices(n, k)) basis.push_back(fourier_of_monomial(dual, beta));

  // Plancherel inner products over the valid set
  auto inner = [&](const Field& a, const Field& b) {
    cplx s(0.0, 0.0);
    for (int p = 0; p < dual->size(); ++p)
      if (a.valid(p) && b.valid(p)) s += double(dual->dim(p)) * (b.at(p).adjoint() * a.at(p)).trace();
    return s;
  };
  const int m = static_cast<int>(basis.size());
  Mat G(m, m);
  CVec rhs(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) G(i, j) = inner(basis[j], basis[i]);
    rhs(i) = inner(sigma, basis[i]);
  }
  const CVec c = G.completeOrthogonalDecomposition().solve(rhs);
  const double nrm = l2_norm_sq(sigma);
  if (nrm == 0.0) return 0.0;
  // ||sigma - proj||^2 = ||sigma||^2 - 2 Re<sigma, proj> + ||proj||^2
  cplx cross(0.0, 0.0);
  for (int i = 0; i < m; ++i) cross += std::conj(c(i)) * rhs(i);
  double proj_sq = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) proj_sq += std::real(std::conj(c(i)) * G(i, j) * c(j));
  const double res_sq = std::max(0.0, nrm - 2.0 * std::real(cross) + proj_sq);
  return std::sqrt(res_sq / nrm);
}

Mat op_matrix(const Field& sigma, double lambda_sub) {
  const Dual& dual = *sigma.dual();
  if (sigma.word_size() != 0) throw error("op_matrix expects a symbol");
  long n = 0;
  for (int p = 0; p < dual.size(); ++p)
    if (dual.casimir(p) <= lambda_sub) n += static_cast<long>(dual.dim(p)) * dual.dim(p);
  Mat M = Mat::Zero(n, n);
  long off = 0;
  for (int p = 0; p < dual.size(); ++p) {
    if (dual.casimir(p) > lambda_sub) continue;
    const long d = dual.dim(p);
    const Mat& s = sigma.at(p);
    for (long i = 0; i < d; ++i) M.block(off + i * d, off + i * d, d, d) = s;
    off += d * d;
  }
  return M;
}

}  // namespace ghat
