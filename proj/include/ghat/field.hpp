#pragma once

#include <functional>
#include <vector>

#include "ghat/dual.hpp"

namespace ghat {

class Rng;

// An operator field over the truncated dual. With an empty word this is a
// symbol sigma = {sigma(pi)}; after k difference steps the word records the
// fundamental factors and entries act on H_w1 (x) ... (x) H_wk (x) H_pi
// (word on the left, newest factor adjacent to H_pi).
class Field {
public:
  Field() = default;
  // zero field defined on the whole band (or on an explicit valid mask)
  Field(DualPtr dual, std::vector<int> word_fund = {},
        const std::vector<char>* valid_mask = nullptr);

  const DualPtr& dual() const { return dual_; }
  const std::vector<int>& word() const { return word_; }
  int word_size() const { return static_cast<int>(word_.size()); }
  long word_dim() const { return word_dim_; }

  bool valid(int p) const { return valid_[p]; }
  const std::vector<char>& valid_mask() const { return valid_; }
  const Mat& at(int p) const;
  Mat& at(int p);
  void set(int p, Mat m);

  // Declared support margin: the true field vanishes at labels with
  // depth < margin, in particular outside the band. A field with margin >= 1
  // admits exact zero-extension across the band edge, so difference operators
  // stay defined on the whole band (consuming one unit of margin per step).
  int margin() const { return margin_; }
  void set_margin(int m) { margin_ = m; }
  // Largest m consistent with the actual entries (exact zero test).
  int measured_margin() const;

  Field operator*(const Field& o) const;  // entrywise composition, same word
  Field operator+(const Field& o) const;
  Field operator-(const Field& o) const;
  Field operator*(cplx c) const;

  long entry_rows(int p) const { return word_dim_ * dual_->dim(p); }

private:
  DualPtr dual_;
  std::vector<int> word_;  // indices into dual->fundamentals(), first applied first
  long word_dim_ = 1;
  std::vector<char> valid_;
  std::vector<Mat> entries_;
  int margin_ = 0;
};

// ----- symbol constructors (empty word) -----

Field identity_symbol(const DualPtr& dual);
Field zero_symbol(const DualPtr& dual);
// sigma(pi) = pi(X^beta), beta a multi-index over the n Lie generators
Field fourier_of_monomial(const DualPtr& dual, const std::vector<int>& beta);
Field spectral_symbol(const DualPtr& dual, const std::function<cplx(double)>& f);
// dense Gaussian entries scaled by (1+lambda)^(-decay/2), zeroed outside the
// margin-m interior
Field random_symbol(const DualPtr& dual, int margin, std::uint64_t seed, double decay = 0.0);
// scalar sequence sigma(pi) = f(label) * I (handy on the torus)
Field scalar_symbol(const DualPtr& dual, const std::function<cplx(const IrrepLabel&)>& f);

// ----- difference operators -----

// sigma(phi (x) pi) pulled back through the intertwiner, acting on
// H_word (x) H_phi (x) H_pi. Requires every summand of phi (x) pi to be valid
// in `field`; throws otherwise naming the missing label.
Mat extend_at(const Field& field, int fund_index, int p);

// Delta_phi field: extend_at - I_phi inserted next to H_pi; the word grows by
// phi and the valid set shrinks by one step.
Field delta(int fund_index, const Field& field);

// Multi-index alpha over the fundamental set, |alpha| = sum alpha_f; the
// single-step deltas compose in canonical (sorted) order.
Field delta_word(const std::vector<int>& alpha, const Field& symbol);

// All multi-indices over f slots with |alpha| = s.
std::vector<std::vector<int>> multi_indices(int slots, int s);

// || Delta_phi(s1 s2)(pi) - Delta_phi s1(pi) s2(I(x)pi) - s1(phi(x)pi) Delta_phi s2(pi) ||_HS
double leibniz_residual(int fund_index, const Field& s1, const Field& s2, int p);

// ----- norms on fields -----

double l2_norm_sq(const Field& f);  // sum_pi d_pi ||f(pi)||_HS^2 over valid labels
double linf_norm(const Field& f);   // sup operator norm over valid labels

// ----- annihilation -----

struct AnnihilationReport {
  double max_norm = 0.0;        // max over |alpha| = s, valid pi of ||Delta^alpha sigma(pi)||_op
  bool annihilated = false;
  double projection_residual = -1.0;  // relative LS residual onto F_G(U_{s-1}); -1 if skipped
};
AnnihilationReport annihilation_test(const Field& sigma, int s, double tol = 1e-10,
                                     bool with_projection = false);

// Least-squares projection of sigma onto span{F_G(X^beta) : |beta| <= deg} in
// the Plancherel inner product over the valid set; returns relative residual.
double enveloping_projection_residual(const Field& sigma, int deg);

// ----- multiplier operator -----

// Matrix of Op(sigma) on the band-limited subspace in the orthonormal
// Peter-Weyl basis sqrt(d_pi) pi_ij, restricted to lambda_pi <= lambda_sub.
Mat op_matrix(const Field& sigma, double lambda_sub);

}  // namespace ghat
