#include "ghat/rep.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "ghat/wigner.hpp"

namespace ghat {

bool IrrepLabel::trivial() const {
  for (long k : torus)
    if (k != 0) return false;
  for (long l : su2)
    if (l != 0) return false;
  return true;
}

std::string IrrepLabel::to_string() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < torus.size(); ++i) os << "t" << torus[i] << " ";
  for (size_t i = 0; i < su2.size(); ++i) os << "l" << su2[i] << " ";
  os << ")";
  return os.str();
}

IrrepLabel trivial_label(const GroupDescriptor& G) {
  IrrepLabel p;
  p.torus.assign(G.torus_angles(), 0);
  p.su2.assign(G.su2_leaves(), 0);
  return p;
}

static void check_label(const GroupDescriptor& G, const IrrepLabel& p) {
  if (static_cast<int>(p.torus.size()) != G.torus_angles() ||
      static_cast<int>(p.su2.size()) != G.su2_leaves())
    throw error("irrep label does not match group " + G.to_string());
  for (long l : p.su2)
    if (l < 0) throw error("SU(2) label must be >= 0");
}

int irrep_dim(const GroupDescriptor& G, const IrrepLabel& p) {
  check_label(G, p);
  long d = 1;
  for (long l : p.su2) d *= (l + 1);
  return static_cast<int>(d);
}

double casimir_eigenvalue(const IrrepLabel& p) {
  double lam = 0.0;
  for (long k : p.torus) lam += double(k) * double(k);
  for (long l : p.su2) lam += 0.25 * double(l) * double(l + 2);
  return lam;
}

double casimir_eigenvalue(const GroupDescriptor& G, const IrrepLabel& p) {
  check_label(G, p);
  return casimir_eigenvalue(p);
}

Mat evaluate_irrep(const GroupDescriptor& G, const IrrepLabel& p, const GroupElement& g) {
  check_label(G, p);
  cplx phase(1.0, 0.0);
  for (size_t i = 0; i < p.torus.size(); ++i)
    phase *= std::exp(cplx(0.0, double(p.torus[i]) * g.angles[i]));
  Mat m = Mat::Constant(1, 1, phase);
  for (size_t i = 0; i < p.su2.size(); ++i) {
    const long l = p.su2[i];
    if (l == 0) continue;
    const EulerZYZ e = euler_zyz(g.su2[i]);
    const auto d = wigner_d_all(static_cast<int>(l), e.beta);
    const Mat D = wigner_D(d[l], e.alpha, e.gamma);
    Mat out(m.rows() * D.rows(), m.cols() * D.cols());
    for (long r = 0; r < m.rows(); ++r)
      for (long c = 0; c < m.cols(); ++c) out.block(r * D.rows(), c * D.cols(), D.rows(), D.cols()) = m(r, c) * D;
    m = std::move(out);
  }
  return m;
}

namespace {

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long r = 0; r < a.rows(); ++r)
    for (long c = 0; c < a.cols(); ++c) out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return out;
}

}  // namespace

Mat infinitesimal(const GroupDescriptor& G, const IrrepLabel& p, int j) {
  check_label(G, p);
  if (j < 0 || j >= G.dim()) throw error("generator index out of range");
  // locate the leaf owning direction j
  int pos = 0;
  int angle_off = 0, su2_off = 0;
  for (const auto& leaf : G.leaves()) {
    const int span = (leaf.kind == GroupKind::Torus) ? leaf.torus_dim : 3;
    if (j < pos + span) {
      const int local = j - pos;
      if (leaf.kind == GroupKind::Torus) {
        const cplx v(0.0, double(p.torus[angle_off + local]));
        Mat m = Mat::Constant(1, 1, v);
        return kron(m, Mat::Identity(irrep_dim(G, p), irrep_dim(G, p)));
      }
      // SU2 leaf: I (x) ... (x) i J_local (x) ... (x) I
      long dl = 1, dr = 1;
      for (size_t t = 0; t < p.su2.size(); ++t) {
        if (static_cast<int>(t) < su2_off) dl *= (p.su2[t] + 1);
        if (static_cast<int>(t) > su2_off) dr *= (p.su2[t] + 1);
      }
      const long l = p.su2[su2_off];
      Mat jx, jy, jz;
      spin_matrices(l, jx, jy, jz);
      const Mat& jm = (local == 0) ? jx : (local == 1 ? jy : jz);
      const cplx I(0.0, 1.0);
      return kron(Mat::Identity(dl, dl), kron(I * jm, Mat::Identity(dr, dr)));
    }
    pos += span;
    if (leaf.kind == GroupKind::Torus)
      angle_off += leaf.torus_dim;
    else
      ++su2_off;
  }
  throw error("generator index out of range");
}

Mat enveloping_monomial(const GroupDescriptor& G, const IrrepLabel& p, const std::vector<int>& beta) {
  if (static_cast<int>(beta.size()) != G.dim()) throw error("multi-index size must equal dim(G)");
  const int d = irrep_dim(G, p);
  Mat m = Mat::Identity(d, d);
  for (int j = 0; j < G.dim(); ++j) {
    if (beta[j] == 0) continue;
    const Mat gen = infinitesimal(G, p, j);
    for (int k = 0; k < beta[j]; ++k) m = m * gen;
  }
  return m;
}

std::vector<IrrepLabel> fundamental_set(const GroupDescriptor& G) {
  std::vector<IrrepLabel> out;
  const IrrepLabel triv = trivial_label(G);
  int angle_off = 0, su2_off = 0;
  for (const auto& leaf : G.leaves()) {
    if (leaf.kind == GroupKind::Torus) {
      for (int i = 0; i < leaf.torus_dim; ++i) {
        IrrepLabel plus = triv, minus = triv;
        plus.torus[angle_off + i] = 1;
        minus.torus[angle_off + i] = -1;
        out.push_back(plus);
        out.push_back(minus);
      }
      angle_off += leaf.torus_dim;
    } else {
      IrrepLabel f = triv;
      f.su2[su2_off] = 1;
      out.push_back(f);
      ++su2_off;
    }
  }
  return out;
}

TensorDecomposition decompose_fund_tensor(const GroupDescriptor& G, const IrrepLabel& phi,
                                          const IrrepLabel& pi) {
  check_label(G, phi);
  check_label(G, pi);
  const auto fund = fundamental_set(G);
  if (std::find(fund.begin(), fund.end(), phi) == fund.end())
    throw error("decompose_fund_tensor: left factor is not fundamental");

  TensorDecomposition dec;
  dec.left = phi;
  dec.right = pi;

  // Find the active leaf of phi.
  int tdir = -1;
  long tstep = 0;
  int sleaf = -1;
  for (size_t i = 0; i < phi.torus.size(); ++i)
    if (phi.torus[i] != 0) {
      tdir = static_cast<int>(i);
      tstep = phi.torus[i];
    }
  for (size_t i = 0; i < phi.su2.size(); ++i)
    if (phi.su2[i] != 0) sleaf = static_cast<int>(i);

  if (tdir >= 0) {
    IrrepLabel s = pi;
    s.torus[tdir] += tstep;
    dec.summands.push_back(s);
    dec.intertwiner = Mat::Identity(irrep_dim(G, pi), irrep_dim(G, pi));
    return dec;
  }

  // SU2 leaf: (1/2) x (m/2) = (m+1)/2 (+) (m-1)/2 at that leaf.
  const long m = pi.su2[sleaf];
  IrrepLabel up = pi, down = pi;
  up.su2[sleaf] = m + 1;
  dec.summands.push_back(up);
  if (m >= 1) {
    down.su2[sleaf] = m - 1;
    dec.summands.push_back(down);
  }

  // Distribute the leaf-level CG matrix over the surrounding tensor indices.
  // Tensor column index: (a, i_1..i_L) with a the 2-dim phi index and i_k the
  // per-leaf indices of pi (torus leaves contribute nothing to indexing).
  const Eigen::MatrixXd Uk = clebsch_half(m);
  const long dpi = irrep_dim(G, pi);
  long dl = 1, dr = 1;  // su2-leaf dims before/after the active leaf
  for (size_t t = 0; t < pi.su2.size(); ++t) {
    if (static_cast<int>(t) < sleaf) dl *= (pi.su2[t] + 1);
    if (static_cast<int>(t) > sleaf) dr *= (pi.su2[t] + 1);
  }
  const long dk = m + 1;
  Mat U = Mat::Zero(2 * dpi, 2 * dpi);
  // row: summand t, index (i_left, i'_k, i_right); col: (a, i_left, i_k, i_right)
  long row_block = 0;
  for (size_t t = 0; t < dec.summands.size(); ++t) {
    const long dk2 = dec.summands[t].su2[sleaf] + 1;
    const long uk_row0 = (t == 0) ? 0 : (m + 2);
    for (long il = 0; il < dl; ++il)
      for (long rk = 0; rk < dk2; ++rk)
        for (long ir = 0; ir < dr; ++ir) {
          const long row = row_block + (il * dk2 + rk) * dr + ir;
          for (int a = 0; a < 2; ++a)
            for (long ck = 0; ck < dk; ++ck) {
              const double v = Uk(uk_row0 + rk, a * dk + ck);
              if (v == 0.0) continue;
              const long col = a * dpi + (il * dk + ck) * dr + ir;
              U(row, col) = v;
            }
        }
    row_block += dl * dk2 * dr;
  }
  dec.intertwiner = std::move(U);
  return dec;
}

std::vector<IrrepLabel> enumerate_band(const GroupDescriptor& G, double lambda_max) {
  if (lambda_max < 0) throw error("enumerate_band: lambda_max must be >= 0");
  std::vector<IrrepLabel> out;
  IrrepLabel cur = trivial_label(G);
  const int ncirc = G.torus_angles();
  const int nsu2 = G.su2_leaves();

  // depth-first over coordinates with remaining casimir budget
  std::function<void(int, double)> rec = [&](int coord, double budget) {
    if (coord == ncirc + nsu2) {
      out.push_back(cur);
      return;
    }
    if (coord < ncirc) {
      const long kmax = static_cast<long>(std::floor(std::sqrt(budget) + 1e-12));
      for (long k = -kmax; k <= kmax; ++k) {
        cur.torus[coord] = k;
        rec(coord + 1, budget - double(k) * double(k));
      }
      cur.torus[coord] = 0;
    } else {
      const int s = coord - ncirc;
      // l(l+2)/4 <= budget
      const long lmax = static_cast<long>(std::floor(std::sqrt(4.0 * budget + 1.0) - 1.0 + 1e-9));
      for (long l = 0; l <= lmax; ++l) {
        cur.su2[s] = l;
        rec(coord + 1, budget - 0.25 * double(l) * double(l + 2));
      }
      cur.su2[s] = 0;
    }
  };
  rec(0, lambda_max);
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

int label_bound(const GroupDescriptor& G, double lambda_max) {
  int b = 0;
  if (G.torus_angles() > 0) b = std::max(b, static_cast<int>(std::floor(std::sqrt(lambda_max) + 1e-12)));
  if (G.su2_leaves() > 0)
    b = std::max(b, static_cast<int>(std::floor(std::sqrt(4.0 * lambda_max + 1.0) - 1.0 + 1e-9)));
  return b;
}

bool canonical_less(const IrrepLabel& a, const IrrepLabel& b) {
  const double la = casimir_eigenvalue(a), lb = casimir_eigenvalue(b);
  if (la != lb) return la < lb;
  return a < b;
}

}  // namespace ghat
