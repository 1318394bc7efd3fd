#include "ghat/group.hpp"

#include <cmath>
#include <sstream>

#include "ghat/rng.hpp"

namespace ghat {

namespace {

double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * M_PI);
  if (a < 0) a += 2.0 * M_PI;
  if (a >= 2.0 * M_PI) a = 0.0;  // fmod can land exactly on 2*pi
  return a;
}

}  // namespace

GroupDescriptor GroupDescriptor::torus(int d) {
  if (d <= 0) throw error("torus dimension must be positive");
  GroupDescriptor g;
  g.kind = GroupKind::Torus;
  g.torus_dim = d;
  return g;
}

GroupDescriptor GroupDescriptor::su2() {
  GroupDescriptor g;
  g.kind = GroupKind::SU2;
  return g;
}

GroupDescriptor GroupDescriptor::product(std::vector<GroupDescriptor> fs) {
  if (fs.empty()) throw error("empty product group");
  GroupDescriptor g;
  g.kind = GroupKind::Product;
  g.factors = std::move(fs);
  return g;
}

std::vector<GroupDescriptor::Leaf> GroupDescriptor::leaves() const {
  std::vector<Leaf> out;
  switch (kind) {
    case GroupKind::Torus: out.push_back({GroupKind::Torus, torus_dim}); break;
    case GroupKind::SU2: out.push_back({GroupKind::SU2, 0}); break;
    case GroupKind::Product:
      for (const auto& f : factors) {
        auto sub = f.leaves();
        out.insert(out.end(), sub.begin(), sub.end());
      }
      break;
  }
  return out;
}

int GroupDescriptor::dim() const {
  switch (kind) {
    case GroupKind::Torus: return torus_dim;
    case GroupKind::SU2: return 3;
    case GroupKind::Product: {
      int n = 0;
      for (const auto& f : factors) n += f.dim();
      return n;
    }
  }
  return 0;
}

int GroupDescriptor::torus_angles() const {
  int n = 0;
  for (const auto& l : leaves())
    if (l.kind == GroupKind::Torus) n += l.torus_dim;
  return n;
}

int GroupDescriptor::su2_leaves() const {
  int n = 0;
  for (const auto& l : leaves())
    if (l.kind == GroupKind::SU2) ++n;
  return n;
}

bool GroupDescriptor::operator==(const GroupDescriptor& o) const {
  auto a = leaves(), b = o.leaves();
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].kind != b[i].kind || a[i].torus_dim != b[i].torus_dim) return false;
  return true;
}

std::string GroupDescriptor::to_string() const {
  switch (kind) {
    case GroupKind::Torus: return "torus:" + std::to_string(torus_dim);
    case GroupKind::SU2: return "su2";
    case GroupKind::Product: {
      std::ostringstream os;
      os << "product:";
      for (size_t i = 0; i < factors.size(); ++i) {
        if (i) os << ",";
        os << factors[i].to_string();
      }
      return os.str();
    }
  }
  return "?";
}

GroupElement identity(const GroupDescriptor& G) {
  GroupElement e;
  e.angles.assign(G.torus_angles(), 0.0);
  e.su2.assign(G.su2_leaves(), Eigen::Matrix2cd::Identity());
  return e;
}

static void check_compatible(const GroupDescriptor& G, const GroupElement& a) {
  if (static_cast<int>(a.angles.size()) != G.torus_angles() ||
      static_cast<int>(a.su2.size()) != G.su2_leaves())
    throw error("group element does not match descriptor " + G.to_string());
}

GroupElement multiply(const GroupDescriptor& G, const GroupElement& a, const GroupElement& b) {
  check_compatible(G, a);
  check_compatible(G, b);
  GroupElement c;
  c.angles.resize(a.angles.size());
  for (size_t i = 0; i < a.angles.size(); ++i) c.angles[i] = wrap_angle(a.angles[i] + b.angles[i]);
  c.su2.resize(a.su2.size());
  for (size_t i = 0; i < a.su2.size(); ++i) c.su2[i] = a.su2[i] * b.su2[i];
  return c;
}

GroupElement inverse(const GroupDescriptor& G, const GroupElement& a) {
  check_compatible(G, a);
  GroupElement c;
  c.angles.resize(a.angles.size());
  for (size_t i = 0; i < a.angles.size(); ++i) c.angles[i] = wrap_angle(-a.angles[i]);
  c.su2.resize(a.su2.size());
  for (size_t i = 0; i < a.su2.size(); ++i) c.su2[i] = a.su2[i].adjoint();
  return c;
}

double distance_to_identity(const GroupDescriptor& G, const GroupElement& g) {
  check_compatible(G, g);
  double sq = 0.0;
  for (double a : g.angles) {
    const double d = std::min(a, 2.0 * M_PI - a);
    sq += d * d;
  }
  for (const auto& u : g.su2) {
    // |x| = 2 arccos(tr(x)/2); the clamp guards arccos against rounding.
    double h = 0.5 * u.trace().real();
    h = std::max(-1.0, std::min(1.0, h));
    const double d = 2.0 * std::acos(h);
    sq += d * d;
  }
  return std::sqrt(sq);
}

GroupElement exp_map(const GroupDescriptor& G, const std::vector<double>& coeffs) {
  if (static_cast<int>(coeffs.size()) != G.dim())
    throw error("exp_map: expected " + std::to_string(G.dim()) + " coefficients");
  GroupElement g;
  size_t pos = 0;
  for (const auto& leaf : G.leaves()) {
    if (leaf.kind == GroupKind::Torus) {
      for (int i = 0; i < leaf.torus_dim; ++i) g.angles.push_back(wrap_angle(coeffs[pos++]));
    } else {
      // exp(sum c_j (i/2) sigma_j) = cos(t/2) I + i sin(t/2)/t * sum c_j sigma_j
      const double c1 = coeffs[pos], c2 = coeffs[pos + 1], c3 = coeffs[pos + 2];
      pos += 3;
      const double t = std::sqrt(c1 * c1 + c2 * c2 + c3 * c3);
      Eigen::Matrix2cd m;
      const cplx i(0.0, 1.0);
      if (t < 1e-300) {
        m = Eigen::Matrix2cd::Identity();
      } else {
        const double c = std::cos(0.5 * t), s = std::sin(0.5 * t) / t;
        m(0, 0) = c + i * s * c3;
        m(0, 1) = s * (i * c1 + c2);
        m(1, 0) = s * (i * c1 - c2);
        m(1, 1) = c - i * s * c3;
      }
      g.su2.push_back(m);
    }
  }
  return g;
}

GroupElement random_element(const GroupDescriptor& G, Rng& rng) {
  GroupElement g;
  for (const auto& leaf : G.leaves()) {
    if (leaf.kind == GroupKind::Torus) {
      for (int i = 0; i < leaf.torus_dim; ++i) g.angles.push_back(rng.uniform(0.0, 2.0 * M_PI));
    } else {
      // Haar on SU(2) via normalized Gaussian pair (a, b), |a|^2 + |b|^2 = 1.
      cplx a(rng.normal(), rng.normal()), b(rng.normal(), rng.normal());
      const double n = std::sqrt(std::norm(a) + std::norm(b));
      a /= n;
      b /= n;
      Eigen::Matrix2cd m;
      m << a, b, -std::conj(b), std::conj(a);
      g.su2.push_back(m);
    }
  }
  return g;
}

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

namespace {

struct LeafRule {
  std::vector<GroupElement> nodes;  // partial elements (single leaf)
  std::vector<double> weights;
};

LeafRule torus_leaf_rule(int d, int band) {
  const int npts = 4 * band + 1;
  LeafRule r;
  // tensor grid over this leaf's d circles
  std::vector<int> idx(d, 0);
  const double w0 = 1.0;
  long total = 1;
  for (int i = 0; i < d; ++i) total *= npts;
  r.nodes.reserve(total);
  for (long k = 0; k < total; ++k) {
    long rem = k;
    GroupElement g;
    g.angles.resize(d);
    for (int i = 0; i < d; ++i) {
      g.angles[i] = 2.0 * M_PI * (rem % npts) / npts;
      rem /= npts;
    }
    r.nodes.push_back(std::move(g));
    r.weights.push_back(w0 / double(total));
  }
  return r;
}

LeafRule su2_leaf_rule(int band) {
  // Euler product rule: uniform alpha on [0,2pi), Gauss-Legendre in cos(beta),
  // uniform gamma on [0,4pi). Haar density sin(beta)/(16 pi^2) folds into the
  // weights; node counts give exact integrals of Wigner coefficients up to
  // degree 4*band (alpha frequencies <= 2*band, gamma half-frequencies
  // <= 2*band, Legendre degree <= 2*band).
  const int lstar = 4 * band;
  const int na = lstar / 2 + 1;
  const int ng = lstar + 1;
  const int nb = lstar / 4 + 2;
  std::vector<double> xb, wb;
  gauss_legendre(nb, xb, wb);
  LeafRule r;
  r.nodes.reserve(static_cast<long>(na) * nb * ng);
  const cplx I(0.0, 1.0);
  for (int ia = 0; ia < na; ++ia) {
    const double alpha = 2.0 * M_PI * ia / na;
    for (int ib = 0; ib < nb; ++ib) {
      const double beta = std::acos(xb[ib]);
      const double cb = std::cos(0.5 * beta), sb = std::sin(0.5 * beta);
      for (int ic = 0; ic < ng; ++ic) {
        const double gamma = 4.0 * M_PI * ic / ng;
        Eigen::Matrix2cd m;
        // Rz(alpha) Ry(beta) Rz(gamma) with Rz(t) = exp(-i t sigma3 / 2)
        m(0, 0) = std::exp(-I * (0.5 * (alpha + gamma))) * cb;
        m(0, 1) = -std::exp(-I * (0.5 * (alpha - gamma))) * sb;
        m(1, 0) = std::exp(I * (0.5 * (alpha - gamma))) * sb;
        m(1, 1) = std::exp(I * (0.5 * (alpha + gamma))) * cb;
        GroupElement g;
        g.su2.push_back(m);
        r.nodes.push_back(std::move(g));
        // d(cos beta) absorbs sin(beta) d beta; uniform grids carry 1/n each.
        r.weights.push_back(wb[ib] * 0.5 / (double(na) * double(ng)));
      }
    }
  }
  return r;
}

GroupElement join(const GroupElement& a, const GroupElement& b) {
  GroupElement c = a;
  c.angles.insert(c.angles.end(), b.angles.begin(), b.angles.end());
  c.su2.insert(c.su2.end(), b.su2.begin(), b.su2.end());
  return c;
}

}  // namespace

std::shared_ptr<const QuadratureRule> haar_quadrature(const GroupDescriptor& G, int band) {
  if (band < 0) throw error("haar_quadrature: band must be >= 0");
  const int b = std::max(band, 1);
  auto rule = std::make_shared<QuadratureRule>();
  rule->group = G;
  rule->band = band;
  rule->exactness_band = 4 * b;
  rule->nodes = {GroupElement{}};
  rule->weights = {1.0};
  for (const auto& leaf : G.leaves()) {
    LeafRule lr = (leaf.kind == GroupKind::Torus) ? torus_leaf_rule(leaf.torus_dim, b)
                                                  : su2_leaf_rule(b);
    std::vector<GroupElement> nodes;
    std::vector<double> weights;
    nodes.reserve(rule->nodes.size() * lr.nodes.size());
    weights.reserve(nodes.capacity());
    for (size_t i = 0; i < rule->nodes.size(); ++i)
      for (size_t j = 0; j < lr.nodes.size(); ++j) {
        nodes.push_back(join(rule->nodes[i], lr.nodes[j]));
        weights.push_back(rule->weights[i] * lr.weights[j]);
      }
    rule->nodes = std::move(nodes);
    rule->weights = std::move(weights);
  }
  return rule;
}

double ball_volume(const GroupDescriptor& G, double r) {
  if (r <= 0) return 0.0;
  double v = 1.0;
  for (const auto& leaf : G.leaves()) {
    if (leaf.kind == GroupKind::Torus) {
      for (int i = 0; i < leaf.torus_dim; ++i) v *= std::min(1.0, r / M_PI);
    } else {
      const double t = std::min(r, 2.0 * M_PI);
      v *= (t - std::sin(t)) / (2.0 * M_PI);
    }
  }
  return v;
}

double group_diameter(const GroupDescriptor& G) {
  double sq = 0.0;
  for (const auto& leaf : G.leaves()) {
    if (leaf.kind == GroupKind::Torus)
      sq += leaf.torus_dim * M_PI * M_PI;
    else
      sq += 4.0 * M_PI * M_PI;
  }
  return std::sqrt(sq);
}

}  // namespace ghat
