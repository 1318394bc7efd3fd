#pragma once

#include <memory>
#include <vector>

#include "ghat/types.hpp"

namespace ghat {

class Rng;

enum class GroupKind { Torus, SU2, Product };

// A concrete compact group: a torus T^d, SU(2), or a finite product of those.
// Products may nest in the descriptor tree; computations use the flattened
// leaf sequence (a nested product is canonically isomorphic to the flat one).
struct GroupDescriptor {
  GroupKind kind = GroupKind::SU2;
  int torus_dim = 0;                     // kind == Torus
  std::vector<GroupDescriptor> factors;  // kind == Product

  static GroupDescriptor torus(int d);
  static GroupDescriptor su2();
  static GroupDescriptor product(std::vector<GroupDescriptor> fs);

  struct Leaf {
    GroupKind kind;  // Torus or SU2
    int torus_dim;   // circles in this leaf (SU2: 0)
  };
  std::vector<Leaf> leaves() const;

  int dim() const;          // manifold dimension n
  int torus_angles() const; // total number of circle coordinates over all leaves
  int su2_leaves() const;

  bool operator==(const GroupDescriptor& o) const;
  std::string to_string() const;
};

// Element storage mirrors the flattened leaves: all torus angles concatenated,
// one 2x2 unitary per SU2 leaf.
struct GroupElement {
  std::vector<double> angles;           // reduced into [0, 2*pi)
  std::vector<Eigen::Matrix2cd> su2;
};

GroupElement identity(const GroupDescriptor& G);
GroupElement multiply(const GroupDescriptor& G, const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupDescriptor& G, const GroupElement& a);

// Geodesic distance |x| = d(x, e_G) for the fixed bi-invariant metric:
// standard angle metric per circle, <X,Y> = -2 tr(XY) on su(2) (which makes
// (i/2)*sigma_j orthonormal), Euclidean combination across factors.
double distance_to_identity(const GroupDescriptor& G, const GroupElement& g);

// exp of sum_j c_j X_j in the fixed orthonormal Lie basis. Basis order:
// leaves in order; a torus leaf of dimension d contributes d directions,
// an SU2 leaf contributes X_1, X_2, X_3 = (i/2) sigma_{1,2,3}.
GroupElement exp_map(const GroupDescriptor& G, const std::vector<double>& coeffs);

GroupElement random_element(const GroupDescriptor& G, Rng& rng);

// Haar-measure quadrature, normalized to total mass 1. Exact on every single
// matrix coefficient with per-leaf label up to exactness_band = 4*band
// (torus circles: |l| <= 4*band; SU2 leaves: Wigner degree l <= 4*band).
// That covers products of two coefficients within `band` with polynomial
// weights up to 2*band extra.
struct QuadratureRule {
  GroupDescriptor group;
  int band = 0;            // requested band
  int exactness_band = 0;  // single-coefficient label bound (= 4*band)
  std::vector<GroupElement> nodes;
  std::vector<double> weights;

  long size() const { return static_cast<long>(nodes.size()); }
};

std::shared_ptr<const QuadratureRule> haar_quadrature(const GroupDescriptor& G, int band);

// Normalized volume of the geodesic ball of radius r (closed form per leaf,
// combined by product for the sliced estimate used in heat-kernel tests:
// products use the product of factor ball volumes, a two-sided-equivalent
// proxy for the true ball volume).
double ball_volume(const GroupDescriptor& G, double r);

double group_diameter(const GroupDescriptor& G);

// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

}  // namespace ghat
