#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "cmap/geometry.hpp"

namespace cmap {

enum class Purpose { disk, annulus, quad };

enum class TermKind { monomial, pole, laurent, log };

struct BasisTerm {
  TermKind kind = TermKind::monomial;
  // monomial: expansion center; pole: pole location; laurent/log: hole center.
  cplx anchor{};
  int power = 0;  // monomial k >= 0, laurent k >= 1
  double scale = 1.0;  // monomial variable (z - c) / s, laurent (s / (z - c))^k
  int corner = -1;  // pole: index into BasisSet::pole_sites

  bool operator==(const BasisTerm&) const = default;
};

// Where a family of clustered poles sits: a corner or a quad vertex.
struct PoleSite {
  cplx location;
  cplx direction;  // unit exterior bisector
  double scale = 0.0;  // d_c, distance of the farthest pole
};

struct BasisSet {
  std::vector<BasisTerm> terms;
  std::vector<PoleSite> pole_sites;
  cplx center{};
  cplx hole_center{};
  Purpose purpose = Purpose::disk;
  std::size_t degree = 0;
  std::size_t poles_per_corner = 0;
  std::size_t monomial_count = 0;
  std::size_t pole_count = 0;
  std::size_t laurent_count = 0;
  std::size_t log_count = 0;
  // Arnoldi recurrence for the polynomial block: column k holds the
  // coefficients h(0..k+1, k) of
  //   h(k+1, k) q_{k+1}(w) = w q_k(w) - sum_{j<=k} h(j, k) q_j(w),  q_0 = 1,
  // with w = (z - center) / s. The q_k are orthonormal on boundary nodes.
  // Empty for plain monomials w^k.
  Eigen::MatrixXcd hessenberg;

  std::size_t size() const { return terms.size(); }
};

struct BasisOptions {
  std::optional<cplx> center;  // defaults to Domain::default_center()
  std::optional<cplx> hole_center;  // defaults to a point inside the hole
  // Replace the monomials by Arnoldi-orthogonalized polynomials of the same
  // degrees (same span, far better conditioned on elongated domains).
  bool arnoldi = false;
};

/// Monomials ((z - c)/s)^k, k = 0..degree with s = diameter / 2 (or their
/// Arnoldi-orthogonalized counterparts, see BasisOptions); per corner
/// (and per quad vertex for Purpose::quad) `poles_per_corner` poles along
/// the exterior bisector at distances d_c exp(-4 (sqrt N - sqrt j)); for
/// Purpose::annulus also log(z - z_h) and Laurent powers 1..degree.
BasisSet build_basis(const Domain& domain, Purpose purpose, std::size_t degree,
                     std::size_t poles_per_corner, const BasisOptions& options = {});

struct BasisValues {
  Eigen::MatrixXcd value;  // points x terms
  Eigen::MatrixXcd derivative;
};

BasisValues evaluate_basis(const BasisSet& basis, std::span<const cplx> points);

// Point inside the hole of a doubly-connected domain, as far from the hole
// boundary as a lattice scan finds.
cplx hole_point(const Domain& domain);

}  // namespace cmap
