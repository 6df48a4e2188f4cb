#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace cmap {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

enum class ArcKind { line, circular, trig };

/// One smooth piece of a boundary chain, parametrized over t in [0, 1].
///
/// Circular arcs run from `start()` around `center()` through the signed
/// angle `sweep()`. Trig arcs are closed Fourier curves
/// z(t) = sum_j c_j exp(2 pi i k_j t) with centered frequencies
/// k_j = j - (n - 1) / 2, so the coefficient count must be odd.
class Arc {
 public:
  static Arc line(cplx from, cplx to);
  static Arc circular(cplx from, cplx to, cplx center, double sweep);
  static Arc circular(cplx from, cplx center, double sweep);
  static Arc trig(std::vector<cplx> coeffs);

  ArcKind kind() const { return kind_; }
  cplx start() const { return from_; }
  cplx end() const { return to_; }
  cplx center() const { return center_; }
  double sweep() const { return sweep_; }
  const std::vector<cplx>& coeffs() const { return coeffs_; }

  cplx point(double t) const;
  cplx derivative(double t) const;
  // Upper bound on |z''(t)| over [0, 1].
  double second_derivative_bound() const;
  double length() const;
  // Total rotation of the tangent direction along the arc.
  double turning() const;
  // (1/2) Im integral conj(z) dz: this arc's share of the enclosed signed area.
  double area_contribution() const;
  double distance(cplx z) const;

  Arc reversed() const;

  bool operator==(const Arc&) const = default;

 private:
  ArcKind kind_ = ArcKind::line;
  cplx from_{}, to_{}, center_{};
  double sweep_ = 0.0;
  std::vector<cplx> coeffs_;
};

using Chain = std::vector<Arc>;

/// Raw, unvalidated description: what the domain JSON decodes into.
struct DomainInput {
  Chain outer;
  std::vector<Chain> holes;
  std::optional<std::array<std::size_t, 4>> quad;
};

struct Corner {
  cplx location;
  double interior_angle = 0.0;
  std::size_t chain = 0;  // 0 = outer, 1 = hole
  std::size_t junction = 0;  // start of arc `junction` in that chain
  std::size_t arc_in = 0;
  std::size_t arc_out = 0;

  bool operator==(const Corner&) const = default;
};

enum class Location { inside, outside, boundary };

struct Box {
  double xmin, xmax, ymin, ymax;
};

/// A validated Jordan domain (or doubly-connected domain with one hole).
///
/// The outer chain is stored counterclockwise and the hole clockwise, so the
/// domain always lies to the left of the boundary. Immutable once built.
class Domain {
 public:
  /// Validates closure, self-intersection, orientation and quad marks.
  /// Chains with the wrong orientation are reversed (quad marks follow).
  static Domain build(DomainInput input);

  const std::vector<Chain>& chains() const { return chains_; }
  const Chain& outer() const { return chains_.front(); }
  std::size_t hole_count() const { return chains_.size() - 1; }
  bool simply_connected() const { return chains_.size() == 1; }

  std::span<const Corner> corners() const { return corners_; }
  const std::optional<std::array<std::size_t, 4>>& quad_vertices() const {
    return quad_;
  }
  double diameter() const { return diameter_; }
  // Start point of arc `j` of chain `c`.
  cplx junction(std::size_t c, std::size_t j) const {
    return chains_[c][j].start();
  }

  Location contains(cplx z) const;
  double distance_to_boundary(cplx z) const;
  // Winding number of the whole boundary (all chains) about z.
  int winding_number(cplx z) const;

  double signed_area(std::size_t chain) const;
  double area() const;
  cplx centroid() const;
  Box bounding_box() const;
  // Tangent rotation along smooth arcs plus exterior turning at corners.
  double total_turning(std::size_t chain) const;

  // Interior point used when the caller does not supply one: the centroid
  // if it lies inside, otherwise the lattice point farthest from the boundary.
  cplx default_center() const;
  // Points of an n x n lattice over the bounding box that lie inside.
  std::vector<cplx> interior_lattice(std::size_t n) const;

  bool operator==(const Domain&) const = default;

 private:
  std::vector<Chain> chains_;
  std::vector<Corner> corners_;
  std::optional<std::array<std::size_t, 4>> quad_;
  double diameter_ = 0.0;
};

Domain build_domain(DomainInput input);
Location contains(const Domain& domain, cplx z);
std::vector<Corner> corner_list(const Domain& domain);

/// Relative distances exp(-sigma (sqrt(n) - sqrt(j))), j = 1..n, from a
/// corner. The same taper places lightning poles and clusters samples.
std::vector<double> tapered_exponential(std::size_t n, double sigma = 4.0);

/// Discretization of the boundary, ordered chain by chain, arc by arc, by
/// increasing parameter. Corner points themselves are never nodes.
struct BoundarySampling {
  std::vector<cplx> nodes;
  std::vector<cplx> tangents;  // unit
  std::vector<double> weights;  // arc-length quadrature weights
  std::vector<double> corner_distance;  // +inf when the domain has no corners
  std::vector<std::size_t> chain;
  std::vector<std::size_t> arc;
  std::vector<double> param;
  // [begin, end) node range per arc, chain-major.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> arc_ranges;

  std::size_t size() const { return nodes.size(); }
};

/// Samples each arc with `points_per_arc` nodes. With `cluster`, arcs that
/// touch a corner also receive tapered-exponential nodes toward that corner
/// (`taper_count` indices; 0 means points_per_arc).
BoundarySampling sample_boundary(const Domain& domain,
                                 std::size_t points_per_arc, bool cluster,
                                 std::size_t taper_count = 0);

/// A grid disjoint from `fit`: `factor` nodes inserted in every parameter
/// gap of `fit` (including the gaps between arc ends and their first/last
/// nodes), so it is `factor` times denser.
BoundarySampling refine_sampling(const Domain& domain,
                                 const BoundarySampling& fit,
                                 std::size_t factor);

}  // namespace cmap
