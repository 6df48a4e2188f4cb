#include "cmap/basis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cmap/error.hpp"

namespace cmap {

namespace {

constexpr double kSingularTol = 1e-14;

struct Junction {
  std::size_t chain, index;
  double interior_angle;
};

PoleSite make_site(const Domain& d, const Junction& j) {
  const auto& chain = d.chains()[j.chain];
  const std::size_t n = chain.size();
  const std::size_t in = (j.index + n - 1) % n;
  const cplx tout = chain[j.index].derivative(0.0);
  const cplx unit_out = tout / std::abs(tout);
  // Rotating the outgoing tangent by half the interior angle points into the
  // domain (which lies to the left); the exterior bisector is its negative.
  const cplx inward = unit_out * std::polar(1.0, 0.5 * j.interior_angle);
  const double scale = std::min(chain[in].length(), chain[j.index].length());
  return {chain[j.index].start(), -inward, scale};
}

Eigen::MatrixXcd arnoldi(const Domain& d, cplx center, double scale, std::size_t degree) {
  std::size_t arcs = 0;
  for (const auto& c : d.chains()) arcs += c.size();
  const std::size_t per_arc = std::max<std::size_t>(4, (4 * (degree + 1) + 32 + arcs - 1) / arcs);
  const BoundarySampling s = sample_boundary(d, per_arc, false);
  const auto m = static_cast<Eigen::Index>(s.size());
  const auto n = static_cast<Eigen::Index>(degree);
  Eigen::VectorXcd w(m);
  for (Eigen::Index i = 0; i < m; ++i) w(i) = (s.nodes[static_cast<std::size_t>(i)] - center) / scale;
  Eigen::MatrixXcd q(m, n + 1);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n + 1, std::max<Eigen::Index>(n, 1));
  q.col(0).setOnes();
  const double rm = static_cast<double>(m);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::VectorXcd v = w.cwiseProduct(q.col(k));
    // Two passes of Gram-Schmidt keep the columns orthogonal to working precision.
    for (int pass = 0; pass < 2; ++pass) {
      const Eigen::VectorXcd c = q.leftCols(k + 1).adjoint() * v / rm;
      v -= q.leftCols(k + 1) * c;
      h.col(k).head(k + 1) += c;
    }
    h(k + 1, k) = v.norm() / std::sqrt(rm);
    q.col(k + 1) = v / h(k + 1, k);
  }
  return h;
}

}  // namespace

cplx hole_point(const Domain& domain) {
  if (domain.hole_count() != 1) fail(ErrorCode::PurposeMismatch, "domain has no hole");
  const Chain& hole = domain.chains()[1];
  // Polyline centroid of the hole curve.
  double ax = 0.0, ay = 0.0, area = 0.0;
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (const auto& arc : hole) {
    cplx prev = arc.start();
    for (int k = 1; k <= 256; ++k) {
      const cplx cur = k == 256 ? arc.end() : arc.point(k / 256.0);
      const double cr = prev.real() * cur.imag() - prev.imag() * cur.real();
      area += cr;
      ax += (prev.real() + cur.real()) * cr;
      ay += (prev.imag() + cur.imag()) * cr;
      xmin = std::min(xmin, cur.real());
      xmax = std::max(xmax, cur.real());
      ymin = std::min(ymin, cur.imag());
      ymax = std::max(ymax, cur.imag());
      prev = cur;
    }
  }
  const cplx c(ax / (3.0 * area), ay / (3.0 * area));
  if (domain.contains(c) == Location::outside) return c;
  cplx best = c;
  double dbest = -1.0;
  for (int i = 0; i < 64; ++i) {
    for (int j = 0; j < 64; ++j) {
      const cplx z(xmin + (xmax - xmin) * (j + 0.5) / 64, ymin + (ymax - ymin) * (i + 0.5) / 64);
      if (domain.contains(z) != Location::outside) continue;
      const double dz = domain.distance_to_boundary(z);
      if (dz > dbest) {
        dbest = dz;
        best = z;
      }
    }
  }
  return best;
}

BasisSet build_basis(const Domain& domain, Purpose purpose, std::size_t degree,
                     std::size_t poles_per_corner, const BasisOptions& options) {
  const std::size_t holes = domain.hole_count();
  if (purpose == Purpose::annulus && holes != 1)
    fail(ErrorCode::PurposeMismatch, "annulus basis needs exactly one hole, domain has " +
                                         std::to_string(holes));
  if (purpose != Purpose::annulus && holes != 0)
    fail(ErrorCode::PurposeMismatch, "disk/quad basis needs a simply connected domain");
  if (purpose == Purpose::quad && !domain.quad_vertices())
    fail(ErrorCode::NoQuadMarking, "quad basis needs quad vertex marks");

  BasisSet b;
  b.purpose = purpose;
  b.degree = degree;
  b.poles_per_corner = poles_per_corner;
  b.center = options.center ? *options.center : domain.default_center();
  if (domain.contains(b.center) != Location::inside)
    fail(ErrorCode::CenterOutside, "basis center is not interior");

  const double s = domain.diameter() / 2.0;
  for (std::size_t k = 0; k <= degree; ++k)
    b.terms.push_back({TermKind::monomial, b.center, static_cast<int>(k), s, -1});
  b.monomial_count = degree + 1;
  if (options.arnoldi) b.hessenberg = arnoldi(domain, b.center, s, degree);

  std::vector<Junction> junctions;
  for (const auto& c : domain.corners()) junctions.push_back({c.chain, c.junction, c.interior_angle});
  if (purpose == Purpose::quad) {
    for (std::size_t q : *domain.quad_vertices()) {
      const bool seen = std::any_of(junctions.begin(), junctions.end(), [&](const Junction& j) {
        return j.chain == 0 && j.index == q;
      });
      if (!seen) junctions.push_back({0, q, pi});
    }
  }

  if (poles_per_corner > 0) {
    const auto taper = tapered_exponential(poles_per_corner);
    for (const auto& j : junctions) {
      const PoleSite site = make_site(domain, j);
      const int site_index = static_cast<int>(b.pole_sites.size());
      b.pole_sites.push_back(site);
      for (double delta : taper) {
        const cplx p = site.location + site.scale * delta * site.direction;
        if (domain.contains(p) != Location::outside) continue;
        b.terms.push_back({TermKind::pole, p, 0, 1.0, site_index});
        ++b.pole_count;
      }
    }
  }

  if (purpose == Purpose::annulus) {
    b.hole_center = options.hole_center ? *options.hole_center : hole_point(domain);
    double rmin = std::numeric_limits<double>::infinity();
    for (const auto& arc : domain.chains()[1]) rmin = std::min(rmin, arc.distance(b.hole_center));
    b.terms.push_back({TermKind::log, b.hole_center, 0, 1.0, -1});
    b.log_count = 1;
    for (std::size_t k = 1; k <= degree; ++k)
      b.terms.push_back({TermKind::laurent, b.hole_center, static_cast<int>(k), rmin, -1});
    b.laurent_count = degree;
  }
  return b;
}

namespace {

// Non-polynomial terms.
cplx term_value(const BasisTerm& t, cplx z) {
  switch (t.kind) {
    case TermKind::monomial:
      break;
    case TermKind::pole:
      return 1.0 / (z - t.anchor);
    case TermKind::laurent:
      return std::pow(t.scale / (z - t.anchor), t.power);
    case TermKind::log:
      return std::log(z - t.anchor);
  }
  return {};
}

cplx term_derivative(const BasisTerm& t, cplx z) {
  switch (t.kind) {
    case TermKind::monomial:
      break;
    case TermKind::pole: {
      const cplx r = 1.0 / (z - t.anchor);
      return -r * r;
    }
    case TermKind::laurent:
      return -static_cast<double>(t.power) / (z - t.anchor) *
             std::pow(t.scale / (z - t.anchor), t.power);
    case TermKind::log:
      return 1.0 / (z - t.anchor);
  }
  return {};
}

}  // namespace

BasisValues evaluate_basis(const BasisSet& basis, std::span<const cplx> points) {
  const auto np = static_cast<Eigen::Index>(points.size());
  const auto nt = static_cast<Eigen::Index>(basis.terms.size());
  BasisValues out{Eigen::MatrixXcd(np, nt), Eigen::MatrixXcd(np, nt)};
  const Eigen::MatrixXcd& h = basis.hessenberg;
  const auto nm = static_cast<Eigen::Index>(basis.monomial_count);
  for (Eigen::Index i = 0; i < np; ++i) {
    const cplx z = points[static_cast<std::size_t>(i)];
    if (nm > 0) {
      // Monomial terms come first, by increasing degree.
      const double s = basis.terms.front().scale;
      const cplx w = (z - basis.center) / s;
      out.value(i, 0) = 1.0;
      out.derivative(i, 0) = 0.0;
      if (h.size() == 0) {
        for (Eigen::Index k = 1; k < nm; ++k) {
          out.value(i, k) = out.value(i, k - 1) * w;
          out.derivative(i, k) = static_cast<double>(k) / s * out.value(i, k - 1);
        }
      }
      for (Eigen::Index k = 0; h.size() != 0 && k + 1 < nm; ++k) {
        cplx v = w * out.value(i, k);
        cplx d = out.value(i, k) / s + w * out.derivative(i, k);
        for (Eigen::Index j = 0; j <= k; ++j) {
          v -= h(j, k) * out.value(i, j);
          d -= h(j, k) * out.derivative(i, j);
        }
        out.value(i, k + 1) = v / h(k + 1, k);
        out.derivative(i, k + 1) = d / h(k + 1, k);
      }
    }
    for (Eigen::Index k = nm; k < nt; ++k) {
      const BasisTerm& t = basis.terms[static_cast<std::size_t>(k)];
      if (std::abs(z - t.anchor) <= kSingularTol)
        fail(ErrorCode::EvalAtSingularity, "evaluation point coincides with a pole or branch point");
      out.value(i, k) = term_value(t, z);
      out.derivative(i, k) = term_derivative(t, z);
    }
  }
  return out;
}

}  // namespace cmap
