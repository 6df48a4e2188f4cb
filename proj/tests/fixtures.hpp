#pragma once

#include <array>
#include <optional>
#include <random>
#include <vector>

#include "cmap/geometry.hpp"

namespace fx {

using cmap::Arc;
using cmap::cplx;
using cmap::Domain;
using cmap::DomainInput;
using cmap::pi;

inline cmap::Chain polygon_chain(const std::vector<cplx>& v) {
  cmap::Chain c;
  for (std::size_t i = 0; i < v.size(); ++i) c.push_back(Arc::line(v[i], v[(i + 1) % v.size()]));
  return c;
}

inline Domain polygon(const std::vector<cplx>& v, std::optional<std::array<std::size_t, 4>> quad = {}) {
  DomainInput in;
  in.outer = polygon_chain(v);
  in.quad = quad;
  return Domain::build(in);
}

// Circle as `arcs` circular arcs, counterclockwise (or clockwise for holes).
inline cmap::Chain circle_chain(cplx c, double r, std::size_t arcs = 4, bool clockwise = false) {
  cmap::Chain out;
  const double sweep = (clockwise ? -2.0 : 2.0) * pi / static_cast<double>(arcs);
  cplx from = c + r;
  for (std::size_t k = 0; k < arcs; ++k) {
    const cplx to = k + 1 == arcs ? c + r : c + std::polar(r, sweep * static_cast<double>(k + 1));
    out.push_back(Arc::circular(from, to, c, sweep));
    from = to;
  }
  return out;
}

inline Domain disk(cplx c = 0.0, double r = 1.0) {
  DomainInput in;
  in.outer = circle_chain(c, r);
  return Domain::build(in);
}

inline Domain annulus(cplx c_out, double r_out, cplx c_in, double r_in) {
  DomainInput in;
  in.outer = circle_chain(c_out, r_out);
  in.holes = {circle_chain(c_in, r_in, 4, true)};
  return Domain::build(in);
}

inline std::vector<cplx> l_vertices() { return {{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}; }

inline Domain l_shape() { return polygon(l_vertices()); }

// Quadrilateral on the L-shape and its conjugate (marks shifted by one).
inline Domain l_quad() { return polygon(l_vertices(), std::array<std::size_t, 4>{0, 1, 2, 4}); }
inline Domain l_quad_conjugate() { return polygon(l_vertices(), std::array<std::size_t, 4>{1, 2, 4, 0}); }

inline Domain rectangle(double w, double h = 1.0, bool quad = true) {
  std::optional<std::array<std::size_t, 4>> q;
  if (quad) q = std::array<std::size_t, 4>{0, 1, 2, 3};
  return polygon({{0, 0}, {w, 0}, {w, h}, {0, h}}, q);
}

inline std::vector<cplx> hexagon_vertices() {
  return {{0, 0}, {3, 0.2}, {3.6, 1.5}, {2.5, 2.8}, {0.8, 2.5}, {-0.4, 1.2}};
}

inline Domain hexagon() { return polygon(hexagon_vertices()); }

// Image of the unit disk under p(w) = w + 0.2 w^2.
inline cplx poly_p(cplx w) { return w + 0.2 * w * w; }

inline Domain poly_image() {
  DomainInput in;
  in.outer = {Arc::trig({0.0, 0.0, 0.0, 1.0, 0.2})};
  return Domain::build(in);
}

// x^2/a^2 + y^2/b^2 < 1 as a single trig arc.
inline Domain ellipse(double a, double b) {
  DomainInput in;
  in.outer = {Arc::trig({(a - b) / 2.0, 0.0, (a + b) / 2.0})};
  return Domain::build(in);
}

// Random points strictly inside, at least `margin` from the boundary.
inline std::vector<cplx> interior_points(const Domain& d, std::size_t n, double margin, unsigned seed = 7) {
  std::mt19937 rng(seed);
  const auto box = d.bounding_box();
  std::uniform_real_distribution<double> ux(box.xmin, box.xmax), uy(box.ymin, box.ymax);
  std::vector<cplx> out;
  while (out.size() < n) {
    const cplx z(ux(rng), uy(rng));
    if (d.contains(z) == cmap::Location::inside && d.distance_to_boundary(z) > margin) out.push_back(z);
  }
  return out;
}

// Apply z -> a z + b to every arc.
inline Domain transformed(const Domain& d, cplx a, cplx b) {
  auto map_chain = [&](const cmap::Chain& c) {
    cmap::Chain out;
    for (const Arc& arc : c) {
      switch (arc.kind()) {
        case cmap::ArcKind::line:
          out.push_back(Arc::line(a * arc.start() + b, a * arc.end() + b));
          break;
        case cmap::ArcKind::circular:
          out.push_back(Arc::circular(a * arc.start() + b, a * arc.end() + b, a * arc.center() + b, arc.sweep()));
          break;
        case cmap::ArcKind::trig: {
          auto c2 = arc.coeffs();
          for (auto& v : c2) v *= a;
          c2[(c2.size() - 1) / 2] += b;
          out.push_back(Arc::trig(c2));
          break;
        }
      }
    }
    return out;
  };
  DomainInput in;
  in.outer = map_chain(d.outer());
  for (std::size_t h = 1; h < d.chains().size(); ++h) in.holes.push_back(map_chain(d.chains()[h]));
  in.quad = d.quad_vertices();
  return Domain::build(in);
}

}  // namespace fx
