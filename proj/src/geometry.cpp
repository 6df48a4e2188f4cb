#include "cmap/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "cmap/error.hpp"

namespace cmap {

namespace {

constexpr double two_pi = 2.0 * pi;
constexpr double kClosureTol = 1e-12;   // relative to diameter
constexpr double kCornerTol = 1e-10;    // radians
constexpr double kCuspTol = 1e-8;       // radians
constexpr std::size_t kIntersectionSamples = 64;

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

double segment_distance(cplx z, cplx a, cplx b) {
  const cplx ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(z - a);
  double s = ((z - a) * std::conj(ab)).real() / len2;
  s = std::clamp(s, 0.0, 1.0);
  return std::abs(z - (a + s * ab));
}

double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

bool segments_touch(cplx a, cplx b, cplx c, cplx d, double tol) {
  const double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  return std::min({segment_distance(a, c, d), segment_distance(b, c, d),
                   segment_distance(c, a, b), segment_distance(d, a, b)}) <= tol;
}

int trig_frequency(std::size_t j, std::size_t n) {
  return static_cast<int>(j) - static_cast<int>((n - 1) / 2);
}

// Accumulates the change in arg(w - z) along arc[t0, t1]. A chord stands in
// for the arc once z is provably outside the lens between them.
void wind(const Arc& arc, double t0, double t1, cplx p0, cplx p1, cplx z,
          double m2, double& angle, int depth) {
  const double dt = t1 - t0;
  const double sag = m2 * dt * dt / 8.0;
  if (segment_distance(z, p0, p1) > sag || depth > 64) {
    angle += std::arg((p1 - z) / (p0 - z));
    return;
  }
  const double tm = 0.5 * (t0 + t1);
  const cplx pm = arc.point(tm);
  wind(arc, t0, tm, p0, pm, z, m2, angle, depth + 1);
  wind(arc, tm, t1, pm, p1, z, m2, angle, depth + 1);
}

Chain reverse_chain(const Chain& chain) {
  Chain out;
  out.reserve(chain.size());
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) out.push_back(it->reversed());
  return out;
}

double chain_area(const Chain& chain) {
  double a = 0.0;
  for (const auto& arc : chain) a += arc.area_contribution();
  return a;
}

}  // namespace

// ---------------------------------------------------------------------------
// Arc

Arc Arc::line(cplx from, cplx to) {
  if (!finite(from) || !finite(to)) fail(ErrorCode::InvalidArgument, "non-finite line endpoint");
  if (from == to) fail(ErrorCode::InvalidArgument, "degenerate line segment");
  Arc a;
  a.kind_ = ArcKind::line;
  a.from_ = from;
  a.to_ = to;
  return a;
}

Arc Arc::circular(cplx from, cplx to, cplx center, double sweep) {
  if (!finite(from) || !finite(to) || !finite(center) || !std::isfinite(sweep))
    fail(ErrorCode::InvalidArgument, "non-finite circular arc data");
  if (sweep == 0.0 || std::abs(sweep) >= two_pi)
    fail(ErrorCode::InvalidArgument, "circular sweep must lie in (-2pi, 2pi) \\ {0}");
  const double r = std::abs(from - center);
  if (r == 0.0) fail(ErrorCode::InvalidArgument, "circular arc with zero radius");
  const cplx expected = center + (from - center) * std::polar(1.0, sweep);
  if (std::abs(expected - to) > 1e-9 * r)
    fail(ErrorCode::InvalidArgument, "circular arc endpoint inconsistent with center and sweep");
  Arc a;
  a.kind_ = ArcKind::circular;
  a.from_ = from;
  a.to_ = to;
  a.center_ = center;
  a.sweep_ = sweep;
  return a;
}

Arc Arc::circular(cplx from, cplx center, double sweep) {
  return circular(from, center + (from - center) * std::polar(1.0, sweep), center, sweep);
}

Arc Arc::trig(std::vector<cplx> coeffs) {
  if (coeffs.size() < 3 || coeffs.size() % 2 == 0)
    fail(ErrorCode::InvalidArgument, "trig arc needs an odd number (>= 3) of coefficients");
  for (const auto& c : coeffs)
    if (!finite(c)) fail(ErrorCode::InvalidArgument, "non-finite trig coefficient");
  Arc a;
  a.kind_ = ArcKind::trig;
  a.coeffs_ = std::move(coeffs);
  a.from_ = a.to_ = std::accumulate(a.coeffs_.begin(), a.coeffs_.end(), cplx{});
  for (int k = 0; k < 256; ++k) {
    if (std::abs(a.derivative(k / 256.0)) == 0.0)
      fail(ErrorCode::InvalidArgument, "trig arc has a vanishing tangent");
  }
  return a;
}

cplx Arc::point(double t) const {
  switch (kind_) {
    case ArcKind::line:
      return from_ + (to_ - from_) * t;
    case ArcKind::circular:
      return center_ + (from_ - center_) * std::polar(1.0, sweep_ * t);
    case ArcKind::trig: {
      cplx s{};
      const std::size_t n = coeffs_.size();
      for (std::size_t j = 0; j < n; ++j)
        s += coeffs_[j] * std::polar(1.0, two_pi * trig_frequency(j, n) * t);
      return s;
    }
  }
  return {};
}

cplx Arc::derivative(double t) const {
  switch (kind_) {
    case ArcKind::line:
      return to_ - from_;
    case ArcKind::circular:
      return cplx(0.0, sweep_) * (from_ - center_) * std::polar(1.0, sweep_ * t);
    case ArcKind::trig: {
      cplx s{};
      const std::size_t n = coeffs_.size();
      for (std::size_t j = 0; j < n; ++j) {
        const double w = two_pi * trig_frequency(j, n);
        s += coeffs_[j] * cplx(0.0, w) * std::polar(1.0, w * t);
      }
      return s;
    }
  }
  return {};
}

double Arc::second_derivative_bound() const {
  switch (kind_) {
    case ArcKind::line:
      return 0.0;
    case ArcKind::circular:
      return std::abs(from_ - center_) * sweep_ * sweep_;
    case ArcKind::trig: {
      double s = 0.0;
      const std::size_t n = coeffs_.size();
      for (std::size_t j = 0; j < n; ++j) {
        const double w = two_pi * trig_frequency(j, n);
        s += std::abs(coeffs_[j]) * w * w;
      }
      return s;
    }
  }
  return 0.0;
}

double Arc::length() const {
  switch (kind_) {
    case ArcKind::line:
      return std::abs(to_ - from_);
    case ArcKind::circular:
      return std::abs(from_ - center_) * std::abs(sweep_);
    case ArcKind::trig: {
      // Periodic trapezoid rule: spectrally accurate for Fourier curves.
      constexpr int n = 2048;
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += std::abs(derivative(static_cast<double>(k) / n));
      return s / n;
    }
  }
  return 0.0;
}

double Arc::turning() const {
  switch (kind_) {
    case ArcKind::line:
      return 0.0;
    case ArcKind::circular:
      return sweep_;
    case ArcKind::trig: {
      constexpr int n = 4096;
      double total = 0.0;
      cplx prev = derivative(0.0);
      for (int k = 1; k <= n; ++k) {
        const cplx cur = derivative(static_cast<double>(k) / n);
        total += std::arg(cur / prev);
        prev = cur;
      }
      return total;
    }
  }
  return 0.0;
}

double Arc::area_contribution() const {
  switch (kind_) {
    case ArcKind::line:
      return 0.5 * cross(from_, to_);
    case ArcKind::circular: {
      const double r = std::abs(from_ - center_);
      return 0.5 * (r * r * sweep_ + (std::conj(center_) * (to_ - from_)).imag());
    }
    case ArcKind::trig: {
      double s = 0.0;
      const std::size_t n = coeffs_.size();
      for (std::size_t j = 0; j < n; ++j) s += trig_frequency(j, n) * std::norm(coeffs_[j]);
      return pi * s;
    }
  }
  return 0.0;
}

double Arc::distance(cplx z) const {
  switch (kind_) {
    case ArcKind::line:
      return segment_distance(z, from_, to_);
    case ArcKind::circular: {
      const double r = std::abs(from_ - center_);
      const cplx rel = z - center_;
      double best = std::min(std::abs(z - from_), std::abs(z - to_));
      if (std::abs(rel) == 0.0) return r;
      double phi = std::arg(rel / (from_ - center_));
      if (sweep_ > 0.0) {
        if (phi < 0.0) phi += two_pi;
        if (phi <= sweep_) best = std::min(best, std::abs(std::abs(rel) - r));
      } else {
        if (phi > 0.0) phi -= two_pi;
        if (phi >= sweep_) best = std::min(best, std::abs(std::abs(rel) - r));
      }
      return best;
    }
    case ArcKind::trig: {
      constexpr int n = 256;
      int kbest = 0;
      double best = std::numeric_limits<double>::infinity();
      for (int k = 0; k < n; ++k) {
        const double d = std::abs(point(static_cast<double>(k) / n) - z);
        if (d < best) {
          best = d;
          kbest = k;
        }
      }
      // Newton on d/dt |z(t) - z|^2 / 2 = Re((z(t) - z) conj(z'(t))).
      double t = static_cast<double>(kbest) / n;
      const std::size_t m = coeffs_.size();
      for (int it = 0; it < 30; ++it) {
        const cplx p = point(t) - z, d1 = derivative(t);
        cplx d2{};
        for (std::size_t j = 0; j < m; ++j) {
          const double w = two_pi * trig_frequency(j, m);
          d2 -= coeffs_[j] * (w * w) * std::polar(1.0, w * t);
        }
        const double f = (p * std::conj(d1)).real();
        const double fp = std::norm(d1) + (p * std::conj(d2)).real();
        if (fp <= 0.0) break;
        const double step = std::clamp(f / fp, -1.0 / n, 1.0 / n);
        t -= step;
        if (std::abs(step) < 1e-16) break;
      }
      return std::min(best, std::abs(point(t) - z));
    }
  }
  return 0.0;
}

Arc Arc::reversed() const {
  Arc a = *this;
  std::swap(a.from_, a.to_);
  switch (kind_) {
    case ArcKind::line:
      break;
    case ArcKind::circular:
      a.sweep_ = -sweep_;
      break;
    case ArcKind::trig:
      // z(1 - t) flips every frequency k -> -k.
      std::reverse(a.coeffs_.begin(), a.coeffs_.end());
      a.from_ = a.to_ = from_;
      break;
  }
  return a;
}

// ---------------------------------------------------------------------------
// Domain

Domain build_domain(DomainInput input) { return Domain::build(std::move(input)); }

Domain Domain::build(DomainInput input) {
  if (input.outer.empty()) fail(ErrorCode::InvalidArgument, "outer chain has no arcs");
  if (input.holes.size() > 1)
    fail(ErrorCode::InvalidArgument, "at most one hole is supported");
  for (const auto& h : input.holes)
    if (h.empty()) fail(ErrorCode::InvalidArgument, "hole chain has no arcs");

  Domain d;
  d.chains_.push_back(std::move(input.outer));
  for (auto& h : input.holes) d.chains_.push_back(std::move(h));

  // Diameter over sampled boundary points.
  std::vector<cplx> pts;
  for (const auto& chain : d.chains_)
    for (const auto& arc : chain)
      for (std::size_t k = 0; k < kIntersectionSamples; ++k)
        pts.push_back(arc.point(static_cast<double>(k) / kIntersectionSamples));
  double diam = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) diam = std::max(diam, std::abs(pts[i] - pts[j]));
  if (!(diam > 0.0)) fail(ErrorCode::InvalidArgument, "domain has zero extent");
  d.diameter_ = diam;
  const double tol = kClosureTol * diam;

  for (std::size_t c = 0; c < d.chains_.size(); ++c) {
    const auto& chain = d.chains_[c];
    for (std::size_t k = 0; k < chain.size(); ++k) {
      const cplx gap = chain[k].end() - chain[(k + 1) % chain.size()].start();
      if (std::abs(gap) > tol)
        fail(ErrorCode::NotClosed, "chain " + std::to_string(c) + " arc " + std::to_string(k) +
                                       " ends " + std::to_string(std::abs(gap)) +
                                       " away from the next arc");
    }
  }

  // Quad marks are validated against the chain as given, then remapped if
  // the chain is reversed.
  if (input.quad) {
    const auto& q = *input.quad;
    const std::size_t n = d.chains_[0].size();
    for (std::size_t i = 0; i < 4; ++i) {
      if (q[i] >= n) fail(ErrorCode::BadQuadMarking, "quad index out of range");
      for (std::size_t j = i + 1; j < 4; ++j)
        if (q[i] == q[j]) fail(ErrorCode::BadQuadMarking, "quad indices must be distinct");
    }
    int descents = 0;
    for (std::size_t i = 0; i < 4; ++i) descents += q[(i + 1) % 4] < q[i] ? 1 : 0;
    if (descents != 1) fail(ErrorCode::BadQuadMarking, "quad indices are not in cyclic order");
    d.quad_ = q;
  }

  if (chain_area(d.chains_[0]) < 0.0) {
    d.chains_[0] = reverse_chain(d.chains_[0]);
    if (d.quad_) {
      const std::size_t n = d.chains_[0].size();
      const auto m = [n](std::size_t i) { return (n - i) % n; };
      const auto q = *d.quad_;
      d.quad_ = std::array<std::size_t, 4>{m(q[3]), m(q[2]), m(q[1]), m(q[0])};
    }
  }
  for (std::size_t c = 1; c < d.chains_.size(); ++c)
    if (chain_area(d.chains_[c]) > 0.0) d.chains_[c] = reverse_chain(d.chains_[c]);

  // Corners first: tangent arcs at a cusp would also trip the crossing test.
  for (std::size_t c = 0; c < d.chains_.size(); ++c) {
    const auto& chain = d.chains_[c];
    const std::size_t n = chain.size();
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t in = (j + n - 1) % n;
      const cplx tin = chain[in].derivative(1.0);
      const cplx tout = chain[j].derivative(0.0);
      const double turn = std::arg(tout / tin);
      if (std::abs(turn) <= kCornerTol) continue;
      const double interior = pi - turn;
      if (interior < kCuspTol || interior > two_pi - kCuspTol)
        fail(ErrorCode::CuspCorner, "cusp at chain " + std::to_string(c) + " junction " +
                                        std::to_string(j));
      d.corners_.push_back({chain[j].start(), interior, c, j, in, j});
    }
  }

  // Sample-based intersection check over all chains.
  struct Seg {
    cplx a, b;
    std::size_t chain, index, count;
  };
  std::vector<Seg> segs;
  for (std::size_t c = 0; c < d.chains_.size(); ++c) {
    const auto& chain = d.chains_[c];
    const std::size_t count = chain.size() * kIntersectionSamples;
    std::size_t idx = 0;
    for (const auto& arc : chain) {
      for (std::size_t k = 0; k < kIntersectionSamples; ++k, ++idx) {
        const double t0 = static_cast<double>(k) / kIntersectionSamples;
        const cplx a = arc.point(t0);
        const cplx b = k + 1 == kIntersectionSamples ? arc.end()
                                                     : arc.point(static_cast<double>(k + 1) / kIntersectionSamples);
        segs.push_back({a, b, c, idx, count});
      }
    }
  }
  for (std::size_t i = 0; i < segs.size(); ++i) {
    for (std::size_t j = i + 1; j < segs.size(); ++j) {
      const auto& s = segs[i];
      const auto& t = segs[j];
      if (s.chain == t.chain) {
        const std::size_t diff = t.index - s.index;
        if (diff == 1 || diff + 1 == s.count || diff == 0) continue;
      }
      if (segments_touch(s.a, s.b, t.a, t.b, tol))
        fail(ErrorCode::SelfIntersecting, "boundary crosses itself near (" +
                                              std::to_string(s.a.real()) + ", " +
                                              std::to_string(s.a.imag()) + ")");
    }
  }

  return d;
}

Location contains(const Domain& domain, cplx z) { return domain.contains(z); }

std::vector<Corner> corner_list(const Domain& domain) {
  return {domain.corners().begin(), domain.corners().end()};
}

double Domain::distance_to_boundary(cplx z) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& chain : chains_)
    for (const auto& arc : chain) best = std::min(best, arc.distance(z));
  return best;
}

int Domain::winding_number(cplx z) const {
  double angle = 0.0;
  for (const auto& chain : chains_) {
    for (const auto& arc : chain) {
      const double m2 = arc.second_derivative_bound();
      // Pre-split curved arcs so the global curvature bound is not too crude.
      const int pieces = arc.kind() == ArcKind::trig ? 32 : (arc.kind() == ArcKind::circular ? 8 : 1);
      cplx p0 = arc.start();
      for (int k = 0; k < pieces; ++k) {
        const double t0 = static_cast<double>(k) / pieces;
        const double t1 = static_cast<double>(k + 1) / pieces;
        const cplx p1 = k + 1 == pieces ? arc.end() : arc.point(t1);
        wind(arc, t0, t1, p0, p1, z, m2, angle, 0);
        p0 = p1;
      }
    }
  }
  return static_cast<int>(std::lround(angle / two_pi));
}

Location Domain::contains(cplx z) const {
  if (!finite(z)) return Location::outside;
  if (distance_to_boundary(z) <= kClosureTol * diameter_) return Location::boundary;
  return winding_number(z) == 1 ? Location::inside : Location::outside;
}

double Domain::signed_area(std::size_t chain) const { return chain_area(chains_.at(chain)); }

double Domain::area() const {
  double a = 0.0;
  for (std::size_t c = 0; c < chains_.size(); ++c) a += signed_area(c);
  return a;
}

cplx Domain::centroid() const {
  // Green's theorem on a fine polyline: integral of z over the region.
  constexpr int per_arc = 512;
  double ax = 0.0, ay = 0.0, area = 0.0;
  for (const auto& chain : chains_) {
    for (const auto& arc : chain) {
      cplx prev = arc.start();
      for (int k = 1; k <= per_arc; ++k) {
        const cplx cur = k == per_arc ? arc.end() : arc.point(static_cast<double>(k) / per_arc);
        const double cr = cross(prev, cur);
        area += cr;
        ax += (prev.real() + cur.real()) * cr;
        ay += (prev.imag() + cur.imag()) * cr;
        prev = cur;
      }
    }
  }
  area *= 0.5;
  return {ax / (6.0 * area), ay / (6.0 * area)};
}

Box Domain::bounding_box() const {
  Box b{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
        std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& arc : outer()) {
    for (int k = 0; k <= 256; ++k) {
      const cplx p = arc.point(k / 256.0);
      b.xmin = std::min(b.xmin, p.real());
      b.xmax = std::max(b.xmax, p.real());
      b.ymin = std::min(b.ymin, p.imag());
      b.ymax = std::max(b.ymax, p.imag());
    }
  }
  return b;
}

double Domain::total_turning(std::size_t chain) const {
  const auto& ch = chains_.at(chain);
  const std::size_t n = ch.size();
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    total += ch[j].turning();
    total += std::arg(ch[j].derivative(0.0) / ch[(j + n - 1) % n].derivative(1.0));
  }
  return total;
}

std::vector<cplx> Domain::interior_lattice(std::size_t n) const {
  const Box b = bounding_box();
  std::vector<cplx> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const cplx z(b.xmin + (b.xmax - b.xmin) * (j + 0.5) / n,
                   b.ymin + (b.ymax - b.ymin) * (i + 0.5) / n);
      if (contains(z) == Location::inside) out.push_back(z);
    }
  }
  return out;
}

cplx Domain::default_center() const {
  const cplx c = centroid();
  if (contains(c) == Location::inside) return c;
  cplx best = c;
  double dbest = -1.0;
  for (const cplx z : interior_lattice(64)) {
    const double dz = distance_to_boundary(z);
    if (dz > dbest) {
      dbest = dz;
      best = z;
    }
  }
  if (dbest < 0.0) fail(ErrorCode::CenterOutside, "no interior lattice point found");
  return best;
}

// ---------------------------------------------------------------------------
// Sampling

std::vector<double> tapered_exponential(std::size_t n, double sigma) {
  std::vector<double> out(n);
  const double sn = std::sqrt(static_cast<double>(n));
  for (std::size_t j = 1; j <= n; ++j)
    out[j - 1] = std::exp(-sigma * (sn - std::sqrt(static_cast<double>(j))));
  return out;
}

namespace {

using ParamTable = std::vector<std::vector<std::vector<double>>>;

bool is_corner(const Domain& d, std::size_t chain, std::size_t junction) {
  for (const auto& c : d.corners())
    if (c.chain == chain && c.junction == junction) return true;
  return false;
}

BoundarySampling assemble(const Domain& d, const ParamTable& params) {
  BoundarySampling s;
  const auto corners = d.corners();
  s.arc_ranges.resize(d.chains().size());
  for (std::size_t c = 0; c < d.chains().size(); ++c) {
    const auto& chain = d.chains()[c];
    for (std::size_t a = 0; a < chain.size(); ++a) {
      const auto& ts = params[c][a];
      const std::size_t begin = s.nodes.size();
      for (std::size_t i = 0; i < ts.size(); ++i) {
        const double t = ts[i];
        const double lo = i == 0 ? 0.0 : 0.5 * (ts[i - 1] + t);
        const double hi = i + 1 == ts.size() ? 1.0 : 0.5 * (t + ts[i + 1]);
        const cplx z = chain[a].point(t);
        const cplx dz = chain[a].derivative(t);
        double cd = std::numeric_limits<double>::infinity();
        for (const auto& cr : corners) cd = std::min(cd, std::abs(z - cr.location));
        s.nodes.push_back(z);
        s.tangents.push_back(dz / std::abs(dz));
        s.weights.push_back(std::abs(dz) * (hi - lo));
        s.corner_distance.push_back(cd);
        s.chain.push_back(c);
        s.arc.push_back(a);
        s.param.push_back(t);
      }
      s.arc_ranges[c].emplace_back(begin, s.nodes.size());
    }
  }
  return s;
}

void sort_unique(std::vector<double>& ts) {
  std::sort(ts.begin(), ts.end());
  std::vector<double> out;
  for (double t : ts)
    if (out.empty() || t - out.back() > 1e-15) out.push_back(t);
  ts.swap(out);
}

}  // namespace

BoundarySampling sample_boundary(const Domain& domain, std::size_t points_per_arc, bool cluster,
                                 std::size_t taper_count) {
  if (points_per_arc < 2)
    fail(ErrorCode::ZeroPoints, "points_per_arc must be at least 2, got " +
                                    std::to_string(points_per_arc));
  const std::size_t n = points_per_arc;
  const auto taper = tapered_exponential(taper_count == 0 ? n : taper_count);
  ParamTable params(domain.chains().size());
  for (std::size_t c = 0; c < domain.chains().size(); ++c) {
    const auto& chain = domain.chains()[c];
    params[c].resize(chain.size());
    for (std::size_t a = 0; a < chain.size(); ++a) {
      const bool cs = is_corner(domain, c, a);
      const bool ce = is_corner(domain, c, (a + 1) % chain.size());
      auto& ts = params[c][a];
      if (!cluster || (!cs && !ce)) {
        const double shift = cs ? 0.5 : 0.0;
        for (std::size_t j = 0; j < n; ++j) ts.push_back((j + shift) / n);
        continue;
      }
      for (std::size_t j = cs ? 1 : 0; j < n; ++j) ts.push_back(static_cast<double>(j) / n);
      // Taper nodes finer than the uniform spacing, toward each corner end.
      for (double delta : taper) {
        if (delta >= 1.0 / n || delta < 1e-15) continue;
        if (cs) ts.push_back(delta);
        if (ce) ts.push_back(1.0 - delta);
      }
      sort_unique(ts);
    }
  }
  return assemble(domain, params);
}

BoundarySampling refine_sampling(const Domain& domain, const BoundarySampling& fit,
                                 std::size_t factor) {
  if (factor < 1) fail(ErrorCode::ZeroPoints, "refinement factor must be positive");
  ParamTable params(domain.chains().size());
  for (std::size_t c = 0; c < domain.chains().size(); ++c) {
    params[c].resize(domain.chains()[c].size());
    for (std::size_t a = 0; a < params[c].size(); ++a) {
      const auto [b, e] = fit.arc_ranges.at(c).at(a);
      std::vector<double> knots{0.0};
      for (std::size_t i = b; i < e; ++i) knots.push_back(fit.param[i]);
      knots.push_back(1.0);
      auto& ts = params[c][a];
      for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        const double lo = knots[i], hi = knots[i + 1];
        if (hi - lo <= 1e-14) continue;
        for (std::size_t k = 1; k <= factor; ++k)
          ts.push_back(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(factor + 1));
      }
    }
  }
  return assemble(domain, params);
}

}  // namespace cmap
