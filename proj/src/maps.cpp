#include "cmap/maps.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <string>

#include "cmap/error.hpp"

namespace cmap {

const char* to_string(Target t) noexcept {
  switch (t) {
    case Target::disk: return "disk";
    case Target::annulus: return "annulus";
    case Target::rectangle: return "rectangle";
  }
  return "unknown";
}

struct ConformalMap::SeedTable {
  std::once_flag once;
  std::vector<cplx> z;
  std::vector<cplx> w;
};

const ConformalMap::SeedTable& ConformalMap::seeds() const {
  std::call_once(seeds_->once, [this] {
    seeds_->z = domain_->interior_lattice(64);
    std::vector<MapValue> v(seeds_->z.size());
    at(seeds_->z, v);
    seeds_->w.resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) seeds_->w[i] = v[i].value;
  });
  return *seeds_;
}

MapValue ConformalMap::at(cplx z) const {
  MapValue out;
  at(std::span<const cplx>(&z, 1), std::span<MapValue>(&out, 1));
  return out;
}

void ConformalMap::at(std::span<const cplx> points, std::span<MapValue> out) const {
  std::vector<cplx> g(points.size()), dg(points.size());
  model_.evaluate(points, g, dg);
  for (std::size_t i = 0; i < points.size(); ++i) {
    switch (target_) {
      case Target::disk: {
        const cplx e = std::exp(g[i]);
        const cplx dz = points[i] - center_;
        out[i] = {dz * e, e * (1.0 + dz * dg[i])};
        break;
      }
      case Target::annulus: {
        const cplx e = std::exp(g[i]);
        out[i] = {e, dg[i] * e};
        break;
      }
      case Target::rectangle:
        out[i] = {g[i] - cplx(0.0, shift_), dg[i]};
        break;
    }
  }
}

bool ConformalMap::in_canonical(cplx w) const {
  switch (target_) {
    case Target::disk:
      return std::abs(w) < 1.0;
    case Target::annulus:
      return std::abs(w) > 1.0 && std::abs(w) < *modulus_;
    case Target::rectangle:
      return w.real() > 0.0 && w.real() < 1.0 && w.imag() > 0.0 && w.imag() < 1.0 / *modulus_;
  }
  return false;
}

ConformalMap disk_map(const Domain& domain, const MapOptions& options) {
  if (!domain.simply_connected())
    fail(ErrorCode::NotSimplyConnected, "disk maps need a simply connected domain");
  const cplx z0 = options.center ? *options.center : domain.default_center();
  if (domain.contains(z0) != Location::inside)
    fail(ErrorCode::CenterOutside, "map center is not an interior point");
  SolveSettings st{options.tol, options.max_dof, options.best_effort, z0};
  const BoundaryData data = [z0](const BoundaryPoint& p) { return -std::log(std::abs(p.z - z0)); };
  ConformalMap m;
  m.target_ = Target::disk;
  m.domain_ = std::make_shared<const Domain>(domain);
  m.center_ = z0;
  m.model_ = solve_dirichlet_adaptive(domain, data, Purpose::disk, st);
  m.seeds_ = std::make_shared<ConformalMap::SeedTable>();
  return m;
}

ConformalMap annulus_map(const Domain& domain, const MapOptions& options) {
  if (domain.hole_count() != 1)
    fail(ErrorCode::WrongConnectivity, "annulus maps need exactly one hole");
  SolveSettings st{options.tol, options.max_dof, options.best_effort, options.center};
  // Rotation is fixed by making f real and positive at the first node of
  // the inner boundary.
  const Arc& first = domain.chains()[1].front();
  DirichletOptions dopt;
  dopt.annulus = true;
  dopt.normalization_point = domain.corners().empty() ||
                                     std::none_of(domain.corners().begin(), domain.corners().end(),
                                                  [](const Corner& c) { return c.chain == 1 && c.junction == 0; })
                                 ? first.start()
                                 : first.point(0.5);
  const BoundaryData zero = [](const BoundaryPoint&) { return 0.0; };
  ConformalMap m;
  m.target_ = Target::annulus;
  m.domain_ = std::make_shared<const Domain>(domain);
  m.model_ = solve_dirichlet_adaptive(domain, zero, Purpose::annulus, st, dopt);
  m.center_ = m.model_.basis.hole_center;
  m.modulus_ = std::exp(*m.model_.outer_constant);
  m.seeds_ = std::make_shared<ConformalMap::SeedTable>();
  return m;
}

ConformalMap rectangle_map(const Domain& domain, const MapOptions& options) {
  if (!domain.quad_vertices()) fail(ErrorCode::NoQuadMarking, "rectangle maps need quad marks");
  SolveSettings st{options.tol, options.max_dof, options.best_effort, options.center};
  ConformalMap m;
  m.target_ = Target::rectangle;
  m.domain_ = std::make_shared<const Domain>(domain);
  m.model_ = solve_mixed_adaptive(domain, st);
  m.center_ = m.model_.basis.center;
  m.shift_ = m.model_.side_constants[0];
  m.modulus_ = quad_modulus(m.model_);
  m.seeds_ = std::make_shared<ConformalMap::SeedTable>();
  return m;
}

double green_function(const ConformalMap& map, cplx z) {
  if (map.target() != Target::disk) fail(ErrorCode::WrongTarget, "Green's function needs a disk map");
  if (z == map.center()) fail(ErrorCode::EvalAtCenter, "Green's function is singular at the center");
  if (map.domain().contains(z) == Location::outside)
    fail(ErrorCode::PointOutsideDomain, "point lies outside the domain");
  return std::log(std::abs(map.at(z).value));
}

std::vector<MapValue> evaluate_map(const ConformalMap& map, std::span<const cplx> points) {
  for (const cplx z : points)
    if (map.domain().contains(z) == Location::outside)
      fail(ErrorCode::PointOutsideDomain, "point (" + num(z.real()) + ", " +
                                              num(z.imag()) + ") lies outside the domain");
  std::vector<MapValue> out(points.size());
  map.at(points, out);
  return out;
}

std::vector<cplx> invert_map(const ConformalMap& map, std::span<const cplx> targets) {
  constexpr int kIterations = 50;
  constexpr int kReseeds = 3;
  const double accept = 1e-10 * map.domain().diameter();
  const double step_floor = 1e-16 * map.domain().diameter();
  for (const cplx w : targets)
    if (!map.in_canonical(w))
      fail(ErrorCode::TargetOutsideCanonical, "target (" + num(w.real()) + ", " +
                                                  num(w.imag()) +
                                                  ") is not inside the canonical domain");
  const auto& seeds = map.seeds();
  if (seeds.z.empty()) fail(ErrorCode::NewtonDiverged, "no interior seed points");

  std::vector<cplx> out(targets.size());
  std::vector<std::size_t> order(seeds.z.size());
  for (std::size_t k = 0; k < targets.size(); ++k) {
    const cplx w = targets[k];
    std::iota(order.begin(), order.end(), std::size_t{0});
    const std::size_t tries = std::min<std::size_t>(kReseeds + 1, order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(tries), order.end(),
                      [&](std::size_t a, std::size_t b) {
                        return std::abs(seeds.w[a] - w) < std::abs(seeds.w[b] - w);
                      });
    bool done = false;
    for (std::size_t attempt = 0; attempt < tries && !done; ++attempt) {
      cplx z = seeds.z[order[attempt]];
      MapValue fz = map.at(z);
      double res = std::abs(fz.value - w);
      for (int it = 0; it < kIterations; ++it) {
        if (!(fz.derivative != cplx(0.0))) break;
        const cplx dz = (fz.value - w) / fz.derivative;
        double lam = 1.0;
        cplx zn = z - dz;
        MapValue fn = map.at(zn);
        double rn = std::abs(fn.value - w);
        // Halve the step on overshoot.
        while (!(rn < res) && lam > 1e-6) {
          lam *= 0.5;
          zn = z - lam * dz;
          fn = map.at(zn);
          rn = std::abs(fn.value - w);
        }
        if (!(rn < res)) break;
        const double moved = std::abs(zn - z);
        z = zn;
        fz = fn;
        res = rn;
        if (moved <= step_floor || res < 1e-15) break;
      }
      if (res < accept && std::isfinite(z.real()) && std::isfinite(z.imag())) {
        out[k] = z;
        done = true;
      }
    }
    if (!done)
      fail(ErrorCode::NewtonDiverged, "Newton failed for target (" + num(w.real()) +
                                          ", " + num(w.imag()) + ")");
  }
  return out;
}

}  // namespace cmap
