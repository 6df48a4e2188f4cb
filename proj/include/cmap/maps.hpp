#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "cmap/geometry.hpp"
#include "cmap/laplace.hpp"

namespace cmap {

enum class Target { disk, annulus, rectangle };

const char* to_string(Target t) noexcept;

struct MapOptions {
  double tol = 1e-8;
  std::size_t max_dof = 2000;
  bool best_effort = false;
  std::optional<cplx> center;  // disk: preimage of 0
};

struct MapValue {
  cplx value;
  cplx derivative;
};

/// A conformal map of a domain onto its canonical target.
///
///   disk       f(z) = (z - z0) exp(g(z)),   f(z0) = 0, f'(z0) > 0
///   annulus    f(z) = exp(g(z)),            1 < |f| < R
///   rectangle  f(z) = g(z) - i c1,          [0, 1] x [0, 1/mu]
///
/// Immutable; evaluation and inversion are safe to call concurrently.
class ConformalMap {
 public:
  Target target() const { return target_; }
  const Domain& domain() const { return *domain_; }
  const AnalyticModel& model() const { return model_; }
  cplx center() const { return center_; }
  // R for the annulus, mu for the rectangle; empty for the disk.
  std::optional<double> modulus() const { return modulus_; }
  double certified_residual() const { return model_.residual.max_residual; }
  std::size_t dof() const { return model_.real_dof; }

  // No domain check; used where points are known to be admissible.
  MapValue at(cplx z) const;
  void at(std::span<const cplx> points, std::span<MapValue> out) const;

  // Whether w lies strictly inside the canonical target.
  bool in_canonical(cplx w) const;

 private:
  friend ConformalMap disk_map(const Domain&, const MapOptions&);
  friend ConformalMap annulus_map(const Domain&, const MapOptions&);
  friend ConformalMap rectangle_map(const Domain&, const MapOptions&);
  friend std::vector<cplx> invert_map(const ConformalMap&, std::span<const cplx>);

  struct SeedTable;
  const SeedTable& seeds() const;

  Target target_ = Target::disk;
  std::shared_ptr<const Domain> domain_;
  AnalyticModel model_;
  cplx center_{};
  std::optional<double> modulus_;
  double shift_ = 0.0;  // rectangle: c1
  std::shared_ptr<SeedTable> seeds_;
};

ConformalMap disk_map(const Domain& domain, const MapOptions& options = {});
ConformalMap annulus_map(const Domain& domain, const MapOptions& options = {});
ConformalMap rectangle_map(const Domain& domain, const MapOptions& options = {});

/// log|f(z)| for a disk map: negative inside, zero on the boundary.
double green_function(const ConformalMap& map, cplx z);

/// f and f' at interior or boundary points; PointOutsideDomain otherwise.
std::vector<MapValue> evaluate_map(const ConformalMap& map, std::span<const cplx> points);

/// Newton inversion seeded from a 64 x 64 interior lattice.
std::vector<cplx> invert_map(const ConformalMap& map, std::span<const cplx> targets);

}  // namespace cmap
