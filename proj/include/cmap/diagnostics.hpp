#pragma once

#include <cstddef>
#include <string>

#include "cmap/geometry.hpp"
#include "cmap/maps.hpp"

namespace cmap {

struct ElongationEstimate {
  double L = 0.0;
  std::string method = "width-of-best-strip";
};

struct CrowdingForecast {
  double scale = 1.0;  // exp(pi L)
  bool representable_in_double = true;
};

struct ProbabilityResult {
  double asymptotic = 0.0;  // (8/pi) exp(-mu pi / 2)
  double series_value = 0.0;
  std::size_t terms_used = 0;
};

/// L = (largest projected width over the sampled directions) /
///     (2 * largest distance from an interior lattice point to the boundary).
ElongationEstimate elongation_estimate(const Domain& domain, std::size_t directions = 64,
                                       std::size_t lattice = 64);

CrowdingForecast crowding_forecast(double L);

/// Probability that Brownian motion started at the center of the rectangle
/// (-mu, mu) x (-1, 1) first hits one of the short ends x = +-mu.
ProbabilityResult end_hitting_probability(double mu);

double resistance_of_quadrilateral(double mu, double rho);

/// max |f'| / min |f'| over the midpoints of the boundary arcs. Corners are
/// avoided since f' vanishes or blows up there.
double boundary_derivative_ratio(const ConformalMap& map);

}  // namespace cmap
