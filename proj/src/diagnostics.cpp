#include "cmap/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "cmap/error.hpp"

namespace cmap {

ElongationEstimate elongation_estimate(const Domain& domain, std::size_t directions,
                                       std::size_t lattice) {
  const BoundarySampling s = sample_boundary(domain, 64, false);
  std::vector<cplx> outer;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s.chain[i] == 0) outer.push_back(s.nodes[i]);
  double width = 0.0;
  for (std::size_t k = 0; k < directions; ++k) {
    const cplx u = std::polar(1.0, pi * static_cast<double>(k) / static_cast<double>(directions));
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const cplx z : outer) {
      const double p = z.real() * u.real() + z.imag() * u.imag();
      lo = std::min(lo, p);
      hi = std::max(hi, p);
    }
    width = std::max(width, hi - lo);
  }
  double inradius = 0.0;
  for (const cplx z : domain.interior_lattice(lattice))
    inradius = std::max(inradius, domain.distance_to_boundary(z));
  ElongationEstimate e;
  e.L = inradius > 0.0 ? width / (2.0 * inradius) : 0.0;
  return e;
}

CrowdingForecast crowding_forecast(double L) {
  if (!(L >= 0.0) || !std::isfinite(L)) fail(ErrorCode::NegativeL, "L must be finite and nonnegative");
  CrowdingForecast c;
  c.scale = std::exp(pi * L);
  c.representable_in_double = c.scale < 1.0 / std::numeric_limits<double>::epsilon();
  return c;
}

ProbabilityResult end_hitting_probability(double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) fail(ErrorCode::NonpositiveMu, "mu must be positive");
  constexpr std::size_t kMaxTerms = 10000;
  ProbabilityResult r;
  r.asymptotic = 8.0 / pi * std::exp(-mu * pi / 2.0);
  double sum = 0.0;
  for (std::size_t j = 0; j < kMaxTerms; ++j) {
    const double k = static_cast<double>(2 * j + 1);
    const double term = 4.0 / (pi * k) / std::cosh(k * pi * mu / 2.0);
    if (j > 0 && term < 1e-16 * std::abs(sum)) break;
    sum += (j % 2 == 0) ? term : -term;
    r.terms_used = j + 1;
  }
  r.series_value = sum;
  return r;
}

double resistance_of_quadrilateral(double mu, double rho) {
  if (!(mu > 0.0) || !(rho > 0.0)) fail(ErrorCode::NonpositiveInput, "mu and rho must be positive");
  return rho * mu;
}

double boundary_derivative_ratio(const ConformalMap& map) {
  std::vector<cplx> mids;
  for (const auto& chain : map.domain().chains())
    for (const Arc& a : chain) mids.push_back(a.point(0.5));
  std::vector<MapValue> v(mids.size());
  map.at(mids, v);
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const MapValue& m : v) {
    lo = std::min(lo, std::abs(m.derivative));
    hi = std::max(hi, std::abs(m.derivative));
  }
  return hi / lo;
}

}  // namespace cmap
