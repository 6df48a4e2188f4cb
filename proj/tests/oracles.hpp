#pragma once

#include <cmath>

#include "cmap/laplace.hpp"
#include "fixtures.hpp"

namespace fx {

// Potential at the center of (-mu, mu) x (-1, 1) with the ends x = +-mu
// held at 1 and the long sides at 0, from the Laplace solver.
//
// The data jump at each corner is removed first: (2/pi) |arg((z - c)/d)|,
// with d pointing from corner c along its long side, is harmonic, vanishes
// on that side and equals 1 on the end. What is left is continuous and
// converges fast.
inline double end_potential_by_solver(double mu, double tol) {
  const Domain r = polygon({{-mu, -1}, {mu, -1}, {mu, 1}, {-mu, 1}});
  const auto jumps = [mu](cplx z) {
    double s = 0.0;
    for (double sx : {-1.0, 1.0})
      for (double sy : {-1.0, 1.0}) s += 2.0 / pi * std::abs(std::arg((z - cplx(sx * mu, sy)) / cplx(-sx, 0.0)));
    return s;
  };
  // Arcs 1 and 3 are the ends.
  const cmap::BoundaryData data = [&](const cmap::BoundaryPoint& p) {
    return (p.arc % 2 == 1 ? 1.0 : 0.0) - jumps(p.z);
  };
  cmap::SolveSettings st;
  st.tol = tol;
  st.best_effort = true;
  const cmap::AnalyticModel m = solve_dirichlet_adaptive(r, data, cmap::Purpose::disk, st);
  return m.value(0.0).real() + jumps(0.0);
}

}  // namespace fx
