#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "cmap/basis.hpp"
#include "cmap/geometry.hpp"

namespace cmap {

struct ErrorReport {
  double max_residual = 0.0;
  double rms_residual = 0.0;
  std::size_t verification_grid_size = 0;
  std::size_t fitted_dof = 0;
};

// A boundary node as seen by Dirichlet data.
struct BoundaryPoint {
  cplx z;
  std::size_t chain = 0;
  std::size_t arc = 0;
  double t = 0.0;
};

using BoundaryData = std::function<double(const BoundaryPoint&)>;

enum class ProblemKind { dirichlet, mixed };

/// g = sum_k c_k phi_k over a BasisSet; u = Re g, v = Im g.
///
/// The imaginary part of the constant coefficient is not fitted: it is set
/// so that Im g vanishes at `normalization_point`.
struct AnalyticModel {
  BasisSet basis;
  Eigen::VectorXcd coefficients;
  ProblemKind problem = ProblemKind::dirichlet;
  cplx normalization_point{};
  // Mixed problems: stream-function constants on sides 0 and 2.
  std::vector<double> side_constants;
  std::array<double, 2> side_values{0.0, 1.0};
  // Annulus problems: fitted constant added to the data on the outer chain.
  std::optional<double> outer_constant;
  BoundarySampling sampling;  // fitting grid
  std::size_t real_dof = 0;
  std::size_t rank = 0;
  ErrorReport residual;

  cplx value(cplx z) const;
  cplx derivative(cplx z) const;
  void evaluate(std::span<const cplx> points, std::span<cplx> values,
                std::span<cplx> derivatives) const;
};

struct DirichletOptions {
  // Fit Re g = h + lambda on the outer chain with lambda a free unknown,
  // and pin the log-term coefficient to 1 (single-valued exp(g)).
  bool annulus = false;
  std::optional<cplx> normalization_point;  // defaults to the basis center
  std::size_t verify_factor = 4;
};

/// Least-squares fit of Re g to h on the sampled boundary; truncated SVD
/// after column equilibration. Residual certified on a refined grid.
AnalyticModel solve_dirichlet(const Domain& domain, const BoundaryData& data,
                              const BasisSet& basis, const BoundarySampling& sampling,
                              const DirichletOptions& options = {});

/// Quadrilateral problem: Re g = side_values[0] on side 3 (q3 -> q0),
/// Re g = side_values[1] on side 1 (q1 -> q2), Im g constant on sides 0
/// (q0 -> q1) and 2 (q2 -> q3). The two constants are unknowns.
AnalyticModel solve_mixed(const Domain& domain, const BasisSet& basis,
                          const BoundarySampling& sampling,
                          std::array<double, 2> side_values = {0.0, 1.0},
                          std::size_t verify_factor = 4);

// Modulus of the quadrilateral from a solved mixed model: 1 / (c2 - c1).
double quad_modulus(const AnalyticModel& model);

/// Residual on a grid `factor` times denser than the model's fitting grid
/// and disjoint from it. Mixed models ignore `data`.
ErrorReport verify_residual(const AnalyticModel& model, const Domain& domain,
                            const BoundaryData& data, std::size_t factor = 4);

// Side index (0..3) of arc `arc` of the outer chain of a quadrilateral.
std::size_t quad_side(const Domain& domain, std::size_t arc);

struct SolveSettings {
  double tol = 1e-8;
  std::size_t max_dof = 2000;
  bool best_effort = false;  // return the best model instead of TolUnreachable
  std::optional<cplx> center;
};

/// Real unknowns of a basis in a Dirichlet (or mixed) fit.
std::size_t real_unknowns(const BasisSet& basis, ProblemKind problem, bool annulus);

/// Escalates degree and poles per corner until the certified residual
/// drops below settings.tol or the DOF budget is exhausted.
AnalyticModel solve_dirichlet_adaptive(const Domain& domain, const BoundaryData& data,
                                       Purpose purpose, const SolveSettings& settings,
                                       const DirichletOptions& options = {});
AnalyticModel solve_mixed_adaptive(const Domain& domain, const SolveSettings& settings,
                                   std::array<double, 2> side_values = {0.0, 1.0});

/// Fitting grid sized for a basis: at least 3 nodes per real unknown,
/// clustered toward corners when the basis has poles.
BoundarySampling fitting_sampling(const Domain& domain, const BasisSet& basis,
                                  std::size_t unknowns);

}  // namespace cmap
