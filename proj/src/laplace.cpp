#include "cmap/laplace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cmap/error.hpp"

namespace cmap {

namespace {

constexpr double kTruncation = 1e-14;

// Maps complex basis coefficients onto real unknowns.
struct Layout {
  std::vector<int> re, im;
  std::vector<double> pinned_re;  // real part fixed when re[k] < 0 and pinned
  std::vector<bool> pinned;
  int lambda = -1;
  int side_a = -1, side_b = -1;
  int count = 0;
};

Layout make_layout(const BasisSet& basis, ProblemKind problem, bool annulus) {
  Layout l;
  const std::size_t nt = basis.size();
  l.re.assign(nt, -1);
  l.im.assign(nt, -1);
  l.pinned_re.assign(nt, 0.0);
  l.pinned.assign(nt, false);
  for (std::size_t k = 0; k < nt; ++k) {
    const auto& t = basis.terms[k];
    if (t.kind == TermKind::monomial && t.power == 0) {
      l.re[k] = l.count++;
    } else if (t.kind == TermKind::log) {
      if (annulus) {
        l.pinned[k] = true;
        l.pinned_re[k] = 1.0;
      } else {
        l.re[k] = l.count++;
      }
    } else {
      l.re[k] = l.count++;
      l.im[k] = l.count++;
    }
  }
  if (annulus) l.lambda = l.count++;
  if (problem == ProblemKind::mixed) {
    l.side_a = l.count++;
    l.side_b = l.count++;
  }
  return l;
}

struct LsqResult {
  Eigen::VectorXd x;
  std::size_t rank = 0;
};

// Column-equilibrated least squares with singular values below
// kTruncation * sigma_max discarded.
LsqResult truncated_lsq(Eigen::MatrixXd a, const Eigen::VectorXd& b) {
  const Eigen::Index n = a.cols();
  Eigen::VectorXd scale(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double s = a.col(j).norm();
    scale(j) = s > 0.0 ? 1.0 / s : 1.0;
    a.col(j) *= scale(j);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  const Eigen::MatrixXd r = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  const Eigen::VectorXd qtb = (qr.householderQ().transpose() * b).head(n);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  LsqResult out;
  if (sigma.size() == 0 || !(sigma(0) > 0.0)) return out;
  const double cut = kTruncation * sigma(0);
  Eigen::VectorXd y = svd.matrixU().transpose() * qtb;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (sigma(i) > cut) {
      y(i) /= sigma(i);
      ++out.rank;
    } else {
      y(i) = 0.0;
    }
  }
  out.x = (svd.matrixV() * y).cwiseProduct(scale);
  return out;
}

std::vector<BoundaryPoint> boundary_points(const BoundarySampling& s) {
  std::vector<BoundaryPoint> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = {s.nodes[i], s.chain[i], s.arc[i], s.param[i]};
  return out;
}

// Fills the imaginary part of the constant so Im g(normalization_point) = 0.
void normalize(AnalyticModel& m) {
  const cplx g = m.value(m.normalization_point);
  m.coefficients(0) -= cplx(0.0, g.imag());
}

ErrorReport residual_on(const AnalyticModel& m, const Domain& domain, const BoundarySampling& grid,
                        const BoundaryData& data) {
  ErrorReport r;
  r.verification_grid_size = grid.size();
  r.fitted_dof = m.real_dof;
  std::vector<cplx> g(grid.size()), dg(grid.size());
  m.evaluate(grid.nodes, g, dg);
  double sum = 0.0, wsum = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double res = 0.0;
    if (m.problem == ProblemKind::mixed) {
      switch (quad_side(domain, grid.arc[i])) {
        case 0: res = g[i].imag() - m.side_constants[0]; break;
        case 1: res = g[i].real() - m.side_values[1]; break;
        case 2: res = g[i].imag() - m.side_constants[1]; break;
        default: res = g[i].real() - m.side_values[0]; break;
      }
    } else {
      const BoundaryPoint p{grid.nodes[i], grid.chain[i], grid.arc[i], grid.param[i]};
      double h = data(p);
      if (m.outer_constant && grid.chain[i] == 0) h += *m.outer_constant;
      res = g[i].real() - h;
    }
    res = std::abs(res);
    if (!(res <= r.max_residual)) r.max_residual = res;  // NaN propagates
    sum += grid.weights[i] * res * res;
    wsum += grid.weights[i];
  }
  r.rms_residual = wsum > 0.0 ? std::sqrt(sum / wsum) : 0.0;
  return r;
}

AnalyticModel fit(const Domain& domain, const BoundaryData* data, const BasisSet& basis,
                  const BoundarySampling& sampling, ProblemKind problem, bool annulus,
                  cplx norm_point, std::array<double, 2> side_values) {
  const Layout lay = make_layout(basis, problem, annulus);
  const auto unknowns = static_cast<std::size_t>(lay.count);
  if (sampling.size() < 3 * unknowns)
    fail(ErrorCode::Underdetermined, std::to_string(sampling.size()) + " samples for " +
                                         std::to_string(unknowns) + " real unknowns (need 3x)");

  const BasisValues v = evaluate_basis(basis, sampling.nodes);
  const cplx np[1] = {norm_point};
  const BasisValues vn = evaluate_basis(basis, np);
  const auto pts = boundary_points(sampling);

  const auto rows = static_cast<Eigen::Index>(sampling.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, lay.count);
  Eigen::VectorXd b(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    bool real_row = true;
    double rhs = 0.0;
    int side_col = -1;
    if (problem == ProblemKind::mixed) {
      const std::size_t side = quad_side(domain, sampling.arc[ui]);
      real_row = side == 1 || side == 3;
      if (side == 1) rhs = side_values[1];
      if (side == 3) rhs = side_values[0];
      if (side == 0) side_col = lay.side_a;
      if (side == 2) side_col = lay.side_b;
    } else {
      rhs = (*data)(pts[ui]);
    }
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const auto kk = static_cast<Eigen::Index>(k);
      const cplx phi = v.value(i, kk);
      if (real_row) {
        if (lay.pinned[k]) rhs -= lay.pinned_re[k] * phi.real();
        if (lay.re[k] >= 0) a(i, lay.re[k]) = phi.real();
        if (lay.im[k] >= 0) a(i, lay.im[k]) = -phi.imag();
      } else {
        const cplx d = phi - vn.value(0, kk);
        if (lay.re[k] >= 0) a(i, lay.re[k]) = d.imag();
        if (lay.im[k] >= 0) a(i, lay.im[k]) = d.real();
      }
    }
    if (lay.lambda >= 0 && sampling.chain[ui] == 0) a(i, lay.lambda) = -1.0;
    if (side_col >= 0) a(i, side_col) = -1.0;
    b(i) = rhs;
  }

  const LsqResult sol = truncated_lsq(std::move(a), b);
  if (sol.rank == 0) fail(ErrorCode::RankCollapse, "every direction was truncated");

  AnalyticModel m;
  m.basis = basis;
  m.problem = problem;
  m.normalization_point = norm_point;
  m.side_values = side_values;
  m.sampling = sampling;
  m.real_dof = unknowns;
  m.rank = sol.rank;
  m.coefficients.resize(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const double re = lay.re[k] >= 0 ? sol.x(lay.re[k]) : lay.pinned_re[k];
    const double im = lay.im[k] >= 0 ? sol.x(lay.im[k]) : 0.0;
    m.coefficients(static_cast<Eigen::Index>(k)) = cplx(re, im);
  }
  if (lay.lambda >= 0) m.outer_constant = sol.x(lay.lambda);
  if (problem == ProblemKind::mixed) m.side_constants = {sol.x(lay.side_a), sol.x(lay.side_b)};
  normalize(m);
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------

cplx AnalyticModel::value(cplx z) const {
  cplx g, dg;
  evaluate(std::span<const cplx>(&z, 1), std::span<cplx>(&g, 1), std::span<cplx>(&dg, 1));
  return g;
}

cplx AnalyticModel::derivative(cplx z) const {
  cplx g, dg;
  evaluate(std::span<const cplx>(&z, 1), std::span<cplx>(&g, 1), std::span<cplx>(&dg, 1));
  return dg;
}

void AnalyticModel::evaluate(std::span<const cplx> points, std::span<cplx> values,
                             std::span<cplx> derivatives) const {
  constexpr std::size_t block = 256;
  for (std::size_t start = 0; start < points.size(); start += block) {
    const std::size_t len = std::min(block, points.size() - start);
    const BasisValues v = evaluate_basis(basis, points.subspan(start, len));
    const Eigen::VectorXcd g = v.value * coefficients;
    const Eigen::VectorXcd dg = v.derivative * coefficients;
    for (std::size_t i = 0; i < len; ++i) {
      values[start + i] = g(static_cast<Eigen::Index>(i));
      derivatives[start + i] = dg(static_cast<Eigen::Index>(i));
    }
  }
}

std::size_t quad_side(const Domain& domain, std::size_t arc) {
  const auto& q = domain.quad_vertices();
  if (!q) fail(ErrorCode::NoQuadMarking, "domain has no quad vertex marks");
  const std::size_t n = domain.outer().size();
  for (std::size_t s = 0; s < 4; ++s) {
    const std::size_t lo = (*q)[s], hi = (*q)[(s + 1) % 4];
    if ((arc + n - lo) % n < (hi + n - lo) % n) return s;
  }
  return 0;
}

std::size_t real_unknowns(const BasisSet& basis, ProblemKind problem, bool annulus) {
  return static_cast<std::size_t>(make_layout(basis, problem, annulus).count);
}

AnalyticModel solve_dirichlet(const Domain& domain, const BoundaryData& data,
                              const BasisSet& basis, const BoundarySampling& sampling,
                              const DirichletOptions& options) {
  if (basis.purpose == Purpose::quad)
    fail(ErrorCode::PurposeMismatch, "quad bases are solved with solve_mixed");
  if (options.annulus != (basis.purpose == Purpose::annulus))
    fail(ErrorCode::PurposeMismatch, "annulus option must match the basis purpose");
  const cplx np = options.normalization_point.value_or(basis.center);
  AnalyticModel m = fit(domain, &data, basis, sampling, ProblemKind::dirichlet, options.annulus,
                        np, {0.0, 1.0});
  m.residual = verify_residual(m, domain, data, options.verify_factor);
  return m;
}

AnalyticModel solve_mixed(const Domain& domain, const BasisSet& basis,
                          const BoundarySampling& sampling, std::array<double, 2> side_values,
                          std::size_t verify_factor) {
  if (!domain.quad_vertices()) fail(ErrorCode::NoQuadMarking, "domain has no quad vertex marks");
  if (basis.purpose != Purpose::quad)
    fail(ErrorCode::PurposeMismatch, "mixed problems need a quad basis");
  AnalyticModel m = fit(domain, nullptr, basis, sampling, ProblemKind::mixed, false, basis.center,
                        side_values);
  m.residual = verify_residual(m, domain, {}, verify_factor);
  return m;
}

double quad_modulus(const AnalyticModel& model) {
  if (model.problem != ProblemKind::mixed || model.side_constants.size() != 2)
    fail(ErrorCode::NoQuadMarking, "model is not a quadrilateral solve");
  const double drop = model.side_values[1] - model.side_values[0];
  return drop / (model.side_constants[1] - model.side_constants[0]);
}

ErrorReport verify_residual(const AnalyticModel& model, const Domain& domain,
                            const BoundaryData& data, std::size_t factor) {
  const BoundarySampling grid = refine_sampling(domain, model.sampling, factor);
  return residual_on(model, domain, grid, data);
}

BoundarySampling fitting_sampling(const Domain& domain, const BasisSet& basis,
                                  std::size_t unknowns) {
  std::size_t arcs = 0;
  for (const auto& c : domain.chains()) arcs += c.size();
  const bool cluster = basis.pole_count > 0;
  const std::size_t taper = cluster ? 3 * basis.poles_per_corner : 0;
  const std::size_t need = 3 * unknowns;
  std::size_t p = std::max<std::size_t>(8, (need + arcs - 1) / arcs);
  if (cluster) p = std::max<std::size_t>(8, p / 2);
  for (;;) {
    BoundarySampling s = sample_boundary(domain, p, cluster, taper);
    if (s.size() >= need) return s;
    p = p + p / 4 + 1;
  }
}

namespace {

struct Level {
  std::size_t degree, poles;
};

Level level(std::size_t l, bool corners) {
  const double f = std::pow(2.0, 0.5 * static_cast<double>(l));
  return {static_cast<std::size_t>(std::lround(8.0 * f)),
          corners ? static_cast<std::size_t>(std::lround(6.0 * f)) : 0};
}

template <class Solve>
AnalyticModel escalate(const Domain& domain, Purpose purpose, const SolveSettings& settings,
                       ProblemKind problem, Solve&& solve) {
  if (!(settings.tol > 0.0)) fail(ErrorCode::BadTol, "tolerance must be positive");
  const bool corners = !domain.corners().empty() || purpose == Purpose::quad;
  BasisOptions bo;
  bo.center = settings.center;
  bo.arnoldi = true;
  std::optional<AnalyticModel> best;
  for (std::size_t l = 0;; ++l) {
    const Level lv = level(l, corners);
    BasisSet basis = build_basis(domain, purpose, lv.degree, lv.poles, bo);
    bo.center = basis.center;
    const std::size_t unknowns = real_unknowns(basis, problem, purpose == Purpose::annulus);
    if (unknowns > settings.max_dof && best) break;
    AnalyticModel m = solve(basis, fitting_sampling(domain, basis, unknowns));
    const bool better = !best || m.residual.max_residual < best->residual.max_residual;
    if (better) best = std::move(m);
    if (best->residual.max_residual < settings.tol) return std::move(*best);
    if (unknowns > settings.max_dof) break;
  }
  if (settings.best_effort) return std::move(*best);
  fail(ErrorCode::TolUnreachable, "best certified residual " +
                                      num(best->residual.max_residual) +
                                      " with " + std::to_string(best->real_dof) +
                                      " real DOF exceeds tolerance");
}

}  // namespace

AnalyticModel solve_dirichlet_adaptive(const Domain& domain, const BoundaryData& data,
                                       Purpose purpose, const SolveSettings& settings,
                                       const DirichletOptions& options) {
  return escalate(domain, purpose, settings, ProblemKind::dirichlet,
                  [&](const BasisSet& basis, const BoundarySampling& s) {
                    return solve_dirichlet(domain, data, basis, s, options);
                  });
}

AnalyticModel solve_mixed_adaptive(const Domain& domain, const SolveSettings& settings,
                                   std::array<double, 2> side_values) {
  if (!domain.quad_vertices()) fail(ErrorCode::NoQuadMarking, "domain has no quad vertex marks");
  return escalate(domain, Purpose::quad, settings, ProblemKind::mixed,
                  [&](const BasisSet& basis, const BoundarySampling& s) {
                    return solve_mixed(domain, basis, s, side_values);
                  });
}

}  // namespace cmap
