#include "cmap/rational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

#include <Eigen/Eigenvalues>

#include "cmap/error.hpp"

namespace cmap {

const char* to_string(Direction d) noexcept {
  return d == Direction::forward ? "forward" : "inverse";
}

CorrespondenceTable boundary_correspondence(const ConformalMap& map, std::size_t m) {
  if (m < 4) fail(ErrorCode::TooFewSamples, "need at least 4 samples, got " + std::to_string(m));
  if (map.target() == Target::rectangle)
    fail(ErrorCode::WrongTarget, "boundary correspondence needs a disk or annulus map");
  const Domain& d = map.domain();
  std::size_t arcs = 0;
  for (const auto& c : d.chains()) arcs += c.size();
  const std::size_t per_arc = std::max<std::size_t>(2, (m + arcs - 1) / arcs);
  const BoundarySampling s = sample_boundary(d, per_arc, !d.corners().empty());
  CorrespondenceTable t;
  t.target = map.target();
  t.modulus = map.modulus().value_or(1.0);
  t.domain = std::make_shared<const Domain>(d);
  std::vector<MapValue> v(s.size());
  map.at(s.nodes, v);
  // Nodes clustered hard against a corner can have images closer together
  // than the map is accurate, so their order on the circle is noise. Keep
  // only nodes whose image advances (counterclockwise on the outer chain,
  // clockwise on the hole).
  for (const auto& ranges : s.arc_ranges) {
    if (ranges.empty()) continue;
    const std::size_t begin = ranges.front().first, end = ranges.back().second;
    const double sense = s.chain[begin] == 0 ? 1.0 : -1.0;
    const std::size_t first = t.z.size();
    for (std::size_t i = begin; i < end; ++i) {
      if (t.z.size() > first && sense * std::arg(v[i].value / t.w.back()) <= 0.0) continue;
      t.z.push_back(s.nodes[i]);
      t.w.push_back(v[i].value);
    }
    while (t.z.size() > first + 1 && sense * std::arg(t.w[first] / t.w.back()) <= 0.0) {
      t.z.pop_back();
      t.w.pop_back();
    }
  }
  return t;
}

// ---------------------------------------------------------------------------

RationalApproximant::RationalApproximant(std::vector<cplx> support, std::vector<cplx> values,
                                         std::vector<cplx> weights, Direction direction,
                                         double accuracy)
    : support_(std::move(support)),
      values_(std::move(values)),
      weights_(std::move(weights)),
      direction_(direction),
      accuracy_(accuracy) {
  if (support_.size() != values_.size() || support_.size() != weights_.size())
    fail(ErrorCode::InvalidArgument, "support, values and weights differ in length");
  if (support_.empty()) fail(ErrorCode::InvalidArgument, "approximant needs a support point");
  if (std::all_of(weights_.begin(), weights_.end(), [](cplx w) { return w == cplx(0.0); }))
    fail(ErrorCode::InvalidArgument, "all barycentric weights are zero");
}

cplx RationalApproximant::operator()(cplx x) const {
  cplx num{}, den{};
  for (std::size_t j = 0; j < support_.size(); ++j) {
    const cplx d = x - support_[j];
    if (d == cplx(0.0)) return values_[j];
    // conj(d) / |d|^2 avoids the slow library complex division.
    const cplx c = weights_[j] * std::conj(d) / std::norm(d);
    num += c * values_[j];
    den += c;
  }
  return num / den;
}

void RationalApproximant::evaluate(std::span<const cplx> points, std::span<cplx> out) const {
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = (*this)(points[i]);
}

std::vector<cplx> RationalApproximant::poles() const {
  const std::size_t n = support_.size();
  if (n < 2) return {};
  const cplx wsum = std::accumulate(weights_.begin(), weights_.end(), cplx{});
  double wabs = 0.0;
  for (const cplx w : weights_) wabs += std::abs(w);
  if (std::abs(wsum) <= 1e-14 * wabs) return {};
  // Poles solve sum_j w_j / (lambda - x_j) = 0. They are the nonzero
  // eigenvalues of (I - e w^T / sum(w)) (X - sigma), shifted back by sigma.
  cplx mean{};
  for (const cplx s : support_) mean += s;
  mean /= static_cast<double>(n);
  double radius = 0.0;
  for (const cplx s : support_) radius = std::max(radius, std::abs(s - mean));
  const cplx sigma = mean + 10.0 * std::max(radius, 1.0);
  const auto nn = static_cast<Eigen::Index>(n);
  Eigen::MatrixXcd m(nn, nn);
  for (Eigen::Index i = 0; i < nn; ++i)
    for (Eigen::Index j = 0; j < nn; ++j) {
      const cplx xj = support_[static_cast<std::size_t>(j)] - sigma;
      m(i, j) = ((i == j ? 1.0 : 0.0) - weights_[static_cast<std::size_t>(j)] / wsum) * xj;
    }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
  const auto& ev = es.eigenvalues();
  Eigen::Index drop = 0;
  for (Eigen::Index i = 1; i < ev.size(); ++i)
    if (std::abs(ev(i)) < std::abs(ev(drop))) drop = i;
  std::vector<cplx> out;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (i != drop) out.push_back(ev(i) + sigma);
  return out;
}

std::vector<cplx> evaluate_rational(const RationalApproximant& r, std::span<const cplx> points) {
  std::vector<cplx> out(points.size());
  r.evaluate(points, out);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

bool pole_inside(const CorrespondenceTable& t, Direction dir, cplx p) {
  if (dir == Direction::forward) return t.domain->contains(p) != Location::outside;
  const double r = std::abs(p);
  if (t.target == Target::disk) return r <= 1.0;
  return r >= 1.0 && r <= t.modulus;
}

// Smallest right singular vector of the Loewner matrix.
Eigen::VectorXcd loewner_weights(const Eigen::MatrixXcd& a) {
  if (a.rows() >= a.cols()) {
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
    const Eigen::MatrixXcd r = qr.matrixQR().topRows(a.cols()).triangularView<Eigen::Upper>();
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(r, Eigen::ComputeFullV);
    return svd.matrixV().col(a.cols() - 1);
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
  return svd.matrixV().col(a.cols() - 1);
}

// Weights for support set `sup`; fills r with the approximant's values on
// the table and returns the max table error.
double solve_weights(const std::vector<cplx>& x, const std::vector<cplx>& f,
                     const std::vector<std::size_t>& sup, const std::vector<bool>& is_support,
                     std::vector<cplx>& r, Eigen::VectorXcd& w) {
  const std::size_t m = x.size();
  std::vector<std::size_t> rows;
  rows.reserve(m);
  for (std::size_t i = 0; i < m; ++i)
    if (!is_support[i]) rows.push_back(i);
  const auto nr = static_cast<Eigen::Index>(rows.size());
  const auto nc = static_cast<Eigen::Index>(sup.size());
  Eigen::MatrixXcd cauchy(nr, nc);
  Eigen::MatrixXcd loewner(nr, nc);
  for (Eigen::Index i = 0; i < nr; ++i) {
    const std::size_t ri = rows[static_cast<std::size_t>(i)];
    for (Eigen::Index k = 0; k < nc; ++k) {
      const std::size_t sk = sup[static_cast<std::size_t>(k)];
      const cplx d = x[ri] - x[sk];
      const cplx c = std::conj(d) / std::norm(d);
      cauchy(i, k) = c;
      loewner(i, k) = (f[ri] - f[sk]) * c;
    }
  }
  w = loewner_weights(loewner);
  Eigen::VectorXcd fs(nc);
  for (Eigen::Index k = 0; k < nc; ++k) fs(k) = f[sup[static_cast<std::size_t>(k)]];
  const Eigen::VectorXcd num = cauchy * w.cwiseProduct(fs);
  const Eigen::VectorXcd den = cauchy * w;
  double err = 0.0;
  for (Eigen::Index i = 0; i < nr; ++i) {
    const std::size_t ri = rows[static_cast<std::size_t>(i)];
    r[ri] = num(i) / den(i);
    const double e = std::abs(f[ri] - r[ri]);
    if (!(e <= err)) err = e;
  }
  for (const std::size_t s : sup) r[s] = f[s];
  return err;
}

}  // namespace

RationalFit fit_rational_detailed(const CorrespondenceTable& table, Direction direction,
                                  double tol, std::size_t max_degree, bool allow_partial) {
  if (!(tol > 0.0)) fail(ErrorCode::BadTol, "tolerance must be positive");
  if (table.size() < 4) fail(ErrorCode::TooFewSamples, "correspondence table is too small");
  const auto& x = direction == Direction::forward ? table.z : table.w;
  const auto& f = direction == Direction::forward ? table.w : table.z;
  const std::size_t m = x.size();
  const std::size_t max_refits = std::max<std::size_t>(20, max_degree / 2);

  std::vector<bool> is_support(m, false), barred(m, false);
  std::vector<std::size_t> sup;
  cplx mean{};
  for (const cplx v : f) mean += v;
  mean /= static_cast<double>(m);
  std::vector<cplx> r(m, mean);
  Eigen::VectorXcd w;

  RationalFit out;
  double best = std::numeric_limits<double>::infinity();
  bool accepted = false;
  bool grow = true;
  while (true) {
    if (grow) {
      if (!sup.empty() && sup.size() - 1 >= max_degree) break;
      std::size_t pick = m;
      double worst = -1.0;
      for (std::size_t i = 0; i < m; ++i) {
        if (is_support[i] || barred[i]) continue;
        const double e = std::abs(f[i] - r[i]);
        if (e > worst) {
          worst = e;
          pick = i;
        }
      }
      if (pick == m) break;
      is_support[pick] = true;
      sup.push_back(pick);
    }
    const double err = solve_weights(x, f, sup, is_support, r, w);
    std::vector<cplx> sx, sf, sw;
    for (std::size_t k = 0; k < sup.size(); ++k) {
      sx.push_back(x[sup[k]]);
      sf.push_back(f[sup[k]]);
      sw.push_back(w(static_cast<Eigen::Index>(k)));
    }
    RationalApproximant cand(std::move(sx), std::move(sf), std::move(sw), direction, err);
    grow = true;
    if (err < tol) {
      std::optional<cplx> bad;
      for (const cplx p : cand.poles())
        if (pole_inside(table, direction, p)) {
          bad = p;
          break;
        }
      if (!bad) {
        out.approximant = std::move(cand);
        best = err;
        accepted = true;
        out.error_history.push_back(best);
        break;
      }
      if (out.refits == max_refits || sup.size() < 2) break;
      // Drop the support point nearest to the offending pole for good and
      // refit the weights on the remaining support.
      ++out.refits;
      std::size_t nearest = 0;
      for (std::size_t k = 1; k < sup.size(); ++k)
        if (std::abs(x[sup[k]] - *bad) < std::abs(x[sup[nearest]] - *bad)) nearest = k;
      is_support[sup[nearest]] = false;
      barred[sup[nearest]] = true;
      sup.erase(sup.begin() + static_cast<std::ptrdiff_t>(nearest));
      grow = false;
      out.error_history.push_back(best);
      continue;
    }
    if (err < best) {
      best = err;
      out.approximant = std::move(cand);
    }
    out.error_history.push_back(best);
  }
  if (!accepted) {
    if (!allow_partial)
      fail(ErrorCode::DegreeExhausted, "table error " + num(best) + " not below " + num(tol) +
                                           " within degree " + std::to_string(max_degree));
    if (out.approximant.support().empty()) fail(ErrorCode::DegreeExhausted, "no approximant was formed");
  }
  return out;
}

RationalApproximant fit_rational(const CorrespondenceTable& table, Direction direction, double tol,
                                 std::size_t max_degree, bool allow_partial) {
  return fit_rational_detailed(table, direction, tol, max_degree, allow_partial).approximant;
}

}  // namespace cmap
