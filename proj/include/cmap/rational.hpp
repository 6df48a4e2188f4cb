#pragma once

#include <memory>
#include <span>
#include <vector>

#include "cmap/maps.hpp"

namespace cmap {

enum class Direction { forward, inverse };

const char* to_string(Direction d) noexcept;

/// Pairs (z_j on the domain boundary, w_j = f(z_j) on the canonical
/// boundary), in boundary order.
struct CorrespondenceTable {
  std::vector<cplx> z;
  std::vector<cplx> w;
  Target target = Target::disk;
  double modulus = 1.0;  // R for annuli
  std::shared_ptr<const Domain> domain;

  std::size_t size() const { return z.size(); }
};

/// Samples at least m boundary points (corner-clustered when the domain
/// has corners) and records their images. Nodes whose image does not
/// advance along the canonical circle are dropped, so a corner-heavy
/// domain can end up with slightly fewer than m pairs.
CorrespondenceTable boundary_correspondence(const ConformalMap& map, std::size_t m);

/// r(x) = sum_j w_j f_j / (x - x_j)  /  sum_j w_j / (x - x_j)
class RationalApproximant {
 public:
  RationalApproximant() = default;
  RationalApproximant(std::vector<cplx> support, std::vector<cplx> values,
                      std::vector<cplx> weights, Direction direction, double accuracy);

  const std::vector<cplx>& support() const { return support_; }
  const std::vector<cplx>& values() const { return values_; }
  const std::vector<cplx>& weights() const { return weights_; }
  Direction direction() const { return direction_; }
  double accuracy_estimate() const { return accuracy_; }
  std::size_t degree() const { return support_.empty() ? 0 : support_.size() - 1; }

  cplx operator()(cplx x) const;
  void evaluate(std::span<const cplx> points, std::span<cplx> out) const;
  // Zeros of the denominator (finite poles of r).
  std::vector<cplx> poles() const;

 private:
  std::vector<cplx> support_, values_, weights_;
  Direction direction_ = Direction::forward;
  double accuracy_ = 0.0;
};

struct RationalFit {
  RationalApproximant approximant;
  // Best-so-far maximum table error after each greedy step.
  std::vector<double> error_history;
  std::size_t refits = 0;
};

/// Greedy barycentric fit: each step adds the table point with the largest
/// current error as a support point and recomputes the weights as the
/// smallest right singular vector of the Loewner matrix. Stops once the
/// table error is below tol. Approximants with a pole inside the closed
/// region are refit with the nearest support point barred.
RationalFit fit_rational_detailed(const CorrespondenceTable& table, Direction direction,
                                  double tol, std::size_t max_degree,
                                  bool allow_partial = false);

RationalApproximant fit_rational(const CorrespondenceTable& table, Direction direction,
                                 double tol, std::size_t max_degree,
                                 bool allow_partial = false);

std::vector<cplx> evaluate_rational(const RationalApproximant& r, std::span<const cplx> points);

}  // namespace cmap
