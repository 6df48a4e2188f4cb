// One line per acceptance criterion: id, PASS/FAIL, what was measured, wall time.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cli_support.hpp"
#include "cmap/diagnostics.hpp"
#include "cmap/maps.hpp"
#include "cmap/rational.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace cmap;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void check(bool cond, const std::string& what) {
    if (!cond) ok = false;
    if (!detail.empty()) detail += "; ";
    detail += what + (cond ? "" : " [x]");
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

int failures = 0;

// `limit` in seconds; zero means untimed.
void criterion(int id, double limit, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.ok = false;
    out.detail = std::string("threw: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit > 0 && secs >= limit) {
    out.ok = false;
    out.detail += "; over time limit " + fmt(limit) + " s";
  }
  if (!out.ok) ++failures;
  std::printf("C%-2d %s  %s  [%.3f s]\n", id, out.ok ? "PASS" : "FAIL", out.detail.c_str(), secs);
  std::fflush(stdout);
}

double moebius_modulus(double c, double r) {
  const double b = 1 + c * c - r * r;
  const double a = (b - std::sqrt(b * b - 4 * c * c)) / (2 * c);
  return 1.0 / std::abs((c + r - a) / (1 - a * (c + r)));
}

std::vector<cplx> values(const ConformalMap& m, std::span<const cplx> z) {
  std::vector<MapValue> v(z.size());
  m.at(z, v);
  std::vector<cplx> w(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) w[i] = v[i].value;
  return w;
}

// Where the boundary argument is measured from.
cplx hub(const ConformalMap& m) {
  if (m.target() == Target::rectangle) return cplx(0.5, 0.5 / *m.modulus());
  return 0.0;
}

// Every property of the suite on one map; `name` prefixes the details.
void properties(Outcome& out, const std::string& name, const ConformalMap& m) {
  const Domain& d = m.domain();

  // Boundary argument: per chain, one sign throughout and one full turn.
  const BoundarySampling s = sample_boundary(d, 200, false);
  const std::vector<cplx> w = values(m, s.nodes);
  const cplx c = hub(m);
  bool monotone = true;
  double winding_err = 0.0;
  for (std::size_t ch = 0; ch < d.chains().size(); ++ch) {
    std::vector<cplx> loop;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s.chain[i] == ch) loop.push_back(w[i] - c);
    double total = 0.0;
    std::vector<double> steps;
    for (std::size_t i = 0; i < loop.size(); ++i) {
      steps.push_back(std::arg(loop[(i + 1) % loop.size()] / loop[i]));
      total += steps.back();
    }
    for (double st : steps) monotone = monotone && st * total > 0.0;
    winding_err = std::max(winding_err, std::abs(std::abs(total) - 2 * pi));
  }
  out.check(monotone, name + " monotone");
  out.check(winding_err < 1e-9, name + " winding=1");

  const auto pts = fx::interior_points(d, 100, 0.01, 3);
  if (m.target() == Target::disk) {
    bool negative = true;
    for (const cplx z : pts) negative = negative && green_function(m, z) < 0.0;
    out.check(negative, name + " green<0");
  }

  // Forward of inverse on interior images.
  const std::vector<cplx> img = values(m, pts);
  const std::vector<cplx> back = invert_map(m, img);
  const std::vector<cplx> again = values(m, back);
  double comp = 0.0;
  for (std::size_t i = 0; i < img.size(); ++i) comp = std::max(comp, std::abs(again[i] - img[i]));
  out.check(comp < 1e-8, name + " f(f^-1(w)) " + fmt(comp));

  // Map values carry ~1e-12 of cancellation noise near lightning poles, so
  // a tiny step measures that noise. Fourth-order stencil at h = 1e-4.
  const double h = 1e-4;
  double fd = 0.0;
  for (const cplx z : fx::interior_points(d, 50, 0.02, 5)) {
    const auto f = [&](double k) { return m.at(z + k * h).value; };
    const cplx diff = (8.0 * (f(1) - f(-1)) - (f(2) - f(-2))) / (12 * h);
    const cplx exact = m.at(z).derivative;
    fd = std::max(fd, std::abs(diff - exact) / std::abs(exact));
  }
  out.check(fd < 1e-6, name + " fd " + fmt(fd));
}

}  // namespace

int main() {
  criterion(1, 1.0, [] {
    Outcome o;
    for (double r : {1.0, 2.0}) {
      const auto t0 = std::chrono::steady_clock::now();
      const ConformalMap m = disk_map(fx::disk(0.0, r));
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      o.check(m.certified_residual() < 1e-12 && secs < 1.0,
              "r=" + fmt(r) + " residual " + fmt(m.certified_residual()) + " in " + fmt(secs) + " s");
    }
    return o;
  });

  criterion(2, 10.0, [] {
    Outcome o;
    const ConformalMap m = disk_map(fx::poly_image(), {.center = cplx(0.0)});
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const cplx w = std::polar(0.9, 2 * pi * k / 1000.0);
      worst = std::max(worst, std::abs(m.at(fx::poly_p(w)).value - w));
    }
    o.check(worst < 1e-8, "|f(p(w)) - w| " + fmt(worst));
    return o;
  });

  criterion(3, 30.0, [] {
    Outcome o;
    const ConformalMap m = disk_map(fx::l_shape(), {.tol = 1e-6, .max_dof = 1000});
    o.check(m.certified_residual() < 1e-6, "residual " + fmt(m.certified_residual()));
    o.check(m.dof() <= 1000, "dof " + std::to_string(m.dof()));
    return o;
  });

  criterion(4, 10.0, [] {
    Outcome o;
    for (const auto& [ro, ri] : {std::pair{2.0, 1.0}, {1.0, 0.5}, {3.0, 0.3}}) {
      const double R = *annulus_map(fx::annulus(0.0, ro, 0.0, ri)).modulus();
      o.check(std::abs(R - ro / ri) < 1e-10, "concentric " + fmt(ro / ri) + " err " + fmt(std::abs(R - ro / ri)));
    }
    const double R = *annulus_map(fx::annulus(0.0, 1.0, 0.3, 0.3)).modulus();
    const double err = std::abs(R - moebius_modulus(0.3, 0.3));
    o.check(err < 1e-8, "eccentric err " + fmt(err));
    return o;
  });

  criterion(5, 30.0, [] {
    Outcome o;
    for (double L : {1.0, 2.0, 3.0}) {
      const double err = std::abs(*rectangle_map(fx::rectangle(L)).modulus() - L);
      o.check(err < 1e-8, "L=" + fmt(L) + " err " + fmt(err));
    }
    const double q = *rectangle_map(fx::l_quad(), {.tol = 1e-7}).modulus();
    const double qc = *rectangle_map(fx::l_quad_conjugate(), {.tol = 1e-7}).modulus();
    o.check(std::abs(q * qc - 1.0) < 1e-7, "mu*mu' - 1 = " + fmt(q * qc - 1.0));
    return o;
  });

  criterion(6, 0.0, [] {
    Outcome o;
    for (double mu : {2.0, 3.0, 4.0}) {
      const double err = std::abs(fx::end_potential_by_solver(mu, 1e-10) - end_hitting_probability(mu).series_value);
      o.check(err < 1e-8, "mu=" + fmt(mu) + " err " + fmt(err));
    }
    return o;
  });

  criterion(7, 1e-3, [] {
    Outcome o;
    const ProbabilityResult p = end_hitting_probability(18.20539);
    o.check(std::abs(p.asymptotic / 9.692555e-13 - 1.0) < 5e-7, "asymptotic " + fmt(p.asymptotic));
    o.check(std::abs(p.series_value / p.asymptotic - 1.0) < 5e-4, "series " + fmt(p.series_value));
    return o;
  });

  static RationalApproximant hex_forward;
  criterion(8, 30.0, [] {
    Outcome o;
    const ConformalMap m = disk_map(fx::hexagon(), {.tol = 5e-8});
    const CorrespondenceTable t = boundary_correspondence(m, 1000);
    hex_forward = fit_rational(t, Direction::forward, 5e-7, 200);
    const RationalApproximant inv = fit_rational(t, Direction::inverse, 5e-7, 200);
    // Fresh boundary points, not in the table.
    const BoundarySampling s = sample_boundary(fx::hexagon(), 167, false);
    const std::vector<cplx> w = values(m, s.nodes);
    double ef = 0.0, ei = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      ef = std::max(ef, std::abs(hex_forward(s.nodes[i]) - w[i]));
      ei = std::max(ei, std::abs(inv(w[i]) - s.nodes[i]));
    }
    o.check(ef < 1e-6 && hex_forward.degree() <= 200,
            "forward degree " + std::to_string(hex_forward.degree()) + " err " + fmt(ef));
    o.check(ei < 1e-6 && inv.degree() <= 200, "inverse degree " + std::to_string(inv.degree()) + " err " + fmt(ei));
    return o;
  });

  criterion(9, 10.0, [] {
    Outcome o;
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> ux(-0.4, 3.6), uy(0.0, 2.8);
    std::vector<cplx> pts(1'000'000);
    for (auto& z : pts) z = cplx(ux(rng), uy(rng));
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<cplx> out = evaluate_rational(hex_forward, pts);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double rate = static_cast<double>(pts.size()) / secs;
    o.check(out.size() == pts.size() && rate >= 1e5,
            fmt(rate) + " points/s at degree " + std::to_string(hex_forward.degree()));
    return o;
  });

  criterion(10, 60.0, [] {
    Outcome o;
    double logd[3];
    for (int k = 0; k < 3; ++k)
      logd[k] = std::log(boundary_derivative_ratio(disk_map(fx::rectangle(k + 2.0, 1.0, false), {.tol = 1e-6})));
    // Least-squares slope through three equally spaced points.
    const double slope = (logd[2] - logd[0]) / 2.0;
    o.check(slope >= 0.8 * pi / 2 && slope <= 1.2 * pi, "slope " + fmt(slope));
    return o;
  });

  criterion(11, 0.0, [] {
    Outcome o;
    properties(o, "disk", disk_map(fx::disk()));
    properties(o, "poly", disk_map(fx::poly_image(), {.center = cplx(0.0)}));
    properties(o, "ellipse", disk_map(fx::ellipse(2.0, 1.0)));
    properties(o, "L", disk_map(fx::l_shape(), {.tol = 1e-7}));
    properties(o, "hexagon", disk_map(fx::hexagon(), {.tol = 1e-7}));
    properties(o, "annulus", annulus_map(fx::annulus(0.0, 1.0, 0.3, 0.3)));
    properties(o, "rect3", rectangle_map(fx::rectangle(3.0)));
    properties(o, "Lquad", rectangle_map(fx::l_quad(), {.tol = 1e-7}));

    const Domain ann = fx::annulus(0.0, 1.0, 0.3, 0.3);
    const Domain rect = fx::rectangle(3.0);
    const double r0 = *annulus_map(ann).modulus(), m0 = *rectangle_map(rect).modulus();
    double drift = 0.0;
    for (const auto& [a, b] : {std::pair<cplx, cplx>{1.0, cplx(5.0, -3.0)}, {std::polar(1.0, 1.1), 0.0},
                               {2.5, 0.0}, {std::polar(0.3, -2.0), cplx(-1.0, 4.0)}}) {
      drift = std::max(drift, std::abs(*annulus_map(fx::transformed(ann, a, b)).modulus() - r0));
      drift = std::max(drift, std::abs(*rectangle_map(fx::transformed(rect, a, b)).modulus() - m0));
    }
    o.check(drift < 1e-8, "modulus invariance " + fmt(drift));
    return o;
  });

  criterion(12, 0.0, [] {
    Outcome o;
    for (const auto& job : cli::all_jobs()) {
      std::vector<std::string> a, b;
      const int sa = cli::run_job(job, "acc_a", a), sb = cli::run_job(job, "acc_b", b);
      bool same = sa == 0 && sb == 0;
      for (std::size_t i = 0; same && i < a.size(); ++i) same = cli::same_output(a[i], b[i]);
      o.check(same, job.name);
    }
    return o;
  });

  return failures;
}
