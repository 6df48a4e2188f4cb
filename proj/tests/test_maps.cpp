#include <doctest.h>

#include <cmath>
#include <random>

#include "cmap/error.hpp"
#include "cmap/maps.hpp"
#include "fixtures.hpp"

using namespace cmap;

namespace {

template <class F>
void expect_code(ErrorCode code, F&& f) {
  try {
    f();
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == code);
  }
}

MapOptions with_tol(double tol) {
  MapOptions o;
  o.tol = tol;
  return o;
}

// Modulus R of {|z| < 1} minus {|z - c| <= r} by the Moebius map
// (z - a)/(1 - a z) that makes both circles concentric: a is the root in
// (-1, 1) of c a^2 - (1 + c^2 - r^2) a + c = 0.
double moebius_modulus(double c, double r) {
  const double b = 1 + c * c - r * r;
  const double a = (b - std::sqrt(b * b - 4 * c * c)) / (2 * c);
  const auto phi = [a](double x) { return (x - a) / (1 - a * x); };
  return 1.0 / std::abs(phi(c + r));
}

const ConformalMap& l_map() {
  static const ConformalMap m = disk_map(fx::l_shape(), with_tol(1e-7));
  return m;
}

}  // namespace

TEST_SUITE("maps") {

TEST_CASE("unit disk maps to itself") {
  const ConformalMap m = disk_map(fx::disk(), {.center = cplx(0.0)});
  const cplx p[] = {0.5};
  const auto v = evaluate_map(m, p);
  CHECK(std::abs(v[0].value - 0.5) < 1e-12);
  CHECK(std::abs(v[0].derivative - 1.0) < 1e-12);
  CHECK(!m.modulus());
}

TEST_CASE("disk of radius 2 maps by z/2") {
  const ConformalMap m = disk_map(fx::disk(0.0, 2.0), {.center = cplx(0.0)});
  for (cplx z : {cplx(0.3, 1.1), cplx(-1.5, 0.2), cplx(1.9)}) CHECK(std::abs(m.at(z).value - z / 2.0) < 1e-12);
}

TEST_CASE("image of the disk under a univalent polynomial") {
  const ConformalMap m = disk_map(fx::poly_image(), {.center = cplx(0.0)});
  double worst = 0.0;
  for (int k = 0; k < 256; ++k) {
    const cplx w = std::polar(0.9, 2 * pi * k / 256.0);
    worst = std::max(worst, std::abs(m.at(fx::poly_p(w)).value - w));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("Green's function") {
  const ConformalMap m = disk_map(fx::disk(0.0, 2.0), {.center = cplx(0.0)});
  CHECK(green_function(m, 1.0) == doctest::Approx(std::log(0.5)).epsilon(1e-12));
  expect_code(ErrorCode::EvalAtCenter, [&] { green_function(m, 0.0); });

  const ConformalMap& l = l_map();
  for (const cplx z : sample_boundary(fx::l_shape(), 20, false).nodes)
    CHECK(std::abs(green_function(l, z)) <= l.certified_residual());
  for (const cplx z : fx::interior_points(fx::l_shape(), 100, 1e-9, 11)) CHECK(green_function(l, z) < 0.0);
}

TEST_CASE("maps check connectivity") {
  expect_code(ErrorCode::NotSimplyConnected, [] { disk_map(fx::annulus(0.0, 1.0, 0.0, 0.5)); });
  expect_code(ErrorCode::WrongConnectivity, [] { annulus_map(fx::disk()); });
  expect_code(ErrorCode::CenterOutside, [] { disk_map(fx::disk(), {.center = cplx(2.0)}); });
  expect_code(ErrorCode::NoQuadMarking, [] { rectangle_map(fx::l_shape()); });
}

TEST_CASE("concentric annuli") {
  const ConformalMap a = annulus_map(fx::annulus(0.0, 2.0, 0.0, 1.0));
  REQUIRE(a.modulus());
  CHECK(*a.modulus() == doctest::Approx(2.0).epsilon(1e-10));
  const cplx rot = a.at(1.5).value / 1.5;
  CHECK(std::abs(std::abs(rot) - 1.0) < 1e-10);
  for (cplx z : {cplx(0.0, 1.3), cplx(-1.7, 0.4)}) CHECK(std::abs(a.at(z).value - rot * z) < 1e-10);

  const ConformalMap b = annulus_map(fx::annulus(0.0, 1.0, 0.0, 0.5));
  CHECK(*b.modulus() == doctest::Approx(2.0).epsilon(1e-10));
  const cplx rot2 = b.at(0.75).value / 1.5;
  for (cplx z : {cplx(0.0, 0.6), cplx(-0.7, 0.2)}) CHECK(std::abs(b.at(z).value - 2.0 * rot2 * z) < 1e-10);
}

TEST_CASE("eccentric annulus against the Moebius reduction") {
  const double expected = moebius_modulus(0.3, 0.3);
  const ConformalMap a = annulus_map(fx::annulus(0.0, 1.0, 0.3, 0.3));
  CHECK(std::abs(*a.modulus() - expected) < 1e-8);
  // Boundary images sit on the two circles, and the first inner node maps
  // to the positive real axis.
  const BoundarySampling s = sample_boundary(a.domain(), 40, false);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double r = std::abs(a.at(s.nodes[i]).value);
    CHECK(std::abs(r - (s.chain[i] == 0 ? *a.modulus() : 1.0)) <= 2 * a.certified_residual() * r);
  }
  const cplx anchor = a.at(a.domain().junction(1, 0)).value;
  CHECK(anchor.real() > 0.0);
  CHECK(std::abs(anchor.imag()) < 1e-8);
}

TEST_CASE("rectangles map onto themselves") {
  const ConformalMap sq = rectangle_map(fx::rectangle(1.0));
  CHECK(*sq.modulus() == doctest::Approx(1.0).epsilon(1e-8));
  const ConformalMap r3 = rectangle_map(fx::rectangle(3.0));
  CHECK(std::abs(*r3.modulus() - 3.0) < 1e-8);
  // Quad vertices go to the corners of [0, 1] x [0, 1/mu].
  const double h = 1.0 / *r3.modulus();
  const cplx corners[] = {0.0, 1.0, cplx(1.0, h), cplx(0.0, h)};
  const cplx verts[] = {0.0, 3.0, cplx(3.0, 1.0), cplx(0.0, 1.0)};
  for (int k = 0; k < 4; ++k) CHECK(std::abs(r3.at(verts[k]).value - corners[k]) < 1e-8);
}

TEST_CASE("conjugate quadrilateral has the reciprocal modulus") {
  const ConformalMap q = rectangle_map(fx::l_quad(), with_tol(1e-7));
  const ConformalMap c = rectangle_map(fx::l_quad_conjugate(), with_tol(1e-7));
  CHECK(std::abs(*q.modulus() * *c.modulus() - 1.0) < 1e-7);
  // Interior images stay inside the box.
  const double h = 1.0 / *q.modulus();
  for (const cplx z : fx::interior_points(q.domain(), 100, 1e-6)) {
    const cplx w = q.at(z).value;
    CHECK(w.real() > -1e-6);
    CHECK(w.real() < 1 + 1e-6);
    CHECK(w.imag() > -1e-6);
    CHECK(w.imag() < h + 1e-6);
  }
}

TEST_CASE("derivative agrees with central differences") {
  const ConformalMap& m = l_map();
  const double h = 1e-6;
  for (const cplx z : fx::interior_points(fx::l_shape(), 50, 0.02, 5)) {
    const cplx pts[] = {z, z + h, z - h};
    const auto v = evaluate_map(m, pts);
    const cplx fd = (v[1].value - v[2].value) / (2 * h);
    CHECK(std::abs(fd - v[0].derivative) < 1e-6 * std::abs(v[0].derivative));
  }
}

TEST_CASE("exterior points are rejected") {
  const cplx p[] = {cplx(1.5, 1.5)};
  expect_code(ErrorCode::PointOutsideDomain, [&] { evaluate_map(l_map(), p); });
}

TEST_CASE("inversion") {
  const ConformalMap& m = l_map();
  const cplx zero[] = {0.0};
  CHECK(std::abs(invert_map(m, zero)[0] - m.center()) < 1e-12);
  const cplx outside[] = {1.5};
  expect_code(ErrorCode::TargetOutsideCanonical, [&] { invert_map(m, outside); });

  std::vector<cplx> grid;
  for (int i = 1; i < 20 && grid.size() < 200; ++i)
    for (int j = 1; j < 20 && grid.size() < 200; ++j) {
      const cplx z(0.1 * i, 0.1 * j);
      if (fx::l_shape().contains(z) == Location::inside && fx::l_shape().distance_to_boundary(z) > 0.01) grid.push_back(z);
    }
  std::vector<MapValue> images(grid.size());
  m.at(grid, images);
  std::vector<cplx> w(grid.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = images[i].value;
  const auto back = invert_map(m, w);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) worst = std::max(worst, std::abs(back[i] - grid[i]));
  CHECK(worst < 1e-8);
}

TEST_CASE("inversion of annulus and rectangle maps") {
  const ConformalMap a = annulus_map(fx::annulus(0.0, 1.0, 0.3, 0.3));
  const ConformalMap r = rectangle_map(fx::rectangle(2.0));
  for (const ConformalMap* m : {&a, &r}) {
    const auto pts = fx::interior_points(m->domain(), 40, 0.01, 9);
    std::vector<MapValue> v(pts.size());
    m->at(pts, v);
    std::vector<cplx> w;
    for (const auto& x : v) w.push_back(x.value);
    const auto back = invert_map(*m, w);
    for (std::size_t i = 0; i < pts.size(); ++i) CHECK(std::abs(back[i] - pts[i]) < 1e-8);
  }
}

TEST_CASE("boundary of a disk map is unimodular, monotone and winds once") {
  const ConformalMap& m = l_map();
  const BoundarySampling fine = refine_sampling(fx::l_shape(), m.model().sampling, 8);
  std::vector<MapValue> v(fine.size());
  m.at(fine.nodes, v);
  double worst = 0.0;
  for (const auto& x : v) worst = std::max(worst, std::abs(std::abs(x.value) - 1.0));
  // Monotonicity on a uniform grid: near convex corners the clustered grid
  // resolves argument steps below the certified accuracy.
  const BoundarySampling even = sample_boundary(fx::l_shape(), 200, false);
  std::vector<MapValue> e(even.size());
  m.at(even.nodes, e);
  double total = 0.0;
  bool monotone = true;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const double step = std::arg(e[(i + 1) % e.size()].value / e[i].value);
    monotone = monotone && step > 0.0;
    total += step;
  }
  CHECK(worst <= 2.0 * m.certified_residual());
  CHECK(monotone);
  CHECK(total == doctest::Approx(2 * pi).epsilon(1e-12));
}

TEST_CASE("disk normalization") {
  const ConformalMap& m = l_map();
  const MapValue c = m.at(m.center());
  CHECK(c.value == cplx(0.0));
  CHECK(c.derivative.real() > 0.0);
  CHECK(std::abs(c.derivative.imag()) <= 1e-10 * c.derivative.real());
}

TEST_CASE("moduli are invariant under similarity transformations") {
  const Domain ann = fx::annulus(0.0, 1.0, 0.3, 0.3);
  const Domain rect = fx::rectangle(3.0);
  const double r0 = *annulus_map(ann).modulus(), m0 = *rectangle_map(rect).modulus();
  for (const auto& [a, b] : {std::pair<cplx, cplx>{1.0, cplx(5.0, -3.0)}, {std::polar(1.0, 1.1), 0.0},
                             {2.5, 0.0}, {std::polar(0.3, -2.0), cplx(-1.0, 4.0)}}) {
    CHECK(std::abs(*annulus_map(fx::transformed(ann, a, b)).modulus() - r0) < 1e-8);
    CHECK(std::abs(*rectangle_map(fx::transformed(rect, a, b)).modulus() - m0) < 1e-8);
  }
}

TEST_CASE("disk maps commute with similarity transformations") {
  const Domain d = fx::l_shape();
  const cplx a = std::polar(1.7, 0.4), b(2.0, -1.0);
  const ConformalMap& m = l_map();
  const ConformalMap t = disk_map(fx::transformed(d, a, b), {.tol = 1e-7, .center = a * m.center() + b});
  // f'(z0) > 0 on both sides forces f_t(a z + b) = (a / |a|) f(z).
  const cplx turn = a / std::abs(a);
  for (const cplx z : fx::interior_points(d, 20, 0.05, 2))
    CHECK(std::abs(t.at(a * z + b).value - turn * m.at(z).value) < 1e-6);
}

TEST_CASE("unreachable tolerance with and without best effort") {
  expect_code(ErrorCode::TolUnreachable, [] { disk_map(fx::l_shape(), {.tol = 1e-12, .max_dof = 150}); });
  const ConformalMap m = disk_map(fx::l_shape(), {.tol = 1e-12, .max_dof = 150, .best_effort = true});
  CHECK(m.certified_residual() > 1e-12);
  CHECK(m.dof() <= 150);
}

}  // TEST_SUITE
