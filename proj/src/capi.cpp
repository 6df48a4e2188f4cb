#include "cmap/cmap.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "cmap/diagnostics.hpp"
#include "cmap/error.hpp"
#include "cmap/io.hpp"
#include "cmap/maps.hpp"
#include "cmap/rational.hpp"
#include "cmap/render.hpp"

struct cmap_domain {
  cmap::Domain d;
};
struct cmap_map {
  cmap::ConformalMap m;
};
struct cmap_approximant {
  cmap::RationalApproximant r;
};

namespace {

thread_local std::string last_message;
thread_local std::string last_code;

cmap_status status_of(cmap::ErrorCategory c) {
  switch (c) {
    case cmap::ErrorCategory::parse: return CMAP_E_PARSE;
    case cmap::ErrorCategory::geometry: return CMAP_E_GEOMETRY;
    case cmap::ErrorCategory::solver: return CMAP_E_SOLVER;
    case cmap::ErrorCategory::tolerance: return CMAP_E_TOLERANCE;
    case cmap::ErrorCategory::render: return CMAP_E_RENDER;
    case cmap::ErrorCategory::argument: return CMAP_E_ARGUMENT;
  }
  return CMAP_E_INTERNAL;
}

cmap_status set_error(cmap_status s, const char* code, const std::string& message) {
  last_code = code;
  last_message = message;
  return s;
}

template <class F>
cmap_status guard(F&& f) {
  try {
    f();
    last_code.clear();
    last_message.clear();
    return CMAP_OK;
  } catch (const cmap::Error& e) {
    return set_error(status_of(cmap::category(e.code())), cmap::to_string(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(CMAP_E_INTERNAL, "OutOfMemory", "out of memory");
  } catch (const std::exception& e) {
    return set_error(CMAP_E_INTERNAL, "Internal", e.what());
  }
}

cmap_status null_argument(const char* what) {
  return set_error(CMAP_E_ARGUMENT, "InvalidArgument", std::string("null ") + what);
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

std::vector<cmap::cplx> unpack(const double* v, std::size_t n) {
  std::vector<cmap::cplx> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = {v[2 * i], v[2 * i + 1]};
  return out;
}

cmap::RenderSpec render_spec(const cmap_render_spec* s) {
  cmap::RenderSpec r;
  if (s) {
    r.radial = s->radial;
    r.angular = s->angular;
    r.stroke_width = s->stroke_width;
    r.pixels = s->pixels;
    r.curve_samples = s->curve_samples;
    r.width_px = s->width_px;
  }
  return r;
}

}  // namespace

extern "C" {

const char* cmap_version(void) { return "0.1.0"; }
const char* cmap_last_error(void) { return last_message.c_str(); }
const char* cmap_last_error_code(void) { return last_code.c_str(); }
void cmap_string_free(char* s) { std::free(s); }

cmap_status cmap_domain_parse(const char* json, size_t length, cmap_domain** out) {
  if (!json || !out) return null_argument("argument");
  return guard([&] {
    *out = new cmap_domain{cmap::Domain::build(cmap::parse_domain(std::string_view(json, length)))};
  });
}

cmap_status cmap_domain_load(const char* path, cmap_domain** out) {
  if (!path || !out) return null_argument("argument");
  return guard([&] { *out = new cmap_domain{cmap::load_domain(path)}; });
}

void cmap_domain_free(cmap_domain* d) { delete d; }

cmap_status cmap_domain_info_get(const cmap_domain* d, cmap_domain_info* out) {
  if (!d || !out) return null_argument("argument");
  return guard([&] {
    out->holes = d->d.hole_count();
    out->corners = d->d.corners().size();
    out->has_quad = d->d.quad_vertices().has_value();
    out->diameter = d->d.diameter();
    out->area = d->d.area();
  });
}

cmap_status cmap_domain_to_json(const cmap_domain* d, char** out) {
  if (!d || !out) return null_argument("argument");
  return guard([&] { *out = dup(cmap::domain_to_json(d->d)); });
}

cmap_status cmap_domain_contains(const cmap_domain* d, const double z[2], cmap_location* out) {
  if (!d || !z || !out) return null_argument("argument");
  return guard([&] {
    switch (d->d.contains({z[0], z[1]})) {
      case cmap::Location::inside: *out = CMAP_INSIDE; break;
      case cmap::Location::outside: *out = CMAP_OUTSIDE; break;
      case cmap::Location::boundary: *out = CMAP_BOUNDARY; break;
    }
  });
}

int cmap_domain_equal(const cmap_domain* a, const cmap_domain* b) {
  return a && b && a->d == b->d;
}

void cmap_map_options_default(cmap_map_options* o) {
  if (!o) return;
  o->tol = 1e-8;
  o->max_dof = 2000;
  o->best_effort = 0;
  o->has_center = 0;
  o->center[0] = o->center[1] = 0.0;
}

cmap_status cmap_map_create(const cmap_domain* d, cmap_target target, const cmap_map_options* o,
                            cmap_map** out) {
  if (!d || !out) return null_argument("argument");
  cmap_map_options def;
  cmap_map_options_default(&def);
  if (!o) o = &def;
  if (!(o->tol > 0.0)) return set_error(CMAP_E_ARGUMENT, "BadTol", "tolerance must be positive");
  return guard([&] {
    cmap::MapOptions mo;
    mo.tol = o->tol;
    mo.max_dof = o->max_dof;
    mo.best_effort = o->best_effort != 0;
    if (o->has_center) mo.center = cmap::cplx(o->center[0], o->center[1]);
    switch (target) {
      case CMAP_DISK: *out = new cmap_map{cmap::disk_map(d->d, mo)}; break;
      case CMAP_ANNULUS: *out = new cmap_map{cmap::annulus_map(d->d, mo)}; break;
      case CMAP_RECTANGLE: *out = new cmap_map{cmap::rectangle_map(d->d, mo)}; break;
      default: cmap::fail(cmap::ErrorCode::InvalidArgument, "unknown target");
    }
  });
}

void cmap_map_free(cmap_map* m) { delete m; }

cmap_status cmap_map_info_get(const cmap_map* m, cmap_map_info* out) {
  if (!m || !out) return null_argument("argument");
  return guard([&] {
    const auto& map = m->m;
    out->target = static_cast<cmap_target>(map.target());
    out->has_modulus = map.modulus().has_value();
    out->modulus = map.modulus().value_or(0.0);
    out->residual = map.certified_residual();
    out->dof = map.dof();
    out->center[0] = map.center().real();
    out->center[1] = map.center().imag();
  });
}

cmap_status cmap_map_eval(const cmap_map* m, size_t n, const double* z, double* w, double* dw) {
  if (!m || (n > 0 && (!z || !w))) return null_argument("argument");
  return guard([&] {
    const auto pts = unpack(z, n);
    const auto v = cmap::evaluate_map(m->m, pts);
    for (std::size_t i = 0; i < n; ++i) {
      w[2 * i] = v[i].value.real();
      w[2 * i + 1] = v[i].value.imag();
      if (dw) {
        dw[2 * i] = v[i].derivative.real();
        dw[2 * i + 1] = v[i].derivative.imag();
      }
    }
  });
}

cmap_status cmap_map_invert(const cmap_map* m, size_t n, const double* w, double* z) {
  if (!m || (n > 0 && (!z || !w))) return null_argument("argument");
  return guard([&] {
    const auto pts = unpack(w, n);
    const auto v = cmap::invert_map(m->m, pts);
    for (std::size_t i = 0; i < n; ++i) {
      z[2 * i] = v[i].real();
      z[2 * i + 1] = v[i].imag();
    }
  });
}

cmap_status cmap_green(const cmap_map* m, const double z[2], double* out) {
  if (!m || !z || !out) return null_argument("argument");
  return guard([&] { *out = cmap::green_function(m->m, {z[0], z[1]}); });
}

cmap_status cmap_compress(const cmap_map* m, size_t samples, cmap_direction dir, double tol,
                          size_t max_degree, cmap_approximant** out) {
  if (!m || !out) return null_argument("argument");
  *out = nullptr;
  const cmap_status s = guard([&] {
    const auto table = cmap::boundary_correspondence(m->m, samples);
    const auto d = dir == CMAP_INVERSE ? cmap::Direction::inverse : cmap::Direction::forward;
    *out = new cmap_approximant{cmap::fit_rational(table, d, tol, max_degree, true)};
  });
  if (s == CMAP_OK && !((*out)->r.accuracy_estimate() < tol))
    return set_error(CMAP_E_TOLERANCE, "DegreeExhausted",
                     "DegreeExhausted: table error " + cmap::num((*out)->r.accuracy_estimate()) +
                         " at degree " + std::to_string((*out)->r.degree()));
  return s;
}

void cmap_approximant_free(cmap_approximant* r) { delete r; }
size_t cmap_approximant_degree(const cmap_approximant* r) { return r ? r->r.degree() : 0; }
double cmap_approximant_accuracy(const cmap_approximant* r) { return r ? r->r.accuracy_estimate() : 0.0; }
cmap_direction cmap_approximant_direction(const cmap_approximant* r) {
  return r && r->r.direction() == cmap::Direction::inverse ? CMAP_INVERSE : CMAP_FORWARD;
}

cmap_status cmap_approximant_eval(const cmap_approximant* r, size_t n, const double* x, double* out) {
  if (!r || (n > 0 && (!x || !out))) return null_argument("argument");
  return guard([&] {
    const auto pts = unpack(x, n);
    std::vector<cmap::cplx> v(n);
    r->r.evaluate(pts, v);
    for (std::size_t i = 0; i < n; ++i) {
      out[2 * i] = v[i].real();
      out[2 * i + 1] = v[i].imag();
    }
  });
}

cmap_status cmap_approximant_to_json(const cmap_approximant* r, char** out) {
  if (!r || !out) return null_argument("argument");
  return guard([&] { *out = dup(cmap::approximant_to_json(r->r)); });
}

cmap_status cmap_approximant_parse(const char* json, size_t length, cmap_approximant** out) {
  if (!json || !out) return null_argument("argument");
  return guard([&] {
    *out = new cmap_approximant{cmap::approximant_from_json(std::string_view(json, length))};
  });
}

void cmap_render_spec_default(cmap_render_spec* s) {
  if (!s) return;
  const cmap::RenderSpec r;
  s->radial = r.radial;
  s->angular = r.angular;
  s->stroke_width = r.stroke_width;
  s->pixels = r.pixels;
  s->curve_samples = r.curve_samples;
  s->width_px = r.width_px;
}

cmap_status cmap_render_grid(const cmap_map* m, const cmap_render_spec* s, char** svg) {
  if (!m || !svg) return null_argument("argument");
  return guard([&] { *svg = dup(cmap::render_grid_svg(m->m, render_spec(s))); });
}

cmap_status cmap_render_field(const cmap_map* m, const cmap_render_spec* s, char** svg) {
  if (!m || !svg) return null_argument("argument");
  return guard([&] { *svg = dup(cmap::render_field_svg(m->m, render_spec(s))); });
}

cmap_status cmap_elongation(const cmap_domain* d, double* L) {
  if (!d || !L) return null_argument("argument");
  return guard([&] { *L = cmap::elongation_estimate(d->d).L; });
}

cmap_status cmap_crowding(double L, double* scale, int* representable) {
  if (!scale || !representable) return null_argument("argument");
  return guard([&] {
    const auto c = cmap::crowding_forecast(L);
    *scale = c.scale;
    *representable = c.representable_in_double;
  });
}

cmap_status cmap_end_hitting(double mu, double* asymptotic, double* series, size_t* terms) {
  if (!asymptotic || !series) return null_argument("argument");
  return guard([&] {
    const auto p = cmap::end_hitting_probability(mu);
    *asymptotic = p.asymptotic;
    *series = p.series_value;
    if (terms) *terms = p.terms_used;
  });
}

cmap_status cmap_resistance(double mu, double rho, double* out) {
  if (!out) return null_argument("argument");
  return guard([&] { *out = cmap::resistance_of_quadrilateral(mu, rho); });
}

}  // extern "C"
