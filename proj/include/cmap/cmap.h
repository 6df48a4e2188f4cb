#ifndef CMAP_CMAP_H
#define CMAP_CMAP_H

#include <stddef.h>

#if defined(_WIN32)
#define CMAP_API __declspec(dllexport)
#else
#define CMAP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as CLI exit codes. */
typedef enum cmap_status {
  CMAP_OK = 0,
  CMAP_E_ARGUMENT = 1,
  CMAP_E_PARSE = 2,
  CMAP_E_GEOMETRY = 3,
  CMAP_E_SOLVER = 4,
  CMAP_E_TOLERANCE = 5,
  CMAP_E_RENDER = 6,
  CMAP_E_INTERNAL = 7
} cmap_status;

typedef enum cmap_target { CMAP_DISK = 0, CMAP_ANNULUS = 1, CMAP_RECTANGLE = 2 } cmap_target;
typedef enum cmap_direction { CMAP_FORWARD = 0, CMAP_INVERSE = 1 } cmap_direction;
typedef enum cmap_location { CMAP_INSIDE = 0, CMAP_OUTSIDE = 1, CMAP_BOUNDARY = 2 } cmap_location;

typedef struct cmap_domain cmap_domain;
typedef struct cmap_map cmap_map;
typedef struct cmap_approximant cmap_approximant;

/* Complex arrays are interleaved: re0, im0, re1, im1, ... */

typedef struct cmap_domain_info {
  size_t holes;
  size_t corners;
  int has_quad;
  double diameter;
  double area;
} cmap_domain_info;

typedef struct cmap_map_options {
  double tol;
  size_t max_dof;
  int best_effort;
  int has_center;
  double center[2];
} cmap_map_options;

typedef struct cmap_map_info {
  cmap_target target;
  int has_modulus;
  double modulus;
  double residual;
  size_t dof;
  double center[2];
} cmap_map_info;

typedef struct cmap_render_spec {
  size_t radial;
  size_t angular;
  double stroke_width;
  size_t pixels;
  size_t curve_samples;
  double width_px;
} cmap_render_spec;

CMAP_API const char* cmap_version(void);

/* Message and code name of the last failure on the calling thread. */
CMAP_API const char* cmap_last_error(void);
CMAP_API const char* cmap_last_error_code(void);

/* Strings returned through char** are owned by the caller. */
CMAP_API void cmap_string_free(char* s);

CMAP_API cmap_status cmap_domain_parse(const char* json, size_t length, cmap_domain** out);
CMAP_API cmap_status cmap_domain_load(const char* path, cmap_domain** out);
CMAP_API void cmap_domain_free(cmap_domain* d);
CMAP_API cmap_status cmap_domain_info_get(const cmap_domain* d, cmap_domain_info* out);
CMAP_API cmap_status cmap_domain_to_json(const cmap_domain* d, char** out);
CMAP_API cmap_status cmap_domain_contains(const cmap_domain* d, const double z[2], cmap_location* out);
CMAP_API int cmap_domain_equal(const cmap_domain* a, const cmap_domain* b);

CMAP_API void cmap_map_options_default(cmap_map_options* o);
CMAP_API cmap_status cmap_map_create(const cmap_domain* d, cmap_target target,
                                     const cmap_map_options* o, cmap_map** out);
CMAP_API void cmap_map_free(cmap_map* m);
CMAP_API cmap_status cmap_map_info_get(const cmap_map* m, cmap_map_info* out);
/* f and f' at n points; dw may be NULL. Points outside the domain fail. */
CMAP_API cmap_status cmap_map_eval(const cmap_map* m, size_t n, const double* z, double* w, double* dw);
CMAP_API cmap_status cmap_map_invert(const cmap_map* m, size_t n, const double* w, double* z);
CMAP_API cmap_status cmap_green(const cmap_map* m, const double z[2], double* out);

/* Boundary correspondence on about `samples` nodes (nodes whose image does
   not advance are dropped), compressed to a barycentric rational function. If the tolerance is not met within
   max_degree, the best approximant is still returned together with
   CMAP_E_TOLERANCE. */
CMAP_API cmap_status cmap_compress(const cmap_map* m, size_t samples, cmap_direction dir,
                                   double tol, size_t max_degree, cmap_approximant** out);
CMAP_API void cmap_approximant_free(cmap_approximant* r);
CMAP_API size_t cmap_approximant_degree(const cmap_approximant* r);
CMAP_API double cmap_approximant_accuracy(const cmap_approximant* r);
CMAP_API cmap_direction cmap_approximant_direction(const cmap_approximant* r);
CMAP_API cmap_status cmap_approximant_eval(const cmap_approximant* r, size_t n, const double* x, double* out);
CMAP_API cmap_status cmap_approximant_to_json(const cmap_approximant* r, char** out);
CMAP_API cmap_status cmap_approximant_parse(const char* json, size_t length, cmap_approximant** out);

CMAP_API void cmap_render_spec_default(cmap_render_spec* s);
CMAP_API cmap_status cmap_render_grid(const cmap_map* m, const cmap_render_spec* s, char** svg);
CMAP_API cmap_status cmap_render_field(const cmap_map* m, const cmap_render_spec* s, char** svg);

CMAP_API cmap_status cmap_elongation(const cmap_domain* d, double* L);
CMAP_API cmap_status cmap_crowding(double L, double* scale, int* representable);
CMAP_API cmap_status cmap_end_hitting(double mu, double* asymptotic, double* series, size_t* terms);
CMAP_API cmap_status cmap_resistance(double mu, double rho, double* out);

#ifdef __cplusplus
}
#endif

#endif
