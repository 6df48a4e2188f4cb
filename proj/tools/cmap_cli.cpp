// Command-line front end. Talks to the library only through the C API.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cmap/cmap.h"

using ordered = nlohmann::ordered_json;

namespace {

struct Failure {
  int code;
};

struct Job {
  std::string domain;
  std::string target;
  double tol = 1e-8;
  std::size_t max_dof = 2000;
  bool best_effort = false;
  std::string out;
  std::string svg;
  std::string grid = "8x16";
  std::string points;
  std::size_t pixels = 120;
  std::size_t samples = 1000;
  std::size_t max_degree = 200;
  std::string direction = "both";
  double rho = 1.0;
  double map_tol = 0.0;  // compress: tolerance for the underlying map
};

void check(cmap_status s) {
  if (s == CMAP_OK) return;
  const std::string code = cmap_last_error_code();
  std::string msg = cmap_last_error();
  if (msg.rfind(code + ":", 0) != 0 && !code.empty()) msg = code + ": " + msg;
  std::fprintf(stderr, "cmap: %s\n", msg.c_str());
  throw Failure{static_cast<int>(s)};
}

[[noreturn]] void usage_error(const std::string& msg) {
  std::fprintf(stderr, "cmap: %s\n", msg.c_str());
  throw Failure{CMAP_E_ARGUMENT};
}

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(p); }
};

using DomainHandle = Handle<cmap_domain, cmap_domain_free>;
using MapHandle = Handle<cmap_map, cmap_map_free>;
using ApproxHandle = Handle<cmap_approximant, cmap_approximant_free>;

std::string take(char* s) {
  std::string out(s);
  cmap_string_free(s);
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) usage_error("cannot write " + path);
  f << text;
}

cmap_target parse_target(const std::string& t) {
  if (t == "disk") return CMAP_DISK;
  if (t == "annulus") return CMAP_ANNULUS;
  if (t == "rectangle") return CMAP_RECTANGLE;
  usage_error("unknown target '" + t + "'");
}

const char* target_name(cmap_target t) {
  switch (t) {
    case CMAP_DISK: return "disk";
    case CMAP_ANNULUS: return "annulus";
    case CMAP_RECTANGLE: return "rectangle";
  }
  return "unknown";
}

// Default target when --target is omitted: rectangle for marked
// quadrilaterals, annulus for domains with a hole, otherwise disk.
cmap_target choose_target(const Job& job, const cmap_domain* d) {
  if (!job.target.empty()) return parse_target(job.target);
  cmap_domain_info info;
  check(cmap_domain_info_get(d, &info));
  if (info.holes == 1) return CMAP_ANNULUS;
  return info.has_quad ? CMAP_RECTANGLE : CMAP_DISK;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Solved {
  DomainHandle domain;
  MapHandle map;
  cmap_map_info info{};
};

void solve(const Job& job, Solved& s) {
  check(cmap_domain_load(job.domain.c_str(), &s.domain.p));
  const cmap_target t = choose_target(job, s.domain.p);
  cmap_map_options o;
  cmap_map_options_default(&o);
  o.tol = job.tol;
  o.max_dof = job.max_dof;
  o.best_effort = job.best_effort;
  check(cmap_map_create(s.domain.p, t, &o, &s.map.p));
  check(cmap_map_info_get(s.map.p, &s.info));
}

ordered result_json(const Solved& s) {
  ordered r;
  r["target"] = target_name(s.info.target);
  if (s.info.has_modulus)
    r["modulus"] = s.info.modulus;
  else
    r["modulus"] = nullptr;
  r["residual"] = s.info.residual;
  r["dof"] = s.info.dof;
  r["version"] = cmap_version();
  return r;
}

void finish(ordered r, const Job& job, std::chrono::steady_clock::time_point t0) {
  r["timing"] = seconds_since(t0);
  write_text(job.out, r.dump(2) + "\n");
}

void parse_grid(const std::string& g, cmap_render_spec& spec) {
  static const std::regex re(R"((\d+)x(\d+))");
  std::smatch m;
  if (!std::regex_match(g, m, re)) usage_error("--grid expects NRxNT, got '" + g + "'");
  spec.radial = std::stoul(m[1]);
  spec.angular = std::stoul(m[2]);
}

void write_grid_svg(const Job& job, const Solved& s) {
  cmap_render_spec spec;
  cmap_render_spec_default(&spec);
  parse_grid(job.grid, spec);
  char* svg = nullptr;
  check(cmap_render_grid(s.map.p, &spec, &svg));
  write_text(job.svg, take(svg));
}

int run_map(const Job& job) {
  const auto t0 = std::chrono::steady_clock::now();
  Solved s;
  solve(job, s);
  ordered r = result_json(s);
  double L = 0.0, scale = 0.0;
  int representable = 0;
  check(cmap_elongation(s.domain.p, &L));
  check(cmap_crowding(L, &scale, &representable));
  r["elongation"] = L;
  r["crowding_scale"] = scale;
  r["crowding_representable"] = representable != 0;
  if (!job.svg.empty()) write_grid_svg(job, s);
  finish(r, job, t0);
  return 0;
}

int run_modulus(const Job& job) {
  const auto t0 = std::chrono::steady_clock::now();
  Solved s;
  solve(job, s);
  if (!s.info.has_modulus) usage_error("the disk target has no modulus; use --target annulus or rectangle");
  ordered r = result_json(s);
  if (s.info.target == CMAP_RECTANGLE) {
    double res = 0.0, asym = 0.0, series = 0.0;
    check(cmap_resistance(s.info.modulus, job.rho, &res));
    check(cmap_end_hitting(s.info.modulus, &asym, &series, nullptr));
    r["resistance"] = res;
    r["end_hitting"] = {{"asymptotic", asym}, {"series", series}};
  }
  std::fprintf(stderr, "modulus %.15g (residual %.3g)\n", s.info.modulus, s.info.residual);
  finish(r, job, t0);
  return 0;
}

int run_grid(const Job& job) {
  if (job.svg.empty()) usage_error("grid needs --svg");
  const auto t0 = std::chrono::steady_clock::now();
  Solved s;
  solve(job, s);
  write_grid_svg(job, s);
  if (!job.out.empty()) finish(result_json(s), job, t0);
  return 0;
}

int run_field(const Job& job) {
  if (job.svg.empty()) usage_error("field needs --svg");
  const auto t0 = std::chrono::steady_clock::now();
  Solved s;
  solve(job, s);
  cmap_render_spec spec;
  cmap_render_spec_default(&spec);
  spec.pixels = job.pixels;
  char* svg = nullptr;
  check(cmap_render_field(s.map.p, &spec, &svg));
  write_text(job.svg, take(svg));
  if (!job.out.empty()) finish(result_json(s), job, t0);
  return 0;
}

std::vector<double> read_points(const std::string& path) {
  std::ifstream f(path);
  if (!f) {
    std::fprintf(stderr, "cmap: ParseError: cannot read %s\n", path.c_str());
    throw Failure{CMAP_E_PARSE};
  }
  std::vector<double> xy;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    for (char& c : line)
      if (c == ',' || c == ';' || c == '\t') c = ' ';
    std::istringstream ss(line);
    double x, y;
    if (!(ss >> x >> y)) {
      if (lineno == 1) continue;  // header
      std::fprintf(stderr, "cmap: ParseError: %s line %zu: expected x,y\n", path.c_str(), lineno);
      throw Failure{CMAP_E_PARSE};
    }
    xy.push_back(x);
    xy.push_back(y);
  }
  return xy;
}

int run_probe(const Job& job) {
  if (job.points.empty()) usage_error("probe needs --points");
  Solved s;
  solve(job, s);
  const std::vector<double> z = read_points(job.points);
  const std::size_t n = z.size() / 2;
  std::vector<double> w(z.size()), dw(z.size());
  check(cmap_map_eval(s.map.p, n, z.data(), w.data(), dw.data()));
  std::string csv = "x_in,y_in,x_out,y_out,|f'|\n";
  char buf[160];
  for (std::size_t i = 0; i < n; ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", z[2 * i], z[2 * i + 1], w[2 * i],
                  w[2 * i + 1], std::hypot(dw[2 * i], dw[2 * i + 1]));
    csv += buf;
  }
  write_text(job.out, csv);
  return 0;
}

int run_compress(const Job& job) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<cmap_direction> dirs;
  if (job.direction == "forward" || job.direction == "both") dirs.push_back(CMAP_FORWARD);
  if (job.direction == "inverse" || job.direction == "both") dirs.push_back(CMAP_INVERSE);
  if (dirs.empty()) usage_error("--direction must be forward, inverse or both");
  // The boundary correspondence has to be well inside the fitting tolerance.
  Job inner = job;
  inner.tol = job.map_tol > 0.0 ? job.map_tol : job.tol / 10.0;
  Solved s;
  solve(inner, s);
  ordered r = result_json(s);
  ordered list = ordered::array();
  int status = 0;
  for (const cmap_direction d : dirs) {
    ApproxHandle a;
    const cmap_status st = cmap_compress(s.map.p, job.samples, d, job.tol, job.max_degree, &a.p);
    if (st == CMAP_E_TOLERANCE && a.p) {
      std::fprintf(stderr, "cmap: %s\n", cmap_last_error());
      status = CMAP_E_TOLERANCE;
    } else {
      check(st);
    }
    char* text = nullptr;
    check(cmap_approximant_to_json(a.p, &text));
    ordered entry = ordered::parse(take(text));
    entry["degree"] = cmap_approximant_degree(a.p);
    list.push_back(entry);
  }
  r["approximants"] = list;
  finish(r, job, t0);
  return status;
}

int run_canon(const Job& job) {
  DomainHandle d;
  check(cmap_domain_load(job.domain.c_str(), &d.p));
  char* text = nullptr;
  check(cmap_domain_to_json(d.p, &text));
  write_text(job.out, take(text));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical conformal maps of planar domains onto disks, annuli and rectangles"};
  app.set_version_flag("--version", std::string(cmap_version()));
  app.require_subcommand(1);
  Job job;

  auto common = [&job](CLI::App* sub) {
    sub->add_option("--domain", job.domain, "Domain JSON file")->required()->check(CLI::ExistingFile);
    sub->add_option("--target", job.target, "disk, annulus or rectangle")
        ->check(CLI::IsMember({"disk", "annulus", "rectangle"}));
    sub->add_option("--tol", job.tol, "Boundary residual tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--max-dof", job.max_dof, "Cap on real degrees of freedom");
    sub->add_flag("--best-effort", job.best_effort, "Return the best map if --tol is not reached");
    sub->add_option("--out", job.out, "Output file (default stdout)");
  };

  auto* map = app.add_subcommand("map", "Compute a map and report its certified residual");
  common(map);
  map->add_option("--svg", job.svg, "Also draw the grid");
  map->add_option("--grid", job.grid, "Grid counts NRxNT");

  auto* modulus = app.add_subcommand("modulus", "Conformal modulus of an annulus or quadrilateral");
  common(modulus);
  modulus->add_option("--rho", job.rho, "Resistance of a unit square")->check(CLI::PositiveNumber);

  auto* grid = app.add_subcommand("grid", "Draw preimages of the canonical grid");
  common(grid);
  grid->add_option("--svg", job.svg, "SVG output")->required();
  grid->add_option("--grid", job.grid, "Grid counts NRxNT");

  auto* field = app.add_subcommand("field", "Color a quadrilateral by its rectangle map");
  common(field);
  field->add_option("--svg", job.svg, "SVG output")->required();
  field->add_option("--pixels", job.pixels, "Pixels along the longer side");

  auto* probe = app.add_subcommand("probe", "Evaluate a map at points from a CSV file");
  common(probe);
  probe->add_option("--points", job.points, "CSV of x,y")->required()->check(CLI::ExistingFile);

  auto* compress = app.add_subcommand("compress", "Rational approximations of a map and its inverse");
  common(compress);
  compress->add_option("--samples", job.samples, "Boundary correspondence samples");
  compress->add_option("--max-degree", job.max_degree, "Degree cap");
  compress->add_option("--direction", job.direction, "forward, inverse or both");
  compress->add_option("--map-tol", job.map_tol, "Map tolerance (default tol/10)")->check(CLI::PositiveNumber);

  auto* canon = app.add_subcommand("canon", "Write the canonical form of a domain file");
  canon->add_option("--domain", job.domain, "Domain JSON file")->required()->check(CLI::ExistingFile);
  canon->add_option("--out", job.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : CMAP_E_ARGUMENT;
  }

  try {
    if (*map) return run_map(job);
    if (*modulus) return run_modulus(job);
    if (*grid) return run_grid(job);
    if (*field) return run_field(job);
    if (*probe) return run_probe(job);
    if (*compress) return run_compress(job);
    if (*canon) return run_canon(job);
  } catch (const Failure& f) {
    return f.code;
  }
  return CMAP_E_ARGUMENT;
}
