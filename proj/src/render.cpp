#include "cmap/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "cmap/error.hpp"

namespace cmap {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v == 0.0 ? 0.0 : v);
  return buf;
}

struct Frame {
  Box box;
  double scale = 1.0;
  double width = 0.0, height = 0.0;

  std::string xy(cplx z) const {
    return fmt((z.real() - box.xmin) * scale) + "," + fmt((box.ymax - z.imag()) * scale);
  }
};

Frame frame(const Domain& d, double width_px) {
  Frame f;
  f.box = d.bounding_box();
  const double pad = 0.02 * std::max(f.box.xmax - f.box.xmin, f.box.ymax - f.box.ymin);
  f.box.xmin -= pad;
  f.box.xmax += pad;
  f.box.ymin -= pad;
  f.box.ymax += pad;
  f.scale = width_px / (f.box.xmax - f.box.xmin);
  f.width = width_px;
  f.height = (f.box.ymax - f.box.ymin) * f.scale;
  return f;
}

std::string header(const Frame& f) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(f.width) + "\" height=\"" +
         fmt(f.height) + "\" viewBox=\"0 0 " + fmt(f.width) + " " + fmt(f.height) + "\">\n";
}

std::string boundary_path(const Domain& d, const Frame& f, double stroke) {
  const BoundarySampling s = sample_boundary(d, 64, false);
  std::string p = "<path class=\"boundary\" fill=\"none\" stroke=\"black\" stroke-width=\"" +
                  fmt(2.0 * stroke) + "\" d=\"";
  for (std::size_t i = 0; i < s.size(); ++i) {
    const bool first = i == 0 || s.chain[i] != s.chain[i - 1];
    const bool last = i + 1 == s.size() || s.chain[i + 1] != s.chain[i];
    p += (first ? "M" : " L") + f.xy(s.nodes[i]);
    if (last) p += " Z ";
  }
  return p + "\"/>\n";
}

void check_counts(const RenderSpec& spec) {
  if (spec.radial < 2 || spec.angular < 2)
    fail(ErrorCode::BadRenderSpec, "grid counts must be at least 2");
  if (spec.curve_samples < 2) fail(ErrorCode::BadRenderSpec, "curves need at least 2 samples");
  if (!(spec.width_px > 0.0) || !(spec.stroke_width > 0.0))
    fail(ErrorCode::BadRenderSpec, "sizes must be positive");
}

// Canonical-domain curves, each a list of target points.
std::vector<std::vector<cplx>> canonical_curves(const ConformalMap& map, const RenderSpec& spec) {
  std::vector<std::vector<cplx>> curves;
  const std::size_t n = spec.curve_samples;
  const double edge = 1e-3;
  auto lerp = [](double a, double b, double s) { return a + (b - a) * s; };
  switch (map.target()) {
    case Target::disk:
      for (std::size_t k = 1; k <= spec.radial; ++k) {
        const double r = static_cast<double>(k) / static_cast<double>(spec.radial + 1);
        std::vector<cplx> c;
        for (std::size_t i = 0; i <= n; ++i) c.push_back(std::polar(r, 2.0 * pi * static_cast<double>(i) / static_cast<double>(n)));
        curves.push_back(std::move(c));
      }
      for (std::size_t k = 0; k < spec.angular; ++k) {
        const double t = 2.0 * pi * static_cast<double>(k) / static_cast<double>(spec.angular);
        std::vector<cplx> c;
        for (std::size_t i = 0; i < n; ++i) c.push_back(std::polar(lerp(0.0, 1.0 - edge, static_cast<double>(i) / static_cast<double>(n - 1)), t));
        curves.push_back(std::move(c));
      }
      break;
    case Target::annulus: {
      const double lr = std::log(*map.modulus());
      for (std::size_t k = 1; k <= spec.radial; ++k) {
        const double r = std::exp(lr * static_cast<double>(k) / static_cast<double>(spec.radial + 1));
        std::vector<cplx> c;
        for (std::size_t i = 0; i <= n; ++i) c.push_back(std::polar(r, 2.0 * pi * static_cast<double>(i) / static_cast<double>(n)));
        curves.push_back(std::move(c));
      }
      for (std::size_t k = 0; k < spec.angular; ++k) {
        const double t = 2.0 * pi * static_cast<double>(k) / static_cast<double>(spec.angular);
        std::vector<cplx> c;
        for (std::size_t i = 0; i < n; ++i)
          c.push_back(std::polar(std::exp(lerp(edge * lr, (1.0 - edge) * lr, static_cast<double>(i) / static_cast<double>(n - 1))), t));
        curves.push_back(std::move(c));
      }
      break;
    }
    case Target::rectangle: {
      const double h = 1.0 / *map.modulus();
      for (std::size_t k = 1; k <= spec.radial; ++k) {
        const double x = static_cast<double>(k) / static_cast<double>(spec.radial + 1);
        std::vector<cplx> c;
        for (std::size_t i = 0; i < n; ++i) c.push_back({x, lerp(edge * h, (1.0 - edge) * h, static_cast<double>(i) / static_cast<double>(n - 1))});
        curves.push_back(std::move(c));
      }
      for (std::size_t k = 1; k <= spec.angular; ++k) {
        const double y = h * static_cast<double>(k) / static_cast<double>(spec.angular + 1);
        std::vector<cplx> c;
        for (std::size_t i = 0; i < n; ++i) c.push_back({lerp(edge, 1.0 - edge, static_cast<double>(i) / static_cast<double>(n - 1)), y});
        curves.push_back(std::move(c));
      }
      break;
    }
  }
  return curves;
}

std::array<double, 3> srgb_to_oklab(std::array<double, 3> c) {
  for (double& v : c) v = v <= 0.04045 ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4);
  const double l = std::cbrt(0.4122214708 * c[0] + 0.5363325363 * c[1] + 0.0514459929 * c[2]);
  const double m = std::cbrt(0.2119034982 * c[0] + 0.6806995451 * c[1] + 0.1073969566 * c[2]);
  const double s = std::cbrt(0.0883024619 * c[0] + 0.2817188376 * c[1] + 0.6299787005 * c[2]);
  return {0.2104542553 * l + 0.7936177850 * m - 0.0040720468 * s,
          1.9779984951 * l - 2.4285922050 * m + 0.4505937099 * s,
          0.0259040371 * l + 0.7827717662 * m - 0.8086757660 * s};
}

std::array<double, 3> oklab_to_srgb(std::array<double, 3> c) {
  const double l = std::pow(c[0] + 0.3963377774 * c[1] + 0.2158037573 * c[2], 3);
  const double m = std::pow(c[0] - 0.1055613458 * c[1] - 0.0638541728 * c[2], 3);
  const double s = std::pow(c[0] - 0.0894841775 * c[1] - 1.2914855480 * c[2], 3);
  std::array<double, 3> rgb = {4.0767416621 * l - 3.3077115913 * m + 0.2309699292 * s,
                               -1.2684380046 * l + 2.6097574011 * m - 0.3413193965 * s,
                               -0.0041960863 * l - 0.7034186147 * m + 1.7076147010 * s};
  for (double& v : rgb) {
    v = std::clamp(v, 0.0, 1.0);
    v = v <= 0.0031308 ? 12.92 * v : 1.055 * std::pow(v, 1.0 / 2.4) - 0.055;
  }
  return rgb;
}

}  // namespace

double lightness_factor(cplx w, double mu) {
  const double y = 2.0 * w.imag() * mu - 1.0;
  return std::clamp(1.0 - y * y, 0.0, 1.0);
}

std::array<int, 3> field_color(double t, double factor) {
  static const std::array<double, 3> red = srgb_to_oklab({1.0, 0.0, 0.0});
  static const std::array<double, 3> blue = srgb_to_oklab({0.0, 0.0, 1.0});
  t = std::clamp(t, 0.0, 1.0);
  std::array<double, 3> lab;
  for (int k = 0; k < 3; ++k) lab[k] = factor * (red[k] + (blue[k] - red[k]) * t);
  const auto rgb = oklab_to_srgb(lab);
  return {static_cast<int>(std::lround(255.0 * rgb[0])), static_cast<int>(std::lround(255.0 * rgb[1])),
          static_cast<int>(std::lround(255.0 * rgb[2]))};
}

std::string render_grid_svg(const ConformalMap& map, const RenderSpec& spec) {
  check_counts(spec);
  const Frame f = frame(map.domain(), spec.width_px);
  std::string svg = header(f);
  for (const auto& curve : canonical_curves(map, spec)) {
    std::string d;
    bool truncated = false;
    for (const cplx w : curve) {
      cplx z;
      try {
        z = invert_map(map, std::span<const cplx>(&w, 1)).front();
      } catch (const Error&) {
        truncated = true;
        break;
      }
      d += (d.empty() ? "M" : " L") + f.xy(z);
    }
    svg += "<path class=\"grid\" fill=\"none\" stroke=\"#2060c0\" stroke-width=\"" + fmt(spec.stroke_width) + "\"";
    if (truncated) svg += " data-truncated=\"true\"";
    svg += " d=\"" + d + "\"/>\n";
  }
  svg += boundary_path(map.domain(), f, spec.stroke_width);
  return svg + "</svg>\n";
}

std::string render_field_svg(const ConformalMap& map, const RenderSpec& spec) {
  if (map.target() != Target::rectangle) fail(ErrorCode::WrongTarget, "field plots need a rectangle map");
  if (spec.pixels < 2) fail(ErrorCode::BadRenderSpec, "field plots need at least 2 pixels");
  check_counts(spec);
  const Frame f = frame(map.domain(), spec.width_px);
  const double side = std::max(f.box.xmax - f.box.xmin, f.box.ymax - f.box.ymin) / static_cast<double>(spec.pixels);
  const auto nx = static_cast<std::size_t>(std::ceil((f.box.xmax - f.box.xmin) / side));
  const auto ny = static_cast<std::size_t>(std::ceil((f.box.ymax - f.box.ymin) / side));
  std::vector<cplx> centers;
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i) {
      const cplx z(f.box.xmin + (static_cast<double>(i) + 0.5) * side, f.box.ymax - (static_cast<double>(j) + 0.5) * side);
      if (map.domain().contains(z) == Location::inside) centers.push_back(z);
    }
  std::vector<MapValue> v(centers.size());
  map.at(centers, v);
  const double mu = *map.modulus();
  const std::string px = fmt(side * f.scale * 1.02);
  std::string svg = header(f);
  svg += "<g shape-rendering=\"crispEdges\">\n";
  char color[16];
  for (std::size_t k = 0; k < centers.size(); ++k) {
    const auto rgb = field_color(v[k].value.real(), lightness_factor(v[k].value, mu));
    std::snprintf(color, sizeof color, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
    const cplx corner = centers[k] + cplx(-0.5 * side, 0.5 * side);
    svg += "<rect x=\"" + fmt((corner.real() - f.box.xmin) * f.scale) + "\" y=\"" +
           fmt((f.box.ymax - corner.imag()) * f.scale) + "\" width=\"" + px + "\" height=\"" + px +
           "\" fill=\"" + color + "\"/>\n";
  }
  svg += "</g>\n" + boundary_path(map.domain(), f, spec.stroke_width);
  return svg + "</svg>\n";
}

}  // namespace cmap
