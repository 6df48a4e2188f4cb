#include "cmap/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cmap/error.hpp"

namespace cmap {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

namespace {

double number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(ErrorCode::ParseError, where + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(ErrorCode::ParseError, where + ": number is not finite");
  return v;
}

cplx point(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) fail(ErrorCode::ParseError, where + ": expected [x, y]");
  return {number(j[0], where), number(j[1], where)};
}

const json& field(const json& j, const char* key, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end()) fail(ErrorCode::ParseError, where + ": missing \"" + key + "\"");
  return *it;
}

Arc arc(const json& j, const std::string& where) {
  if (!j.is_object()) fail(ErrorCode::ParseError, where + ": expected an object");
  const json& type = field(j, "type", where);
  if (!type.is_string()) fail(ErrorCode::ParseError, where + ".type: expected a string");
  const std::string t = type.get<std::string>();
  if (t == "line")
    return Arc::line(point(field(j, "from", where), where + ".from"),
                     point(field(j, "to", where), where + ".to"));
  if (t == "arc") {
    const cplx from = point(field(j, "from", where), where + ".from");
    const cplx center = point(field(j, "center", where), where + ".center");
    const double sweep = number(field(j, "sweep", where), where + ".sweep");
    if (j.contains("to")) return Arc::circular(from, point(j["to"], where + ".to"), center, sweep);
    return Arc::circular(from, center, sweep);
  }
  if (t == "trig") {
    const json& c = field(j, "coeffs", where);
    if (!c.is_array()) fail(ErrorCode::ParseError, where + ".coeffs: expected an array");
    std::vector<cplx> coeffs;
    for (std::size_t k = 0; k < c.size(); ++k)
      coeffs.push_back(point(c[k], where + ".coeffs[" + std::to_string(k) + "]"));
    return Arc::trig(std::move(coeffs));
  }
  fail(ErrorCode::ParseError, where + ": unknown arc type \"" + t + "\"");
}

Chain chain(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(ErrorCode::ParseError, where + ": expected a nonempty array");
  Chain c;
  for (std::size_t k = 0; k < j.size(); ++k) c.push_back(arc(j[k], where + "[" + std::to_string(k) + "]"));
  return c;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ParseError, "malformed JSON at byte " + std::to_string(e.byte));
  }
}

ordered pair(cplx z) { return ordered::array({z.real(), z.imag()}); }

ordered arc_json(const Arc& a) {
  ordered o;
  switch (a.kind()) {
    case ArcKind::line:
      o["type"] = "line";
      o["from"] = pair(a.start());
      o["to"] = pair(a.end());
      break;
    case ArcKind::circular:
      o["type"] = "arc";
      o["from"] = pair(a.start());
      o["to"] = pair(a.end());
      o["center"] = pair(a.center());
      o["sweep"] = a.sweep();
      break;
    case ArcKind::trig: {
      o["type"] = "trig";
      ordered c = ordered::array();
      for (const cplx v : a.coeffs()) c.push_back(pair(v));
      o["coeffs"] = c;
      break;
    }
  }
  return o;
}

ordered chain_json(const Chain& c) {
  ordered a = ordered::array();
  for (const Arc& arc : c) a.push_back(arc_json(arc));
  return a;
}

std::vector<cplx> points(const json& j, const char* key) {
  const json& a = field(j, key, "approximant");
  if (!a.is_array()) fail(ErrorCode::ParseError, std::string("approximant.") + key + ": expected an array");
  std::vector<cplx> out;
  for (const json& p : a) out.push_back(point(p, std::string("approximant.") + key));
  return out;
}

}  // namespace

DomainInput parse_domain(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_object()) fail(ErrorCode::ParseError, "domain: expected an object");
  DomainInput in;
  in.outer = chain(field(j, "outer", "domain"), "outer");
  if (const auto it = j.find("holes"); it != j.end()) {
    if (!it->is_array()) fail(ErrorCode::ParseError, "holes: expected an array");
    for (std::size_t k = 0; k < it->size(); ++k)
      in.holes.push_back(chain((*it)[k], "holes[" + std::to_string(k) + "]"));
  }
  if (const auto it = j.find("quad"); it != j.end() && !it->is_null()) {
    if (!it->is_array() || it->size() != 4) fail(ErrorCode::ParseError, "quad: expected four indices");
    std::array<std::size_t, 4> q{};
    for (std::size_t k = 0; k < 4; ++k) {
      if (!(*it)[k].is_number_unsigned())
        fail(ErrorCode::ParseError, "quad: indices must be nonnegative integers");
      q[k] = (*it)[k].get<std::size_t>();
    }
    in.quad = q;
  }
  return in;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::ParseError, "cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Domain load_domain(const std::string& path) { return Domain::build(parse_domain(read_file(path))); }

std::string domain_to_json(const Domain& domain) {
  ordered o;
  o["outer"] = chain_json(domain.outer());
  ordered holes = ordered::array();
  for (std::size_t h = 1; h < domain.chains().size(); ++h) holes.push_back(chain_json(domain.chains()[h]));
  o["holes"] = holes;
  if (const auto& q = domain.quad_vertices()) o["quad"] = *q;
  return o.dump(2) + "\n";
}

std::string approximant_to_json(const RationalApproximant& r) {
  ordered o;
  o["direction"] = to_string(r.direction());
  ordered s = ordered::array(), v = ordered::array(), w = ordered::array();
  for (std::size_t k = 0; k < r.support().size(); ++k) {
    s.push_back(pair(r.support()[k]));
    v.push_back(pair(r.values()[k]));
    w.push_back(pair(r.weights()[k]));
  }
  o["support"] = s;
  o["values"] = v;
  o["weights"] = w;
  o["accuracy"] = r.accuracy_estimate();
  return o.dump(2) + "\n";
}

RationalApproximant approximant_from_json(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_object()) fail(ErrorCode::ParseError, "approximant: expected an object");
  const json& d = field(j, "direction", "approximant");
  Direction dir;
  if (d == "forward")
    dir = Direction::forward;
  else if (d == "inverse")
    dir = Direction::inverse;
  else
    fail(ErrorCode::ParseError, "approximant.direction: expected \"forward\" or \"inverse\"");
  return RationalApproximant(points(j, "support"), points(j, "values"), points(j, "weights"), dir,
                             number(field(j, "accuracy", "approximant"), "approximant.accuracy"));
}

}  // namespace cmap
