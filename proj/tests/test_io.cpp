#include <doctest.h>

#include <string>

#include "cmap/error.hpp"
#include "cmap/io.hpp"
#include "fixtures.hpp"

using namespace cmap;

namespace {

ErrorCode code_of(std::string_view text) {
  try {
    parse_domain(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

std::string message_of(std::string_view text) {
  try {
    parse_domain(text);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("parse every arc kind") {
  const DomainInput in = parse_domain(R"({
    "outer": [{"type": "line", "from": [0, 0], "to": [2, 0]},
              {"type": "arc", "from": [2, 0], "to": [0, 2], "center": [0, 0], "sweep": 1.5707963267948966},
              {"type": "line", "from": [0, 2], "to": [0, 0]}],
    "holes": [[{"type": "trig", "coeffs": [[0, 0], [0.5, 0.5], [0.2, 0]]}]],
    "quad": [0, 1, 2, 0]})");
  REQUIRE(in.outer.size() == 3);
  CHECK(in.outer[0].kind() == ArcKind::line);
  CHECK(in.outer[1].kind() == ArcKind::circular);
  CHECK(std::abs(in.outer[1].end() - cplx(0, 2)) < 1e-15);
  REQUIRE(in.holes.size() == 1);
  CHECK(in.holes[0][0].kind() == ArcKind::trig);
  REQUIRE(in.quad);
  CHECK((*in.quad)[1] == 1);
}

TEST_CASE("arc end point may be omitted") {
  const DomainInput in = parse_domain(R"({"outer": [
    {"type": "arc", "from": [1, 0], "center": [0, 0], "sweep": 3.141592653589793},
    {"type": "arc", "from": [-1, 0], "center": [0, 0], "sweep": 3.141592653589793}]})");
  const Domain d = Domain::build(in);
  CHECK(d.area() == doctest::Approx(pi).epsilon(1e-12));
}

TEST_CASE("malformed JSON names the byte offset") {
  const std::string text = R"({"outer": [{"type": "line", "from": [0, 0] "to": [1, 0]}]})";
  CHECK(code_of(text) == ErrorCode::ParseError);
  const std::string msg = message_of(text);
  CHECK(msg.find("byte") != std::string::npos);
  // The offset lands on the unexpected token (1-based, last byte read).
  const std::size_t at = msg.find("byte ");
  REQUIRE(at != std::string::npos);
  const std::size_t byte = std::stoul(msg.substr(at + 5));
  const std::size_t token = text.find("\"to\"");
  CHECK(byte >= token + 1);
  CHECK(byte <= token + 4);
}

TEST_CASE("schema errors name the offending path") {
  CHECK(message_of(R"({"outer": [{"type": "spline"}]})").find("outer[0]") != std::string::npos);
  CHECK(code_of(R"({"outer": [{"type": "line", "from": [0, 0]}]})") == ErrorCode::ParseError);
  CHECK(code_of(R"({"outer": [{"type": "line", "from": [0, "x"], "to": [1, 0]}]})") == ErrorCode::ParseError);
  CHECK(code_of(R"({"outer": []})") == ErrorCode::ParseError);
  CHECK(code_of(R"({"outer": [{"type": "line", "from": [0, 0], "to": [1, 0]}], "quad": [0, 1, 2]})") ==
        ErrorCode::ParseError);
  CHECK(code_of(R"([1, 2])") == ErrorCode::ParseError);
}

TEST_CASE("canonical JSON round-trips to an equal domain") {
  for (const Domain& d : {fx::l_quad(), fx::annulus(0.0, 1.0, 0.3, 0.3), fx::poly_image(), fx::hexagon()}) {
    const std::string text = domain_to_json(d);
    const Domain again = Domain::build(parse_domain(text));
    CHECK(again == d);
    CHECK(domain_to_json(again) == text);
  }
}

TEST_CASE("canonical form normalizes orientation") {
  auto v = fx::l_vertices();
  std::reverse(v.begin(), v.end());
  const Domain cw = fx::polygon(v);
  const Domain again = Domain::build(parse_domain(domain_to_json(cw)));
  CHECK(again.signed_area(0) > 0.0);
  CHECK(again == cw);
}

TEST_CASE("approximant JSON round trip") {
  const RationalApproximant r({cplx(1, 0), cplx(0, 1), cplx(-1, 0.5)}, {cplx(0.1, 0.2), cplx(1.0 / 3.0), cplx(-2, 0)},
                              {cplx(0.5, -0.5), cplx(0.25, 0), cplx(-1e-9, 3)}, Direction::inverse, 3.5e-7);
  const RationalApproximant s = approximant_from_json(approximant_to_json(r));
  CHECK(s.support() == r.support());
  CHECK(s.values() == r.values());
  CHECK(s.weights() == r.weights());
  CHECK(s.direction() == Direction::inverse);
  CHECK(s.accuracy_estimate() == r.accuracy_estimate());
  CHECK_THROWS_AS(approximant_from_json(R"({"direction": "sideways"})"), Error);
}

}  // TEST_SUITE
