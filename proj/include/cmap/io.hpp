#pragma once

#include <string>
#include <string_view>

#include "cmap/geometry.hpp"
#include "cmap/rational.hpp"

namespace cmap {

/// Domain file format:
///
///   {"outer": [{"type": "line", "from": [x, y], "to": [x, y]},
///              {"type": "arc", "from": [x, y], "to": [x, y], "center": [x, y], "sweep": s},
///              {"type": "trig", "coeffs": [[re, im], ...]}],
///    "holes": [[...]],
///    "quad": [i0, i1, i2, i3]}
///
/// Quad indices name arc-junction points of the outer chain. Malformed JSON
/// raises ParseError with the byte offset of the problem.
DomainInput parse_domain(std::string_view text);
Domain load_domain(const std::string& path);

/// Canonical form of a built domain: oriented chains, fixed key order,
/// shortest round-trip number formatting.
std::string domain_to_json(const Domain& domain);

std::string approximant_to_json(const RationalApproximant& r);
RationalApproximant approximant_from_json(std::string_view text);

std::string read_file(const std::string& path);

}  // namespace cmap
