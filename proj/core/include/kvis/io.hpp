#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kvis/placement.hpp"
#include "kvis/verifier.hpp"

namespace kvis {

/// "a/b", integers and decimals (optionally with exponent), parsed exactly.
std::optional<Rational> parse_rational(const std::string& text);
/// Integers as "a", everything else as "a/b" in lowest terms.
std::string format_rational(const Rational& r);

struct PolygonDocument {
  PolygonWithHoles polygon;
  std::string name;
  std::vector<std::string> warnings;  // normalization notes
};

/// Polygon file: one JSON object {"name"?, "outer": [[x, y], ...],
/// "holes"?: [[[x, y], ...], ...]}. Coordinates are JSON numbers (decimals
/// are read from their literal text, not through a double) or strings
/// holding "a/b" or a decimal. Throws kParseError with line and column for
/// malformed JSON and with a JSON path for bad fields; kInvalidPolygon from
/// validation.
PolygonDocument parse_polygon(const std::string& text);
std::string write_polygon(const PolygonWithHoles& poly, const std::string& name = "");

/// Guard file: {"k", "target_m", "guards": [{"x", "y", "host": {"kind",
/// "index", "t"}, "role"}]} with exact rationals as strings.
GuardSet parse_guards(const std::string& text);
std::string write_guards(const GuardSet& guards);

std::string write_report(const CoverageReport& report, std::size_t max_violations = 1000);
std::string write_trace(const PlacementTrace& trace, const GuardSet& guards);

struct SvgLayers {
  const Decomposition* decomposition = nullptr;
  const GuardSet* guards = nullptr;
  const PlacementTrace* trace = nullptr;  // feasible sweep intervals
};

/// SVG 1.1 drawing: polygon in black, diagonals dashed, guards as labelled
/// dots (one circle with class "guard" each), used sweep intervals
/// highlighted.
std::string render_svg(const PolygonWithHoles& poly, const SvgLayers& layers);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace kvis
