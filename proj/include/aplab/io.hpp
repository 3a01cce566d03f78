#pragma once

#include <string>
#include <vector>

#include "aplab/deformation.hpp"
#include "aplab/derivation.hpp"
#include "aplab/equivalence.hpp"
#include "aplab/error.hpp"
#include "aplab/geometry.hpp"
#include "aplab/recurrence.hpp"
#include "aplab/series.hpp"
#include "aplab/symbolic.hpp"

namespace aplab {

/// A file that cannot be opened or written.
class FileError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);
/// Lower-case hex SHA-256 of the bytes.
std::string sha256_hex(const std::string& bytes);

// Substitution rules:
//   {"name": "fibonacci", "dimension": 1, "alphabet": ["a", "b"],
//    "images": {"a": "ab", "b": "a"}}
// One-dimensional images are strings (single-character alphabets) or arrays of
// names; two-dimensional images are arrays of rows, first row at y = 0.
SubstitutionRule parse_rule(const std::string& json);
std::string format_rule(const SubstitutionRule& rule);

// Configurations: "key value" header lines, then "cells" and one line per row.
Configuration parse_configuration(const std::string& text);
std::string format_configuration(const Configuration& config);

/// Series CSV with '#' metadata lines and header r,count,certified (complexity)
/// or r,value,certified (repetitivity).
std::string format_series_csv(const SampledSeries& series, bool repetitivity);

struct SeriesDocument {
  bool repetitivity = false;
  SampledSeries series;
};
SeriesDocument parse_series_csv(const std::string& text);

// Block codes: {"name", "dimension", "radius", "output_alphabet": [..],
//               "table": {"<patch key>": "<symbol>"}}
BlockCode parse_code(const std::string& json);
std::string format_code(const BlockCode& code);

// Pointing rules: {"name", "kind": "all" | "symbols" | "table" | "lattice" | "union", ...}
PointingRule parse_pointing(const std::string& json);
std::string format_pointing(const PointingRule& rule);

// Edge cocycles: {"kind": "table", "radius", "edges": {"x": {key: [vx, vy]}, "y": {..}}},
// {"kind": "linear", "matrix": [[a, b], [c, d]]} or
// {"kind": "coboundary", "potential": {"radius", "table": {key: [vx, vy]}}}.
EdgeCocycle parse_cocycle(const std::string& json);
VertexPotential parse_potential(const std::string& json);

/// "x,y" per line (an optional header line "x,y" is skipped); d = 1 accepts "x".
std::vector<Vec2> parse_points_csv(const std::string& text, int dimension = 2);
std::string format_points_csv(const std::vector<Vec2>& points, int dimension = 2);

std::string format_triangulation_json(const Triangulation& tri);
std::string format_witness_json(const EquivalenceWitness& w);
std::string format_return_vectors_json(const ReturnVectorSet& set);

}  // namespace aplab
