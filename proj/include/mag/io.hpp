#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "mag/euclid.hpp"
#include "mag/homology.hpp"
#include "mag/shape2d.hpp"

namespace mag {

/// Any of the ingestible space kinds. Graphs arrive as their
/// shortest-path metric.
using SpaceInput = std::variant<FiniteMetricSpace, PointSet, Shape2D>;

/// Loads a space from a JSON file (autodetected by the "type" field:
/// "finite_metric", "graph", "points", "shape2d") or from a CSV point
/// cloud (by .csv extension). Throws std::runtime_error with a
/// human-readable message on malformed input.
SpaceInput load_space(const std::string& path);

SpaceInput parse_space_json(const std::string& text);

/// One point per line, exact rational coordinates "p/q" separated by
/// commas.
PointSet points_from_csv(std::istream& in);

std::string homology_table_to_json(const HomologyTable& t);
std::string alignedness_to_json(const AlignednessReport& r,
                                const std::vector<std::string>& labels);

}  // namespace mag
