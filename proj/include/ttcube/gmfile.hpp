#pragma once

#include "ttcube/graph_map.hpp"

#include <string>

namespace ttc {

/// Parses the graph-map text format:
///
///   vertices: v w
///   edges:
///     a: v w
///   basepoint: v
///   map:
///     v -> w
///     a -> b -a
///
/// Tokens in edge images are `x` for the forward edge and `-x` for its
/// reverse. Whitespace-insensitive; `#` starts a comment. `basepoint` is
/// optional and defaults to the first vertex. Parse errors carry line
/// numbers; semantic problems surface through validate().
GraphMap parse_graph_map(const std::string &text);
GraphMap read_graph_map_file(const std::string &path);

/// Canonical serialization; parse(serialize(m)) reproduces m.
std::string serialize_graph_map(const GraphMap &m);

} // namespace ttc
