#pragma once

#include <string>

#include "lbx/graph.hpp"

namespace lbx {

// Deterministic encoding: keys in the order model, k, nodes, order, edges;
// nodes sorted by id; edges in canonical (u, v, color, directed) order.
// Two structurally equal graphs produce byte-identical documents.
std::string encode_graph(const ColoredMultigraph& g);

// Inverse up to eid renumbering (eids are assigned in array order).
// Throws Error("ParseError") on malformed documents and the build_graph
// violation kinds on invalid graphs.
ColoredMultigraph decode_graph(const std::string& text);

} // namespace lbx
