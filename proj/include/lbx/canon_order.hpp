#pragma once

#include <cstdint>

#include "lbx/locality.hpp"

namespace lbx {

enum class Ordering { Less, Equal, Greater };

// Signed value of the unique simple path x ~> y in a tree-shaped PO view:
// the sum of +-1 edge terms (tail-before-head along the path) and +-1 terms
// for internal nodes (arrival edge before departure edge in the node's slot
// order: outgoing edges by colour, then incoming edges by colour). Zero iff
// x == y, odd otherwise.
int path_value(const View& tree, int x, int y);

// Less iff path_value(x, y) > 0 (positive value means x precedes y).
Ordering canonical_compare(const View& tree, int x, int y);

// Total order of a loop-free tree-shaped PO view under the canonical order;
// returns the view decorated with ranks. Independent of where the view is
// embedded in the regular tree: the path value only reads path-local data.
View order_view(const View& v);

// Radius-`radius` ball of the infinite 2d-regular d-edge-coloured PO tree,
// rooted at node 0 (every node: one outgoing and one incoming edge of each
// colour 1..d).
ColoredMultigraph regular_po_tree_ball(int d, int radius);

struct HomogeneityReport {
    bool pass = true;
    int trials = 0;
    std::string detail; // first violation
};

// Materialises a radius-(r+2) ball of the regular tree, samples pairs of
// internal roots and compares the order-decorated radius-r balls by canonical
// code.
HomogeneityReport check_homogeneity(int d, int r, int trials, std::uint64_t seed);

} // namespace lbx
