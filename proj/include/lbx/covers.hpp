#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lbx/graph.hpp"

namespace lbx {

// Witness that `source` is a lift of `target`: a colour- and degree-preserving
// onto homomorphism that is locally bijective on incident edges (an EC loop
// counting once, a PO loop twice).
struct CoveringMap {
    std::map<NodeId, NodeId> node_map; // source node -> target node
    std::map<EdgeId, EdgeId> edge_map; // source eid -> target eid
};

std::string encode_covering(const CoveringMap& m);
CoveringMap decode_covering(const std::string& text);

struct CoverReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

CoverReport verify_covering(const ColoredMultigraph& source, const ColoredMultigraph& target,
                            const CoveringMap& m);

// Coarsest colour-degree partition refinement and its quotient. The quotient
// map is a covering map; edges inside a class become loops.
struct FactorResult {
    ColoredMultigraph factor;
    CoveringMap map; // from the input graph onto the factor
};
FactorResult factor_graph(const ColoredMultigraph& g);

// Stable refinement classes (sorted representatives), exposed for reuse.
std::vector<std::vector<NodeId>> refinement_classes(const ColoredMultigraph& g);

// Minimum loop count over the nodes of the factor graph; >= 1 means loopy.
int loopiness(const ColoredMultigraph& g);

// 2-lift across a loop: two disjoint copies of G - e joined by a new edge of
// e's colour between the two copies of the loop's node. The first copy keeps
// the node ids and eids of G.
struct Unfolded {
    ColoredMultigraph graph;
    CoveringMap map;          // graph -> input
    EdgeId joining_eid = -1;  // the new colour-c edge
    NodeId mirror_node = -1;  // second copy of the loop's node
    NodeId node_offset = 0;   // second copy = original id + offset
    EdgeId eid_offset = 0;
};
Unfolded unfold_loop(const ColoredMultigraph& g, EdgeId loop_eid);

// Seed-deterministic simple lift on `copies` fibres: per target edge an
// independent permutation, loops mapped to fixed-point-free pairings. Throws
// Error("InfeasibleLift") when no simple lift exists for this fibre count.
struct Lifted {
    ColoredMultigraph graph;
    CoveringMap map; // graph -> input
};
Lifted random_simple_lift(const ColoredMultigraph& g, int copies, std::uint64_t seed);

// Backtracking isomorphism over model-decorated multigraphs.
bool is_isomorphic(const ColoredMultigraph& a, const ColoredMultigraph& b);

} // namespace lbx
