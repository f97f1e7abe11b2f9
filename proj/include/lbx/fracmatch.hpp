#pragma once

#include <map>
#include <string>
#include <vector>

#include "lbx/graph.hpp"
#include "lbx/rational.hpp"

namespace lbx {

// Edge-weight assignment in [0,1]; every eid of the host graph has a weight.
struct FractionalMatching {
    std::map<EdgeId, Rat> weights;

    const Rat& at(EdgeId e) const;
};

std::string encode_fm(const FractionalMatching& fm);
FractionalMatching decode_fm(const std::string& text);

// Sum of incident edge weights; an EC loop contributes its weight once, a PO
// loop twice (head and tail).
Rat node_weight(const ColoredMultigraph& g, const FractionalMatching& y, NodeId v);

struct MaximalityViolation {
    enum class Kind { Infeasible, UnsaturatedEdge };
    Kind kind;
    NodeId node = -1; // Infeasible
    EdgeId edge = -1; // UnsaturatedEdge
};

struct MaximalityReport {
    bool feasible = true;
    std::vector<NodeId> saturated;
    std::vector<MaximalityViolation> violations;

    bool maximal() const;
    bool ok() const { return feasible && maximal(); }
};

// Infeasible at v iff y[v] > 1; UnsaturatedEdge at e iff neither endpoint has
// y[.] = 1. All comparisons exact.
MaximalityReport check_maximal_fm(const ColoredMultigraph& g, const FractionalMatching& y);

struct DisagreementSet {
    std::vector<EdgeId> edges; // sorted
    std::vector<NodeId> nodes; // incident to a disagreeing edge, sorted
};

DisagreementSet disagreement_edges(const ColoredMultigraph& g, const FractionalMatching& y,
                                   const FractionalMatching& y2);

struct WalkResult {
    NodeId g_star;
    EdgeId e_star; // a loop where y and y2 disagree
};

// Follows edge disagreements between two saturating FMs from `start`, where
// the initial disagreement sits on a virtual colour-`virtual_disagreement`
// edge outside g (the unfolded loop / mixing edge of the adversary step). At
// each node the continuation is the disagreeing incident edge other than the
// arrival edge, lowest colour then lowest eid; a loop ends the walk.
// Throws Error("NoContinuation") if a visited node offers no continuation
// (the inputs were not genuinely saturated FMs), Error("NotATree") if g has
// cycles besides loops.
WalkResult propagation_walk(const ColoredMultigraph& g, const FractionalMatching& y,
                            const FractionalMatching& y2, NodeId start,
                            Color virtual_disagreement);

} // namespace lbx
