#pragma once

#include <functional>
#include <map>
#include <string>

#include "lbx/fracmatch.hpp"
#include "lbx/view.hpp"

namespace lbx {

// One output slot per edge incident to the root: (colour, direction), where a
// loop occupies a single Loop slot.
struct Slot {
    Color color = 1;
    EdgeDir dir = EdgeDir::Undirected;

    auto operator<=>(const Slot&) const = default;
};

struct LocalOutput {
    std::map<Slot, Rat> weights;

    bool operator==(const LocalOutput&) const = default;
};

std::string encode_output(const LocalOutput& o); // {"slots": [...]} form
LocalOutput decode_output(const std::string& text);

// A local algorithm is a pure function of the view's isomorphism type with a
// declared runtime t(delta, k). EC/PO algorithms only ever receive tree-shaped
// cover views, which makes lift invariance structural.
struct LocalAlgorithm {
    Model model = Model::EC;
    std::string id;
    std::string family;                      // "greedy", "uniform", ...
    int palette = 0;                         // 0 = unconstrained
    std::function<int(int delta, int k)> runtime;
    std::function<LocalOutput(const View&)> output_fn;
};

// Codes equal iff the views are isomorphic as model-decorated rooted
// structures. Ordered views are forced by their ranks, ID views by their
// labels, tree-shaped views use rooted canonisation, small general views an
// exhaustive search.
std::string canonical_code(const View& v);

// EC/PO: runs on the radius-t cover ball; loop slots at v receive the weight
// of the corresponding cover edge. ID/OI: runs on the radius-t neighbourhood
// (graph must be simple).
LocalOutput evaluate(const LocalAlgorithm& a, const ColoredMultigraph& g, NodeId v);

// Evaluates at all nodes and checks that edge endpoints report equal weights
// (PO loops: head and tail copies must agree). Throws
// Error("InconsistentOutputs") naming the offending edge.
FractionalMatching assemble_fm(const LocalAlgorithm& a, const ColoredMultigraph& g);

} // namespace lbx
