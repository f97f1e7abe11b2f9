#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lbx/error.hpp"

namespace lbx {

enum class Model { EC, PO, OI, ID };

std::string to_string(Model m);
Model model_from_string(const std::string& s);

using NodeId = int;
using EdgeId = int;
using Color = int;

// Hard bounds on palette and degree; adversary graphs grow as 2^delta, so
// anything beyond this is out of desk scale anyway.
inline constexpr int kMaxColors = 64;
inline constexpr int kMaxDegree = 64;

struct EdgeRec {
    EdgeId eid = 0;
    NodeId u = 0;
    NodeId v = 0;
    Color color = 1;
    bool directed = false; // true iff model PO; orientation u -> v

    bool is_loop() const { return u == v; }
    NodeId other(NodeId n) const { return n == u ? v : u; }
};

struct Violation {
    std::string kind;
    std::string detail;
};

// Raw description consumed by build_graph.
struct GraphSpec {
    struct Node {
        NodeId id = 0;
        std::optional<long long> label;
    };
    struct Edge {
        NodeId u = 0;
        NodeId v = 0;
        Color color = 1;
        bool directed = false;
    };

    Model model = Model::EC;
    int k = 0;
    std::vector<Node> nodes;
    std::optional<std::vector<NodeId>> order; // OI: ids in ascending order
    std::vector<Edge> edges;
};

// Finite edge-coloured multigraph with loops, in one of the four model
// flavours. Immutable after construction; all operations are pure.
class ColoredMultigraph {
public:
    Model model() const { return model_; }
    int color_count() const { return k_; }

    const std::vector<NodeId>& nodes() const { return nodes_; }
    const std::vector<EdgeRec>& edges() const { return edges_; }

    bool has_node(NodeId v) const;
    bool has_edge(EdgeId e) const;
    const EdgeRec& edge(EdgeId e) const;

    // Edge ids incident to v, loops listed once, sorted by eid.
    const std::vector<EdgeId>& incident(NodeId v) const;

    std::optional<long long> label(NodeId v) const;
    const std::optional<std::vector<NodeId>>& order() const { return order_; }
    int order_rank(NodeId v) const; // OI only

    // Loop conventions: a non-loop incident edge counts 1, an EC loop counts
    // 1, a PO loop counts 2 (head and tail).
    int degree(NodeId v) const;
    std::vector<Color> loops_at(NodeId v) const; // sorted colour multiset
    int loop_count(NodeId v) const;
    int max_degree() const;

    bool connected() const;
    bool is_tree_ignoring_loops() const;
    bool is_simple() const; // no loops, no parallel edges

    NodeId max_node_id() const;
    EdgeId max_eid() const;

    // Derived copies (revalidated).
    ColoredMultigraph without_edge(EdgeId e) const;
    ColoredMultigraph relabeled(NodeId node_offset, EdgeId eid_offset) const;

    GraphSpec to_spec() const;

private:
    friend struct GraphBuilder;
    friend ColoredMultigraph from_parts(Model, int, const std::vector<NodeId>&,
                                        const std::vector<EdgeRec>&,
                                        const std::map<NodeId, long long>&,
                                        const std::optional<std::vector<NodeId>>&);

    Model model_ = Model::EC;
    int k_ = 0;
    std::vector<NodeId> nodes_; // sorted
    std::vector<EdgeRec> edges_; // indexed by position; eids unique
    std::map<NodeId, long long> labels_;
    std::optional<std::vector<NodeId>> order_;
    std::map<NodeId, std::vector<EdgeId>> incident_;
    std::map<EdgeId, int> eid_index_;
    std::map<NodeId, int> order_rank_;
};

struct BuildResult {
    std::optional<ColoredMultigraph> graph;
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
};

// Validates the model rules; returns the graph or the list of violations.
BuildResult build_graph(const GraphSpec& spec);

// build_graph that throws Error(first violation kind) on failure.
ColoredMultigraph must_build(const GraphSpec& spec);

// Re-runs validation on an already constructed graph.
std::vector<Violation> validate(const ColoredMultigraph& g);

// Direct construction preserving the given eids (unfold/mix need edge
// identities to survive). Throws on any rule violation.
ColoredMultigraph from_parts(Model model, int k, const std::vector<NodeId>& nodes,
                             const std::vector<EdgeRec>& edges,
                             const std::map<NodeId, long long>& labels = {},
                             const std::optional<std::vector<NodeId>>& order = std::nullopt);

} // namespace lbx
