#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "lbx/graph.hpp"

namespace lbx {

// Direction of an edge relative to a given node (also the slot key space of
// local outputs).
enum class EdgeDir { Undirected, Out, In, Loop };

std::string to_string(EdgeDir d);
EdgeDir edge_dir_from_string(const std::string& s);

// A rooted radius-t ball: either a materialised neighbourhood of a concrete
// graph (may contain cycles and loops) or a lazily expanded ball of the
// universal cover (always tree shaped; nodes are non-backtracking walks).
// View nodes are dense ints with root() == 0; expansion order is
// deterministic, so vnode numbering is reproducible.
class View {
public:
    struct IncEdge {
        int other = 0;       // view node at the far end (== self for loops)
        Color color = 1;
        EdgeDir dir = EdgeDir::Undirected; // relative to the node owning the list
        int veid = 0;        // view-local edge id
        EdgeId source_eid = -1;
    };

    Model model() const { return model_; }
    int radius() const { return radius_; }
    static constexpr int root() { return 0; }

    // Number of view nodes materialised so far (total after ensure_expanded).
    int count() const { return static_cast<int>(nodes_.size()); }
    int depth(int vnode) const;
    int parent(int vnode) const; // -1 at root; arrival edge parent for covers,
                                 // BFS parent for materialised balls
    const std::vector<IncEdge>& incident(int vnode) const;

    void ensure_expanded() const;
    bool tree_ignoring_loops() const;
    bool loop_free_tree() const;

    std::optional<long long> label(int vnode) const;
    std::optional<int> rank(int vnode) const;
    bool fully_ranked() const;
    bool fully_labeled() const;
    NodeId source_node(int vnode) const;

    // Non-null only for lazily expanded cover views; lets simulations rebuild
    // derived covers without materialising this ball.
    std::shared_ptr<const ColoredMultigraph> source_graph() const { return src_; }

    // Decorated copies (force full expansion).
    View with_ranks(std::vector<int> ranks) const;
    View with_labels(std::vector<long long> labels) const;

    static View cover_ball(const ColoredMultigraph& g, NodeId root, int radius);
    static View materialized(const ColoredMultigraph& g, NodeId root, int radius);

private:
    struct NodeRec {
        NodeId gnode = 0;
        int depth = 0;
        int parent = -1;
        long long arrival_dart = -1;
        bool expanded = false;
        std::vector<IncEdge> inc;
    };

    void expand(int vnode) const;

    bool lazy_ = false;
    Model model_ = Model::EC;
    int radius_ = 0;
    std::shared_ptr<const ColoredMultigraph> src_; // covers only
    mutable std::vector<NodeRec> nodes_;
    mutable int next_veid_ = 0;
    std::vector<long long> labels_; // indexed by vnode when non-empty
    std::vector<int> ranks_;        // indexed by vnode when non-empty
    bool has_labels_ = false;
    bool has_ranks_ = false;
};

// Radius-t neighbourhood per the edge-distance rule
// dist(e = {u,w}) = min(dist(root,u), dist(root,w)) + 1; at t = 0 the view is
// the bare root. ID labels / OI order are restricted to the included nodes.
View neighborhood(const ColoredMultigraph& g, NodeId v, int t);

// Radius-r ball of the universal cover rooted at (a preimage of) v.
// Requires a connected EC or PO graph.
View universal_cover_ball(const ColoredMultigraph& g, NodeId v, int r);

// Materialises a view into a concrete graph (vnode i becomes node i).
struct ViewGraph {
    ColoredMultigraph graph;
    NodeId root = 0;
};
ViewGraph view_to_graph(const View& v);

} // namespace lbx
