#include "lbx/canon_order.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <random>

namespace lbx {

namespace {

struct PathEdge {
    Color color;
    bool along; // oriented in the direction of travel
};

const View::IncEdge& edge_between(const View& v, int a, int b) {
    for (const auto& ie : v.incident(a))
        if (ie.other == b && ie.dir != EdgeDir::Loop) return ie;
    fail("NotATree", "no edge between view nodes " + std::to_string(a) + " and " +
                         std::to_string(b));
}

// Slot rank at a node: outgoing edges by colour, then incoming by colour.
std::pair<int, Color> slot_rank(const View& v, int node, int other) {
    const View::IncEdge& ie = edge_between(v, node, other);
    if (ie.dir == EdgeDir::Undirected)
        fail("ModelMismatch", "canonical order requires a PO view");
    return {ie.dir == EdgeDir::In ? 1 : 0, ie.color};
}

std::vector<int> tree_path(const View& v, int x, int y) {
    std::vector<int> up_x{x}, up_y{y};
    int a = x, b = y;
    while (v.depth(a) > v.depth(b)) {
        a = v.parent(a);
        up_x.push_back(a);
    }
    while (v.depth(b) > v.depth(a)) {
        b = v.parent(b);
        up_y.push_back(b);
    }
    while (a != b) {
        a = v.parent(a);
        b = v.parent(b);
        if (a < 0 || b < 0) fail("NotATree", "path search escaped the view");
        up_x.push_back(a);
        up_y.push_back(b);
    }
    std::vector<int> path(up_x);
    for (auto it = up_y.rbegin() + 1; it != up_y.rend(); ++it) path.push_back(*it);
    return path;
}

} // namespace

int path_value(const View& tree, int x, int y) {
    if (tree.model() != Model::PO) fail("ModelMismatch", "path value is defined on PO trees");
    if (x < 0 || x >= tree.count() || y < 0 || y >= tree.count())
        fail("UnknownNode", "view node out of range");
    if (x == y) return 0;
    if (!tree.loop_free_tree()) fail("NotATree", "path value requires a loop-free tree view");

    std::vector<int> path = tree_path(tree, x, y);
    int value = 0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const View::IncEdge& ie = edge_between(tree, path[i], path[i + 1]);
        value += (ie.dir == EdgeDir::Out) ? +1 : -1; // tail precedes head
    }
    for (std::size_t i = 1; i + 1 < path.size(); ++i) {
        auto arr = slot_rank(tree, path[i], path[i - 1]);
        auto dep = slot_rank(tree, path[i], path[i + 1]);
        value += (arr < dep) ? +1 : -1;
    }
    return value;
}

Ordering canonical_compare(const View& tree, int x, int y) {
    if (x == y) return Ordering::Equal;
    return path_value(tree, x, y) > 0 ? Ordering::Less : Ordering::Greater;
}

View order_view(const View& v) {
    v.ensure_expanded();
    if (!v.loop_free_tree()) fail("NotATree", "only cover views are ordered");
    std::vector<int> idx(static_cast<std::size_t>(v.count()));
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return canonical_compare(v, a, b) == Ordering::Less; });
    std::vector<int> ranks(idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r)
        ranks[static_cast<std::size_t>(idx[r])] = static_cast<int>(r);
    return v.with_ranks(std::move(ranks));
}

ColoredMultigraph regular_po_tree_ball(int d, int radius) {
    if (d < 1) fail("GuardrailExceeded", "d must be at least 1");
    std::vector<NodeId> nodes{0};
    std::vector<EdgeRec> edges;
    // used slots: (node, colour) -> has out / has in
    std::map<std::pair<NodeId, Color>, std::pair<bool, bool>> used;
    std::queue<std::pair<NodeId, int>> q;
    q.push({0, 0});
    NodeId next = 1;
    EdgeId next_eid = 0;
    while (!q.empty()) {
        auto [u, depth] = q.front();
        q.pop();
        if (depth >= radius) continue;
        for (Color c = 1; c <= d; ++c) {
            if (!used[{u, c}].first) {
                NodeId w = next++;
                nodes.push_back(w);
                edges.push_back({next_eid++, u, w, c, true});
                used[{u, c}].first = true;
                used[{w, c}].second = true;
                q.push({w, depth + 1});
            }
            if (!used[{u, c}].second) {
                NodeId w = next++;
                nodes.push_back(w);
                edges.push_back({next_eid++, w, u, c, true});
                used[{u, c}].second = true;
                used[{w, c}].first = true;
                q.push({w, depth + 1});
            }
        }
    }
    return from_parts(Model::PO, d, nodes, edges);
}

HomogeneityReport check_homogeneity(int d, int r, int trials, std::uint64_t seed) {
    HomogeneityReport rep;
    rep.trials = trials;
    ColoredMultigraph ball = regular_po_tree_ball(d, r + 2);

    // Roots whose radius-r ball lies fully inside the materialised ball.
    std::vector<NodeId> internal;
    {
        std::map<NodeId, int> dist{{0, 0}};
        std::queue<NodeId> q;
        q.push(0);
        while (!q.empty()) {
            NodeId x = q.front();
            q.pop();
            for (EdgeId eid : ball.incident(x)) {
                NodeId y = ball.edge(eid).other(x);
                if (!dist.count(y)) {
                    dist[y] = dist[x] + 1;
                    q.push(y);
                }
            }
        }
        for (NodeId v : ball.nodes())
            if (dist[v] <= 2) internal.push_back(v);
    }

    auto code_at = [&](NodeId u) {
        View tau = neighborhood(ball, u, r);
        return canonical_code(order_view(tau));
    };
    const std::string ref = code_at(0);

    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        NodeId u1 = internal[static_cast<std::size_t>(rng() % internal.size())];
        NodeId u2 = internal[static_cast<std::size_t>(rng() % internal.size())];
        if (code_at(u1) != ref || code_at(u2) != ref) {
            rep.pass = false;
            rep.detail = "ordered balls at nodes " + std::to_string(u1) + " and " +
                         std::to_string(u2) + " are not isomorphic to the centre's";
            return rep;
        }
    }
    return rep;
}

} // namespace lbx
