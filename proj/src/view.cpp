#include "lbx/view.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <tuple>

namespace lbx {

std::string to_string(EdgeDir d) {
    switch (d) {
    case EdgeDir::Undirected: return "undirected";
    case EdgeDir::Out: return "out";
    case EdgeDir::In: return "in";
    case EdgeDir::Loop: return "loop";
    }
    fail("Internal", "bad EdgeDir");
}

EdgeDir edge_dir_from_string(const std::string& s) {
    if (s == "undirected") return EdgeDir::Undirected;
    if (s == "out") return EdgeDir::Out;
    if (s == "in") return EdgeDir::In;
    if (s == "loop") return EdgeDir::Loop;
    fail("ParseError", "unknown direction '" + s + "'");
}

namespace {

int dir_ord(EdgeDir d) {
    return static_cast<int>(d);
}

// Darts: eid*2 + role. Non-loop: role 0 at e.u, role 1 at e.v. EC loop: a
// single self-paired dart (role 0). PO loop: role 0 = tail, role 1 = head.
struct Dart {
    long long key;
    EdgeId eid;
    int role;
    Color color;
    EdgeDir dir; // relative to the node the dart sits on
};

std::vector<Dart> darts_at(const ColoredMultigraph& g, NodeId u) {
    std::vector<Dart> res;
    for (EdgeId eid : g.incident(u)) {
        const EdgeRec& e = g.edge(eid);
        if (!e.is_loop()) {
            int role = (u == e.u) ? 0 : 1;
            EdgeDir dir = EdgeDir::Undirected;
            if (e.directed) dir = (role == 0) ? EdgeDir::Out : EdgeDir::In;
            res.push_back({2LL * eid + role, eid, role, e.color, dir});
        } else if (!e.directed) {
            res.push_back({2LL * eid, eid, 0, e.color, EdgeDir::Undirected});
        } else {
            res.push_back({2LL * eid, eid, 0, e.color, EdgeDir::Out});
            res.push_back({2LL * eid + 1, eid, 1, e.color, EdgeDir::In});
        }
    }
    std::sort(res.begin(), res.end(), [](const Dart& a, const Dart& b) {
        return std::make_tuple(a.color, static_cast<int>(a.dir), a.eid, a.role) <
               std::make_tuple(b.color, static_cast<int>(b.dir), b.eid, b.role);
    });
    return res;
}

long long paired_dart(const ColoredMultigraph& g, long long dart) {
    const EdgeRec& e = g.edge(static_cast<EdgeId>(dart / 2));
    if (e.is_loop() && !e.directed) return dart; // EC half-loop pairs with itself
    return dart ^ 1;
}

EdgeDir flipped(EdgeDir d) {
    if (d == EdgeDir::Out) return EdgeDir::In;
    if (d == EdgeDir::In) return EdgeDir::Out;
    return d;
}

} // namespace

int View::depth(int vnode) const {
    return nodes_.at(static_cast<std::size_t>(vnode)).depth;
}

int View::parent(int vnode) const {
    return nodes_.at(static_cast<std::size_t>(vnode)).parent;
}

const std::vector<View::IncEdge>& View::incident(int vnode) const {
    const auto& rec = nodes_.at(static_cast<std::size_t>(vnode));
    if (lazy_ && !rec.expanded) expand(vnode);
    return nodes_[static_cast<std::size_t>(vnode)].inc;
}

void View::expand(int vnode) const {
    {
        NodeRec& rec = nodes_[static_cast<std::size_t>(vnode)];
        if (rec.expanded) return;
        rec.expanded = true;
        if (rec.depth >= radius_) return; // leaf: only the arrival edge is present
    }
    // nodes_ reallocates below; read fields by value.
    const NodeId gnode = nodes_[static_cast<std::size_t>(vnode)].gnode;
    const int node_depth = nodes_[static_cast<std::size_t>(vnode)].depth;
    const long long arrival = nodes_[static_cast<std::size_t>(vnode)].arrival_dart;

    const ColoredMultigraph& g = *src_;
    for (const Dart& d : darts_at(g, gnode)) {
        if (d.key == arrival) continue;
        const EdgeRec& e = g.edge(d.eid);
        NodeId next = e.is_loop() ? gnode : e.other(gnode);
        NodeRec child;
        child.gnode = next;
        child.depth = node_depth + 1;
        child.parent = vnode;
        child.arrival_dart = paired_dart(g, d.key);
        int child_idx = static_cast<int>(nodes_.size());
        int veid = next_veid_++;
        IncEdge here{child_idx, d.color, d.dir, veid, d.eid};
        IncEdge there{vnode, d.color, flipped(d.dir), veid, d.eid};
        child.inc.push_back(there);
        nodes_.push_back(std::move(child));
        nodes_[static_cast<std::size_t>(vnode)].inc.push_back(here);
    }
    auto& inc = nodes_[static_cast<std::size_t>(vnode)].inc;
    std::sort(inc.begin(), inc.end(), [](const IncEdge& a, const IncEdge& b) {
        return std::make_tuple(a.color, static_cast<int>(a.dir), a.veid) <
               std::make_tuple(b.color, static_cast<int>(b.dir), b.veid);
    });
}

void View::ensure_expanded() const {
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (lazy_ && !nodes_[i].expanded) expand(static_cast<int>(i));
}

bool View::tree_ignoring_loops() const {
    ensure_expanded();
    if (lazy_) return true;
    std::size_t non_loop = 0;
    std::set<int> seen_veids;
    for (const auto& rec : nodes_)
        for (const IncEdge& ie : rec.inc)
            if (ie.dir != EdgeDir::Loop && seen_veids.insert(ie.veid).second) ++non_loop;
    return non_loop + 1 == nodes_.size(); // materialised balls are connected
}

bool View::loop_free_tree() const {
    ensure_expanded();
    if (lazy_) return true;
    for (const auto& rec : nodes_)
        for (const IncEdge& ie : rec.inc)
            if (ie.dir == EdgeDir::Loop) return false;
    return tree_ignoring_loops();
}

std::optional<long long> View::label(int vnode) const {
    if (!has_labels_) return std::nullopt;
    return labels_.at(static_cast<std::size_t>(vnode));
}

std::optional<int> View::rank(int vnode) const {
    if (!has_ranks_) return std::nullopt;
    return ranks_.at(static_cast<std::size_t>(vnode));
}

bool View::fully_ranked() const {
    return has_ranks_;
}

bool View::fully_labeled() const {
    return has_labels_;
}

NodeId View::source_node(int vnode) const {
    return nodes_.at(static_cast<std::size_t>(vnode)).gnode;
}

View View::with_ranks(std::vector<int> ranks) const {
    ensure_expanded();
    if (ranks.size() != nodes_.size()) fail("Internal", "rank vector size mismatch");
    View v = *this;
    v.ranks_ = std::move(ranks);
    v.has_ranks_ = true;
    return v;
}

View View::with_labels(std::vector<long long> labels) const {
    ensure_expanded();
    if (labels.size() != nodes_.size()) fail("Internal", "label vector size mismatch");
    View v = *this;
    v.labels_ = std::move(labels);
    v.has_labels_ = true;
    return v;
}

View View::cover_ball(const ColoredMultigraph& g, NodeId root, int radius) {
    if (!g.has_node(root)) fail("UnknownNode", "node " + std::to_string(root));
    if (g.model() != Model::EC && g.model() != Model::PO)
        fail("ModelMismatch", "universal cover requires an EC or PO graph");
    if (!g.connected()) fail("Disconnected", "universal cover requires a connected graph");
    View v;
    v.lazy_ = true;
    v.model_ = g.model();
    v.radius_ = radius;
    v.src_ = std::make_shared<const ColoredMultigraph>(g);
    NodeRec r;
    r.gnode = root;
    r.depth = 0;
    v.nodes_.push_back(std::move(r));
    return v;
}

View View::materialized(const ColoredMultigraph& g, NodeId root, int radius) {
    if (!g.has_node(root)) fail("UnknownNode", "node " + std::to_string(root));
    View v;
    v.lazy_ = false;
    v.model_ = g.model();
    v.radius_ = radius;

    // BFS distances over the whole graph, then keep dist <= radius.
    std::map<NodeId, int> dist{{root, 0}};
    std::queue<NodeId> q;
    q.push(root);
    while (!q.empty()) {
        NodeId x = q.front();
        q.pop();
        for (EdgeId eid : g.incident(x)) {
            NodeId y = g.edge(eid).other(x);
            if (!dist.count(y)) {
                dist[y] = dist[x] + 1;
                q.push(y);
            }
        }
    }

    std::map<NodeId, int> vnode_of;
    auto include_node = [&](NodeId n) { return dist.count(n) && dist[n] <= radius; };
    // Deterministic vnode numbering: BFS order with sorted adjacency.
    std::queue<NodeId> order;
    order.push(root);
    std::set<NodeId> queued{root};
    while (!order.empty()) {
        NodeId x = order.front();
        order.pop();
        int idx = static_cast<int>(v.nodes_.size());
        vnode_of[x] = idx;
        NodeRec rec;
        rec.gnode = x;
        rec.depth = dist[x];
        rec.expanded = true;
        v.nodes_.push_back(std::move(rec));
        for (const Dart& d : darts_at(g, x)) {
            const EdgeRec& e = g.edge(d.eid);
            if (e.is_loop()) continue;
            NodeId y = e.other(x);
            if (include_node(y) && dist[y] == dist[x] + 1 && queued.insert(y).second) order.push(y);
        }
    }

    // Edges at distance min(dist(u), dist(w)) + 1 <= radius.
    std::set<EdgeId> included;
    for (const EdgeRec& e : g.edges()) {
        if (!dist.count(e.u) || !dist.count(e.v)) continue;
        int edist = std::min(dist[e.u], dist[e.v]) + 1;
        if (edist <= radius) included.insert(e.eid);
    }
    for (EdgeId eid : included) {
        const EdgeRec& e = g.edge(eid);
        int veid = v.next_veid_++;
        if (e.is_loop()) {
            int a = vnode_of.at(e.u);
            v.nodes_[static_cast<std::size_t>(a)].inc.push_back(
                {a, e.color, EdgeDir::Loop, veid, eid});
        } else {
            int a = vnode_of.at(e.u);
            int b = vnode_of.at(e.v);
            EdgeDir da = e.directed ? EdgeDir::Out : EdgeDir::Undirected;
            EdgeDir db = e.directed ? EdgeDir::In : EdgeDir::Undirected;
            v.nodes_[static_cast<std::size_t>(a)].inc.push_back({b, e.color, da, veid, eid});
            v.nodes_[static_cast<std::size_t>(b)].inc.push_back({a, e.color, db, veid, eid});
        }
    }
    for (auto& rec : v.nodes_) {
        std::sort(rec.inc.begin(), rec.inc.end(), [](const IncEdge& a, const IncEdge& b) {
            return std::make_tuple(a.color, static_cast<int>(a.dir), a.veid) <
                   std::make_tuple(b.color, static_cast<int>(b.dir), b.veid);
        });
    }

    // Tree parents for rooted traversals (meaningful when the ball is a tree).
    for (std::size_t i = 0; i < v.nodes_.size(); ++i) {
        for (const IncEdge& ie : v.nodes_[i].inc) {
            if (ie.dir == EdgeDir::Loop) continue;
            if (v.nodes_[static_cast<std::size_t>(ie.other)].depth == v.nodes_[i].depth - 1 &&
                v.nodes_[i].parent < 0)
                v.nodes_[i].parent = ie.other;
        }
    }

    // Restrict decorations to the ball.
    if (g.model() == Model::ID) {
        bool all = true;
        std::vector<long long> labels(v.nodes_.size(), 0);
        for (std::size_t i = 0; i < v.nodes_.size(); ++i) {
            auto l = g.label(v.nodes_[i].gnode);
            if (!l) {
                all = false;
                break;
            }
            labels[i] = *l;
        }
        if (all) {
            v.labels_ = std::move(labels);
            v.has_labels_ = true;
        }
    }
    if (g.model() == Model::OI && g.order()) {
        std::vector<std::pair<int, int>> by_rank; // (graph rank, vnode)
        for (std::size_t i = 0; i < v.nodes_.size(); ++i)
            by_rank.push_back({g.order_rank(v.nodes_[i].gnode), static_cast<int>(i)});
        std::sort(by_rank.begin(), by_rank.end());
        std::vector<int> ranks(v.nodes_.size(), 0);
        for (std::size_t r = 0; r < by_rank.size(); ++r)
            ranks[static_cast<std::size_t>(by_rank[r].second)] = static_cast<int>(r);
        v.ranks_ = std::move(ranks);
        v.has_ranks_ = true;
    }
    return v;
}

View neighborhood(const ColoredMultigraph& g, NodeId v, int t) {
    return View::materialized(g, v, t);
}

View universal_cover_ball(const ColoredMultigraph& g, NodeId v, int r) {
    return View::cover_ball(g, v, r);
}

ViewGraph view_to_graph(const View& v) {
    v.ensure_expanded();
    GraphSpec spec;
    spec.model = v.model();
    int k = 0;
    for (int i = 0; i < v.count(); ++i) spec.nodes.push_back({i, v.label(i)});
    std::set<int> seen_veids;
    for (int i = 0; i < v.count(); ++i) {
        for (const auto& ie : v.incident(i)) {
            k = std::max(k, ie.color);
            if (!seen_veids.insert(ie.veid).second) continue;
            GraphSpec::Edge e;
            e.color = ie.color;
            switch (ie.dir) {
            case EdgeDir::Loop:
                e.u = e.v = i;
                e.directed = (v.model() == Model::PO);
                break;
            case EdgeDir::Undirected:
                e.u = i;
                e.v = ie.other;
                e.directed = false;
                break;
            case EdgeDir::Out:
                e.u = i;
                e.v = ie.other;
                e.directed = true;
                break;
            case EdgeDir::In:
                e.u = ie.other;
                e.v = i;
                e.directed = true;
                break;
            }
            spec.edges.push_back(e);
        }
    }
    spec.k = k;
    if (v.fully_ranked()) {
        std::vector<std::pair<int, int>> by_rank;
        for (int i = 0; i < v.count(); ++i) by_rank.push_back({*v.rank(i), i});
        std::sort(by_rank.begin(), by_rank.end());
        // Order is only serialisable on OI graphs; keep the model as is and
        // attach the order when the consumer asks for an OI graph.
        if (v.model() == Model::OI) {
            spec.order = std::vector<NodeId>();
            for (auto& [r, i] : by_rank) spec.order->push_back(i);
        }
    }
    return {must_build(spec), View::root()};
}

} // namespace lbx
