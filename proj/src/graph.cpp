#include "lbx/graph.hpp"

#include <algorithm>
#include <set>

namespace lbx {

std::string to_string(Model m) {
    switch (m) {
    case Model::EC: return "EC";
    case Model::PO: return "PO";
    case Model::OI: return "OI";
    case Model::ID: return "ID";
    }
    fail("Internal", "bad model enum");
}

Model model_from_string(const std::string& s) {
    if (s == "EC") return Model::EC;
    if (s == "PO") return Model::PO;
    if (s == "OI") return Model::OI;
    if (s == "ID") return Model::ID;
    fail("ParseError", "unknown model '" + s + "'");
}

bool ColoredMultigraph::has_node(NodeId v) const {
    return std::binary_search(nodes_.begin(), nodes_.end(), v);
}

bool ColoredMultigraph::has_edge(EdgeId e) const {
    return eid_index_.count(e) > 0;
}

const EdgeRec& ColoredMultigraph::edge(EdgeId e) const {
    auto it = eid_index_.find(e);
    if (it == eid_index_.end()) fail("UnknownEdge", "eid " + std::to_string(e));
    return edges_[static_cast<std::size_t>(it->second)];
}

const std::vector<EdgeId>& ColoredMultigraph::incident(NodeId v) const {
    auto it = incident_.find(v);
    if (it == incident_.end()) fail("UnknownNode", "node " + std::to_string(v));
    return it->second;
}

std::optional<long long> ColoredMultigraph::label(NodeId v) const {
    auto it = labels_.find(v);
    if (it == labels_.end()) return std::nullopt;
    return it->second;
}

int ColoredMultigraph::order_rank(NodeId v) const {
    auto it = order_rank_.find(v);
    if (it == order_rank_.end()) fail("MissingOrder", "node " + std::to_string(v) + " not ordered");
    return it->second;
}

int ColoredMultigraph::degree(NodeId v) const {
    int d = 0;
    for (EdgeId eid : incident(v)) {
        const EdgeRec& e = edge(eid);
        if (!e.is_loop()) {
            d += 1;
        } else {
            d += (model_ == Model::PO) ? 2 : 1;
        }
    }
    return d;
}

std::vector<Color> ColoredMultigraph::loops_at(NodeId v) const {
    std::vector<Color> out;
    for (EdgeId eid : incident(v)) {
        const EdgeRec& e = edge(eid);
        if (e.is_loop()) out.push_back(e.color);
    }
    std::sort(out.begin(), out.end());
    return out;
}

int ColoredMultigraph::loop_count(NodeId v) const {
    int n = 0;
    for (EdgeId eid : incident(v))
        if (edge(eid).is_loop()) ++n;
    return n;
}

int ColoredMultigraph::max_degree() const {
    int d = 0;
    for (NodeId v : nodes_) d = std::max(d, degree(v));
    return d;
}

bool ColoredMultigraph::connected() const {
    if (nodes_.empty()) return true;
    std::set<NodeId> seen{nodes_.front()};
    std::vector<NodeId> stack{nodes_.front()};
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        for (EdgeId eid : incident(v)) {
            NodeId w = edge(eid).other(v);
            if (seen.insert(w).second) stack.push_back(w);
        }
    }
    return seen.size() == nodes_.size();
}

bool ColoredMultigraph::is_tree_ignoring_loops() const {
    if (!connected()) return false;
    std::size_t non_loop = 0;
    for (const EdgeRec& e : edges_)
        if (!e.is_loop()) ++non_loop;
    return non_loop + 1 == nodes_.size();
}

bool ColoredMultigraph::is_simple() const {
    std::set<std::pair<NodeId, NodeId>> seen;
    for (const EdgeRec& e : edges_) {
        if (e.is_loop()) return false;
        auto key = std::minmax(e.u, e.v);
        if (!seen.insert({key.first, key.second}).second) return false;
    }
    return true;
}

NodeId ColoredMultigraph::max_node_id() const {
    return nodes_.empty() ? -1 : nodes_.back();
}

EdgeId ColoredMultigraph::max_eid() const {
    EdgeId m = -1;
    for (const EdgeRec& e : edges_) m = std::max(m, e.eid);
    return m;
}

GraphSpec ColoredMultigraph::to_spec() const {
    GraphSpec s;
    s.model = model_;
    s.k = k_;
    for (NodeId v : nodes_) s.nodes.push_back({v, label(v)});
    s.order = order_;
    for (const EdgeRec& e : edges_) s.edges.push_back({e.u, e.v, e.color, e.directed});
    return s;
}

namespace {

void check_model_rules(const ColoredMultigraph& g, std::vector<Violation>& out) {
    const Model m = g.model();
    if (g.color_count() < 0 || g.color_count() > kMaxColors)
        out.push_back({"PaletteTooLarge",
                       "k = " + std::to_string(g.color_count()) + " exceeds bound " +
                           std::to_string(kMaxColors)});

    for (const EdgeRec& e : g.edges()) {
        if (e.color < 1 || e.color > g.color_count())
            out.push_back({"ColorOutOfRange",
                           "edge " + std::to_string(e.eid) + " colour " + std::to_string(e.color)});
        if (e.directed != (m == Model::PO))
            out.push_back({"OrientationMismatch",
                           "edge " + std::to_string(e.eid) + " direction flag does not match model"});
    }

    for (NodeId v : g.nodes()) {
        if (g.degree(v) > kMaxDegree)
            out.push_back({"DegreeTooLarge", "node " + std::to_string(v)});
        if (m == Model::EC) {
            // All incident edges (loops included) must have pairwise distinct colours.
            std::set<Color> seen;
            for (EdgeId eid : g.incident(v)) {
                const EdgeRec& e = g.edge(eid);
                if (!seen.insert(e.color).second)
                    out.push_back({"ImproperColoring",
                                   "node " + std::to_string(v) + " has two colour-" +
                                       std::to_string(e.color) + " edges"});
            }
        } else if (m == Model::PO) {
            std::set<Color> out_seen, in_seen;
            for (EdgeId eid : g.incident(v)) {
                const EdgeRec& e = g.edge(eid);
                const bool is_out = (e.u == v);
                const bool is_in = (e.v == v);
                if (is_out && !out_seen.insert(e.color).second)
                    out.push_back({"ImproperColoring",
                                   "node " + std::to_string(v) + " has two outgoing colour-" +
                                       std::to_string(e.color) + " edges"});
                if (is_in && !in_seen.insert(e.color).second)
                    out.push_back({"ImproperColoring",
                                   "node " + std::to_string(v) + " has two incoming colour-" +
                                       std::to_string(e.color) + " edges"});
            }
        }
    }

    if (m == Model::ID) {
        std::set<long long> seen;
        for (NodeId v : g.nodes()) {
            auto l = g.label(v);
            if (!l) {
                out.push_back({"DuplicateIdentifier", "node " + std::to_string(v) + " unlabelled"});
            } else if (!seen.insert(*l).second) {
                out.push_back({"DuplicateIdentifier",
                               "identifier " + std::to_string(*l) + " reused at node " +
                                   std::to_string(v)});
            }
        }
    }

    if (m == Model::OI) {
        if (!g.order()) {
            out.push_back({"MissingOrder", "OI graph has no node order"});
        } else {
            const auto& ord = *g.order();
            std::set<NodeId> seen(ord.begin(), ord.end());
            if (seen.size() != ord.size() || ord.size() != g.nodes().size())
                out.push_back({"MissingOrder", "order is not a permutation of the nodes"});
            else
                for (NodeId v : ord)
                    if (!g.has_node(v))
                        out.push_back({"MissingOrder", "ordered node " + std::to_string(v) + " absent"});
        }
    }
}

} // namespace

struct GraphBuilder {
    static BuildResult build(const GraphSpec& spec) {
        BuildResult res;
        ColoredMultigraph g;
        g.model_ = spec.model;
        g.k_ = spec.k;

        std::set<NodeId> node_set;
        for (const auto& n : spec.nodes) {
            if (!node_set.insert(n.id).second)
                res.violations.push_back({"DuplicateNode", "node " + std::to_string(n.id)});
            if (n.label) g.labels_[n.id] = *n.label;
        }
        g.nodes_.assign(node_set.begin(), node_set.end());
        g.order_ = spec.order;
        if (g.order_)
            for (std::size_t i = 0; i < g.order_->size(); ++i)
                g.order_rank_[(*g.order_)[i]] = static_cast<int>(i);

        for (NodeId v : g.nodes_) g.incident_[v];
        EdgeId next_eid = 0;
        for (const auto& e : spec.edges) {
            if (!node_set.count(e.u) || !node_set.count(e.v)) {
                res.violations.push_back({"UnknownNode",
                                          "edge {" + std::to_string(e.u) + "," +
                                              std::to_string(e.v) + "} references absent node"});
                continue;
            }
            EdgeRec rec;
            rec.eid = next_eid++;
            rec.u = e.u;
            rec.v = e.v;
            rec.color = e.color;
            rec.directed = e.directed;
            if (!rec.directed && rec.u > rec.v) std::swap(rec.u, rec.v);
            g.eid_index_[rec.eid] = static_cast<int>(g.edges_.size());
            g.edges_.push_back(rec);
            g.incident_[rec.u].push_back(rec.eid);
            if (rec.v != rec.u) g.incident_[rec.v].push_back(rec.eid);
        }

        if (res.violations.empty()) check_model_rules(g, res.violations);
        if (res.violations.empty()) res.graph = std::move(g);
        return res;
    }
};

BuildResult build_graph(const GraphSpec& spec) {
    return GraphBuilder::build(spec);
}

ColoredMultigraph must_build(const GraphSpec& spec) {
    BuildResult r = build_graph(spec);
    if (!r.ok()) fail(r.violations.front().kind, r.violations.front().detail);
    return std::move(*r.graph);
}

std::vector<Violation> validate(const ColoredMultigraph& g) {
    std::vector<Violation> out;
    check_model_rules(g, out);
    return out;
}

ColoredMultigraph from_parts(Model model, int k, const std::vector<NodeId>& nodes,
                             const std::vector<EdgeRec>& edges,
                             const std::map<NodeId, long long>& labels,
                             const std::optional<std::vector<NodeId>>& order) {
    ColoredMultigraph g;
    g.model_ = model;
    g.k_ = k;
    std::set<NodeId> node_set(nodes.begin(), nodes.end());
    if (node_set.size() != nodes.size()) fail("DuplicateNode", "node ids not unique");
    g.nodes_.assign(node_set.begin(), node_set.end());
    g.labels_ = labels;
    g.order_ = order;
    if (g.order_)
        for (std::size_t i = 0; i < g.order_->size(); ++i)
            g.order_rank_[(*g.order_)[i]] = static_cast<int>(i);
    for (NodeId v : g.nodes_) g.incident_[v];
    for (const EdgeRec& rec : edges) {
        if (!node_set.count(rec.u) || !node_set.count(rec.v))
            fail("UnknownNode", "edge eid " + std::to_string(rec.eid) + " references absent node");
        if (g.eid_index_.count(rec.eid))
            fail("DuplicateEdgeId", "eid " + std::to_string(rec.eid));
        EdgeRec r2 = rec;
        if (!r2.directed && r2.u > r2.v) std::swap(r2.u, r2.v);
        g.eid_index_[r2.eid] = static_cast<int>(g.edges_.size());
        g.edges_.push_back(r2);
        g.incident_[r2.u].push_back(r2.eid);
        if (r2.v != r2.u) g.incident_[r2.v].push_back(r2.eid);
    }
    std::vector<Violation> viols = validate(g);
    if (!viols.empty()) fail(viols.front().kind, viols.front().detail);
    return g;
}

ColoredMultigraph ColoredMultigraph::without_edge(EdgeId e) const {
    if (!has_edge(e)) fail("UnknownEdge", "eid " + std::to_string(e));
    GraphSpec s = to_spec();
    s.edges.clear();
    ColoredMultigraph g;
    // Rebuild directly so surviving edges keep their eids.
    g.model_ = model_;
    g.k_ = k_;
    g.nodes_ = nodes_;
    g.labels_ = labels_;
    g.order_ = order_;
    g.order_rank_ = order_rank_;
    for (NodeId v : nodes_) g.incident_[v];
    for (const EdgeRec& rec : edges_) {
        if (rec.eid == e) continue;
        g.eid_index_[rec.eid] = static_cast<int>(g.edges_.size());
        g.edges_.push_back(rec);
        g.incident_[rec.u].push_back(rec.eid);
        if (rec.v != rec.u) g.incident_[rec.v].push_back(rec.eid);
    }
    return g;
}

ColoredMultigraph ColoredMultigraph::relabeled(NodeId node_offset, EdgeId eid_offset) const {
    ColoredMultigraph g;
    g.model_ = model_;
    g.k_ = k_;
    for (NodeId v : nodes_) g.nodes_.push_back(v + node_offset);
    for (const auto& [v, l] : labels_) g.labels_[v + node_offset] = l;
    if (order_) {
        g.order_ = std::vector<NodeId>();
        for (NodeId v : *order_) g.order_->push_back(v + node_offset);
        for (std::size_t i = 0; i < g.order_->size(); ++i)
            g.order_rank_[(*g.order_)[i]] = static_cast<int>(i);
    }
    for (NodeId v : g.nodes_) g.incident_[v];
    for (const EdgeRec& rec : edges_) {
        EdgeRec r2 = rec;
        r2.eid = rec.eid + eid_offset;
        r2.u = rec.u + node_offset;
        r2.v = rec.v + node_offset;
        g.eid_index_[r2.eid] = static_cast<int>(g.edges_.size());
        g.edges_.push_back(r2);
        g.incident_[r2.u].push_back(r2.eid);
        if (r2.v != r2.u) g.incident_[r2.v].push_back(r2.eid);
    }
    return g;
}

} // namespace lbx
