#include "lbx/covers.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <tuple>

#include <json.hpp>

namespace lbx {

using ordered_json = nlohmann::ordered_json;

std::string encode_covering(const CoveringMap& m) {
    ordered_json nodes = ordered_json::object();
    for (const auto& [a, b] : m.node_map) nodes[std::to_string(a)] = b;
    ordered_json edges = ordered_json::object();
    for (const auto& [a, b] : m.edge_map) edges[std::to_string(a)] = b;
    ordered_json doc;
    doc["nodes"] = std::move(nodes);
    doc["edges"] = std::move(edges);
    return doc.dump(2) + "\n";
}

CoveringMap decode_covering(const std::string& text) {
    CoveringMap m;
    try {
        ordered_json doc = ordered_json::parse(text);
        for (const auto& [key, val] : doc.at("nodes").items())
            m.node_map[std::stoi(key)] = val.get<NodeId>();
        for (const auto& [key, val] : doc.at("edges").items())
            m.edge_map[std::stoi(key)] = val.get<EdgeId>();
    } catch (const std::exception& e) {
        fail("ParseError", e.what());
    }
    return m;
}

namespace {

// Dart keys (eid*2 + role) at a node; EC loops give one self-paired dart, PO
// loops a tail dart and a head dart.
std::vector<long long> dart_keys(const ColoredMultigraph& g, NodeId v) {
    std::vector<long long> res;
    for (EdgeId eid : g.incident(v)) {
        const EdgeRec& e = g.edge(eid);
        if (!e.is_loop()) {
            res.push_back(2LL * eid + (v == e.u ? 0 : 1));
        } else if (!e.directed) {
            res.push_back(2LL * eid);
        } else {
            res.push_back(2LL * eid);
            res.push_back(2LL * eid + 1);
        }
    }
    std::sort(res.begin(), res.end());
    return res;
}

} // namespace

CoverReport verify_covering(const ColoredMultigraph& source, const ColoredMultigraph& target,
                            const CoveringMap& m) {
    CoverReport rep;
    auto add = [&](const std::string& kind, const std::string& detail) {
        rep.violations.push_back({kind, detail});
    };

    if (source.model() != target.model()) {
        add("ModelMismatch", "source and target models differ");
        return rep;
    }

    for (NodeId v : source.nodes())
        if (!m.node_map.count(v)) add("NotAMap", "node " + std::to_string(v) + " unmapped");
    for (const EdgeRec& e : source.edges())
        if (!m.edge_map.count(e.eid)) add("NotAMap", "edge " + std::to_string(e.eid) + " unmapped");
    for (const auto& [a, b] : m.node_map) {
        if (!source.has_node(a)) add("NotAMap", "unknown source node " + std::to_string(a));
        if (!target.has_node(b)) add("NotAMap", "unknown target node " + std::to_string(b));
    }
    for (const auto& [a, b] : m.edge_map) {
        if (!source.has_edge(a)) add("NotAMap", "unknown source edge " + std::to_string(a));
        if (!target.has_edge(b)) add("NotAMap", "unknown target edge " + std::to_string(b));
    }
    if (!rep.ok()) return rep;

    // Homomorphism: colours, orientation, endpoints.
    for (const EdgeRec& e : source.edges()) {
        const EdgeRec& f = target.edge(m.edge_map.at(e.eid));
        if (e.color != f.color)
            add("ColorMismatch", "edge " + std::to_string(e.eid) + " maps across colours");
        NodeId mu = m.node_map.at(e.u), mv = m.node_map.at(e.v);
        if (e.directed) {
            if (!(mu == f.u && mv == f.v))
                add("EndpointMismatch", "directed edge " + std::to_string(e.eid));
        } else {
            if (!((mu == f.u && mv == f.v) || (mu == f.v && mv == f.u)))
                add("EndpointMismatch", "edge " + std::to_string(e.eid));
        }
    }

    // Onto.
    std::set<NodeId> node_image;
    std::set<EdgeId> edge_image;
    for (const auto& [a, b] : m.node_map) node_image.insert(b);
    for (const auto& [a, b] : m.edge_map) edge_image.insert(b);
    for (NodeId v : target.nodes())
        if (!node_image.count(v)) add("NotOnto", "target node " + std::to_string(v) + " uncovered");
    for (const EdgeRec& e : target.edges())
        if (!edge_image.count(e.eid))
            add("NotOnto", "target edge " + std::to_string(e.eid) + " uncovered");

    // Degrees and local bijection on darts.
    for (NodeId v : source.nodes()) {
        NodeId w = m.node_map.at(v);
        if (source.degree(v) != target.degree(w))
            add("DegreeMismatch", "node " + std::to_string(v) + " (deg " +
                                      std::to_string(source.degree(v)) + ") over node " +
                                      std::to_string(w) + " (deg " +
                                      std::to_string(target.degree(w)) + ")");

        std::vector<long long> image_darts;
        for (EdgeId eid : source.incident(v)) {
            const EdgeRec& e = source.edge(eid);
            const EdgeRec& f = target.edge(m.edge_map.at(eid));
            if (!e.is_loop()) {
                if (f.is_loop()) {
                    image_darts.push_back(2LL * f.eid +
                                          (e.directed ? (v == e.u ? 0 : 1) : 0));
                } else {
                    image_darts.push_back(2LL * f.eid + (w == f.u ? 0 : 1));
                }
            } else if (!e.directed) {
                image_darts.push_back(2LL * f.eid);
            } else {
                image_darts.push_back(2LL * f.eid);
                image_darts.push_back(2LL * f.eid + 1);
            }
        }
        std::sort(image_darts.begin(), image_darts.end());
        if (image_darts != dart_keys(target, w))
            add("LocalBijectionFailure", "node " + std::to_string(v));
    }

    return rep;
}

std::vector<std::vector<NodeId>> refinement_classes(const ColoredMultigraph& g) {
    std::map<NodeId, int> cls;
    for (NodeId v : g.nodes()) cls[v] = 0;
    std::size_t count = 1;
    while (true) {
        // Signature: multiset of (colour, direction tag, neighbour class);
        // an EC loop contributes one entry pointing at its own class, a PO
        // loop a tail entry and a head entry.
        std::map<NodeId, std::vector<std::tuple<Color, int, int>>> sig;
        for (NodeId v : g.nodes()) {
            auto& s = sig[v];
            for (EdgeId eid : g.incident(v)) {
                const EdgeRec& e = g.edge(eid);
                if (!e.is_loop()) {
                    int tag = e.directed ? (v == e.u ? 1 : 2) : 0;
                    s.push_back({e.color, tag, cls[e.other(v)]});
                } else if (!e.directed) {
                    s.push_back({e.color, 0, cls[v]});
                } else {
                    s.push_back({e.color, 1, cls[v]});
                    s.push_back({e.color, 2, cls[v]});
                }
            }
            std::sort(s.begin(), s.end());
        }
        std::map<std::pair<int, std::vector<std::tuple<Color, int, int>>>, int> regroup;
        std::map<NodeId, int> next;
        for (NodeId v : g.nodes()) {
            auto key = std::make_pair(cls[v], sig[v]);
            auto it = regroup.try_emplace(key, static_cast<int>(regroup.size())).first;
            next[v] = it->second;
        }
        if (regroup.size() == count) break;
        count = regroup.size();
        cls = std::move(next);
    }
    std::vector<std::vector<NodeId>> classes(count);
    for (NodeId v : g.nodes()) classes[static_cast<std::size_t>(cls[v])].push_back(v);
    for (auto& c : classes) std::sort(c.begin(), c.end());
    std::sort(classes.begin(), classes.end());
    return classes;
}

FactorResult factor_graph(const ColoredMultigraph& g) {
    if (!g.connected()) fail("Disconnected", "factor graph requires a connected graph");
    if (g.model() != Model::EC && g.model() != Model::PO)
        fail("ModelMismatch", "factor graph requires an EC or PO graph");

    auto classes = refinement_classes(g);
    std::map<NodeId, int> cls;
    for (std::size_t i = 0; i < classes.size(); ++i)
        for (NodeId v : classes[i]) cls[v] = static_cast<int>(i);

    // One quotient edge per distinct (class pair, colour, orientation) slot.
    std::map<std::tuple<int, int, Color, bool>, EdgeId> slots;
    std::vector<EdgeRec> qedges;
    CoveringMap m;
    for (NodeId v : g.nodes()) m.node_map[v] = cls[v];
    for (const EdgeRec& e : g.edges()) {
        int cu = cls[e.u], cv = cls[e.v];
        std::tuple<int, int, Color, bool> key;
        if (e.directed)
            key = {cu, cv, e.color, true};
        else
            key = {std::min(cu, cv), std::max(cu, cv), e.color, false};
        auto it = slots.find(key);
        if (it == slots.end()) {
            EdgeRec q;
            q.eid = static_cast<EdgeId>(qedges.size());
            q.u = std::get<0>(key);
            q.v = std::get<1>(key);
            q.color = e.color;
            q.directed = e.directed;
            it = slots.emplace(key, q.eid).first;
            qedges.push_back(q);
        }
        m.edge_map[e.eid] = it->second;
    }

    std::vector<NodeId> qnodes;
    for (std::size_t i = 0; i < classes.size(); ++i) qnodes.push_back(static_cast<NodeId>(i));
    FactorResult res{from_parts(g.model(), g.color_count(), qnodes, qedges), std::move(m)};
    return res;
}

int loopiness(const ColoredMultigraph& g) {
    FactorResult f = factor_graph(g);
    int best = -1;
    for (NodeId v : f.factor.nodes()) {
        int l = f.factor.loop_count(v);
        if (best < 0 || l < best) best = l;
    }
    return best < 0 ? 0 : best;
}

Unfolded unfold_loop(const ColoredMultigraph& g, EdgeId loop_eid) {
    if (g.model() != Model::EC) fail("ModelMismatch", "unfolding is defined for EC graphs");
    const EdgeRec& e = g.edge(loop_eid);
    if (!e.is_loop()) fail("NotALoop", "eid " + std::to_string(loop_eid) + " is not a loop");
    const NodeId at = e.u;

    ColoredMultigraph base = g.without_edge(loop_eid);
    const NodeId node_off = g.max_node_id() + 1;
    const EdgeId eid_off = g.max_eid() + 1;
    ColoredMultigraph mirror = base.relabeled(node_off, eid_off);

    std::vector<NodeId> nodes(base.nodes());
    nodes.insert(nodes.end(), mirror.nodes().begin(), mirror.nodes().end());
    std::vector<EdgeRec> edges(base.edges());
    edges.insert(edges.end(), mirror.edges().begin(), mirror.edges().end());
    EdgeRec join;
    join.eid = eid_off + g.max_eid() + 1;
    join.u = at;
    join.v = at + node_off;
    join.color = e.color;
    join.directed = false;
    edges.push_back(join);

    std::map<NodeId, long long> labels;
    for (NodeId v : g.nodes()) {
        if (auto l = g.label(v)) {
            labels[v] = *l;
            labels[v + node_off] = *l;
        }
    }

    Unfolded out;
    out.graph = from_parts(g.model(), g.color_count(), nodes, edges, labels);
    out.joining_eid = join.eid;
    out.mirror_node = at + node_off;
    out.node_offset = node_off;
    out.eid_offset = eid_off;
    for (NodeId v : base.nodes()) {
        out.map.node_map[v] = v;
        out.map.node_map[v + node_off] = v;
    }
    for (const EdgeRec& r : base.edges()) {
        out.map.edge_map[r.eid] = r.eid;
        out.map.edge_map[r.eid + eid_off] = r.eid;
    }
    out.map.edge_map[join.eid] = loop_eid;
    return out;
}

namespace {

std::size_t rng_index(std::mt19937_64& rng, std::size_t n) {
    return static_cast<std::size_t>(rng() % n);
}

std::vector<int> random_permutation(std::mt19937_64& rng, int n) {
    std::vector<int> p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i)
        std::swap(p[static_cast<std::size_t>(i)],
                  p[rng_index(rng, static_cast<std::size_t>(i) + 1)]);
    return p;
}

std::vector<int> random_fixed_point_free_permutation(std::mt19937_64& rng, int n) {
    for (int tries = 0; tries < 200; ++tries) {
        auto p = random_permutation(rng, n);
        bool ok = true;
        for (int i = 0; i < n; ++i)
            if (p[static_cast<std::size_t>(i)] == i) ok = false;
        if (ok) return p;
    }
    fail("InfeasibleLift", "no fixed-point-free permutation found");
}

// Pairing of 0..n-1 (n even) as a fixed-point-free involution.
std::vector<int> random_matching(std::mt19937_64& rng, int n) {
    auto p = random_permutation(rng, n);
    std::vector<int> m(static_cast<std::size_t>(n));
    for (int i = 0; i < n; i += 2) {
        m[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])] = p[static_cast<std::size_t>(i + 1)];
        m[static_cast<std::size_t>(p[static_cast<std::size_t>(i + 1)])] = p[static_cast<std::size_t>(i)];
    }
    return m;
}

} // namespace

Lifted random_simple_lift(const ColoredMultigraph& g, int copies, std::uint64_t seed) {
    if (copies < 2) fail("InfeasibleLift", "need at least 2 copies");
    bool has_ec_loop = false;
    for (const EdgeRec& e : g.edges())
        if (e.is_loop() && !e.directed) has_ec_loop = true;
    if (has_ec_loop && copies % 2 != 0)
        fail("InfeasibleLift", "undirected loops lift to pairings; fibre count must be even");

    std::mt19937_64 rng(seed);
    auto node_id = [&](NodeId v, int i) { return v * copies + i; };

    for (int attempt = 0; attempt < 200; ++attempt) {
        std::vector<NodeId> nodes;
        std::map<NodeId, long long> labels;
        for (NodeId v : g.nodes())
            for (int i = 0; i < copies; ++i) nodes.push_back(node_id(v, i));

        std::vector<EdgeRec> edges;
        CoveringMap m;
        for (NodeId v : g.nodes())
            for (int i = 0; i < copies; ++i) m.node_map[node_id(v, i)] = v;

        bool simple = true;
        std::set<std::pair<NodeId, NodeId>> seen_pairs;
        EdgeId next = 0;
        auto push_edge = [&](NodeId a, NodeId b, Color c, bool directed, EdgeId src) {
            auto key = std::minmax(a, b);
            if (a == b || !seen_pairs.insert({key.first, key.second}).second) {
                simple = false;
                return;
            }
            EdgeRec r;
            r.eid = next++;
            r.u = a;
            r.v = b;
            r.color = c;
            r.directed = directed;
            edges.push_back(r);
            m.edge_map[r.eid] = src;
        };

        for (const EdgeRec& e : g.edges()) {
            if (!simple) break;
            if (!e.is_loop()) {
                auto p = random_permutation(rng, copies);
                for (int i = 0; i < copies && simple; ++i)
                    push_edge(node_id(e.u, i), node_id(e.v, p[static_cast<std::size_t>(i)]),
                              e.color, e.directed, e.eid);
            } else if (!e.directed) {
                auto mt = random_matching(rng, copies);
                for (int i = 0; i < copies && simple; ++i)
                    if (i < mt[static_cast<std::size_t>(i)])
                        push_edge(node_id(e.u, i), node_id(e.u, mt[static_cast<std::size_t>(i)]),
                                  e.color, false, e.eid);
            } else {
                auto p = random_fixed_point_free_permutation(rng, copies);
                for (int i = 0; i < copies && simple; ++i)
                    push_edge(node_id(e.u, i), node_id(e.u, p[static_cast<std::size_t>(i)]),
                              e.color, true, e.eid);
            }
        }
        if (!simple) continue;

        Lifted out;
        out.graph = from_parts(g.model(), g.color_count(), nodes, edges, labels);
        out.map = std::move(m);
        return out;
    }
    fail("InfeasibleLift", "no simple lift found with " + std::to_string(copies) + " copies");
}

namespace {

// Multiset of (colour, direction tag) on edges between two concrete nodes.
std::vector<std::pair<Color, int>> pair_profile(const ColoredMultigraph& g, NodeId a, NodeId b) {
    std::vector<std::pair<Color, int>> res;
    for (EdgeId eid : g.incident(a)) {
        const EdgeRec& e = g.edge(eid);
        if (e.is_loop()) continue;
        if (e.other(a) != b) continue;
        int tag = e.directed ? (a == e.u ? 1 : 2) : 0;
        res.push_back({e.color, tag});
    }
    std::sort(res.begin(), res.end());
    return res;
}

} // namespace

bool is_isomorphic(const ColoredMultigraph& a, const ColoredMultigraph& b) {
    if (a.model() != b.model()) return false;
    if (a.nodes().size() != b.nodes().size()) return false;
    if (a.edges().size() != b.edges().size()) return false;

    // Joint refinement on the disjoint union aligns candidate classes.
    NodeId off = a.max_node_id() + 1;
    ColoredMultigraph b2 = b.relabeled(off, a.max_eid() + 1);
    std::vector<NodeId> nodes(a.nodes());
    nodes.insert(nodes.end(), b2.nodes().begin(), b2.nodes().end());
    std::vector<EdgeRec> edges(a.edges());
    edges.insert(edges.end(), b2.edges().begin(), b2.edges().end());
    ColoredMultigraph uni =
        from_parts(a.model(), std::max(a.color_count(), b.color_count()), nodes, edges);

    auto classes = refinement_classes(uni);
    std::map<NodeId, int> cls;
    for (std::size_t i = 0; i < classes.size(); ++i)
        for (NodeId v : classes[i]) cls[v] = static_cast<int>(i);

    std::vector<std::vector<NodeId>> cand(classes.size());
    for (const auto& c : classes) {
        std::size_t in_a = 0;
        for (NodeId v : c)
            if (v < off) ++in_a;
        if (in_a * 2 != c.size()) return false;
    }
    for (std::size_t i = 0; i < classes.size(); ++i)
        for (NodeId v : classes[i])
            if (v >= off) cand[i].push_back(v - off);

    // Backtracking, small classes first.
    std::vector<NodeId> order(a.nodes());
    std::sort(order.begin(), order.end(), [&](NodeId x, NodeId y) {
        auto kx = std::make_pair(cand[static_cast<std::size_t>(cls[x])].size(), x);
        auto ky = std::make_pair(cand[static_cast<std::size_t>(cls[y])].size(), y);
        return kx < ky;
    });

    std::map<NodeId, NodeId> phi;
    std::set<NodeId> used;
    std::function<bool(std::size_t)> go = [&](std::size_t idx) -> bool {
        if (idx == order.size()) return true;
        NodeId x = order[idx];
        for (NodeId y : cand[static_cast<std::size_t>(cls[x])]) {
            if (used.count(y)) continue;
            bool ok = a.loops_at(x) == b.loops_at(y);
            if (ok && a.label(x) != b.label(y)) ok = false;
            for (auto& [px, py] : phi) {
                if (!ok) break;
                if (pair_profile(a, x, px) != pair_profile(b, y, py)) ok = false;
            }
            if (!ok) continue;
            phi[x] = y;
            used.insert(y);
            if (go(idx + 1)) return true;
            phi.erase(x);
            used.erase(y);
        }
        return false;
    };
    return go(0);
}

} // namespace lbx
