#include "lbx/fracmatch.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

namespace lbx {

using ordered_json = nlohmann::ordered_json;

const Rat& FractionalMatching::at(EdgeId e) const {
    auto it = weights.find(e);
    if (it == weights.end()) fail("UnknownEdge", "no weight for eid " + std::to_string(e));
    return it->second;
}

std::string encode_fm(const FractionalMatching& fm) {
    ordered_json w = ordered_json::object();
    for (const auto& [eid, r] : fm.weights) w[std::to_string(eid)] = rat_to_string(r);
    ordered_json doc;
    doc["weights"] = std::move(w);
    return doc.dump(2) + "\n";
}

FractionalMatching decode_fm(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const std::exception& e) {
        fail("ParseError", e.what());
    }
    FractionalMatching fm;
    try {
        for (const auto& [key, val] : doc.at("weights").items())
            fm.weights[std::stoi(key)] = rat_from_string(val.get<std::string>());
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        fail("ParseError", e.what());
    }
    return fm;
}

Rat node_weight(const ColoredMultigraph& g, const FractionalMatching& y, NodeId v) {
    Rat sum(0);
    for (EdgeId eid : g.incident(v)) {
        const EdgeRec& e = g.edge(eid);
        const Rat& w = y.at(eid);
        if (e.is_loop() && g.model() == Model::PO)
            sum += w * 2;
        else
            sum += w;
    }
    return sum;
}

bool MaximalityReport::maximal() const {
    for (const auto& v : violations)
        if (v.kind == MaximalityViolation::Kind::UnsaturatedEdge) return false;
    return true;
}

MaximalityReport check_maximal_fm(const ColoredMultigraph& g, const FractionalMatching& y) {
    MaximalityReport rep;
    const Rat one(1);
    std::set<NodeId> sat;
    for (NodeId v : g.nodes()) {
        Rat w = node_weight(g, y, v);
        if (w > one) {
            rep.feasible = false;
            rep.violations.push_back({MaximalityViolation::Kind::Infeasible, v, -1});
        } else if (w == one) {
            sat.insert(v);
        }
    }
    rep.saturated.assign(sat.begin(), sat.end());
    for (const EdgeRec& e : g.edges())
        if (!sat.count(e.u) && !sat.count(e.v))
            rep.violations.push_back({MaximalityViolation::Kind::UnsaturatedEdge, -1, e.eid});
    return rep;
}

DisagreementSet disagreement_edges(const ColoredMultigraph& g, const FractionalMatching& y,
                                   const FractionalMatching& y2) {
    DisagreementSet d;
    std::set<NodeId> ns;
    for (const EdgeRec& e : g.edges()) {
        if (y.at(e.eid) != y2.at(e.eid)) {
            d.edges.push_back(e.eid);
            ns.insert(e.u);
            ns.insert(e.v);
        }
    }
    std::sort(d.edges.begin(), d.edges.end());
    d.nodes.assign(ns.begin(), ns.end());
    return d;
}

WalkResult propagation_walk(const ColoredMultigraph& g, const FractionalMatching& y,
                            const FractionalMatching& y2, NodeId start,
                            Color virtual_disagreement) {
    if (!g.has_node(start)) fail("UnknownNode", "node " + std::to_string(start));
    if (!g.is_tree_ignoring_loops()) fail("NotATree", "propagation walk requires a tree plus loops");
    (void)virtual_disagreement; // records the colour of the off-graph edge; the
                                // walk itself only needs its existence

    NodeId cur = start;
    EdgeId arrival = -1; // the virtual edge is not an eid of g
    std::size_t steps = 0;
    while (true) {
        if (++steps > g.nodes().size() + 1)
            fail("Internal", "propagation walk exceeded node count");
        const EdgeRec* best = nullptr;
        for (EdgeId eid : g.incident(cur)) {
            if (eid == arrival) continue;
            if (y.at(eid) == y2.at(eid)) continue;
            const EdgeRec& e = g.edge(eid);
            if (!best || std::make_pair(e.color, e.eid) < std::make_pair(best->color, best->eid))
                best = &e;
        }
        if (!best)
            fail("NoContinuation",
                 "node " + std::to_string(cur) + " offers no disagreeing continuation");
        if (best->is_loop()) return {cur, best->eid};
        cur = best->other(cur);
        arrival = best->eid;
    }
}

} // namespace lbx
