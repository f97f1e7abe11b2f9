#pragma once

// Shared fixtures: deterministic random graph generators and independent
// oracles the implementation is checked against.

#include <map>
#include <random>
#include <tuple>
#include <vector>

#include "lbx/fracmatch.hpp"
#include "lbx/graph.hpp"

namespace lbx::testing {

inline std::size_t pick(std::mt19937_64& rng, std::size_t n) {
    return static_cast<std::size_t>(rng() % n);
}

// One node, loops coloured 1..delta: the adversary's base graph.
inline ColoredMultigraph base_loops(int delta) {
    GraphSpec s;
    s.model = Model::EC;
    s.k = delta;
    s.nodes.push_back({0, std::nullopt});
    for (Color c = 1; c <= delta; ++c) s.edges.push_back({0, 0, c, false});
    return must_build(s);
}

inline ColoredMultigraph ec_graph(int k, int n,
                                  std::vector<std::tuple<NodeId, NodeId, Color>> edges) {
    GraphSpec s;
    s.model = Model::EC;
    s.k = k;
    for (NodeId v = 0; v < n; ++v) s.nodes.push_back({v, std::nullopt});
    for (auto& [u, v, c] : edges) s.edges.push_back({u, v, c, false});
    return must_build(s);
}

inline ColoredMultigraph po_graph(int k, int n,
                                  std::vector<std::tuple<NodeId, NodeId, Color>> edges) {
    GraphSpec s;
    s.model = Model::PO;
    s.k = k;
    for (NodeId v = 0; v < n; ++v) s.nodes.push_back({v, std::nullopt});
    for (auto& [u, v, c] : edges) s.edges.push_back({u, v, c, true});
    return must_build(s);
}

// Random tree with a loop on every node (hence loopy), max degree <= dmax.
// Edge colours are assigned greedily within 1..k; k = 2*dmax is always
// enough.
inline ColoredMultigraph random_loopy_tree(std::mt19937_64& rng, int n, int dmax,
                                           int extra_loop_chance_pct = 30) {
    const int k = 2 * dmax;
    GraphSpec s;
    s.model = Model::EC;
    s.k = k;
    std::vector<int> tree_deg(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<Color>> used(static_cast<std::size_t>(n));
    auto color_free = [&](NodeId v, Color c) {
        for (Color x : used[static_cast<std::size_t>(v)])
            if (x == c) return false;
        return true;
    };
    for (NodeId v = 0; v < n; ++v) s.nodes.push_back({v, std::nullopt});
    for (NodeId v = 1; v < n; ++v) {
        NodeId p;
        do {
            p = static_cast<NodeId>(pick(rng, static_cast<std::size_t>(v)));
        } while (tree_deg[static_cast<std::size_t>(p)] >= dmax - 1);
        Color c = 1;
        while (!color_free(p, c) || !color_free(v, c)) ++c;
        s.edges.push_back({p, v, c, false});
        used[static_cast<std::size_t>(p)].push_back(c);
        used[static_cast<std::size_t>(v)].push_back(c);
        ++tree_deg[static_cast<std::size_t>(p)];
        ++tree_deg[static_cast<std::size_t>(v)];
    }
    for (NodeId v = 0; v < n; ++v) {
        int loops = 1 + ((static_cast<int>(rng() % 100) < extra_loop_chance_pct &&
                          tree_deg[static_cast<std::size_t>(v)] + 2 <= dmax)
                             ? 1
                             : 0);
        for (int i = 0; i < loops; ++i) {
            Color c = 1;
            while (!color_free(v, c)) ++c;
            s.edges.push_back({v, v, c, false});
            used[static_cast<std::size_t>(v)].push_back(c);
        }
    }
    return must_build(s);
}

// Random properly coloured EC multigraph: tree skeleton plus optional extra
// edges (cycles) and loops.
inline ColoredMultigraph random_ec_multigraph(std::mt19937_64& rng, int n, int dmax,
                                              int extra_edges, int loop_chance_pct) {
    const int k = 2 * dmax;
    GraphSpec s;
    s.model = Model::EC;
    s.k = k;
    std::vector<int> deg(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<Color>> used(static_cast<std::size_t>(n));
    auto color_free = [&](NodeId v, Color c) {
        for (Color x : used[static_cast<std::size_t>(v)])
            if (x == c) return false;
        return true;
    };
    auto add_edge = [&](NodeId u, NodeId v) {
        if (deg[static_cast<std::size_t>(u)] >= dmax || deg[static_cast<std::size_t>(v)] >= dmax)
            return false;
        Color c = 1;
        while (c <= k && (!color_free(u, c) || !color_free(v, c))) ++c;
        if (c > k) return false;
        s.edges.push_back({u, v, c, false});
        used[static_cast<std::size_t>(u)].push_back(c);
        used[static_cast<std::size_t>(v)].push_back(c);
        ++deg[static_cast<std::size_t>(u)];
        ++deg[static_cast<std::size_t>(v)];
        return true;
    };
    for (NodeId v = 0; v < n; ++v) s.nodes.push_back({v, std::nullopt});
    for (NodeId v = 1; v < n; ++v) {
        NodeId p = static_cast<NodeId>(pick(rng, static_cast<std::size_t>(v)));
        if (!add_edge(p, v)) {
            // fall back to any node with spare degree
            for (NodeId q = 0; q < v; ++q)
                if (add_edge(q, v)) break;
        }
    }
    for (int i = 0; i < extra_edges; ++i) {
        NodeId u = static_cast<NodeId>(pick(rng, static_cast<std::size_t>(n)));
        NodeId v = static_cast<NodeId>(pick(rng, static_cast<std::size_t>(n)));
        if (u != v) add_edge(u, v);
    }
    for (NodeId v = 0; v < n; ++v) {
        if (static_cast<int>(rng() % 100) < loop_chance_pct &&
            deg[static_cast<std::size_t>(v)] < dmax) {
            Color c = 1;
            while (c <= k && !color_free(v, c)) ++c;
            if (c <= k) {
                s.edges.push_back({v, v, c, false});
                used[static_cast<std::size_t>(v)].push_back(c);
                ++deg[static_cast<std::size_t>(v)];
            }
        }
    }
    return must_build(s);
}

// Random PO tree: node i attaches to an earlier node through a free
// (direction, colour) slot.
inline ColoredMultigraph random_po_tree(std::mt19937_64& rng, int n, int d) {
    GraphSpec s;
    s.model = Model::PO;
    s.k = d;
    std::vector<std::vector<Color>> out_used(static_cast<std::size_t>(n)),
        in_used(static_cast<std::size_t>(n));
    auto free_of = [](const std::vector<Color>& used, Color c) {
        for (Color x : used)
            if (x == c) return false;
        return true;
    };
    for (NodeId v = 0; v < n; ++v) s.nodes.push_back({v, std::nullopt});
    for (NodeId v = 1; v < n; ++v) {
        for (int attempt = 0;; ++attempt) {
            NodeId p = static_cast<NodeId>(pick(rng, static_cast<std::size_t>(v)));
            Color c = static_cast<Color>(1 + pick(rng, static_cast<std::size_t>(d)));
            bool outward = (rng() % 2) == 0; // p -> v or v -> p
            auto& pu = outward ? out_used[static_cast<std::size_t>(p)]
                               : in_used[static_cast<std::size_t>(p)];
            if (!free_of(pu, c)) {
                if (attempt > 200) fail("Internal", "could not grow PO tree");
                continue;
            }
            if (outward) {
                s.edges.push_back({p, v, c, true});
                out_used[static_cast<std::size_t>(p)].push_back(c);
                in_used[static_cast<std::size_t>(v)].push_back(c);
            } else {
                s.edges.push_back({v, p, c, true});
                in_used[static_cast<std::size_t>(p)].push_back(c);
                out_used[static_cast<std::size_t>(v)].push_back(c);
            }
            break;
        }
    }
    return must_build(s);
}

// Independent oracle: global colour-by-colour greedy on the concrete graph.
// Within a colour class the edges are disjoint, so the scan order is
// irrelevant.
inline FractionalMatching sequential_greedy_oracle(const ColoredMultigraph& g) {
    FractionalMatching fm;
    std::map<NodeId, Rat> residual;
    for (NodeId v : g.nodes()) residual[v] = Rat(1);
    for (Color c = 1; c <= g.color_count(); ++c) {
        for (const EdgeRec& e : g.edges()) {
            if (e.color != c) continue;
            Rat w;
            if (e.is_loop()) {
                w = residual[e.u];
                residual[e.u] -= w;
            } else {
                w = std::min(residual[e.u], residual[e.v]);
                residual[e.u] -= w;
                residual[e.v] -= w;
            }
            fm.weights[e.eid] = w;
        }
    }
    return fm;
}

// Direct quantifier evaluation of feasibility/maximality (fracmatch's
// definitions restated from scratch; guards refactoring).
struct BruteMaximality {
    bool feasible = true;
    bool maximal = true;
};

inline BruteMaximality brute_force_maximality(const ColoredMultigraph& g,
                                              const FractionalMatching& y) {
    BruteMaximality out;
    std::map<NodeId, Rat> sum;
    for (NodeId v : g.nodes()) sum[v] = Rat(0);
    for (const EdgeRec& e : g.edges()) {
        const Rat& w = y.at(e.eid);
        if (e.is_loop()) {
            sum[e.u] += (g.model() == Model::PO) ? w * 2 : w;
        } else {
            sum[e.u] += w;
            sum[e.v] += w;
        }
    }
    for (NodeId v : g.nodes())
        if (sum[v] > Rat(1)) out.feasible = false;
    for (const EdgeRec& e : g.edges())
        if (sum[e.u] != Rat(1) && sum[e.v] != Rat(1)) out.maximal = false;
    return out;
}

} // namespace lbx::testing
