#include "lbx/locality.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

namespace lbx {

using ordered_json = nlohmann::ordered_json;

std::string encode_output(const LocalOutput& o) {
    ordered_json slots = ordered_json::array();
    for (const auto& [slot, w] : o.weights) {
        ordered_json j;
        j["color"] = slot.color;
        j["dir"] = to_string(slot.dir);
        j["w"] = rat_to_string(w);
        slots.push_back(std::move(j));
    }
    ordered_json doc;
    doc["slots"] = std::move(slots);
    return doc.dump() ;
}

LocalOutput decode_output(const std::string& text) {
    LocalOutput o;
    try {
        ordered_json doc = ordered_json::parse(text);
        for (const auto& s : doc.at("slots")) {
            Slot slot{s.at("color").get<Color>(), edge_dir_from_string(s.at("dir").get<std::string>())};
            o.weights[slot] = rat_from_string(s.at("w").get<std::string>());
        }
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        fail("ParseError", e.what());
    }
    return o;
}

namespace {

char dir_char(EdgeDir d) {
    switch (d) {
    case EdgeDir::Undirected: return 'u';
    case EdgeDir::Out: return 'o';
    case EdgeDir::In: return 'i';
    case EdgeDir::Loop: return 'l';
    }
    return '?';
}

std::string node_deco(const View& v, int x) {
    std::string s;
    std::vector<Color> loops;
    for (const auto& ie : v.incident(x))
        if (ie.dir == EdgeDir::Loop) loops.push_back(ie.color);
    std::sort(loops.begin(), loops.end());
    s += "L";
    for (Color c : loops) s += std::to_string(c) + ",";
    if (auto l = v.label(x)) s += "#" + std::to_string(*l);
    return s;
}

// Serialisation forced by a per-node total key (rank or label): the key
// determines the isomorphism completely.
std::string forced_code(const View& v, const std::vector<long long>& key, const char* tag) {
    std::ostringstream os;
    os << tag << "|" << to_string(v.model()) << "|r" << v.radius() << "|root"
       << key[static_cast<std::size_t>(View::root())] << "|";
    std::vector<int> order(static_cast<std::size_t>(v.count()));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return key[static_cast<std::size_t>(a)] < key[static_cast<std::size_t>(b)]; });
    for (int x : order) os << "[" << key[static_cast<std::size_t>(x)] << ":" << node_deco(v, x) << "]";
    os << "|";
    std::vector<std::tuple<long long, long long, Color, int>> edges;
    std::set<int> seen;
    for (int x = 0; x < v.count(); ++x) {
        for (const auto& ie : v.incident(x)) {
            if (ie.dir == EdgeDir::Loop) continue; // in node decorations
            if (!seen.insert(ie.veid).second) continue;
            long long a = key[static_cast<std::size_t>(x)];
            long long b = key[static_cast<std::size_t>(ie.other)];
            if (ie.dir == EdgeDir::Undirected) {
                if (a > b) std::swap(a, b);
                edges.push_back({a, b, ie.color, 0});
            } else if (ie.dir == EdgeDir::Out) {
                edges.push_back({a, b, ie.color, 1});
            } else {
                edges.push_back({b, a, ie.color, 1});
            }
        }
    }
    std::sort(edges.begin(), edges.end());
    for (auto& [a, b, c, d] : edges) os << "(" << a << (d ? ">" : "-") << b << ":" << c << ")";
    return os.str();
}

std::string ahu_code(const View& v, int x, int parent) {
    std::vector<std::pair<std::pair<int, Color>, std::string>> kids;
    for (const auto& ie : v.incident(x)) {
        if (ie.dir == EdgeDir::Loop) continue;
        if (ie.other == parent) continue;
        kids.push_back({{static_cast<int>(ie.dir), ie.color},
                        std::string(1, dir_char(ie.dir)) + std::to_string(ie.color) +
                            ahu_code(v, ie.other, x)});
    }
    std::sort(kids.begin(), kids.end());
    std::string s = "(" + node_deco(v, x);
    for (auto& k : kids) s += k.second;
    return s + ")";
}

std::string exhaustive_code(const View& v) {
    const int n = v.count();
    if (n > 9) fail("ViewTooLarge", "exhaustive canonisation capped at 9 nodes, got " + std::to_string(n));
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    // perm[x] = canonical index of vnode x; root stays fixed.
    std::vector<int> rest(perm.begin() + 1, perm.end());
    std::string best;
    do {
        std::vector<long long> key(static_cast<std::size_t>(n));
        key[0] = 0;
        for (int i = 0; i < n - 1; ++i) key[static_cast<std::size_t>(rest[static_cast<std::size_t>(i)])] = i + 1;
        std::string s = forced_code(v, key, "X");
        if (best.empty() || s < best) best = std::move(s);
    } while (std::next_permutation(rest.begin(), rest.end()));
    return best;
}

} // namespace

std::string canonical_code(const View& v) {
    v.ensure_expanded();
    if (v.fully_ranked()) {
        std::vector<long long> key(static_cast<std::size_t>(v.count()));
        for (int i = 0; i < v.count(); ++i) key[static_cast<std::size_t>(i)] = *v.rank(i);
        return forced_code(v, key, "O");
    }
    if (v.fully_labeled()) {
        std::vector<long long> key(static_cast<std::size_t>(v.count()));
        for (int i = 0; i < v.count(); ++i) key[static_cast<std::size_t>(i)] = *v.label(i);
        return forced_code(v, key, "I");
    }
    if (v.tree_ignoring_loops()) {
        return "T|" + to_string(v.model()) + "|r" + std::to_string(v.radius()) + "|" +
               ahu_code(v, View::root(), -1);
    }
    return exhaustive_code(v);
}

namespace {

struct EvalDetail {
    LocalOutput mapped;
    // PO loops: weight taken from the outgoing cover copy; the incoming copy
    // must agree for the output to define a weight per edge.
    struct PoLoop {
        EdgeId eid;
        Rat out_w;
        Rat in_w;
    };
    std::vector<PoLoop> po_loops;
};

const Rat& raw_at(const LocalOutput& raw, Slot s) {
    auto it = raw.weights.find(s);
    if (it == raw.weights.end())
        fail("MissingSlot", "algorithm output lacks slot (" + std::to_string(s.color) + "," +
                                to_string(s.dir) + ")");
    if (it->second < Rat(0) || it->second > Rat(1))
        fail("WeightOutOfRange", rat_to_string(it->second));
    return it->second;
}

EvalDetail evaluate_detail(const LocalAlgorithm& a, const ColoredMultigraph& g, NodeId v) {
    if (a.model != g.model())
        fail("ModelMismatch", "algorithm " + a.id + " is " + to_string(a.model) + ", graph is " +
                                  to_string(g.model()));
    const int t = a.runtime(g.max_degree(), g.color_count());
    EvalDetail d;
    if (g.model() == Model::EC || g.model() == Model::PO) {
        View ball = universal_cover_ball(g, v, t);
        LocalOutput raw = a.output_fn(ball);
        for (EdgeId eid : g.incident(v)) {
            const EdgeRec& e = g.edge(eid);
            if (!e.is_loop()) {
                EdgeDir dir = EdgeDir::Undirected;
                if (e.directed) dir = (e.u == v) ? EdgeDir::Out : EdgeDir::In;
                d.mapped.weights[{e.color, dir}] = raw_at(raw, {e.color, dir});
            } else if (!e.directed) {
                d.mapped.weights[{e.color, EdgeDir::Loop}] =
                    raw_at(raw, {e.color, EdgeDir::Undirected});
            } else {
                Rat out_w = raw_at(raw, {e.color, EdgeDir::Out});
                Rat in_w = raw_at(raw, {e.color, EdgeDir::In});
                d.mapped.weights[{e.color, EdgeDir::Loop}] = out_w;
                d.po_loops.push_back({eid, out_w, in_w});
            }
        }
    } else {
        if (!g.is_simple())
            fail("NotSimple", "ID/OI evaluation requires a simple graph");
        View ball = neighborhood(g, v, t);
        LocalOutput raw = a.output_fn(ball);
        std::set<Color> seen;
        for (EdgeId eid : g.incident(v)) {
            const EdgeRec& e = g.edge(eid);
            if (!seen.insert(e.color).second)
                fail("AmbiguousSlots",
                     "node " + std::to_string(v) + " has two colour-" + std::to_string(e.color) +
                         " edges; slots would collide");
            d.mapped.weights[{e.color, EdgeDir::Undirected}] =
                raw_at(raw, {e.color, EdgeDir::Undirected});
        }
    }
    return d;
}

} // namespace

LocalOutput evaluate(const LocalAlgorithm& a, const ColoredMultigraph& g, NodeId v) {
    return evaluate_detail(a, g, v).mapped;
}

FractionalMatching assemble_fm(const LocalAlgorithm& a, const ColoredMultigraph& g) {
    std::map<NodeId, EvalDetail> outs;
    for (NodeId v : g.nodes()) outs[v] = evaluate_detail(a, g, v);

    FractionalMatching fm;
    for (const EdgeRec& e : g.edges()) {
        if (e.is_loop()) {
            const EvalDetail& d = outs.at(e.u);
            Rat w = d.mapped.weights.at({e.color, EdgeDir::Loop});
            if (e.directed) {
                for (const auto& pl : d.po_loops) {
                    if (pl.eid == e.eid && pl.out_w != pl.in_w)
                        fail("InconsistentOutputs",
                             "loop eid " + std::to_string(e.eid) + ": head " +
                                 rat_to_string(pl.in_w) + " vs tail " + rat_to_string(pl.out_w));
                }
            }
            fm.weights[e.eid] = w;
        } else {
            EdgeDir du = e.directed ? EdgeDir::Out : EdgeDir::Undirected;
            EdgeDir dv = e.directed ? EdgeDir::In : EdgeDir::Undirected;
            Rat wu = outs.at(e.u).mapped.weights.at({e.color, du});
            Rat wv = outs.at(e.v).mapped.weights.at({e.color, dv});
            if (wu != wv)
                fail("InconsistentOutputs", "edge eid " + std::to_string(e.eid) + ": " +
                                                rat_to_string(wu) + " vs " + rat_to_string(wv));
            fm.weights[e.eid] = wu;
        }
    }
    return fm;
}

} // namespace lbx
