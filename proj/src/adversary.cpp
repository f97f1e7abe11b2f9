#include "lbx/adversary.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "lbx/graph_io.hpp"

namespace lbx {

using ordered_json = nlohmann::ordered_json;

bool PairReport::ok() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

namespace {

Rat loop_slot(const LocalOutput& out, Color c) {
    auto it = out.weights.find({c, EdgeDir::Loop});
    if (it == out.weights.end())
        fail("MissingSlot", "no colour-" + std::to_string(c) + " loop slot");
    return it->second;
}

bool fully_saturated(const ColoredMultigraph& g, const FractionalMatching& fm,
                     NodeId* offender) {
    for (NodeId v : g.nodes()) {
        if (node_weight(g, fm, v) != Rat(1)) {
            if (offender) *offender = v;
            return false;
        }
    }
    return true;
}

// Fig. 4 refutation: lift the unsaturated multigraph to a simple graph; the
// algorithm leaves all preimages unsaturated, so any lifted loop edge joins
// two unsaturated preimages of the same node.
FailureWitness make_failure_witness(const LocalAlgorithm& a, const ColoredMultigraph& base,
                                    NodeId unsat, std::uint64_t seed) {
    for (int copies = 2; copies <= 2 * kMaxDegree + 4; copies += 2) {
        Lifted lifted;
        try {
            lifted = random_simple_lift(base, copies, seed);
        } catch (const Error& e) {
            if (e.kind() == "InfeasibleLift") continue;
            throw;
        }
        FailureWitness fw;
        fw.base = base;
        fw.lifted = lifted.graph;
        fw.cover = lifted.map;
        fw.base_node = unsat;
        fw.fm = assemble_fm(a, fw.lifted);
        fw.report = check_maximal_fm(fw.lifted, fw.fm);
        const MaximalityViolation* pick = nullptr;
        for (const auto& viol : fw.report.violations) {
            if (viol.kind != MaximalityViolation::Kind::UnsaturatedEdge) continue;
            const EdgeRec& e = fw.lifted.edge(viol.edge);
            if (fw.cover.node_map.at(e.u) == unsat && fw.cover.node_map.at(e.v) == unsat) {
                pick = &viol;
                break;
            }
        }
        if (!pick && !fw.report.violations.empty()) pick = &fw.report.violations.front();
        if (!pick)
            fail("InternalInvariantBroken",
                 "lift of an unsaturated loopy graph passed the maximality check");
        fw.violation = *pick;
        return fw;
    }
    fail("InfeasibleLift", "no simple lift found for the failure witness");
}

} // namespace

StepOutcome base_case(const LocalAlgorithm& a, int delta, std::uint64_t seed) {
    if (delta < 2) fail("DeltaOutOfRange", "base case needs delta >= 2");
    if (a.palette > 0 && a.palette < delta)
        fail("PaletteTooSmall", "algorithm palette " + std::to_string(a.palette) +
                                    " below delta " + std::to_string(delta));

    GraphSpec spec;
    spec.model = Model::EC;
    spec.k = delta;
    spec.nodes.push_back({0, std::nullopt});
    for (Color c = 1; c <= delta; ++c) spec.edges.push_back({0, 0, c, false});
    ColoredMultigraph g0 = must_build(spec);

    LocalOutput out_g = evaluate(a, g0, 0);
    FractionalMatching fm0 = assemble_fm(a, g0);
    NodeId unsat = -1;
    if (!fully_saturated(g0, fm0, &unsat)) return make_failure_witness(a, g0, unsat, seed);

    // Lowest-colour loop with nonzero weight.
    EdgeId removed = -1;
    for (const EdgeRec& e : g0.edges()) {
        if (loop_slot(out_g, e.color) != Rat(0)) {
            removed = e.eid;
            break;
        }
    }
    if (removed < 0)
        fail("InternalInvariantBroken", "saturated node with all-zero loop weights");

    ColoredMultigraph h0 = g0.without_edge(removed);
    LocalOutput out_h = evaluate(a, h0, 0);
    FractionalMatching fmh = assemble_fm(a, h0);
    if (!fully_saturated(h0, fmh, &unsat)) return make_failure_witness(a, h0, unsat, seed);

    // Lowest colour present in both graphs where the outputs differ; it
    // exists because both outputs saturate v over different loop sets.
    Color c0 = -1;
    for (const EdgeRec& e : h0.edges()) {
        if (loop_slot(out_g, e.color) != loop_slot(out_h, e.color)) {
            c0 = e.color;
            break;
        }
    }
    if (c0 < 0) fail("InternalInvariantBroken", "base outputs agree on every shared loop");

    WitnessPair pair;
    pair.i = 0;
    pair.G = std::move(g0);
    pair.H = std::move(h0);
    pair.g = 0;
    pair.h = 0;
    pair.c = c0;
    pair.out_g = std::move(out_g);
    pair.out_h = std::move(out_h);
    pair.branch = "base";
    return pair;
}

Mixed mix(const ColoredMultigraph& G, EdgeId e, const ColoredMultigraph& H, EdgeId f) {
    const EdgeRec& le = G.edge(e);
    const EdgeRec& lf = H.edge(f);
    if (!le.is_loop() || !lf.is_loop()) fail("NotALoop", "mixing requires two loops");
    if (le.color != lf.color) fail("ColorMismatch", "loop colours differ");
    for (NodeId v : H.nodes())
        if (G.has_node(v))
            fail("NodeCollision", "node " + std::to_string(v) + " present in both graphs");

    ColoredMultigraph gm = G.without_edge(e);
    ColoredMultigraph hm = H.without_edge(f);
    std::vector<NodeId> nodes(gm.nodes());
    nodes.insert(nodes.end(), hm.nodes().begin(), hm.nodes().end());
    std::vector<EdgeRec> edges(gm.edges());
    for (const EdgeRec& r : hm.edges()) {
        if (gm.has_edge(r.eid)) fail("NodeCollision", "eid " + std::to_string(r.eid) + " reused");
        edges.push_back(r);
    }
    EdgeRec join;
    join.eid = std::max(G.max_eid(), H.max_eid()) + 1;
    join.u = le.u;
    join.v = lf.u;
    join.color = le.color;
    join.directed = false;
    edges.push_back(join);

    Mixed out;
    out.graph = from_parts(G.model(), std::max(G.color_count(), H.color_count()), nodes, edges);
    out.mixing_eid = join.eid;
    return out;
}

namespace {

FractionalMatching restrict_fm(const FractionalMatching& fm, const ColoredMultigraph& sub) {
    FractionalMatching out;
    for (const EdgeRec& e : sub.edges()) out.weights[e.eid] = fm.at(e.eid);
    return out;
}

} // namespace

StepOutcome adversary_step(const LocalAlgorithm& a, const WitnessPair& pair, int delta,
                           std::uint64_t seed) {
    if (pair.i > delta - 3)
        fail("DeltaOutOfRange", "no step beyond i = delta - 3");

    const ColoredMultigraph& G = pair.G;
    // Move H to node/eid ranges disjoint from G.
    const NodeId node_off = G.max_node_id() + 1 - pair.H.nodes().front();
    EdgeId min_h_eid = pair.H.edges().front().eid;
    for (const EdgeRec& r : pair.H.edges()) min_h_eid = std::min(min_h_eid, r.eid);
    const EdgeId eid_off = G.max_eid() + 1 - min_h_eid;
    ColoredMultigraph H = pair.H.relabeled(node_off, eid_off);
    const NodeId h = pair.h + node_off;
    const NodeId g = pair.g;

    // The colour-c loops at g and h.
    auto loop_at = [](const ColoredMultigraph& gr, NodeId v, Color c) -> EdgeId {
        for (EdgeId eid : gr.incident(v)) {
            const EdgeRec& r = gr.edge(eid);
            if (r.is_loop() && r.color == c) return r.eid;
        }
        fail("NotALoop", "no colour-" + std::to_string(c) + " loop at node " + std::to_string(v));
    };
    const EdgeId e = loop_at(G, g, pair.c);
    const EdgeId f = loop_at(H, h, pair.c);

    Unfolded GG = unfold_loop(G, e);
    Unfolded HH = unfold_loop(H, f);
    Mixed GH = mix(G, e, H, f);

    FractionalMatching fm_gg = assemble_fm(a, GG.graph);
    FractionalMatching fm_hh = assemble_fm(a, HH.graph);
    FractionalMatching fm_gh = assemble_fm(a, GH.graph);
    for (const auto& [graph, fm] : {std::pair<const ColoredMultigraph*, const FractionalMatching*>{
                                        &GG.graph, &fm_gg},
                                    {&HH.graph, &fm_hh},
                                    {&GH.graph, &fm_gh}}) {
        NodeId unsat = -1;
        if (!fully_saturated(*graph, *fm, &unsat))
            return make_failure_witness(a, *graph, unsat, seed);
    }

    const Rat w_g = fm_gg.at(GG.joining_eid);
    const Rat w_h = fm_hh.at(HH.joining_eid);
    const Rat w = fm_gh.at(GH.mixing_eid);
    if (w == w_g && w == w_h)
        fail("InternalInvariantBroken", "mixing weight equals both unfolded weights");

    WitnessPair next;
    next.i = pair.i + 1;
    if (w != w_g) {
        ColoredMultigraph gm = G.without_edge(e);
        FractionalMatching y = restrict_fm(fm_gg, gm);
        FractionalMatching y2 = restrict_fm(fm_gh, gm);
        WalkResult walk = propagation_walk(gm, y, y2, g, pair.c);
        next.G = GG.graph;
        next.H = GH.graph;
        next.g = walk.g_star;
        next.h = walk.g_star;
        next.c = gm.edge(walk.e_star).color;
        next.branch = "G";
    } else {
        ColoredMultigraph hm = H.without_edge(f);
        FractionalMatching y = restrict_fm(fm_hh, hm);
        FractionalMatching y2 = restrict_fm(fm_gh, hm);
        WalkResult walk = propagation_walk(hm, y, y2, h, pair.c);
        next.G = HH.graph;
        next.H = GH.graph;
        next.g = walk.g_star;
        next.h = walk.g_star;
        next.c = hm.edge(walk.e_star).color;
        next.branch = "H";
    }
    next.out_g = evaluate(a, next.G, next.g);
    next.out_h = evaluate(a, next.H, next.h);
    return next;
}

PairReport verify_pair(const LocalAlgorithm& a, const WitnessPair& pair, int delta) {
    PairReport rep;
    auto check = [&](const std::string& name, bool pass, const std::string& detail) {
        rep.checks.push_back({name, pass, pass ? "" : detail});
    };

    std::string code_g = canonical_code(neighborhood(pair.G, pair.g, pair.i));
    std::string code_h = canonical_code(neighborhood(pair.H, pair.h, pair.i));
    check("p1.views", code_g == code_h, "radius-" + std::to_string(pair.i) +
                                            " views at g and h are not isomorphic");

    bool has_loops = true;
    std::string loop_detail;
    try {
        LocalOutput og = evaluate(a, pair.G, pair.g);
        LocalOutput oh = evaluate(a, pair.H, pair.h);
        check("p1.outputs.recorded", og == pair.out_g && oh == pair.out_h,
              "recorded outputs differ from recomputation");
        Rat wg = loop_slot(og, pair.c);
        Rat wh = loop_slot(oh, pair.c);
        check("p1.outputs.disagree", wg != wh,
              "outputs agree on the colour-" + std::to_string(pair.c) + " loop");
    } catch (const Error& err) {
        has_loops = false;
        loop_detail = err.what();
    }
    if (!has_loops) check("p1.outputs.disagree", false, loop_detail);

    const int need = delta - 1 - pair.i;
    bool p2 = true;
    std::string p2_detail;
    for (const ColoredMultigraph* gr : {&pair.G, &pair.H}) {
        for (NodeId v : gr->nodes()) {
            if (gr->loop_count(v) < need) {
                p2 = false;
                p2_detail = "node " + std::to_string(v) + " has " +
                            std::to_string(gr->loop_count(v)) + " loops, needs " +
                            std::to_string(need);
            }
        }
    }
    check("p2.loops", p2, p2_detail);

    check("p3.trees", pair.G.is_tree_ignoring_loops() && pair.H.is_tree_ignoring_loops(),
          "a graph has a non-loop cycle or is disconnected");
    return rep;
}

AdversaryResult run_adversary(const LocalAlgorithm& a, int delta, const AdversaryOptions& opts) {
    if (delta < 2) fail("DeltaOutOfRange", "delta must be at least 2");
    if (delta > opts.max_delta)
        fail("GuardrailExceeded", "delta " + std::to_string(delta) + " beyond guardrail " +
                                      std::to_string(opts.max_delta) +
                                      " (override with LBX_MAX_DELTA)");

    StepOutcome outcome = base_case(a, delta, opts.seed);
    if (std::holds_alternative<FailureWitness>(outcome))
        return std::get<FailureWitness>(std::move(outcome));

    LowerBoundCertificate cert;
    cert.algorithm = a.id;
    cert.delta = delta;
    cert.min_runtime = delta - 1;
    cert.pairs.push_back(std::get<WitnessPair>(std::move(outcome)));

    while (cert.pairs.back().i < delta - 2) {
        PairReport rep = verify_pair(a, cert.pairs.back(), delta);
        if (!rep.ok())
            fail("InternalInvariantBroken",
                 "constructed pair fails verification:\n" + render_pair_report(rep));
        StepOutcome step = adversary_step(a, cert.pairs.back(), delta, opts.seed);
        if (std::holds_alternative<FailureWitness>(step))
            return std::get<FailureWitness>(std::move(step));
        cert.pairs.push_back(std::get<WitnessPair>(std::move(step)));
    }
    PairReport rep = verify_pair(a, cert.pairs.back(), delta);
    if (!rep.ok())
        fail("InternalInvariantBroken",
             "constructed pair fails verification:\n" + render_pair_report(rep));
    return cert;
}

namespace {

ordered_json output_to_json(const LocalOutput& o) {
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
    return doc;
}

LocalOutput output_from_json(const ordered_json& doc) {
    LocalOutput o;
    for (const auto& s : doc.at("slots")) {
        Slot slot{s.at("color").get<Color>(),
                  edge_dir_from_string(s.at("dir").get<std::string>())};
        o.weights[slot] = rat_from_string(s.at("w").get<std::string>());
    }
    return o;
}

} // namespace

std::string encode_certificate(const LowerBoundCertificate& cert) {
    ordered_json doc;
    doc["algorithm"] = cert.algorithm;
    doc["delta"] = cert.delta;
    ordered_json pairs = ordered_json::array();
    for (const WitnessPair& p : cert.pairs) {
        ordered_json j;
        j["i"] = p.i;
        j["G"] = ordered_json::parse(encode_graph(p.G));
        j["H"] = ordered_json::parse(encode_graph(p.H));
        j["g"] = p.g;
        j["h"] = p.h;
        j["c"] = p.c;
        j["out_g"] = output_to_json(p.out_g);
        j["out_h"] = output_to_json(p.out_h);
        j["branch"] = p.branch;
        pairs.push_back(std::move(j));
    }
    doc["pairs"] = std::move(pairs);
    doc["conclusion"] = ordered_json{{"min_runtime", cert.min_runtime}};
    return doc.dump(2) + "\n";
}

LowerBoundCertificate decode_certificate(const std::string& text) {
    LowerBoundCertificate cert;
    try {
        ordered_json doc = ordered_json::parse(text);
        cert.algorithm = doc.at("algorithm").get<std::string>();
        cert.delta = doc.at("delta").get<int>();
        cert.min_runtime = doc.at("conclusion").at("min_runtime").get<int>();
        for (const auto& j : doc.at("pairs")) {
            WitnessPair p;
            p.i = j.at("i").get<int>();
            p.G = decode_graph(j.at("G").dump());
            p.H = decode_graph(j.at("H").dump());
            p.g = j.at("g").get<NodeId>();
            p.h = j.at("h").get<NodeId>();
            p.c = j.at("c").get<Color>();
            p.out_g = output_from_json(j.at("out_g"));
            p.out_h = output_from_json(j.at("out_h"));
            p.branch = j.value("branch", "");
            cert.pairs.push_back(std::move(p));
        }
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        fail("ParseError", e.what());
    }
    return cert;
}

std::string encode_failure_witness(const FailureWitness& fw) {
    ordered_json doc;
    doc["graph"] = ordered_json::parse(encode_graph(fw.lifted));
    ordered_json fmj;
    ordered_json w = ordered_json::object();
    for (const auto& [eid, r] : fw.fm.weights) w[std::to_string(eid)] = rat_to_string(r);
    fmj["weights"] = std::move(w);
    doc["fm"] = std::move(fmj);
    ordered_json viol;
    if (fw.violation.kind == MaximalityViolation::Kind::UnsaturatedEdge) {
        viol["kind"] = "UnsaturatedEdge";
        viol["edge"] = fw.violation.edge;
        const EdgeRec& e = fw.lifted.edge(fw.violation.edge);
        viol["endpoints"] = ordered_json::array({e.u, e.v});
    } else {
        viol["kind"] = "Infeasible";
        viol["node"] = fw.violation.node;
    }
    viol["base_node"] = fw.base_node;
    doc["violation"] = std::move(viol);
    doc["base"] = ordered_json::parse(encode_graph(fw.base));
    ordered_json cov;
    ordered_json cn = ordered_json::object(), ce = ordered_json::object();
    for (const auto& [s, t] : fw.cover.node_map) cn[std::to_string(s)] = t;
    for (const auto& [s, t] : fw.cover.edge_map) ce[std::to_string(s)] = t;
    cov["nodes"] = std::move(cn);
    cov["edges"] = std::move(ce);
    doc["cover"] = std::move(cov);
    return doc.dump(2) + "\n";
}

std::string render_certificate(const LowerBoundCertificate& cert) {
    std::ostringstream os;
    os << "algorithm: " << cert.algorithm << "\n";
    os << "delta: " << cert.delta << "\n";
    for (const WitnessPair& p : cert.pairs)
        os << "pair " << p.i << ": |G|=" << p.G.nodes().size() << " |H|=" << p.H.nodes().size()
           << " c=" << p.c << " branch=" << p.branch << "\n";
    os << "pairs: " << cert.pairs.size() << "/" << cert.delta - 1 << " verified; min runtime >= "
       << cert.min_runtime << "\n";
    return os.str();
}

std::string render_failure_witness(const FailureWitness& fw) {
    std::ostringstream os;
    os << "failure: algorithm output is not a maximal fractional matching\n";
    if (fw.violation.kind == MaximalityViolation::Kind::UnsaturatedEdge) {
        const EdgeRec& e = fw.lifted.edge(fw.violation.edge);
        os << "violation: UnsaturatedEdge {" << e.u << "," << e.v << "} colour " << e.color
           << " in a simple lift; both endpoints cover node " << fw.base_node << "\n";
    } else {
        os << "violation: Infeasible at node " << fw.violation.node << "\n";
    }
    os << "lift: " << fw.lifted.nodes().size() << " nodes over " << fw.base.nodes().size()
       << "\n";
    return os.str();
}

std::string render_pair_report(const PairReport& rep) {
    std::ostringstream os;
    for (const auto& c : rep.checks) {
        os << (c.pass ? "ok   " : "FAIL ") << c.name;
        if (!c.pass) os << " - " << c.detail;
        os << "\n";
    }
    return os.str();
}

} // namespace lbx
