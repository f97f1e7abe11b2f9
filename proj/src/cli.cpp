#include "lbx/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "lbx/adversary.hpp"
#include "lbx/algo_zoo.hpp"
#include "lbx/graph_io.hpp"
#include "lbx/simulations.hpp"

namespace lbx {

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("ParseError", "cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("ParseError", "cannot write " + path);
    out << text;
}

std::string render_maximality(const MaximalityReport& rep) {
    std::ostringstream os;
    os << "feasible: " << (rep.feasible ? "yes" : "no") << "\n";
    os << "maximal: " << (rep.maximal() ? "yes" : "no") << "\n";
    os << "saturated nodes: " << rep.saturated.size() << "\n";
    for (const auto& v : rep.violations) {
        if (v.kind == MaximalityViolation::Kind::Infeasible)
            os << "violation: Infeasible at node " << v.node << "\n";
        else
            os << "violation: UnsaturatedEdge at eid " << v.edge << "\n";
    }
    return os.str();
}

int default_max_delta() {
    if (const char* env = std::getenv("LBX_MAX_DELTA")) return std::atoi(env);
    return 14;
}

// True usage/parse failures exit 2; verified negative results exit 1.
bool is_usage_error(const std::string& kind) {
    static const std::set<std::string> usage = {
        "ParseError",     "UnknownNode",     "UnknownEdge",   "ModelMismatch",
        "DeltaOutOfRange", "GuardrailExceeded", "NotALoop",   "PaletteTooSmall",
        "NotTruncatable", "MissingOrder",    "NotSimple",     "NotATree",
    };
    return usage.count(kind) > 0;
}

int cmd_adversary(const std::string& algo_id, int delta, const std::string& out,
                  std::uint64_t seed) {
    LocalAlgorithm a = parse_algorithm(algo_id);
    AdversaryOptions opts;
    opts.max_delta = default_max_delta();
    opts.seed = seed;
    AdversaryResult res = run_adversary(a, delta, opts);
    if (std::holds_alternative<LowerBoundCertificate>(res)) {
        const auto& cert = std::get<LowerBoundCertificate>(res);
        spill(out.empty() ? "cert.json" : out, encode_certificate(cert));
        std::cout << render_certificate(cert);
        return 0;
    }
    const auto& fw = std::get<FailureWitness>(res);
    spill(out.empty() ? "failure-witness.json" : out, encode_failure_witness(fw));
    std::cout << render_failure_witness(fw);
    return 1;
}

int cmd_verify_cert(const std::string& path) {
    LowerBoundCertificate cert = decode_certificate(slurp(path));
    LocalAlgorithm a = parse_algorithm(cert.algorithm);
    bool all_ok = true;
    if (static_cast<int>(cert.pairs.size()) != cert.delta - 1) {
        std::cout << "FAIL pair count " << cert.pairs.size() << " != delta-1\n";
        all_ok = false;
    }
    int verified = 0;
    for (const WitnessPair& p : cert.pairs) {
        PairReport rep = verify_pair(a, p, cert.delta);
        std::cout << "pair " << p.i << ":\n" << render_pair_report(rep);
        if (rep.ok())
            ++verified;
        else
            all_ok = false;
    }
    std::cout << "pairs: " << verified << "/" << cert.delta - 1
              << " verified; min runtime >= " << cert.min_runtime << "\n";
    return all_ok ? 0 : 1;
}

int cmd_verify_fm(const std::string& gpath, const std::string& ypath) {
    ColoredMultigraph g = decode_graph(slurp(gpath));
    FractionalMatching y = decode_fm(slurp(ypath));
    MaximalityReport rep = check_maximal_fm(g, y);
    std::cout << render_maximality(rep);
    return rep.ok() ? 0 : 1;
}

int cmd_run(const std::string& algo_id, const std::string& gpath, const std::string& out) {
    LocalAlgorithm a = parse_algorithm(algo_id);
    ColoredMultigraph g = decode_graph(slurp(gpath));
    FractionalMatching fm = assemble_fm(a, g);
    if (!out.empty()) spill(out, encode_fm(fm));
    MaximalityReport rep = check_maximal_fm(g, fm);
    std::cout << render_maximality(rep);
    return rep.ok() ? 0 : 1;
}

int cmd_factor(const std::string& gpath, const std::string& out, const std::string& map_out) {
    ColoredMultigraph g = decode_graph(slurp(gpath));
    FactorResult f = factor_graph(g);
    CoverReport rep = verify_covering(g, f.factor, f.map);
    if (!out.empty()) spill(out, encode_graph(f.factor));
    if (!map_out.empty()) spill(map_out, encode_covering(f.map));
    std::cout << "factor: " << f.factor.nodes().size() << " nodes, " << f.factor.edges().size()
              << " edges\n";
    std::cout << "quotient map verified: " << (rep.ok() ? "yes" : "no") << "\n";
    return rep.ok() ? 0 : 1;
}

int cmd_cover(const std::string& gpath, NodeId node, int radius, const std::string& out) {
    ColoredMultigraph g = decode_graph(slurp(gpath));
    View ball = universal_cover_ball(g, node, radius);
    ball.ensure_expanded();
    ViewGraph vg = view_to_graph(ball);
    if (!out.empty()) spill(out, encode_graph(vg.graph));
    std::cout << "cover ball: " << vg.graph.nodes().size() << " nodes, "
              << vg.graph.edges().size() << " edges, root 0\n";
    return 0;
}

int cmd_lift(const std::string& gpath, int copies, std::uint64_t seed, const std::string& out,
             const std::string& map_out) {
    ColoredMultigraph g = decode_graph(slurp(gpath));
    Lifted l = random_simple_lift(g, copies, seed);
    CoverReport rep = verify_covering(l.graph, g, l.map);
    if (!out.empty()) spill(out, encode_graph(l.graph));
    if (!map_out.empty()) spill(map_out, encode_covering(l.map));
    std::cout << "lift: " << l.graph.nodes().size() << " nodes, simple: "
              << (l.graph.is_simple() ? "yes" : "no") << ", covering verified: "
              << (rep.ok() ? "yes" : "no") << "\n";
    return rep.ok() ? 0 : 1;
}

int cmd_order_check(int d, int radius, int trials, std::uint64_t seed) {
    HomogeneityReport rep = check_homogeneity(d, radius, trials, seed);
    if (rep.pass) {
        std::cout << "order homogeneity: pass (" << rep.trials << " trials)\n";
        return 0;
    }
    std::cout << "order homogeneity: FAIL - " << rep.detail << "\n";
    return 1;
}

int cmd_simulate(const std::string& chain, const std::string& algo_id, const std::string& gpath) {
    if (chain != "ec-po-oi") fail("ParseError", "unknown chain '" + chain + "'");
    LocalAlgorithm base = parse_algorithm(algo_id);
    if (base.family != "greedy")
        fail("ParseError", "the ec-po-oi chain is built from a greedy algorithm id");
    LocalAlgorithm chained = ec_to_po(po_to_oi(oi_order_ignoring_greedy(base.palette)));
    ColoredMultigraph g = decode_graph(slurp(gpath));
    FractionalMatching fm = assemble_fm(chained, g);
    MaximalityReport rep = check_maximal_fm(g, fm);
    std::cout << render_maximality(rep);
    return rep.ok() ? 0 : 1;
}

int cmd_ramsey(const std::string& algo_id, int universe_n, int q) {
    Observable obs;
    if (algo_id == "parity") {
        obs = parity_probe();
    } else if (algo_id.rfind("sat:", 0) == 0) {
        LocalAlgorithm base = parse_algorithm(algo_id.substr(4));
        base.model = Model::ID;
        obs = observe(saturation_indicator(base));
    } else {
        obs = observe(parse_algorithm(algo_id));
    }
    // Default desk pattern: a single node.
    GraphSpec spec;
    spec.model = Model::ID;
    spec.k = 1;
    spec.nodes.push_back({0, 0});
    ColoredMultigraph pat = must_build(spec);
    View pattern = neighborhood(pat, 0, 0);
    std::vector<long long> universe;
    for (int i = 1; i <= universe_n; ++i) universe.push_back(i);
    auto res = ramsey_search(obs, pattern, universe, q);
    if (res) {
        std::cout << "subset:";
        for (long long v : *res) std::cout << " " << v;
        std::cout << "\n";
    } else {
        std::cout << "result: none\n";
    }
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"lbx - LOCAL model lower-bound laboratory for maximal fractional matchings"};
    app.require_subcommand(1);

    std::string algo_id, gpath, ypath, out, map_out, chain = "ec-po-oi", cert_path;
    int delta = 3, node = 0, radius = 1, copies = 2, trials = 20, d = 2, universe_n = 6, q = 3;
    std::uint64_t seed = 1;

    auto* adv = app.add_subcommand("adversary", "run the unfold-and-mix adversary");
    adv->add_option("--delta", delta)->required();
    adv->add_option("--algo", algo_id)->required();
    adv->add_option("--out", out);
    adv->add_option("--seed", seed);

    auto* vc = app.add_subcommand("verify-cert", "re-verify a certificate");
    vc->add_option("cert", cert_path)->required();

    auto* vf = app.add_subcommand("verify-fm", "check a fractional matching");
    vf->add_option("graph", gpath)->required();
    vf->add_option("fm", ypath)->required();

    auto* run = app.add_subcommand("run", "assemble an algorithm's FM on a graph");
    run->add_option("--algo", algo_id)->required();
    run->add_option("graph", gpath)->required();
    run->add_option("--out", out);

    auto* fac = app.add_subcommand("factor", "compute the factor graph");
    fac->add_option("graph", gpath)->required();
    fac->add_option("--out", out);
    fac->add_option("--map", map_out);

    auto* cov = app.add_subcommand("cover", "materialise a universal cover ball");
    cov->add_option("graph", gpath)->required();
    cov->add_option("--node", node)->required();
    cov->add_option("--radius", radius)->required();
    cov->add_option("--out", out);

    auto* lift = app.add_subcommand("lift", "random simple lift");
    lift->add_option("graph", gpath)->required();
    lift->add_option("--copies", copies)->required();
    lift->add_option("--seed", seed);
    lift->add_option("--out", out);
    lift->add_option("--map", map_out);

    auto* oc = app.add_subcommand("order-check", "canonical order homogeneity check");
    oc->add_option("--d", d)->required();
    oc->add_option("--radius", radius)->required();
    oc->add_option("--trials", trials);
    oc->add_option("--seed", seed);

    auto* sim = app.add_subcommand("simulate", "run a simulation chain");
    sim->add_option("--chain", chain);
    sim->add_option("--algo", algo_id)->required();
    sim->add_option("graph", gpath)->required();

    auto* ram = app.add_subcommand("ramsey", "finite Ramsey subset search");
    ram->add_option("--algo", algo_id)->required();
    ram->add_option("--universe", universe_n)->required();
    ram->add_option("--q", q)->required();

    std::vector<std::string> argv(args);
    std::reverse(argv.begin(), argv.end()); // CLI11 parses reversed vectors
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (adv->parsed()) return cmd_adversary(algo_id, delta, out, seed);
        if (vc->parsed()) return cmd_verify_cert(cert_path);
        if (vf->parsed()) return cmd_verify_fm(gpath, ypath);
        if (run->parsed()) return cmd_run(algo_id, gpath, out);
        if (fac->parsed()) return cmd_factor(gpath, out, map_out);
        if (cov->parsed()) return cmd_cover(gpath, node, radius, out);
        if (lift->parsed()) return cmd_lift(gpath, copies, seed, out, map_out);
        if (oc->parsed()) return cmd_order_check(d, radius, trials, seed);
        if (sim->parsed()) return cmd_simulate(chain, algo_id, gpath);
        if (ram->parsed()) return cmd_ramsey(algo_id, universe_n, q);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return is_usage_error(e.kind()) ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace lbx
