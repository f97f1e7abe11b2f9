#include "lbx/simulations.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <set>

#include <json.hpp>

namespace lbx {

using ordered_json = nlohmann::ordered_json;

DoubledGraph double_graph(const ColoredMultigraph& ec) {
    if (ec.model() != Model::EC) fail("ModelMismatch", "doubling is defined on EC graphs");
    DoubledGraph out;
    std::vector<EdgeRec> edges;
    EdgeId next = 0;
    for (const EdgeRec& e : ec.edges()) {
        if (e.is_loop()) {
            EdgeId id = next++;
            edges.push_back({id, e.u, e.u, e.color, true});
            out.directed_pair[e.eid] = {id, id};
        } else {
            EdgeId fwd = next++, bwd = next++;
            edges.push_back({fwd, e.u, e.v, e.color, true});
            edges.push_back({bwd, e.v, e.u, e.color, true});
            out.directed_pair[e.eid] = {fwd, bwd};
        }
    }
    std::map<NodeId, long long> labels;
    for (NodeId v : ec.nodes())
        if (auto l = ec.label(v)) labels[v] = *l;
    out.po = from_parts(Model::PO, ec.color_count(), ec.nodes(), edges, labels);
    return out;
}

LocalAlgorithm ec_to_po(const LocalAlgorithm& a_po) {
    if (a_po.model != Model::PO) fail("ModelMismatch", "ec_to_po expects a PO algorithm");
    LocalAlgorithm a;
    a.model = Model::EC;
    a.id = "ecpo:" + a_po.id;
    a.family = "ecpo";
    a.palette = a_po.palette;
    a.runtime = [inner = a_po.runtime](int delta, int k) { return inner(2 * delta, k); };
    a.output_fn = [a_po](const View& v) {
        if (v.model() != Model::EC) fail("ModelMismatch", "ec_to_po runs on EC views");
        // Cover views carry their source graph: double that and re-cover
        // lazily. U(double(G)) = U(double(U_G)), so both routes agree;
        // materialisation is the fallback for concrete tree views.
        DoubledGraph dbl;
        NodeId root;
        if (auto src = v.source_graph()) {
            dbl = double_graph(*src);
            root = v.source_node(View::root());
        } else {
            ViewGraph vg = view_to_graph(v);
            dbl = double_graph(vg.graph);
            root = vg.root;
        }
        View po_ball = universal_cover_ball(dbl.po, root, v.radius());
        LocalOutput raw = a_po.output_fn(po_ball);
        LocalOutput out;
        for (const auto& ie : v.incident(View::root())) {
            auto o = raw.weights.find({ie.color, EdgeDir::Out});
            auto i = raw.weights.find({ie.color, EdgeDir::In});
            if (o == raw.weights.end() || i == raw.weights.end())
                fail("MissingSlot", "doubled view lacks colour " + std::to_string(ie.color));
            out.weights[{ie.color, ie.dir}] = o->second + i->second;
        }
        return out;
    };
    return a;
}

LocalAlgorithm po_to_oi(const LocalAlgorithm& a_oi) {
    if (a_oi.model != Model::OI) fail("ModelMismatch", "po_to_oi expects an OI algorithm");
    LocalAlgorithm a;
    a.model = Model::PO;
    a.id = "pooi:" + a_oi.id;
    a.family = "pooi";
    a.palette = a_oi.palette;
    a.runtime = a_oi.runtime;
    a.output_fn = [a_oi](const View& v) {
        if (!v.loop_free_tree()) fail("NotATree", "po_to_oi runs on cover views");
        return a_oi.output_fn(order_view(v));
    };
    return a;
}

LocalAlgorithm oi_order_ignoring_greedy(int k) {
    LocalAlgorithm a = po_half_greedy(k);
    a.model = Model::OI;
    a.id = "oigreedy:k=" + std::to_string(k);
    a.family = "oigreedy";
    return a;
}

namespace {

Rat output_node_weight(const LocalOutput& out, Model model) {
    Rat sum(0);
    for (const auto& [slot, w] : out.weights) {
        if (slot.dir == EdgeDir::Loop && model == Model::PO)
            sum += w * 2;
        else
            sum += w;
    }
    return sum;
}

} // namespace

BinaryLocalAlgorithm saturation_indicator(const LocalAlgorithm& a_id) {
    if (a_id.model != Model::ID) fail("ModelMismatch", "saturation indicator expects an ID algorithm");
    BinaryLocalAlgorithm b;
    b.model = Model::ID;
    b.id = "sat:" + a_id.id;
    b.runtime = a_id.runtime;
    b.output_fn = [a_id](const View& v) {
        LocalOutput out = a_id.output_fn(v);
        return output_node_weight(out, v.model()) == Rat(1) ? 1 : 0;
    };
    return b;
}

std::vector<long long> sparse_subset(const std::vector<long long>& ids, int m) {
    std::vector<long long> out;
    for (std::size_t i = 0; i < ids.size(); i += static_cast<std::size_t>(m) + 1)
        out.push_back(ids[i]);
    return out;
}

long long max_ball_nodes(int delta, int radius) {
    if (radius <= 0 || delta <= 0) return 1;
    if (delta == 1) return 2;
    long long total = 1, frontier = delta;
    for (int j = 0; j < radius; ++j) {
        total += frontier;
        frontier *= (delta - 1);
        if (total > (1LL << 56)) return total; // saturate, desk scale anyway
    }
    return total;
}

Observable observe(const LocalAlgorithm& a) {
    return [a](const View& v) { return encode_output(a.output_fn(v)); };
}

Observable observe(const BinaryLocalAlgorithm& a) {
    return [a](const View& v) { return a.output_fn(v) ? "1" : "0"; };
}

Observable parity_probe() {
    return [](const View& v) {
        auto l = v.label(View::root());
        if (!l) fail("MissingLabel", "parity probe needs an identifier at the root");
        return (*l % 2 == 0) ? std::string("0") : std::to_string(*l);
    };
}

namespace {

// Next k-combination of indices in increasing order; false when exhausted.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] + (k - i) < n) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

} // namespace

std::optional<std::vector<long long>> ramsey_search(const Observable& algo, const View& pattern,
                                                    const std::vector<long long>& universe,
                                                    int q) {
    pattern.ensure_expanded();
    const int p = pattern.count();
    if (p > 3) fail("GuardrailExceeded", "pattern limited to 3 nodes");
    if (universe.size() > 24) fail("GuardrailExceeded", "universe limited to 24 identifiers");
    if (q > static_cast<int>(universe.size()))
        fail("GuardrailExceeded", "q exceeds the universe size");

    std::vector<long long> uni(universe);
    std::sort(uni.begin(), uni.end());

    std::vector<std::vector<int>> arrangements; // rank -> vnode
    std::vector<int> arr(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) arr[static_cast<std::size_t>(i)] = i;
    do arrangements.push_back(arr);
    while (std::next_permutation(arr.begin(), arr.end()));

    std::vector<std::size_t> subset(static_cast<std::size_t>(q));
    for (int i = 0; i < q; ++i) subset[static_cast<std::size_t>(i)] = static_cast<std::size_t>(i);
    if (q == 0) return std::vector<long long>{};

    do {
        std::vector<long long> ids;
        for (std::size_t i : subset) ids.push_back(uni[i]);

        bool ok = true;
        for (const auto& arrangement : arrangements) {
            if (!ok) break;
            std::optional<std::string> first;
            if (p > q) break; // no assignments possible; vacuously consistent
            std::vector<std::size_t> choice(static_cast<std::size_t>(p));
            for (int i = 0; i < p; ++i) choice[static_cast<std::size_t>(i)] = static_cast<std::size_t>(i);
            do {
                std::vector<long long> labels(static_cast<std::size_t>(p), 0);
                for (int r = 0; r < p; ++r)
                    labels[static_cast<std::size_t>(arrangement[static_cast<std::size_t>(r)])] =
                        ids[choice[static_cast<std::size_t>(r)]];
                std::string out = algo(pattern.with_labels(labels));
                if (!first)
                    first = std::move(out);
                else if (*first != out) {
                    ok = false;
                    break;
                }
            } while (next_combination(choice, ids.size()));
        }
        if (ok) return ids;
    } while (next_combination(subset, uni.size()));
    return std::nullopt;
}

InvarianceReport check_order_invariance(const LocalAlgorithm& a_id, const ColoredMultigraph& g,
                                        const std::vector<long long>& J, int trials,
                                        std::uint64_t seed) {
    if (a_id.model != Model::ID) fail("ModelMismatch", "expects an ID algorithm");
    if (g.model() != Model::PO) fail("ModelMismatch", "expects a loopy PO graph");
    if (loopiness(g) < 1) fail("NotLoopy", "graph is not loopy");

    const int t = a_id.runtime(g.max_degree(), g.color_count());
    const NodeId root = g.nodes().front();
    View tau = universal_cover_ball(g, root, t);
    tau.ensure_expanded();
    const int n = tau.count();
    if (static_cast<int>(J.size()) < n)
        fail("InsufficientIdentifiers",
             "need " + std::to_string(n) + " identifiers, have " + std::to_string(J.size()));

    View ov = order_view(tau);
    std::vector<long long> pool(J);
    std::sort(pool.begin(), pool.end());

    std::mt19937_64 rng(seed);
    // Order-respecting assignment: random ascending n-subset of J by rank.
    auto random_phi = [&]() {
        std::vector<std::size_t> picks;
        std::set<std::size_t> chosen;
        while (chosen.size() < static_cast<std::size_t>(n))
            chosen.insert(static_cast<std::size_t>(rng() % pool.size()));
        picks.assign(chosen.begin(), chosen.end());
        std::vector<long long> by_rank;
        for (std::size_t i : picks) by_rank.push_back(pool[i]);
        return by_rank;
    };
    auto labels_of = [&](const std::vector<long long>& by_rank) {
        std::vector<long long> labels(static_cast<std::size_t>(n));
        for (int x = 0; x < n; ++x)
            labels[static_cast<std::size_t>(x)] = by_rank[static_cast<std::size_t>(*ov.rank(x))];
        return labels;
    };

    InvarianceReport rep;
    rep.trials = trials;
    for (int trial = 0; trial < trials; ++trial) {
        std::vector<long long> phi1 = random_phi();
        std::vector<long long> phi2;
        if (trial % 3 == 2) {
            // Arbitrary pair (the chained case of the lemma).
            phi2 = random_phi();
        } else {
            // Single-rank change within the order-respecting window.
            phi2 = phi1;
            bool changed = false;
            for (int attempt = 0; attempt < 64 && !changed; ++attempt) {
                std::size_t r = static_cast<std::size_t>(rng() % static_cast<std::size_t>(n));
                long long lo = (r == 0) ? std::numeric_limits<long long>::min() : phi1[r - 1];
                long long hi = (r + 1 == static_cast<std::size_t>(n))
                                   ? std::numeric_limits<long long>::max()
                                   : phi1[r + 1];
                std::vector<long long> cands;
                for (long long id : pool)
                    if (id > lo && id < hi && id != phi1[r]) cands.push_back(id);
                if (cands.empty()) continue;
                phi2[r] = cands[static_cast<std::size_t>(rng() % cands.size())];
                changed = true;
            }
            if (!changed) phi2 = random_phi();
        }

        LocalOutput out1 = a_id.output_fn(ov.with_labels(labels_of(phi1)));
        LocalOutput out2 = a_id.output_fn(ov.with_labels(labels_of(phi2)));

        for (const auto* pr : {&out1, &out2}) {
            Rat w(0);
            for (const auto& [slot, val] : pr->weights)
                w += (slot.dir == EdgeDir::Loop) ? val * 2 : val;
            if (w != Rat(1)) {
                rep.pass = false;
                rep.violations.push_back({"saturation", phi1, phi2, encode_output(out1),
                                          encode_output(out2)});
                break;
            }
        }
        if (!(out1 == out2)) {
            rep.pass = false;
            rep.violations.push_back(
                {"output-equality", phi1, phi2, encode_output(out1), encode_output(out2)});
        }
    }
    return rep;
}

std::string encode_invariance_report(const InvarianceReport& rep) {
    ordered_json doc = ordered_json::array();
    for (const char* name : {"saturation", "output-equality"}) {
        const InvarianceViolation* hit = nullptr;
        for (const auto& v : rep.violations)
            if (v.check == name && !hit) hit = &v;
        ordered_json entry;
        entry["check"] = name;
        entry["status"] = hit ? "fail" : "pass";
        if (hit) {
            ordered_json ce;
            ce["phi1"] = hit->phi1;
            ce["phi2"] = hit->phi2;
            ce["out1"] = hit->out1;
            ce["out2"] = hit->out2;
            entry["counterexample"] = std::move(ce);
        }
        doc.push_back(std::move(entry));
    }
    return doc.dump(2) + "\n";
}

} // namespace lbx
