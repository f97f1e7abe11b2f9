#include "lbx/algo_zoo.hpp"

#include <map>

namespace lbx {

namespace {

// Greedy on a tree view. Residuals and edge weights are memoised per view
// node; the recursion follows strictly decreasing colours, so only a small
// part of a lazily expanded cover ball is ever touched.
struct GreedyEval {
    const View& v;
    int cap; // colours above this are defined as weight 0
    std::map<std::pair<int, Color>, Rat> residual_memo;
    std::map<int, Rat> weight_memo; // by veid

    const View::IncEdge* edge_of_color(int x, Color c) {
        for (const auto& ie : v.incident(x))
            if (ie.color == c && ie.dir != EdgeDir::Loop) return &ie;
        return nullptr;
    }

    Rat residual(int x, Color c) {
        auto key = std::make_pair(x, c);
        auto it = residual_memo.find(key);
        if (it != residual_memo.end()) return it->second;
        Rat r(1);
        // A loop is a single incidence entry, so it is charged once, with
        // weight equal to the node's residual at its colour.
        for (const auto& ie : v.incident(x))
            if (ie.color < c && ie.color <= cap) r -= weight(ie, x);
        residual_memo[key] = r;
        return r;
    }

    Rat weight(const View::IncEdge& ie, int from) {
        auto it = weight_memo.find(ie.veid);
        if (it != weight_memo.end()) return it->second;
        Rat a = residual(from, ie.color);
        Rat b = residual(ie.other, ie.color);
        Rat w = std::min(a, b);
        weight_memo[ie.veid] = w;
        return w;
    }
};

LocalOutput greedy_output(const View& v, int k, int cap) {
    if (v.radius() < std::min(k, cap))
        fail("ViewTooShallow", "greedy needs radius " + std::to_string(std::min(k, cap)) +
                                   ", view has " + std::to_string(v.radius()));
    GreedyEval ev{v, cap, {}, {}};
    LocalOutput out;
    for (const auto& ie : v.incident(View::root())) {
        Rat w = (ie.color <= cap) ? ev.weight(ie, View::root()) : Rat(0);
        out.weights[{ie.color, ie.dir}] = w;
    }
    return out;
}

// Half-greedy on a PO tree view: W(x, c) pairs x's outgoing colour-c edge
// with its head as the undirected shadow edge; every directed edge carries
// half of its tail's W. Residuals charge both the outgoing and the incoming
// colour slot.
struct HalfGreedyEval {
    const View& v;
    int cap;
    std::map<std::pair<int, Color>, Rat> residual_memo;
    std::map<std::pair<int, Color>, Rat> w_memo; // by (vnode, colour) of the tail

    const View::IncEdge* edge_dir_color(int x, Color c, EdgeDir d) {
        for (const auto& ie : v.incident(x))
            if (ie.color == c && ie.dir == d) return &ie;
        return nullptr;
    }

    Rat residual(int x, Color c) {
        auto key = std::make_pair(x, c);
        auto it = residual_memo.find(key);
        if (it != residual_memo.end()) return it->second;
        Rat r(1);
        for (const auto& ie : v.incident(x)) {
            if (ie.color >= c || ie.color > cap) continue;
            if (ie.dir == EdgeDir::Out)
                r -= w_out(x, ie.color) / 2;
            else if (ie.dir == EdgeDir::In)
                r -= w_out(ie.other, ie.color) / 2;
        }
        residual_memo[key] = r;
        return r;
    }

    // Full shadow weight of the colour-c edge leaving x (0 if none).
    Rat w_out(int x, Color c) {
        auto key = std::make_pair(x, c);
        auto it = w_memo.find(key);
        if (it != w_memo.end()) return it->second;
        const View::IncEdge* e = edge_dir_color(x, c, EdgeDir::Out);
        Rat w(0);
        if (e) w = std::min(residual(x, c), residual(e->other, c));
        w_memo[key] = w;
        return w;
    }
};

LocalOutput half_greedy_output(const View& v, int k, int cap) {
    if (v.radius() < std::min(k, cap))
        fail("ViewTooShallow", "greedy needs radius " + std::to_string(std::min(k, cap)) +
                                   ", view has " + std::to_string(v.radius()));
    HalfGreedyEval ev{v, cap, {}, {}};
    LocalOutput out;
    for (const auto& ie : v.incident(View::root())) {
        if (ie.color > cap) {
            out.weights[{ie.color, ie.dir}] = Rat(0);
            continue;
        }
        if (ie.dir == EdgeDir::Out)
            out.weights[{ie.color, ie.dir}] = ev.w_out(View::root(), ie.color) / 2;
        else if (ie.dir == EdgeDir::In)
            out.weights[{ie.color, ie.dir}] = ev.w_out(ie.other, ie.color) / 2;
        else
            fail("ModelMismatch", "half greedy expects a PO view");
    }
    return out;
}

} // namespace

LocalAlgorithm greedy_by_color(int k) {
    if (k < 1) fail("PaletteTooSmall", "greedy needs k >= 1");
    LocalAlgorithm a;
    a.model = Model::EC;
    a.id = "greedy:k=" + std::to_string(k);
    a.family = "greedy";
    a.palette = k;
    a.runtime = [k](int, int) { return k; };
    a.output_fn = [k](const View& v) { return greedy_output(v, k, k); };
    return a;
}

LocalAlgorithm uniform_regular(int d) {
    if (d < 1) fail("PaletteTooSmall", "uniform needs d >= 1");
    LocalAlgorithm a;
    a.model = Model::EC;
    a.id = "uniform:d=" + std::to_string(d);
    a.family = "uniform";
    a.runtime = [](int, int) { return 1; };
    a.output_fn = [d](const View& v) {
        if (v.radius() < 1) fail("ViewTooShallow", "uniform needs radius 1");
        LocalOutput out;
        for (const auto& ie : v.incident(View::root())) out.weights[{ie.color, ie.dir}] = Rat(1, d);
        return out;
    };
    return a;
}

LocalAlgorithm truncate(const LocalAlgorithm& a, int t_prime) {
    if (a.family != "greedy") fail("NotTruncatable", "only greedy can be truncated in v1");
    const int k = a.palette;
    if (t_prime >= a.runtime(0, k))
        fail("NotTruncatable", "t' = " + std::to_string(t_prime) + " is not below t = " +
                                   std::to_string(a.runtime(0, k)));
    LocalAlgorithm t;
    t.model = a.model;
    t.id = "trunc:" + a.id + ":t=" + std::to_string(t_prime);
    t.family = "trunc";
    t.palette = k;
    t.runtime = [t_prime](int, int) { return t_prime; };
    t.output_fn = [k, t_prime](const View& v) { return greedy_output(v, k, t_prime); };
    return t;
}

LocalAlgorithm po_half_greedy(int k) {
    if (k < 1) fail("PaletteTooSmall", "greedy needs k >= 1");
    LocalAlgorithm a;
    a.model = Model::PO;
    a.id = "pogreedy:k=" + std::to_string(k);
    a.family = "pogreedy";
    a.palette = k;
    a.runtime = [k](int, int) { return k; };
    a.output_fn = [k](const View& v) { return half_greedy_output(v, k, k); };
    return a;
}

namespace {

long long param_of(const std::string& id, const std::string& key) {
    auto pos = id.find(key + "=");
    if (pos == std::string::npos) fail("ParseError", "algorithm id '" + id + "' lacks " + key);
    return std::stoll(id.substr(pos + key.size() + 1));
}

} // namespace

LocalAlgorithm parse_algorithm(const std::string& id) {
    if (id.rfind("greedy:", 0) == 0) return greedy_by_color(static_cast<int>(param_of(id, "k")));
    if (id.rfind("uniform:", 0) == 0) return uniform_regular(static_cast<int>(param_of(id, "d")));
    if (id.rfind("pogreedy:", 0) == 0) return po_half_greedy(static_cast<int>(param_of(id, "k")));
    if (id.rfind("trunc:", 0) == 0) {
        std::string inner = id.substr(6);
        auto tpos = inner.rfind(":t=");
        if (tpos == std::string::npos) fail("ParseError", "bad truncation id '" + id + "'");
        LocalAlgorithm base = parse_algorithm(inner.substr(0, tpos));
        return truncate(base, static_cast<int>(std::stoll(inner.substr(tpos + 3))));
    }
    fail("ParseError", "unknown algorithm id '" + id + "'");
}

} // namespace lbx
