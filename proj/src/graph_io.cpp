#include "lbx/graph_io.hpp"

#include <algorithm>
#include <tuple>

#include <json.hpp>

namespace lbx {

using ordered_json = nlohmann::ordered_json;

std::string encode_graph(const ColoredMultigraph& g) {
    ordered_json doc;
    doc["model"] = to_string(g.model());
    doc["k"] = g.color_count();

    ordered_json nodes = ordered_json::array();
    for (NodeId v : g.nodes()) {
        ordered_json n;
        n["id"] = v;
        if (auto l = g.label(v)) n["label"] = *l;
        nodes.push_back(std::move(n));
    }
    doc["nodes"] = std::move(nodes);

    if (g.model() == Model::OI && g.order()) doc["order"] = *g.order();

    std::vector<EdgeRec> es(g.edges());
    std::sort(es.begin(), es.end(), [](const EdgeRec& a, const EdgeRec& b) {
        return std::tie(a.u, a.v, a.color, a.directed) < std::tie(b.u, b.v, b.color, b.directed);
    });
    ordered_json edges = ordered_json::array();
    for (const EdgeRec& e : es) {
        ordered_json j;
        j["u"] = e.u;
        j["v"] = e.v;
        j["color"] = e.color;
        j["directed"] = e.directed;
        edges.push_back(std::move(j));
    }
    doc["edges"] = std::move(edges);

    return doc.dump(2) + "\n";
}

ColoredMultigraph decode_graph(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const std::exception& e) {
        fail("ParseError", e.what());
    }
    if (!doc.is_object()) fail("ParseError", "top level is not an object");

    GraphSpec spec;
    try {
        spec.model = model_from_string(doc.at("model").get<std::string>());
        spec.k = doc.at("k").get<int>();
        for (const auto& n : doc.at("nodes")) {
            GraphSpec::Node node;
            node.id = n.at("id").get<NodeId>();
            if (n.contains("label")) node.label = n.at("label").get<long long>();
            spec.nodes.push_back(node);
        }
        if (doc.contains("order")) spec.order = doc.at("order").get<std::vector<NodeId>>();
        for (const auto& e : doc.at("edges")) {
            GraphSpec::Edge edge;
            edge.u = e.at("u").get<NodeId>();
            edge.v = e.at("v").get<NodeId>();
            edge.color = e.at("color").get<Color>();
            edge.directed = e.at("directed").get<bool>();
            spec.edges.push_back(edge);
        }
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        fail("ParseError", e.what());
    }
    return must_build(spec);
}

} // namespace lbx
