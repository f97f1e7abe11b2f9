#pragma once

#include <cstdint>
#include <optional>

#include "lbx/algo_zoo.hpp"
#include "lbx/canon_order.hpp"
#include "lbx/covers.hpp"

namespace lbx {

// G with every undirected colour-c edge replaced by antiparallel directed
// colour-c edges; an EC loop becomes one directed loop.
struct DoubledGraph {
    ColoredMultigraph po;
    // EC eid -> (u->v eid, v->u eid); loops map to the same eid twice.
    std::map<EdgeId, std::pair<EdgeId, EdgeId>> directed_pair;
};
DoubledGraph double_graph(const ColoredMultigraph& ec);

// EC algorithm simulating a PO algorithm on the doubled view; the weight of
// an undirected slot is the sum of the two directed weights. Valid on EC
// graphs of max degree delta/2 relative to the PO algorithm's delta.
LocalAlgorithm ec_to_po(const LocalAlgorithm& a_po);

// PO algorithm simulating an OI algorithm on the canonically ordered cover
// view: A_PO(tau) := A_OI(tau, order).
LocalAlgorithm po_to_oi(const LocalAlgorithm& a_oi);

// The OI half-greedy: ignores the order decoration entirely.
LocalAlgorithm oi_order_ignoring_greedy(int k);

struct BinaryLocalAlgorithm {
    Model model = Model::ID;
    std::string id;
    std::function<int(int, int)> runtime;
    std::function<int(const View&)> output_fn; // 0 or 1
};

// 1 iff the algorithm's output saturates the view's root exactly.
BinaryLocalAlgorithm saturation_indicator(const LocalAlgorithm& a_id);

// Every (m+1)-th identifier of I: positions 0, m+1, 2(m+1), ...
std::vector<long long> sparse_subset(const std::vector<long long>& ids, int m);

// Max nodes of a radius-`radius` ball in a simple graph of max degree delta.
long long max_ball_nodes(int delta, int radius);

// Any algorithm output rendered comparable.
using Observable = std::function<std::string(const View&)>;
Observable observe(const LocalAlgorithm& a);
Observable observe(const BinaryLocalAlgorithm& a);

// Ramsey test fixture: 0 on even identifiers, the raw identifier on odd
// ones; order-invariant exactly on the even numbers.
Observable parity_probe();

// Exhaustive finite shadow of the Naor-Stockmeyer lemma: the lexicographically
// first q-subset of the universe on which the output depends only on the
// relative order of the drawn identifiers, over every arrangement of the
// pattern's nodes. Guardrails: pattern <= 3 nodes, universe <= 24.
std::optional<std::vector<long long>> ramsey_search(const Observable& algo, const View& pattern,
                                                    const std::vector<long long>& universe,
                                                    int q);

struct InvarianceViolation {
    std::string check; // "saturation" | "output-equality"
    std::vector<long long> phi1, phi2; // assignments, listed by rank
    std::string out1, out2;
};

struct InvarianceReport {
    bool pass = true;
    int trials = 0;
    std::vector<InvarianceViolation> violations;
};

// Lemma-4/5 checker: on the canonically ordered cover ball of a loopy PO
// graph, samples order-respecting identifier assignments from J (single-node
// changes and arbitrary pairs) and checks root saturation plus output
// equality under the ID algorithm.
InvarianceReport check_order_invariance(const LocalAlgorithm& a_id, const ColoredMultigraph& g,
                                        const std::vector<long long>& J, int trials,
                                        std::uint64_t seed);

std::string encode_invariance_report(const InvarianceReport& rep);

} // namespace lbx
