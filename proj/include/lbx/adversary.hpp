#pragma once

#include <cstdint>
#include <variant>

#include "lbx/covers.hpp"
#include "lbx/locality.hpp"

namespace lbx {

// One step of the inductive construction: radius-i views at g and h agree,
// the outputs disagree on the colour-c loop present at both.
struct WitnessPair {
    int i = 0;
    ColoredMultigraph G, H;
    NodeId g = 0, h = 0;
    Color c = 1;
    LocalOutput out_g, out_h;
    std::string branch; // "base", "G" or "H"
};

// Concrete refutation: a simple graph on which the algorithm's output is not
// a maximal fractional matching.
struct FailureWitness {
    ColoredMultigraph base;    // offending loopy multigraph
    ColoredMultigraph lifted;  // simple EC lift of it
    CoveringMap cover;         // lifted -> base
    FractionalMatching fm;     // the algorithm's output on the lift
    MaximalityReport report;
    MaximalityViolation violation; // the headline entry
    NodeId base_node = -1;         // unsaturated node of the base graph
};

struct LowerBoundCertificate {
    std::string algorithm;
    int delta = 0;
    std::vector<WitnessPair> pairs; // i = 0 .. delta-2
    int min_runtime = 0;            // delta - 1
};

using StepOutcome = std::variant<WitnessPair, FailureWitness>;
using AdversaryResult = std::variant<LowerBoundCertificate, FailureWitness>;

struct PairCheck {
    std::string name;
    bool pass = true;
    std::string detail;
};

struct PairReport {
    std::vector<PairCheck> checks;
    bool ok() const;
};

// G0 = one node with delta differently coloured loops; H0 removes the lowest
// nonzero-weight loop. Returns a FailureWitness when either graph is left
// unsaturated.
StepOutcome base_case(const LocalAlgorithm& a, int delta, std::uint64_t seed = 1);

// (G - e) + (H - f) joined by a fresh colour-c edge {g, h}; node ids and eids
// are preserved, so inputs must be disjoint.
struct Mixed {
    ColoredMultigraph graph;
    EdgeId mixing_eid = -1;
};
Mixed mix(const ColoredMultigraph& G, EdgeId e, const ColoredMultigraph& H, EdgeId f);

// Unfold both loops, mix, and chase the output disagreement with the
// propagation walk to the next witness pair.
StepOutcome adversary_step(const LocalAlgorithm& a, const WitnessPair& pair, int delta,
                           std::uint64_t seed = 1);

// Recomputes P1 (view congruence + exact output disagreement at the colour-c
// loop), P2 (loop counts >= delta-1-i) and P3 (trees ignoring loops) from
// scratch.
PairReport verify_pair(const LocalAlgorithm& a, const WitnessPair& pair, int delta);

struct AdversaryOptions {
    int max_delta = 14; // 2^delta growth guardrail
    std::uint64_t seed = 1;
};

AdversaryResult run_adversary(const LocalAlgorithm& a, int delta,
                              const AdversaryOptions& opts = {});

// Certificate / witness serialisation and plain-text rendering.
std::string encode_certificate(const LowerBoundCertificate& cert);
LowerBoundCertificate decode_certificate(const std::string& text);
std::string encode_failure_witness(const FailureWitness& fw);

std::string render_certificate(const LowerBoundCertificate& cert);
std::string render_failure_witness(const FailureWitness& fw);
std::string render_pair_report(const PairReport& rep);

} // namespace lbx
