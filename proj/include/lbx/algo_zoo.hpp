#pragma once

#include "lbx/locality.hpp"

namespace lbx {

// Colour-sequential greedy (EC, runtime k): the weight of a colour-c edge is
// min of the endpoints' residuals after colours < c.
LocalAlgorithm greedy_by_color(int k);

// 1/d on every incident slot (EC, runtime 1). Maximal on d-regular graphs,
// infeasible on higher-degree nodes; exists to exercise the verifier.
LocalAlgorithm uniform_regular(int d);

// Greedy with colours > t' zeroed (runtime t' < t(a)); builds the o(Delta)
// candidates the adversary must defeat. Greedy family only.
LocalAlgorithm truncate(const LocalAlgorithm& a, int t_prime);

// PO counterpart of greedy (runtime k): each directed edge carries half the
// greedy weight of its tail's colour slot. On doubled EC graphs the
// antiparallel halves sum back to the EC greedy weight.
LocalAlgorithm po_half_greedy(int k);

// Resolves "greedy:k=8", "uniform:d=3", "trunc:greedy:k=8:t=3", "pogreedy:k=4".
LocalAlgorithm parse_algorithm(const std::string& id);

} // namespace lbx
