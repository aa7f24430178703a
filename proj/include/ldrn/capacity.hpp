#pragma once

#include "ldrn/network.hpp"

#include <cstddef>
#include <vector>

namespace ldrn {

/// Partition (A, B) of the nodes. source_side[i][j] is true when v_i(j) is in A.
struct Cut {
    std::vector<std::vector<bool>> source_side;

    bool operator==(const Cut&) const = default;
};

/// Throws ldrn::Error unless the cut covers every node and keeps the source in A and `sink` in B.
void check_cut(const Network& net, const Cut& cut, NodeId sink);

/// Sum over layers of rank G_i(rows of B-nodes in layer i + 1, columns of A-nodes in layer i).
int cut_capacity(const Network& net, const Cut& cut);

struct MinCut {
    int value = 0;
    Cut cut;
};

/**
 * Exact unicast min-cut to destinations[dest] by exhaustive enumeration of all 2^(n-2) cuts.
 *
 * Free nodes are taken in (layer, node) order and bit b of the counter puts free node b in A.
 * Ties keep the first cut in counter order. `jobs` > 1 splits the counter range across threads;
 * the result does not depend on it.
 */
MinCut min_cut(const Network& net, std::size_t dest, int jobs = 1);

/// min over destinations of min_cut. Throws ldrn::Error when there are no destinations.
int multicast_capacity(const Network& net, int jobs = 1);

} // namespace ldrn
