#pragma once

#include "ldrn/network.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ldrn {

/// Port subsets of one node. p_hat[r] is matched with q_hat[r]; positions are zero-based within the node.
struct NodeFlow {
    std::vector<int> p_hat;
    std::vector<int> q_hat;

    bool operator==(const NodeFlow&) const = default;
};

/**
 * A rate-R unicast flow from the source to one destination v_K(d).
 *
 * layers[i][j] holds the subsets of node v_i(j) for every layer i <= K. Layers before K carry
 * matched P/Q subsets; layer K carries only the R receive ports of the destination, because the
 * destination's transmit side plays no part in delivering the message.
 */
struct Flow {
    NodeId destination;
    int rate = 0;
    std::vector<std::vector<NodeFlow>> layers;

    /// Union of P̂_i[j] over j in canonical (node, position) order.
    std::vector<PortLabel> p_set(int layer) const;
    /// Union of Q̂_i[j] over j in canonical (node, position) order.
    std::vector<PortLabel> q_set(int layer) const;
    /// Position of the receive port matched with transmit port q, if q is part of the flow.
    std::optional<int> matched_p(const PortLabel& q) const;

    bool operator==(const Flow&) const = default;
};

/**
 * Searches for a rate-R flow to destinations[dest].
 *
 * Layer-by-layer backtracking: for each layer, column subsets with the per-node sizes fixed by the
 * previous layer are tried in lexicographic order, and for each one the R-row subsets of the next
 * layer's receive ports (restricted to the destination's ports on the last hop) in lexicographic
 * order; a pair is accepted when the submatrix is nonsingular. Dead ends are memoised by the
 * per-node counts they leave at the next layer, which is all the future depends on. P̂_1[1] is
 * always the first R source ports, and matchings pair P̂ and Q̂ positionally.
 *
 * Returns nullopt when no flow exists. rate = 0 yields the empty flow.
 */
std::optional<Flow> find_flow(const Network& net, std::size_t dest, int rate);

/// Checks the four flow properties plus label sanity. Empty means valid.
std::vector<std::string> verify_flow(const Network& net, const Flow& flow);

/// Routes w along the flow by port copying and decodes it at the destination. Throws on an invalid flow.
std::vector<Elem> unicast_transmit(const Network& net, const Flow& flow, std::span<const Elem> w);

std::string save_flow(const Flow& flow);
Flow load_flow(const std::string& text);

} // namespace ldrn
