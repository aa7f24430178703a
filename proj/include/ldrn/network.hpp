#pragma once

#include "ldrn/gf.hpp"
#include "ldrn/labels.hpp"
#include "ldrn/matrix.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ldrn {

/// Receive (|P_i[j]|) and transmit (|Q_i[j]|) dimensions of one node, counted in field symbols.
struct NodeDims {
    int rx = 0;
    int tx = 0;

    bool operator==(const NodeDims&) const = default;
};

/**
 * A layered linear deterministic relay network.
 *
 * Layer 0 holds the single source. transfer[i] maps the transmitted vector of layer i to the
 * received vector of layer i + 1; its rows are the P ports of layer i + 1 and its columns the
 * Q ports of layer i, both in (node, position) order. After load() or generate_random() every
 * transfer matrix carries those port labels.
 */
struct Network {
    Field field;
    std::vector<std::vector<NodeDims>> layers;
    std::vector<Matrix> transfer;
    std::vector<NodeId> destinations;

    int layer_count() const noexcept { return static_cast<int>(layers.size()); }
    int node_count(int layer) const { return static_cast<int>(layers.at(layer).size()); }
    const NodeDims& dims(NodeId id) const { return layers.at(id.layer).at(id.node); }
    int total_nodes() const;

    /// Sum of receive (transmit) dimensions over a layer.
    int rx_total(int layer) const;
    int tx_total(int layer) const;
    /// Index of the node's first port within its layer's y (x) vector.
    int rx_offset(NodeId id) const;
    int tx_offset(NodeId id) const;

    std::vector<PortLabel> p_ports(int layer) const;
    std::vector<PortLabel> q_ports(int layer) const;
    std::vector<PortLabel> p_ports(NodeId id) const;
    std::vector<PortLabel> q_ports(NodeId id) const;

    /// Attach canonical port labels to every transfer matrix. Requires consistent dimensions.
    void label_transfer();

    bool operator==(const Network&) const = default;
};

/// Every invariant violation, in a stable order. Empty means valid.
std::vector<std::string> validate(const Network& net);

/// y_{i+1} = G_i x_i for a zero-based layer index i.
std::vector<Elem> transfer(const Network& net, int layer, std::span<const Elem> x);

/// Parses the JSON network format. Throws ParseError (schema) or ValidationError (model invariants).
Network load_network(const std::string& text);
std::string save_network(const Network& net);

struct DestinationSpec {
    int count = 1;
    /// One-based layers destinations may be drawn from. Empty means every layer from 2 on.
    std::vector<int> layers;
};

struct GeneratorParams {
    std::uint64_t seed = 1;
    std::vector<int> node_counts{1, 2, 1};
    int dim_min = 1;
    int dim_max = 3;
    double density = 1.0;
    std::uint32_t p = 2;
    std::uint32_t k = 1;
    DestinationSpec destinations;
};

/**
 * Seeded random instance. Entries of every G_i are uniform over the field and then zeroed with
 * probability 1 - density. Node dimensions are uniform in [dim_min, dim_max], except that the
 * source receives exactly as many symbols as it transmits. Destinations are distinct nodes drawn
 * from the allowed layers and are listed in (layer, node) order.
 */
Network generate_random(const GeneratorParams& params);

} // namespace ldrn
