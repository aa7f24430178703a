#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace ldrn {

/// A node v_i(j). Both indices are zero-based in memory and one-based in files and messages.
struct NodeId {
    int layer = 0;
    int node = 0;

    auto operator<=>(const NodeId&) const = default;
};

enum class Side : std::uint8_t { P, Q };

/// A receive (P) or transmit (Q) coordinate of one node. Labels of different layers and sides never collide.
struct PortLabel {
    Side side = Side::P;
    int layer = 0;
    int node = 0;
    int pos = 0;

    auto operator<=>(const PortLabel&) const = default;
};

std::string to_string(const NodeId& id);
std::string to_string(const PortLabel& label);

} // namespace ldrn
