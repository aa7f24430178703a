#pragma once

#include "ldrn/network.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace ldrn {

/// Smallest k with p^k >= g + 1, by integer arithmetic. Requires p prime and g >= 1.
std::uint32_t required_rounds(std::uint32_t p, std::uint64_t g);

struct RoundPlan {
    std::uint32_t p = 2;
    std::uint64_t g = 1;
    std::uint32_t k = 1;
    Field lifted;
};

/// Plan for a prime-field network with the given number of destinations.
RoundPlan make_round_plan(std::uint32_t p, std::uint64_t g);

/// Same topology over GF(p^k); every transfer entry becomes the matching constant. Requires a prime field.
Network lift_network(const Network& net, std::uint32_t k);

/// Round t of each entry becomes the coefficient of x^t, so entry e packs to sum_t v_t[e] p^t.
std::vector<Elem> pack(const Field& extension, const std::vector<std::vector<Elem>>& rounds);
std::vector<std::vector<Elem>> unpack(const Field& extension, std::span<const Elem> packed);

} // namespace ldrn
