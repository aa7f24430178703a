#pragma once

#include "ldrn/multicast.hpp"
#include "ldrn/rounds.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ldrn {

struct DestinationTrace {
    NodeId node;
    std::vector<Elem> received;
    std::vector<Elem> decoded;
    bool ok = false;
};

/// Full intermediate vectors of one transmission. y[i] and x[i] cover every port of layer i.
struct Trace {
    std::vector<Elem> message;
    std::vector<std::vector<Elem>> y;
    std::vector<std::vector<Elem>> x;
    std::vector<DestinationTrace> destinations;

    bool all_decoded() const;
};

/// Sends w through the coded network. Throws ldrn::Error when the code does not fit the network.
Trace simulate(const Network& net, const MulticastCode& code, std::span<const Elem> w);

/// Packs one message per round, sends them in a single use over the lifted field and unpacks.
/// Result[t][l] is round t's decoded message at destination l.
std::vector<std::vector<std::vector<Elem>>> simulate_rounds(const Network& net_base, const RoundPlan& plan,
                                                            const MulticastCode& code,
                                                            const std::vector<std::vector<Elem>>& messages);

/// Messages used for a decode sweep: all |F|^R of them when that is at most 256, else `random_count` seeded draws.
std::vector<std::vector<Elem>> sweep_messages(const Field& field, int rate, std::uint64_t seed = 1,
                                              int random_count = 100);

struct SweepReport {
    std::size_t messages = 0;
    /// (destination index, message) for every failed decode.
    std::vector<std::pair<std::size_t, std::vector<Elem>>> failures;
};
SweepReport sweep(const Network& net, const MulticastCode& code, const std::vector<std::vector<Elem>>& messages);

/**
 * Checks a code against its network from scratch: shapes, the flow rank condition at every layer along
 * the stored flows, decoder inverses and a decode sweep. Each violation names the destination
 * it concerns. Empty means valid.
 */
std::vector<std::string> verify_code(const Network& net, const MulticastCode& code);

/// Global coding matrices y_i (rx_total x R) of every layer under the code's local maps.
std::vector<Matrix> global_coding_matrices(const Network& net, const MulticastCode& code);

std::string trace_json(const Field& field, const Trace& trace);

} // namespace ldrn
