#pragma once

#include "ldrn/error.hpp"
#include "ldrn/flow.hpp"
#include "ldrn/network.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace ldrn {

/// Per-destination bookkeeping while the transmit ports of one layer are being assigned.
struct DestinationState {
    std::size_t dest = 0;
    /// Row indices (within layer i + 1) of ∪_k P^l_{i+1}[k], canonical order. These are the rows of F.
    std::vector<std::size_t> next_rows;
    /// Transmit-port index (within layer i) owning each column of F and the matching row of A.
    std::vector<std::size_t> ledger;
    Matrix a;  // ledger.size() x R
    Matrix f;  // R x ledger.size()
    Matrix h;  // f * a
    Matrix h_inv;
};

/// The nonsingularity requirement a destination places on one transmit-port assignment.
struct PortConstraint {
    std::size_t dest = 0;
    /// True when the port lies on the destination's flow (its matched receive port is p_l).
    bool on_flow = false;
    std::vector<Elem> gamma;        // H^{-1} alpha, length R
    std::vector<Elem> matched_row;  // y_i(p_l) when on_flow, else empty
};

/**
 * Inductive state of the multicast construction at one layer.
 *
 * Holds the global coding matrices of the current layer (rows y_i(p) for every receive port and
 * x_i(q) for every transmit port assigned so far, each in F^{1xR}) and one DestinationState per
 * destination t_l with K_l >= i + 1. Every mutation re-checks that F_l A_l stays nonsingular and
 * throws InvariantError otherwise.
 */
class CodeState {
public:
    /// Layer-0 state. All flows must share a rate and the same source subset.
    static CodeState init(const Network& net, std::vector<Flow> flows);

    const Network& network() const noexcept { return *net_; }
    int layer() const noexcept { return layer_; }
    int rate() const noexcept { return rate_; }
    const std::vector<Flow>& flows() const noexcept { return flows_; }

    /// Global coding vectors y_i(p) of the current layer, one row per receive port.
    const Matrix& y() const noexcept { return y_; }
    /// Global coding vectors x_i(q) of the current layer; rows of unassigned ports are zero.
    const Matrix& x() const noexcept { return x_; }
    /// Local coefficients theta: row q holds the weights of node j's receive ports in x_i(q).
    const Matrix& local(int node) const { return theta_.at(layer_).at(static_cast<std::size_t>(node)); }

    /// Transmit ports of the current layer in canonical order, with the next one still to assign.
    std::size_t port_count() const;
    std::size_t next_port() const noexcept { return next_port_; }
    bool layer_done() const { return next_port_ == port_count(); }
    PortLabel port_label(std::size_t q) const;

    const std::vector<DestinationState>& active() const noexcept { return active_; }
    const DestinationState* find_active(std::size_t dest) const;

    /// gamma_l = H^{-1} alpha for transmit port q (index within the layer).
    std::vector<Elem> gamma(std::size_t dest, std::size_t q) const;

    /// Constraints of every active destination on port q.
    std::vector<PortConstraint> constraints(std::size_t q) const;

    /// Receive-port row indices (within the layer) of the node that owns transmit port q.
    std::vector<std::size_t> node_rows(std::size_t q) const;

    /// Records x_i(q) = theta * y_i(P_i[j]) for the next port and updates every active A_l, F_l.
    void apply_update(std::size_t q, const std::vector<Elem>& theta);

    /// Propagates y_{i+1} = G_i x_i, checks F_l A_l against it, finalises destinations reached at
    /// layer i + 1 and re-initialises the rest.
    void advance_layer();

    bool finished() const noexcept { return finished_; }
    const std::vector<std::optional<Matrix>>& decoders() const noexcept { return decoders_; }
    const std::vector<std::vector<Matrix>>& all_local() const noexcept { return theta_; }
    /// Flow rank condition matrix y_i(∪_j P^l_i[j]) for destination l at the current layer.
    Matrix condition_matrix(std::size_t dest) const;

private:
    CodeState() = default;
    void start_layer();
    void refresh(DestinationState& s) const;

    const Network* net_ = nullptr;
    std::vector<Flow> flows_;
    int rate_ = 0;
    int layer_ = 0;
    int last_layer_ = 0;
    std::size_t next_port_ = 0;
    bool finished_ = false;
    Matrix y_;
    Matrix x_;
    std::vector<DestinationState> active_;
    std::vector<std::vector<Matrix>> theta_;
    std::vector<std::optional<Matrix>> decoders_;
};

/// Value of the constraint's scalar, 1 + (u - y_i(p_l)) gamma_l or 1 + u gamma_l. Nonzero means satisfied.
Elem constraint_value(const Field& field, const PortConstraint& c, std::span<const Elem> u);

/// A chosen coding vector for one transmit port, plus what led to it.
struct Assignment {
    std::vector<Elem> theta;  // weights over the node's receive ports
    std::vector<Elem> u;      // x_i(q), length R
    // Deterministic mode.
    std::vector<std::size_t> w_set;
    std::vector<Elem> w;
    Elem sigma = 0;
    // Randomized mode.
    int attempts = 0;
};

/// Raised when |F| <= g makes the deterministic construction inapplicable.
class FieldTooSmall : public Error {
public:
    using Error::Error;
};

/// Raised when the randomized assignment keeps drawing tau = 0.
class RetriesExhausted : public Error {
public:
    using Error::Error;
};

/**
 * Given (a_t, b_t) pairs with a_t . b_t != 0, returns coefficients c over the a_t with
 * (sum c_t a_t) . b_s != 0 for every s. Needs n <= |F|.
 */
std::vector<Elem> combine_nonorthogonal(const Field& field, const std::vector<std::vector<Elem>>& a,
                                        const std::vector<std::vector<Elem>>& b);

/// Deterministic choice of x_i(q) for the next port. Throws FieldTooSmall when |F| <= g.
Assignment assign_deterministic(const CodeState& state, std::size_t q);

/// One uniform draw of theta; `accepted` reports tau != 0.
struct Draw {
    std::vector<Elem> theta;
    std::vector<Elem> u;
    bool accepted = false;
    std::vector<std::size_t> zero_factors;  // destinations whose factor vanished
};
Draw draw_random(const CodeState& state, std::size_t q, std::mt19937_64& rng);

/// Redraws until tau != 0, at most max_retries + 1 draws. Throws RetriesExhausted with the zero factors.
Assignment assign_randomized(const CodeState& state, std::size_t q, std::mt19937_64& rng, int max_retries);

enum class Mode { Deterministic, Randomized };

struct TranscriptEntry {
    PortLabel port;
    Assignment assignment;
    /// det(F_l A_l) after the update, per active destination.
    std::vector<std::pair<std::size_t, Elem>> det_h;
};

struct BuildOptions {
    Mode mode = Mode::Deterministic;
    std::uint64_t seed = 1;
    int max_retries = 20;
    /// Defaults to min(multicast capacity, |P_1[1]|).
    std::optional<int> rate;
    int jobs = 1;
    std::vector<TranscriptEntry>* transcript = nullptr;
};

struct DestinationCode {
    NodeId node;
    std::vector<int> ports;  // P^l_{K_l}[d_l] positions, ascending
    Matrix decoder;          // inverse of y_{K_l}(ports)

    bool operator==(const DestinationCode&) const = default;
};

/// Linear multicast code: local encoders for every node plus one decoder per destination.
struct MulticastCode {
    Field field;
    int rate = 0;
    /// Source receive positions carrying the message (P^l_1[1], shared by every destination).
    std::vector<int> source_ports;
    /// theta[i][j] is |Q_i[j]| x |P_i[j]|.
    std::vector<std::vector<Matrix>> theta;
    std::vector<DestinationCode> destinations;
    /// The flows the code was built on, kept so verification can re-check the flow rank condition.
    std::vector<Flow> flows;

    bool operator==(const MulticastCode&) const = default;
};

/// Flows for every destination, then the layer-by-layer assignment. Throws on infeasible rate.
MulticastCode build_code(const Network& net, const BuildOptions& options = {});

std::string save_code(const MulticastCode& code);
MulticastCode load_code(const std::string& text);
std::string transcript_json(const Field& field, const std::vector<TranscriptEntry>& transcript);

} // namespace ldrn
