#include "ldrn/sim.hpp"

#include "formats.hpp"

#include <algorithm>
#include <random>

namespace ldrn {

namespace {

std::string dest_tag(std::size_t l) { return "destination " + std::to_string(l + 1); }

void check_shapes(const Network& net, const MulticastCode& code)
{
    if (!(code.field == net.field))
        throw Error("code is over " + code.field.name() + " but the network is over " + net.field.name());
    if (code.theta.size() != net.layers.size())
        throw Error("code has " + std::to_string(code.theta.size()) + " layers, network has " +
                    std::to_string(net.layers.size()));
    for (int i = 0; i < net.layer_count(); ++i) {
        if (static_cast<int>(code.theta[i].size()) != net.node_count(i))
            throw Error("code layer " + std::to_string(i + 1) + " has the wrong node count");
        for (int j = 0; j < net.node_count(i); ++j) {
            const Matrix& t = code.theta[i][j];
            const auto& d = net.layers[i][j];
            if (static_cast<int>(t.rows()) != d.tx || static_cast<int>(t.cols()) != d.rx)
                throw Error("local map of " + to_string(NodeId{i, j}) + " has shape " + std::to_string(t.rows()) +
                            "x" + std::to_string(t.cols()) + ", node is " + std::to_string(d.tx) + "x" +
                            std::to_string(d.rx));
        }
    }
    if (code.destinations.size() != net.destinations.size())
        throw Error("code has " + std::to_string(code.destinations.size()) + " destinations, network has " +
                    std::to_string(net.destinations.size()));
    const auto r = static_cast<std::size_t>(code.rate);
    if (code.source_ports.size() != r)
        throw Error("code lists " + std::to_string(code.source_ports.size()) + " source ports for rate " +
                    std::to_string(code.rate));
    for (int p : code.source_ports)
        if (p < 0 || p >= net.dims({0, 0}).rx)
            throw Error("source port " + std::to_string(p + 1) + " does not exist");
    for (std::size_t l = 0; l < code.destinations.size(); ++l) {
        const auto& d = code.destinations[l];
        if (d.node != net.destinations[l])
            throw Error(dest_tag(l) + " is " + to_string(d.node) + " in the code but " +
                        to_string(net.destinations[l]) + " in the network");
        if (d.ports.size() != r || d.decoder.rows() != r || d.decoder.cols() != r)
            throw Error(dest_tag(l) + " has a decoder or port list of the wrong size");
        for (int p : d.ports)
            if (p < 0 || p >= net.dims(d.node).rx)
                throw Error(dest_tag(l) + " lists receive port " + std::to_string(p + 1) + " which does not exist");
    }
}

// x_i = blockdiag(theta_i) y_i for a matrix whose rows are ports.
Matrix encode_layer(const Network& net, const MulticastCode& code, int i, const Matrix& y)
{
    Matrix x(net.field, static_cast<std::size_t>(net.tx_total(i)), y.cols());
    for (int j = 0; j < net.node_count(i); ++j) {
        const Matrix& t = code.theta[i][j];
        const auto rx0 = static_cast<std::size_t>(net.rx_offset({i, j}));
        const auto tx0 = static_cast<std::size_t>(net.tx_offset({i, j}));
        for (std::size_t q = 0; q < t.rows(); ++q)
            for (std::size_t p = 0; p < t.cols(); ++p) {
                const Elem c = t(q, p);
                if (c == 0)
                    continue;
                for (std::size_t col = 0; col < y.cols(); ++col)
                    x(tx0 + q, col) = net.field.add(x(tx0 + q, col), net.field.mul(c, y(rx0 + p, col)));
            }
    }
    return x;
}

std::vector<Elem> as_vector(const Matrix& column)
{
    return column.cols() == 1 ? column.column(0) : std::vector<Elem>{};
}

} // namespace

bool Trace::all_decoded() const
{
    return std::all_of(destinations.begin(), destinations.end(), [](const auto& d) { return d.ok; });
}

Trace simulate(const Network& net, const MulticastCode& code, std::span<const Elem> w)
{
    check_shapes(net, code);
    if (w.size() != static_cast<std::size_t>(code.rate))
        throw Error("message has length " + std::to_string(w.size()) + ", code rate is " + std::to_string(code.rate));
    for (Elem e : w)
        if (!net.field.contains(e))
            throw Error("message symbol " + std::to_string(e) + " outside " + net.field.name());

    Trace trace;
    trace.message.assign(w.begin(), w.end());
    Matrix y(net.field, static_cast<std::size_t>(net.rx_total(0)), 1);
    for (std::size_t t = 0; t < w.size(); ++t)
        y(static_cast<std::size_t>(code.source_ports[t]), 0) = w[t];
    for (int i = 0; i < net.layer_count(); ++i) {
        Matrix x = encode_layer(net, code, i, y);
        trace.y.push_back(as_vector(y));
        trace.x.push_back(as_vector(x));
        if (i + 1 < net.layer_count()) {
            y = multiply(net.transfer[i], x);
            y.set_labels({}, {});
        }
    }
    for (std::size_t l = 0; l < code.destinations.size(); ++l) {
        const auto& d = code.destinations[l];
        DestinationTrace dt;
        dt.node = d.node;
        const auto& yk = trace.y[static_cast<std::size_t>(d.node.layer)];
        const int off = net.rx_offset(d.node);
        for (int p : d.ports)
            dt.received.push_back(yk[static_cast<std::size_t>(off + p)]);
        dt.decoded = mat_vec(d.decoder, dt.received);
        dt.ok = dt.decoded == trace.message;
        trace.destinations.push_back(std::move(dt));
    }
    return trace;
}

std::vector<std::vector<std::vector<Elem>>> simulate_rounds(const Network& net_base, const RoundPlan& plan,
                                                            const MulticastCode& code,
                                                            const std::vector<std::vector<Elem>>& messages)
{
    if (messages.size() != plan.k)
        throw Error("expected " + std::to_string(plan.k) + " round messages, got " + std::to_string(messages.size()));
    const Network lifted = lift_network(net_base, plan.k);
    const Trace trace = simulate(lifted, code, pack(plan.lifted, messages));
    std::vector<std::vector<std::vector<Elem>>> out(plan.k);
    for (const auto& d : trace.destinations) {
        auto rounds = unpack(plan.lifted, d.decoded);
        for (std::size_t t = 0; t < plan.k; ++t)
            out[t].push_back(std::move(rounds[t]));
    }
    return out;
}

std::vector<std::vector<Elem>> sweep_messages(const Field& field, int rate, std::uint64_t seed, int random_count)
{
    const auto r = static_cast<std::size_t>(rate);
    std::uint64_t total = 1;
    bool small = true;
    for (std::size_t t = 0; t < r && small; ++t) {
        total *= field.order();
        small = total <= 256;
    }
    std::vector<std::vector<Elem>> out;
    if (small) {
        for (std::uint64_t n = 0; n < total; ++n) {
            std::vector<Elem> w(r);
            std::uint64_t rest = n;
            for (auto& e : w) {
                e = static_cast<Elem>(rest % field.order());
                rest /= field.order();
            }
            out.push_back(std::move(w));
        }
        return out;
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Elem> sym(0, field.order() - 1);
    for (int n = 0; n < random_count; ++n) {
        std::vector<Elem> w(r);
        for (auto& e : w)
            e = sym(rng);
        out.push_back(std::move(w));
    }
    return out;
}

SweepReport sweep(const Network& net, const MulticastCode& code, const std::vector<std::vector<Elem>>& messages)
{
    SweepReport report;
    for (const auto& w : messages) {
        const Trace t = simulate(net, code, w);
        ++report.messages;
        for (std::size_t l = 0; l < t.destinations.size(); ++l)
            if (!t.destinations[l].ok)
                report.failures.emplace_back(l, w);
    }
    return report;
}

std::vector<Matrix> global_coding_matrices(const Network& net, const MulticastCode& code)
{
    check_shapes(net, code);
    std::vector<Matrix> out;
    Matrix y(net.field, static_cast<std::size_t>(net.rx_total(0)), static_cast<std::size_t>(code.rate));
    for (std::size_t t = 0; t < code.source_ports.size(); ++t)
        y(static_cast<std::size_t>(code.source_ports[t]), t) = 1;
    for (int i = 0; i < net.layer_count(); ++i) {
        out.push_back(y);
        if (i + 1 < net.layer_count()) {
            y = multiply(net.transfer[i], encode_layer(net, code, i, y));
            y.set_labels({}, {});
        }
    }
    return out;
}

std::vector<std::string> verify_code(const Network& net, const MulticastCode& code)
{
    std::vector<std::string> out;
    try {
        check_shapes(net, code);
    }
    catch (const Error& e) {
        out.emplace_back(e.what());
        return out;
    }
    const auto ys = global_coding_matrices(net, code);
    const auto r = static_cast<std::size_t>(code.rate);
    std::vector<std::size_t> all_cols(r);
    for (std::size_t c = 0; c < r; ++c)
        all_cols[c] = c;

    if (!code.flows.empty() && code.flows.size() != code.destinations.size())
        out.push_back("code stores " + std::to_string(code.flows.size()) + " flows for " +
                      std::to_string(code.destinations.size()) + " destinations");
    for (std::size_t l = 0; l < code.destinations.size(); ++l) {
        const auto& d = code.destinations[l];
        if (l < code.flows.size()) {
            const Flow& fl = code.flows[l];
            auto fv = verify_flow(net, fl);
            if (fl.destination != d.node || fl.rate != code.rate)
                fv.push_back("flow does not match the destination or rate");
            for (const auto& v : fv)
                out.push_back(dest_tag(l) + ": " + v);
            if (fv.empty()) {
                for (int i = 0; i <= d.node.layer; ++i) {
                    std::vector<std::size_t> rows;
                    for (const auto& p : fl.p_set(i))
                        rows.push_back(static_cast<std::size_t>(net.rx_offset({p.layer, p.node}) + p.pos));
                    if (determinant(select(ys[static_cast<std::size_t>(i)], rows, all_cols)) == 0)
                        out.push_back(dest_tag(l) + ": flow rank condition fails at layer " + std::to_string(i + 1) +
                                      ", the flow's coding matrix must be nonsingular");
                }
            }
        }
        std::vector<std::size_t> rows;
        for (int p : d.ports)
            rows.push_back(static_cast<std::size_t>(net.rx_offset(d.node) + p));
        Matrix received = select(ys[static_cast<std::size_t>(d.node.layer)], rows, all_cols);
        Matrix product = multiply(d.decoder, received);
        product.set_labels({}, {});
        if (!(product == Matrix::identity(net.field, r)))
            out.push_back(dest_tag(l) + ": decoder does not invert the received coding matrix");
    }
    const SweepReport report = sweep(net, code, sweep_messages(net.field, code.rate));
    std::vector<std::size_t> failed;
    for (const auto& [l, w] : report.failures)
        if (std::find(failed.begin(), failed.end(), l) == failed.end())
            failed.push_back(l);
    std::sort(failed.begin(), failed.end());
    for (auto l : failed)
        out.push_back(dest_tag(l) + ": decode sweep failed");
    return out;
}

std::string trace_json(const Field& field, const Trace& trace)
{
    using jsonio::json;
    auto vec = [](const std::vector<Elem>& v) {
        json a = json::array();
        for (Elem e : v)
            a.push_back(e);
        return a;
    };
    json doc;
    doc["field"] = {{"p", field.characteristic()}, {"k", field.degree()}};
    doc["message"] = vec(trace.message);
    json layers = json::array();
    for (std::size_t i = 0; i < trace.y.size(); ++i)
        layers.push_back({{"layer", i + 1}, {"y", vec(trace.y[i])}, {"x", vec(trace.x[i])}});
    doc["layers"] = layers;
    json dests = json::array();
    for (const auto& d : trace.destinations)
        dests.push_back({{"layer", d.node.layer + 1},
                         {"node", d.node.node + 1},
                         {"received", vec(d.received)},
                         {"decoded", vec(d.decoded)},
                         {"ok", d.ok}});
    doc["destinations"] = dests;
    return jsonio::dump(doc);
}

} // namespace ldrn
