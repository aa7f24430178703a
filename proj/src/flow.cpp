#include "ldrn/flow.hpp"

#include "ldrn/error.hpp"
#include "formats.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace ldrn {

std::vector<PortLabel> Flow::p_set(int layer) const
{
    std::vector<PortLabel> out;
    for (int j = 0; j < static_cast<int>(layers.at(layer).size()); ++j) {
        auto pos = layers[layer][j].p_hat;
        std::sort(pos.begin(), pos.end());
        for (int p : pos)
            out.push_back({Side::P, layer, j, p});
    }
    return out;
}

std::vector<PortLabel> Flow::q_set(int layer) const
{
    std::vector<PortLabel> out;
    for (int j = 0; j < static_cast<int>(layers.at(layer).size()); ++j) {
        auto pos = layers[layer][j].q_hat;
        std::sort(pos.begin(), pos.end());
        for (int q : pos)
            out.push_back({Side::Q, layer, j, q});
    }
    return out;
}

std::optional<int> Flow::matched_p(const PortLabel& q) const
{
    if (q.side != Side::Q || q.layer < 0 || q.layer >= static_cast<int>(layers.size()) || q.node < 0 ||
        q.node >= static_cast<int>(layers[q.layer].size()))
        return std::nullopt;
    const NodeFlow& nf = layers[q.layer][q.node];
    for (std::size_t r = 0; r < nf.q_hat.size() && r < nf.p_hat.size(); ++r)
        if (nf.q_hat[r] == q.pos)
            return nf.p_hat[r];
    return std::nullopt;
}

namespace {

// Advances idx (strictly increasing, values < n) to the next combination in lexicographic order.
bool next_combination(std::vector<int>& idx, int n)
{
    const int r = static_cast<int>(idx.size());
    for (int i = r - 1; i >= 0; --i) {
        if (idx[i] < n - r + i) {
            ++idx[i];
            for (int j = i + 1; j < r; ++j)
                idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<int> first_combination(int r)
{
    std::vector<int> idx(static_cast<std::size_t>(r));
    std::iota(idx.begin(), idx.end(), 0);
    return idx;
}

class FlowSearch {
public:
    FlowSearch(const Network& net, NodeId sink, int rate)
        : net_(net), sink_(sink), rate_(rate), dead_(static_cast<std::size_t>(sink.layer + 1))
    {
        flow_.destination = sink;
        flow_.rate = rate;
        for (int i = 0; i <= sink.layer; ++i)
            flow_.layers.emplace_back(static_cast<std::size_t>(net.node_count(i)));
    }

    std::optional<Flow> run()
    {
        if (rate_ == 0)
            return flow_;
        if (rate_ > net_.dims({0, 0}).rx)
            return std::nullopt;
        flow_.layers[0][0].p_hat = first_combination(rate_);
        if (extend(0, {rate_}))
            return flow_;
        return std::nullopt;
    }

private:
    // Receive-port rows of layer i + 1 that the flow may use.
    std::vector<std::size_t> candidate_rows(int i) const
    {
        std::vector<std::size_t> rows;
        if (i + 1 == sink_.layer) {
            const int off = net_.rx_offset(sink_);
            for (int t = 0; t < net_.dims(sink_).rx; ++t)
                rows.push_back(static_cast<std::size_t>(off + t));
        }
        else {
            rows.resize(static_cast<std::size_t>(net_.rx_total(i + 1)));
            std::iota(rows.begin(), rows.end(), std::size_t{0});
        }
        return rows;
    }

    // Node owning a receive row of layer `layer`, and its position within the node.
    std::pair<int, int> rx_owner(int layer, std::size_t row) const
    {
        int off = 0;
        for (int k = 0; k < net_.node_count(layer); ++k) {
            const int n = net_.layers[layer][k].rx;
            if (static_cast<int>(row) < off + n)
                return {k, static_cast<int>(row) - off};
            off += n;
        }
        throw InvariantError("row outside layer");
    }

    bool extend(int i, const std::vector<int>& counts)
    {
        if (i == sink_.layer)
            return true;
        if (dead_[i].contains(counts))
            return false;
        if (try_layer(i, counts))
            return true;
        dead_[i].insert(counts);
        return false;
    }

    bool try_layer(int i, const std::vector<int>& counts)
    {
        const int nodes = net_.node_count(i);
        for (int j = 0; j < nodes; ++j)
            if (counts[j] > net_.layers[i][j].tx)
                return false;
        const auto rows = candidate_rows(i);
        if (static_cast<int>(rows.size()) < rate_)
            return false;

        const Matrix& g = net_.transfer[i];
        std::vector<std::size_t> all_cols;
        for (int j = 0; j < nodes; ++j)
            if (counts[j] > 0) {
                const int off = net_.tx_offset({i, j});
                for (int t = 0; t < net_.layers[i][j].tx; ++t)
                    all_cols.push_back(static_cast<std::size_t>(off + t));
            }
        if (static_cast<int>(rank(select(g, rows, all_cols))) < rate_)
            return false;

        // One combination per node; the tuple advances lexicographically, last node fastest.
        std::vector<std::vector<int>> combo(static_cast<std::size_t>(nodes));
        for (int j = 0; j < nodes; ++j)
            combo[j] = first_combination(counts[j]);
        while (true) {
            std::vector<std::size_t> cols;
            for (int j = 0; j < nodes; ++j) {
                const int off = net_.tx_offset({i, j});
                for (int pos : combo[j])
                    cols.push_back(static_cast<std::size_t>(off + pos));
            }
            if (try_columns(i, rows, cols, combo))
                return true;
            int j = nodes - 1;
            while (j >= 0 && !next_combination(combo[j], net_.layers[i][j].tx)) {
                combo[j] = first_combination(counts[j]);
                --j;
            }
            if (j < 0)
                return false;
        }
    }

    bool try_columns(int i, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols,
                     const std::vector<std::vector<int>>& combo)
    {
        const Matrix gc = select(net_.transfer[i], rows, cols);
        if (static_cast<int>(rank(gc)) < rate_)
            return false;
        std::vector<std::size_t> every_col(cols.size());
        std::iota(every_col.begin(), every_col.end(), std::size_t{0});

        const int next_nodes = net_.node_count(i + 1);
        auto pick = first_combination(rate_);
        do {
            std::vector<int> next_counts(static_cast<std::size_t>(next_nodes), 0);
            std::vector<std::size_t> local;
            for (int r : pick) {
                ++next_counts[rx_owner(i + 1, rows[r]).first];
                local.push_back(static_cast<std::size_t>(r));
            }
            if (i + 1 < sink_.layer && dead_[i + 1].contains(next_counts))
                continue;
            if (determinant(select(gc, local, every_col)) == 0)
                continue;

            for (int j = 0; j < net_.node_count(i); ++j)
                flow_.layers[i][j].q_hat = combo[j];
            for (auto& nf : flow_.layers[i + 1])
                nf.p_hat.clear();
            for (int r : pick) {
                const auto [node, pos] = rx_owner(i + 1, rows[r]);
                flow_.layers[i + 1][node].p_hat.push_back(pos);
            }
            if (extend(i + 1, next_counts))
                return true;
        } while (next_combination(pick, static_cast<int>(rows.size())));
        return false;
    }

    const Network& net_;
    NodeId sink_;
    int rate_;
    std::vector<std::set<std::vector<int>>> dead_;
    Flow flow_;
};

std::string node_tag(int layer, int node) { return to_string(NodeId{layer, node}); }

} // namespace

std::optional<Flow> find_flow(const Network& net, std::size_t dest, int rate)
{
    if (dest >= net.destinations.size())
        throw Error("unknown destination " + std::to_string(dest + 1));
    if (rate < 0)
        throw Error("flow rate must be non-negative");
    return FlowSearch(net, net.destinations[dest], rate).run();
}

std::vector<std::string> verify_flow(const Network& net, const Flow& flow)
{
    std::vector<std::string> out;
    const NodeId t = flow.destination;
    const int r = flow.rate;
    if (t.layer < 1 || t.layer >= net.layer_count() || t.node < 0 || t.node >= net.node_count(t.layer)) {
        out.push_back("flow destination does not exist");
        return out;
    }
    if (r < 0)
        out.push_back("negative rate");
    if (static_cast<int>(flow.layers.size()) != t.layer + 1) {
        out.push_back("flow must describe layers 1.." + std::to_string(t.layer + 1));
        return out;
    }
    bool labels_ok = true;
    for (int i = 0; i <= t.layer; ++i) {
        if (static_cast<int>(flow.layers[i].size()) != net.node_count(i)) {
            out.push_back("flow layer " + std::to_string(i + 1) + " has the wrong node count");
            return out;
        }
        for (int j = 0; j < net.node_count(i); ++j) {
            const auto& nf = flow.layers[i][j];
            const auto& d = net.layers[i][j];
            auto check = [&](const std::vector<int>& pos, int limit, const char* side) {
                std::set<int> seen;
                for (int p : pos)
                    if (p < 0 || p >= limit || !seen.insert(p).second) {
                        labels_ok = false;
                        out.push_back(std::string("invalid ") + side + " position in flow at " + node_tag(i, j));
                        return;
                    }
            };
            check(nf.p_hat, d.rx, "P");
            check(nf.q_hat, d.tx, "Q");
            const bool last = i == t.layer;
            if (!last && nf.p_hat.size() != nf.q_hat.size())
                out.push_back("property 1 violated at " + node_tag(i, j) + ": |P^|=" + std::to_string(nf.p_hat.size()) +
                              ", |Q^|=" + std::to_string(nf.q_hat.size()));
            if (last && !nf.q_hat.empty() && nf.q_hat.size() != nf.p_hat.size())
                out.push_back("property 1 violated at " + node_tag(i, j));
        }
    }
    for (int i = 0; i < t.layer; ++i) {
        std::size_t np = 0, nq = 0;
        for (const auto& nf : flow.layers[i]) {
            np += nf.p_hat.size();
            nq += nf.q_hat.size();
        }
        if (static_cast<int>(np) != r || static_cast<int>(nq) != r)
            out.push_back("property 2 violated at layer " + std::to_string(i + 1) + ": |P^|=" + std::to_string(np) +
                          ", |Q^|=" + std::to_string(nq) + ", rate " + std::to_string(r));
    }
    for (int k = 0; k < net.node_count(t.layer); ++k) {
        const auto n = static_cast<int>(flow.layers[t.layer][k].p_hat.size());
        if (k == t.node && n != r)
            out.push_back("property 3 violated: destination holds " + std::to_string(n) + " flow ports");
        if (k != t.node && n != 0)
            out.push_back("property 3 violated: " + node_tag(t.layer, k) + " holds flow ports");
    }
    if (!labels_ok || !out.empty())
        return out;
    for (int i = 0; i < t.layer; ++i) {
        const auto rows = flow.p_set(i + 1);
        const auto cols = flow.q_set(i);
        if (determinant(submatrix(net.transfer[i], rows, cols)) == 0)
            out.push_back("property 4 violated: G_" + std::to_string(i + 1) + " flow submatrix is singular");
    }
    return out;
}

std::vector<Elem> unicast_transmit(const Network& net, const Flow& flow, std::span<const Elem> w)
{
    const auto violations = verify_flow(net, flow);
    if (!violations.empty())
        throw Error("invalid flow: " + violations.front());
    if (static_cast<int>(w.size()) != flow.rate)
        throw Error("message length " + std::to_string(w.size()) + " does not match rate " + std::to_string(flow.rate));
    for (Elem e : w)
        if (!net.field.contains(e))
            throw Error("message entry outside " + net.field.name());
    const Field& f = net.field;
    const int r = flow.rate;
    const int kd = flow.destination.layer;

    // y carries the symbols, coding carries their global coding vectors.
    std::vector<Elem> y(static_cast<std::size_t>(net.rx_total(0)), 0);
    Matrix coding(f, y.size(), static_cast<std::size_t>(r));
    for (int t = 0; t < r; ++t) {
        const auto p = static_cast<std::size_t>(flow.layers[0][0].p_hat[t]);
        y[p] = w[t];
        coding(p, t) = 1;
    }
    for (int i = 0; i < kd; ++i) {
        std::vector<Elem> x(static_cast<std::size_t>(net.tx_total(i)), 0);
        Matrix xc(f, x.size(), static_cast<std::size_t>(r));
        for (int j = 0; j < net.node_count(i); ++j) {
            const auto& nf = flow.layers[i][j];
            const int rx_off = net.rx_offset({i, j});
            const int tx_off = net.tx_offset({i, j});
            for (std::size_t t = 0; t < nf.p_hat.size(); ++t) {
                const auto p = static_cast<std::size_t>(rx_off + nf.p_hat[t]);
                const auto q = static_cast<std::size_t>(tx_off + nf.q_hat[t]);
                x[q] = y[p];
                std::copy(coding.row(p).begin(), coding.row(p).end(), xc.row(q).begin());
            }
        }
        y = transfer(net, i, x);
        coding = multiply(net.transfer[i], xc);
    }
    auto ports = flow.layers[kd][flow.destination.node].p_hat;
    std::sort(ports.begin(), ports.end());
    const int off = net.rx_offset(flow.destination);
    std::vector<std::size_t> rows;
    std::vector<Elem> received;
    for (int p : ports) {
        rows.push_back(static_cast<std::size_t>(off + p));
        received.push_back(y[static_cast<std::size_t>(off + p)]);
    }
    std::vector<std::size_t> cols(static_cast<std::size_t>(r));
    std::iota(cols.begin(), cols.end(), std::size_t{0});
    auto decoded = solve(select(coding, rows, cols), received);
    if (!decoded)
        throw InvariantError("end-to-end flow transfer matrix is singular");
    return *decoded;
}

namespace jsonio {

json node_json(const NodeId& id) { return {{"layer", id.layer + 1}, {"node", id.node + 1}}; }

NodeId node_from_json(const json& j, const Path& path)
{
    require_object(j, path);
    return {static_cast<int>(get_int(j, "layer", path)) - 1, static_cast<int>(get_int(j, "node", path)) - 1};
}

json flow_to_json(const Flow& flow)
{
    json out;
    out["destination"] = node_json(flow.destination);
    out["rate"] = flow.rate;
    json layers = json::array();
    for (std::size_t i = 0; i < flow.layers.size(); ++i) {
        json nodes = json::array();
        for (std::size_t j = 0; j < flow.layers[i].size(); ++j) {
            const auto& nf = flow.layers[i][j];
            json p = json::array(), q = json::array(), match = json::array();
            for (int v : nf.p_hat)
                p.push_back(v + 1);
            for (int v : nf.q_hat)
                q.push_back(v + 1);
            for (std::size_t t = 0; t < nf.p_hat.size() && t < nf.q_hat.size(); ++t)
                match.push_back(json::array({nf.p_hat[t] + 1, nf.q_hat[t] + 1}));
            nodes.push_back({{"node", j + 1}, {"p", p}, {"q", q}, {"match", match}});
        }
        layers.push_back({{"layer", i + 1}, {"nodes", nodes}});
    }
    out["layers"] = layers;
    return out;
}

Flow flow_from_json(const json& j, const Path& path)
{
    require_object(j, path);
    Flow flow;
    flow.destination = node_from_json(key(j, "destination", path), path / "destination");
    flow.rate = static_cast<int>(get_int(j, "rate", path));
    const json& layers = key(j, "layers", path);
    require_array(layers, path / "layers");
    for (std::size_t i = 0; i < layers.size(); ++i) {
        const Path lp = (path / "layers")[i];
        require_object(layers[i], lp);
        const json& nodes = key(layers[i], "nodes", lp);
        require_array(nodes, lp / "nodes");
        std::vector<NodeFlow> row;
        for (std::size_t n = 0; n < nodes.size(); ++n) {
            const Path np = (lp / "nodes")[n];
            require_object(nodes[n], np);
            auto ints = [&](const char* name) {
                const json& arr = key(nodes[n], name, np);
                require_array(arr, np / name);
                std::vector<int> v;
                for (std::size_t t = 0; t < arr.size(); ++t)
                    v.push_back(static_cast<int>(as_int(arr[t], (np / name)[t])) - 1);
                return v;
            };
            NodeFlow nf;
            const auto p = ints("p");
            const auto q = ints("q");
            const json& match = key(nodes[n], "match", np);
            require_array(match, np / "match");
            std::set<int> mp, mq;
            for (std::size_t t = 0; t < match.size(); ++t) {
                const Path mpath = (np / "match")[t];
                if (!match[t].is_array() || match[t].size() != 2)
                    throw ParseError(mpath.str() + ": expected a [p, q] pair");
                const int a = static_cast<int>(as_int(match[t][0], mpath[0])) - 1;
                const int b = static_cast<int>(as_int(match[t][1], mpath[1])) - 1;
                nf.p_hat.push_back(a);
                nf.q_hat.push_back(b);
                mp.insert(a);
                mq.insert(b);
            }
            if (!match.empty()) {
                if (mp != std::set<int>(p.begin(), p.end()) || mq != std::set<int>(q.begin(), q.end()) ||
                    mp.size() != match.size() || mq.size() != match.size())
                    throw ParseError((np / "match").str() + ": matching is not a bijection between p and q");
            }
            else {
                nf.p_hat = p;
                nf.q_hat = q;
            }
            row.push_back(std::move(nf));
        }
        flow.layers.push_back(std::move(row));
    }
    return flow;
}

} // namespace jsonio

std::string save_flow(const Flow& flow) { return jsonio::dump(jsonio::flow_to_json(flow)); }

Flow load_flow(const std::string& text) { return jsonio::flow_from_json(jsonio::parse(text), jsonio::Path()); }

} // namespace ldrn
