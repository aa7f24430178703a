#include "ldrn/network.hpp"

#include "ldrn/error.hpp"
#include "json_util.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace ldrn {

using json = nlohmann::ordered_json;

int Network::total_nodes() const
{
    int n = 0;
    for (const auto& layer : layers)
        n += static_cast<int>(layer.size());
    return n;
}

int Network::rx_total(int layer) const
{
    int n = 0;
    for (const auto& d : layers.at(layer))
        n += d.rx;
    return n;
}

int Network::tx_total(int layer) const
{
    int n = 0;
    for (const auto& d : layers.at(layer))
        n += d.tx;
    return n;
}

int Network::rx_offset(NodeId id) const
{
    int n = 0;
    for (int j = 0; j < id.node; ++j)
        n += layers.at(id.layer).at(j).rx;
    return n;
}

int Network::tx_offset(NodeId id) const
{
    int n = 0;
    for (int j = 0; j < id.node; ++j)
        n += layers.at(id.layer).at(j).tx;
    return n;
}

std::vector<PortLabel> Network::p_ports(NodeId id) const
{
    std::vector<PortLabel> out;
    for (int pos = 0; pos < dims(id).rx; ++pos)
        out.push_back({Side::P, id.layer, id.node, pos});
    return out;
}

std::vector<PortLabel> Network::q_ports(NodeId id) const
{
    std::vector<PortLabel> out;
    for (int pos = 0; pos < dims(id).tx; ++pos)
        out.push_back({Side::Q, id.layer, id.node, pos});
    return out;
}

std::vector<PortLabel> Network::p_ports(int layer) const
{
    std::vector<PortLabel> out;
    for (int j = 0; j < node_count(layer); ++j) {
        auto ports = p_ports(NodeId{layer, j});
        out.insert(out.end(), ports.begin(), ports.end());
    }
    return out;
}

std::vector<PortLabel> Network::q_ports(int layer) const
{
    std::vector<PortLabel> out;
    for (int j = 0; j < node_count(layer); ++j) {
        auto ports = q_ports(NodeId{layer, j});
        out.insert(out.end(), ports.begin(), ports.end());
    }
    return out;
}

void Network::label_transfer()
{
    for (int i = 0; i + 1 < layer_count() && i < static_cast<int>(transfer.size()); ++i)
        transfer[i].set_labels(p_ports(i + 1), q_ports(i));
}

std::vector<std::string> validate(const Network& net)
{
    std::vector<std::string> out;
    const int m = net.layer_count();
    if (m < 2)
        out.push_back("network needs at least 2 layers, found " + std::to_string(m));
    if (m >= 1 && net.node_count(0) != 1)
        out.push_back("layer 1 must hold exactly one node (the source), found " + std::to_string(net.node_count(0)));
    bool dims_ok = true;
    for (int i = 0; i < m; ++i) {
        if (net.layers[i].empty() && i > 0)
            out.push_back("layer " + std::to_string(i + 1) + " has no nodes");
        for (int j = 0; j < net.node_count(i); ++j) {
            const auto& d = net.layers[i][j];
            if (d.rx < 0 || d.tx < 0) {
                dims_ok = false;
                out.push_back("negative dimension at node " + to_string(NodeId{i, j}));
            }
        }
    }
    if (static_cast<int>(net.transfer.size()) != std::max(m - 1, 0))
        out.push_back("expected " + std::to_string(std::max(m - 1, 0)) + " transfer matrices, found " +
                      std::to_string(net.transfer.size()));
    for (int i = 0; i < static_cast<int>(net.transfer.size()) && i + 1 < m; ++i) {
        const Matrix& g = net.transfer[i];
        if (!(g.field() == net.field))
            out.push_back("field mismatch at layer " + std::to_string(i + 1));
        if (dims_ok && (static_cast<int>(g.rows()) != net.rx_total(i + 1) ||
                        static_cast<int>(g.cols()) != net.tx_total(i))) {
            out.push_back("dimension mismatch at layer " + std::to_string(i + 1) + ": G_" + std::to_string(i + 1) +
                          " is " + std::to_string(g.rows()) + "x" + std::to_string(g.cols()) + ", expected " +
                          std::to_string(net.rx_total(i + 1)) + "x" + std::to_string(net.tx_total(i)));
            continue;
        }
        if (dims_ok && g.has_labels() && (g.row_labels() != net.p_ports(i + 1) || g.col_labels() != net.q_ports(i)))
            out.push_back("transfer matrix labels at layer " + std::to_string(i + 1) + " are not canonical");
        for (Elem e : g.data())
            if (!net.field.contains(e)) {
                out.push_back("entry outside " + net.field.name() + " at layer " + std::to_string(i + 1));
                break;
            }
    }
    std::set<NodeId> seen;
    for (std::size_t l = 0; l < net.destinations.size(); ++l) {
        const NodeId& t = net.destinations[l];
        const std::string tag = "destination " + std::to_string(l + 1);
        if (t.layer < 0 || t.layer >= m || t.node < 0 || t.node >= net.node_count(t.layer)) {
            out.push_back(tag + " does not exist");
            continue;
        }
        if (t.layer == 0)
            out.push_back(tag + " is the source");
        if (!seen.insert(t).second)
            out.push_back(tag + " duplicates " + to_string(t));
    }
    return out;
}

std::vector<Elem> transfer(const Network& net, int layer, std::span<const Elem> x)
{
    if (layer < 0 || layer + 1 >= net.layer_count())
        throw Error("transfer: layer " + std::to_string(layer + 1) + " has no outgoing transfer matrix");
    if (static_cast<int>(x.size()) != net.tx_total(layer))
        throw Error("transfer: x_" + std::to_string(layer + 1) + " has length " + std::to_string(x.size()) +
                    ", expected " + std::to_string(net.tx_total(layer)));
    return mat_vec(net.transfer[layer], x);
}

Network load_network(const std::string& text)
{
    const json doc = jsonio::parse(text);
    jsonio::Path root;
    jsonio::require_object(doc, root);
    Network net;
    {
        const auto path = root / "field";
        const json& f = jsonio::key(doc, "field", root);
        jsonio::require_object(f, path);
        const auto p = jsonio::get_int(f, "p", path);
        const auto k = jsonio::get_int(f, "k", path);
        try {
            net.field = Field::create(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(k));
        }
        catch (const Error& e) {
            throw ParseError(path.str() + ": " + e.what());
        }
    }
    const json& layers = jsonio::key(doc, "layers", root);
    const auto lpath = root / "layers";
    jsonio::require_array(layers, lpath);
    for (std::size_t i = 0; i < layers.size(); ++i) {
        const auto path = lpath[i];
        jsonio::require_object(layers[i], path);
        const json& nodes = jsonio::key(layers[i], "nodes", path);
        jsonio::require_array(nodes, path / "nodes");
        std::vector<NodeDims> dims;
        for (std::size_t j = 0; j < nodes.size(); ++j) {
            const auto npath = (path / "nodes")[j];
            jsonio::require_object(nodes[j], npath);
            dims.push_back({static_cast<int>(jsonio::get_int(nodes[j], "rx", npath)),
                            static_cast<int>(jsonio::get_int(nodes[j], "tx", npath))});
        }
        net.layers.push_back(std::move(dims));
    }
    const json& transfer = jsonio::key(doc, "transfer", root);
    const auto tpath = root / "transfer";
    jsonio::require_array(transfer, tpath);
    for (std::size_t i = 0; i < transfer.size(); ++i) {
        std::size_t expected_cols = 0;
        if (i < net.layers.size())
            for (const auto& d : net.layers[i])
                expected_cols += static_cast<std::size_t>(std::max(d.tx, 0));
        net.transfer.push_back(jsonio::get_matrix(transfer[i], net.field, expected_cols, tpath[i]));
    }
    const json& dests = jsonio::key(doc, "destinations", root);
    const auto dpath = root / "destinations";
    jsonio::require_array(dests, dpath);
    for (std::size_t l = 0; l < dests.size(); ++l) {
        jsonio::require_object(dests[l], dpath[l]);
        net.destinations.push_back({static_cast<int>(jsonio::get_int(dests[l], "layer", dpath[l])) - 1,
                                    static_cast<int>(jsonio::get_int(dests[l], "node", dpath[l])) - 1});
    }
    auto violations = validate(net);
    if (!violations.empty())
        throw ValidationError(std::move(violations));
    net.label_transfer();
    return net;
}

std::string save_network(const Network& net)
{
    json doc;
    doc["field"] = {{"p", net.field.characteristic()}, {"k", net.field.degree()}};
    json layers = json::array();
    for (const auto& layer : net.layers) {
        json nodes = json::array();
        for (const auto& d : layer)
            nodes.push_back({{"rx", d.rx}, {"tx", d.tx}});
        layers.push_back({{"nodes", nodes}});
    }
    doc["layers"] = layers;
    json transfer = json::array();
    for (const auto& g : net.transfer)
        transfer.push_back(jsonio::matrix_json(g));
    doc["transfer"] = transfer;
    json dests = json::array();
    for (const auto& t : net.destinations)
        dests.push_back({{"layer", t.layer + 1}, {"node", t.node + 1}});
    doc["destinations"] = dests;
    return jsonio::dump(doc);
}

Network generate_random(const GeneratorParams& params)
{
    const auto& counts = params.node_counts;
    const int m = static_cast<int>(counts.size());
    if (m < 2 || m > 6)
        throw Error("layer count must be within 2..6, got " + std::to_string(m));
    if (counts.front() != 1)
        throw Error("the first layer must contain exactly the source");
    for (int c : counts)
        if (c < 1 || c > 4)
            throw Error("node counts must be within 1..4");
    if (params.dim_min < 0 || params.dim_max < params.dim_min || params.dim_max > 5)
        throw Error("node dimensions must satisfy 0 <= min <= max <= 5");
    if (!(params.density >= 0.0 && params.density <= 1.0))
        throw Error("density must be within [0, 1]");
    if (params.destinations.count < 1 || params.destinations.count > 6)
        throw Error("destination count must be within 1..6");

    Network net;
    net.field = Field::create(params.p, params.k);
    std::mt19937_64 rng(params.seed);
    std::uniform_int_distribution<int> dim(params.dim_min, params.dim_max);
    std::uniform_int_distribution<Elem> entry(0, net.field.order() - 1);
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    for (int i = 0; i < m; ++i) {
        std::vector<NodeDims> layer(counts[i]);
        for (auto& d : layer) {
            d.rx = dim(rng);
            d.tx = dim(rng);
        }
        net.layers.push_back(std::move(layer));
    }
    net.layers[0][0].rx = net.layers[0][0].tx;

    for (int i = 0; i + 1 < m; ++i) {
        Matrix g(net.field, net.rx_total(i + 1), net.tx_total(i));
        for (std::size_t r = 0; r < g.rows(); ++r)
            for (std::size_t c = 0; c < g.cols(); ++c) {
                const Elem v = entry(rng);
                g(r, c) = coin(rng) < params.density ? v : 0;
            }
        net.transfer.push_back(std::move(g));
    }

    std::vector<NodeId> candidates;
    const auto& allowed = params.destinations.layers;
    for (int i = 1; i < m; ++i) {
        if (!allowed.empty() && std::find(allowed.begin(), allowed.end(), i + 1) == allowed.end())
            continue;
        for (int j = 0; j < counts[i]; ++j)
            candidates.push_back({i, j});
    }
    for (int layer : allowed)
        if (layer < 2 || layer > m)
            throw Error("destination layer " + std::to_string(layer) + " is outside 2.." + std::to_string(m));
    if (static_cast<int>(candidates.size()) < params.destinations.count)
        throw Error("cannot place " + std::to_string(params.destinations.count) + " destinations on " +
                    std::to_string(candidates.size()) + " eligible nodes");
    std::shuffle(candidates.begin(), candidates.end(), rng);
    candidates.resize(params.destinations.count);
    std::sort(candidates.begin(), candidates.end());
    net.destinations = std::move(candidates);
    net.label_transfer();
    return net;
}

} // namespace ldrn
