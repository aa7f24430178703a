#include "ldrn/capacity.hpp"

#include "ldrn/error.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <thread>

namespace ldrn {

namespace {

std::vector<std::size_t> port_indices(const Network& net, int layer, std::uint32_t mask, bool rx)
{
    std::vector<std::size_t> out;
    std::size_t offset = 0;
    for (int j = 0; j < net.node_count(layer); ++j) {
        const auto& d = net.layers[layer][j];
        const int n = rx ? d.rx : d.tx;
        if (mask & (1U << j))
            for (int t = 0; t < n; ++t)
                out.push_back(offset + t);
        offset += static_cast<std::size_t>(n);
    }
    return out;
}

int layer_term(const Network& net, int layer, std::uint32_t a_mask, std::uint32_t b_mask_next)
{
    const auto cols = port_indices(net, layer, a_mask, false);
    const auto rows = port_indices(net, layer + 1, b_mask_next, true);
    if (rows.empty() || cols.empty())
        return 0;
    return static_cast<int>(rank(select(net.transfer[layer], rows, cols)));
}

} // namespace

void check_cut(const Network& net, const Cut& cut, NodeId sink)
{
    if (static_cast<int>(cut.source_side.size()) != net.layer_count())
        throw Error("cut covers " + std::to_string(cut.source_side.size()) + " layers, network has " +
                    std::to_string(net.layer_count()));
    for (int i = 0; i < net.layer_count(); ++i)
        if (static_cast<int>(cut.source_side[i].size()) != net.node_count(i))
            throw Error("cut does not cover layer " + std::to_string(i + 1));
    if (!cut.source_side[0][0])
        throw Error("cut places the source outside A");
    if (sink.layer < 0 || sink.layer >= net.layer_count() || sink.node < 0 || sink.node >= net.node_count(sink.layer))
        throw Error("cut sink does not exist");
    if (cut.source_side[sink.layer][sink.node])
        throw Error("cut places " + to_string(sink) + " in A");
}

int cut_capacity(const Network& net, const Cut& cut)
{
    if (static_cast<int>(cut.source_side.size()) != net.layer_count() || cut.source_side.empty() ||
        cut.source_side[0].empty() || !cut.source_side[0][0])
        throw Error("invalid cut");
    int total = 0;
    for (int i = 0; i + 1 < net.layer_count(); ++i) {
        if (static_cast<int>(cut.source_side[i].size()) != net.node_count(i) ||
            static_cast<int>(cut.source_side[i + 1].size()) != net.node_count(i + 1))
            throw Error("invalid cut");
        std::vector<std::size_t> cols, rows;
        std::size_t offset = 0;
        for (int j = 0; j < net.node_count(i); ++j) {
            const int n = net.layers[i][j].tx;
            if (cut.source_side[i][j])
                for (int t = 0; t < n; ++t)
                    cols.push_back(offset + t);
            offset += static_cast<std::size_t>(n);
        }
        offset = 0;
        for (int k = 0; k < net.node_count(i + 1); ++k) {
            const int n = net.layers[i + 1][k].rx;
            if (!cut.source_side[i + 1][k])
                for (int t = 0; t < n; ++t)
                    rows.push_back(offset + t);
            offset += static_cast<std::size_t>(n);
        }
        total += static_cast<int>(rank(select(net.transfer[i], rows, cols)));
    }
    return total;
}

MinCut min_cut(const Network& net, std::size_t dest, int jobs)
{
    if (dest >= net.destinations.size())
        throw Error("unknown destination " + std::to_string(dest + 1));
    const NodeId sink = net.destinations[dest];
    const int m = net.layer_count();

    std::vector<NodeId> free_nodes;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < net.node_count(i); ++j)
            if (!(i == 0 && j == 0) && NodeId{i, j} != sink)
                free_nodes.push_back({i, j});
    if (free_nodes.size() > 30)
        throw Error("network too large for exhaustive cut enumeration");
    for (int i = 0; i < m; ++i)
        if (net.node_count(i) > 8)
            throw Error("layer " + std::to_string(i + 1) + " too wide for exhaustive cut enumeration");

    // A cut's value is a sum of per-layer terms that depend only on that layer pair's node masks,
    // so each term is tabulated once and the enumeration itself is just table lookups.
    std::vector<std::vector<int>> table(static_cast<std::size_t>(std::max(m - 1, 0)));
    for (int i = 0; i + 1 < m; ++i) {
        const std::uint32_t na = 1U << net.node_count(i);
        const std::uint32_t nb = 1U << net.node_count(i + 1);
        table[i].resize(static_cast<std::size_t>(na) * nb);
        for (std::uint32_t a = 0; a < na; ++a)
            for (std::uint32_t b = 0; b < nb; ++b)
                table[i][a * nb + b] = layer_term(net, i, a, b);
    }

    auto evaluate = [&](std::uint64_t counter) {
        std::vector<std::uint32_t> a_mask(static_cast<std::size_t>(m), 0);
        a_mask[0] = 1;
        for (std::size_t b = 0; b < free_nodes.size(); ++b)
            if (counter >> b & 1U)
                a_mask[free_nodes[b].layer] |= 1U << free_nodes[b].node;
        int value = 0;
        for (int i = 0; i + 1 < m; ++i) {
            const std::uint32_t nb = 1U << net.node_count(i + 1);
            const std::uint32_t b_mask = ~a_mask[i + 1] & (nb - 1);
            value += table[i][a_mask[i] * nb + b_mask];
        }
        return value;
    };

    const std::uint64_t total = std::uint64_t{1} << free_nodes.size();
    const int workers = static_cast<int>(std::clamp<std::uint64_t>(static_cast<std::uint64_t>(std::max(jobs, 1)), 1, total));
    std::vector<std::pair<int, std::uint64_t>> best(static_cast<std::size_t>(workers),
                                                    {std::numeric_limits<int>::max(), 0});
    auto scan = [&](int w) {
        const std::uint64_t lo = total * static_cast<std::uint64_t>(w) / static_cast<std::uint64_t>(workers);
        const std::uint64_t hi = total * static_cast<std::uint64_t>(w + 1) / static_cast<std::uint64_t>(workers);
        for (std::uint64_t c = lo; c < hi; ++c) {
            const int v = evaluate(c);
            if (v < best[w].first)
                best[w] = {v, c};
        }
    };
    if (workers == 1) {
        scan(0);
    }
    else {
        std::vector<std::jthread> threads;
        for (int w = 0; w < workers; ++w)
            threads.emplace_back(scan, w);
    }
    // Chunks are contiguous and ordered, so the first strict minimum over chunks is the global first minimum.
    auto winner = best.front();
    for (const auto& b : best)
        if (b.first < winner.first)
            winner = b;

    MinCut out;
    out.value = winner.first;
    out.cut.source_side.resize(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        out.cut.source_side[i].assign(static_cast<std::size_t>(net.node_count(i)), false);
    out.cut.source_side[0][0] = true;
    for (std::size_t b = 0; b < free_nodes.size(); ++b)
        if (winner.second >> b & 1U)
            out.cut.source_side[free_nodes[b].layer][free_nodes[b].node] = true;
    return out;
}

int multicast_capacity(const Network& net, int jobs)
{
    if (net.destinations.empty())
        throw Error("multicast capacity needs at least one destination");
    int best = std::numeric_limits<int>::max();
    for (std::size_t l = 0; l < net.destinations.size(); ++l)
        best = std::min(best, min_cut(net, l, jobs).value);
    return best;
}

} // namespace ldrn
