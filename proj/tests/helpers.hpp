#pragma once

#include "ldrn/network.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace testing_util {

using ldrn::Elem;

/// Network from per-layer node dims, transfer matrices as nested rows, and 1-based destinations.
inline ldrn::Network make_network(const ldrn::Field& field, const std::vector<std::vector<ldrn::NodeDims>>& layers,
                                  const std::vector<std::vector<std::vector<Elem>>>& transfer,
                                  const std::vector<std::pair<int, int>>& dests)
{
    ldrn::Network net;
    net.field = field;
    net.layers = layers;
    for (std::size_t i = 0; i < transfer.size(); ++i) {
        if (transfer[i].empty())
            net.transfer.emplace_back(field, 0, static_cast<std::size_t>(net.tx_total(static_cast<int>(i))));
        else
            net.transfer.push_back(ldrn::Matrix::from_rows(field, transfer[i]));
    }
    for (auto [l, n] : dests)
        net.destinations.push_back({l - 1, n - 1});
    net.label_transfer();
    return net;
}

/// Two-layer network source -> one destination with G_1 = I_r.
inline ldrn::Network identity_pair(const ldrn::Field& field, int r)
{
    std::vector<std::vector<Elem>> id(static_cast<std::size_t>(r), std::vector<Elem>(static_cast<std::size_t>(r), 0));
    for (int t = 0; t < r; ++t)
        id[static_cast<std::size_t>(t)][static_cast<std::size_t>(t)] = 1;
    return make_network(field, {{{r, r}}, {{r, r}}}, {id}, {{2, 1}});
}

inline std::string read_text(const std::string& path)
{
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline ldrn::Network quickstart() { return ldrn::load_network(read_text(std::string(LDRN_DATA_DIR) + "/quickstart_network.json")); }
inline ldrn::Network three_dest_gf2()
{
    return ldrn::load_network(read_text(std::string(LDRN_DATA_DIR) + "/gf2_three_dest_network.json"));
}

} // namespace testing_util
