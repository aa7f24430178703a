#include "ldrn/capacity.hpp"
#include "ldrn/error.hpp"
#include "ldrn/network.hpp"
#include "helpers.hpp"

#include <gtest/gtest.h>

#include <random>

using ldrn::Elem;
using ldrn::Field;
using ldrn::Network;
using testing_util::make_network;

namespace {

bool contains(const std::vector<std::string>& v, const std::string& needle)
{
    for (const auto& s : v)
        if (s.find(needle) != std::string::npos)
            return true;
    return false;
}

Network figure_one_shape()
{
    // Four layers, two destinations in the last layer.
    const Field f = Field::create(2);
    return make_network(f, {{{2, 2}}, {{1, 1}, {1, 1}}, {{1, 1}, {1, 2}}, {{1, 1}, {2, 1}}},
                        {{{1, 0}, {0, 1}}, {{1, 0}, {1, 1}}, {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}}, {{4, 1}, {4, 2}});
}

} // namespace

TEST(Network, ValidIdentityPair)
{
    EXPECT_TRUE(validate(testing_util::identity_pair(Field(), 2)).empty());
}

TEST(Network, DimensionMismatchReported)
{
    Network net = testing_util::identity_pair(Field(), 2);
    net.transfer[0] = ldrn::Matrix(Field(), 3, 2);
    const auto v = validate(net);
    EXPECT_TRUE(contains(v, "dimension mismatch at layer 1")) << v.front();
}

TEST(Network, DuplicateDestinationAndAllViolations)
{
    Network net = figure_one_shape();
    net.destinations.push_back(net.destinations.front());
    net.destinations.push_back({0, 0});
    net.transfer[1] = ldrn::Matrix(Field(), 1, 1);
    const auto v = validate(net);
    EXPECT_TRUE(contains(v, "duplicate"));
    EXPECT_TRUE(contains(v, "source"));
    EXPECT_TRUE(contains(v, "dimension mismatch at layer 2"));
    EXPECT_GE(v.size(), 3u);
}

TEST(Network, TransferExamples)
{
    const Network net = make_network(Field(), {{{2, 2}}, {{2, 2}}}, {{{1, 1}, {0, 1}}}, {{2, 1}});
    EXPECT_EQ(transfer(net, 0, std::vector<Elem>{1, 1}), (std::vector<Elem>{0, 1}));
    EXPECT_EQ(transfer(net, 0, std::vector<Elem>{0, 0}), (std::vector<Elem>{0, 0}));
    EXPECT_THROW(transfer(net, 1, std::vector<Elem>{0, 0}), ldrn::Error);
    EXPECT_THROW(transfer(net, 0, std::vector<Elem>{0}), ldrn::Error);
    const Network id = testing_util::identity_pair(Field::create(5), 3);
    EXPECT_EQ(transfer(id, 0, std::vector<Elem>{4, 2, 1}), (std::vector<Elem>{4, 2, 1}));
}

TEST(Network, TransferIsLinear)
{
    ldrn::GeneratorParams gp;
    gp.seed = 4;
    gp.node_counts = {1, 3, 2};
    gp.p = 5;
    const Network net = generate_random(gp);
    const Field& f = net.field;
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<Elem> d(0, 4);
    for (int n = 0; n < 100; ++n) {
        std::vector<Elem> x(static_cast<std::size_t>(net.tx_total(0))), x2(x.size()), sum(x.size()), scaled(x.size());
        const Elem c = d(rng);
        for (std::size_t t = 0; t < x.size(); ++t) {
            x[t] = d(rng);
            x2[t] = d(rng);
            sum[t] = f.add(x[t], x2[t]);
            scaled[t] = f.mul(c, x[t]);
        }
        const auto y = transfer(net, 0, x);
        const auto y2 = transfer(net, 0, x2);
        const auto ys = transfer(net, 0, sum);
        const auto yc = transfer(net, 0, scaled);
        for (std::size_t t = 0; t < y.size(); ++t) {
            ASSERT_EQ(ys[t], f.add(y[t], y2[t]));
            ASSERT_EQ(yc[t], f.mul(c, y[t]));
        }
    }
}

TEST(Network, LabelsAreCanonical)
{
    const Network net = figure_one_shape();
    const auto& g = net.transfer[2];
    ASSERT_EQ(g.row_labels().size(), 3u);
    EXPECT_EQ(g.row_labels()[2], (ldrn::PortLabel{ldrn::Side::P, 3, 1, 1}));
    EXPECT_EQ(g.col_labels()[1], (ldrn::PortLabel{ldrn::Side::Q, 2, 1, 0}));
    EXPECT_EQ(to_string(g.row_labels()[2]), "P_4[2]#2");
    EXPECT_EQ(to_string(ldrn::NodeId{3, 1}), "v_4(2)");
}

TEST(Network, RoundTrip)
{
    const Network net = figure_one_shape();
    EXPECT_EQ(ldrn::load_network(save_network(net)), net);
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        ldrn::GeneratorParams gp;
        gp.seed = seed;
        gp.node_counts = {1, 3, 2, 3};
        gp.dim_min = 0;
        gp.dim_max = 4;
        gp.density = 0.7;
        gp.p = 2;
        gp.k = 3;
        gp.destinations.count = 3;
        const Network g = generate_random(gp);
        ASSERT_TRUE(validate(g).empty());
        ASSERT_EQ(ldrn::load_network(save_network(g)), g);
        ASSERT_EQ(save_network(ldrn::load_network(save_network(g))), save_network(g));
    }
}

TEST(Network, ParseErrorsNameTheLocation)
{
    try {
        ldrn::load_network(R"({"layers": [], "transfer": [], "destinations": []})");
        FAIL();
    }
    catch (const ldrn::ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("\"field\""), std::string::npos) << e.what();
    }
    std::string text = save_network(figure_one_shape());
    const auto pos = text.find("\"rx\": 1");
    ASSERT_NE(pos, std::string::npos);
    text.replace(pos, 7, "\"rx\": -1");
    EXPECT_THROW(ldrn::load_network(text), ldrn::ValidationError);
    try {
        ldrn::load_network(R"({"field": {"p": 2, "k": 1}, "layers": [{"nodes": [{"rx": 1, "tx": "x"}]}], "transfer": [], "destinations": []})");
        FAIL();
    }
    catch (const ldrn::ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("$.layers[0].nodes[0].tx"), std::string::npos) << e.what();
    }
    EXPECT_THROW(ldrn::load_network("{"), ldrn::ParseError);
}

TEST(Network, GeneratorDeterministicAndBounded)
{
    ldrn::GeneratorParams gp;
    gp.seed = 77;
    gp.node_counts = {1, 4, 4, 4, 4, 4};
    gp.dim_max = 5;
    gp.destinations.count = 6;
    EXPECT_EQ(save_network(generate_random(gp)), save_network(generate_random(gp)));
    gp.destinations.count = 7;
    EXPECT_THROW(generate_random(gp), ldrn::Error);
    gp.destinations.count = 2;
    gp.destinations.layers = {2};
    gp.node_counts = {1, 1, 3};
    EXPECT_THROW(generate_random(gp), ldrn::Error);
    gp.node_counts = {2, 1};
    EXPECT_THROW(generate_random(gp), ldrn::Error);
}

TEST(Network, ZeroDensityHasZeroCapacity)
{
    ldrn::GeneratorParams gp;
    gp.seed = 3;
    gp.node_counts = {1, 2, 2};
    gp.density = 0.0;
    gp.destinations.count = 2;
    const Network net = generate_random(gp);
    for (const auto& g : net.transfer)
        EXPECT_TRUE(g.is_zero());
    EXPECT_EQ(ldrn::multicast_capacity(net), 0);
}

TEST(Network, PinnedGeneratorInstance)
{
    ldrn::GeneratorParams gp;
    gp.seed = 1;
    gp.node_counts = {1, 2, 1};
    gp.dim_min = 2;
    gp.dim_max = 3;
    gp.density = 1.0;
    gp.p = 2;
    gp.destinations.count = 1;
    const Network net = generate_random(gp);
    // G_1 has rank 1, so the cut {s} already gives 1; no cut gives 0.
    EXPECT_EQ(ldrn::min_cut(net, 0).value, 1);
}
