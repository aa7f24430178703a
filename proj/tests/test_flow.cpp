#include "ldrn/capacity.hpp"
#include "ldrn/error.hpp"
#include "ldrn/flow.hpp"
#include "ldrn/sim.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using ldrn::Elem;
using ldrn::Field;
using ldrn::Flow;
using ldrn::Network;

namespace {

Network rate3() { return ldrn::load_network(testing_util::read_text(std::string(LDRN_DATA_DIR) + "/gf2_rate3_network.json")); }

bool mentions(const std::vector<std::string>& v, const std::string& s)
{
    for (const auto& x : v)
        if (x.find(s) != std::string::npos)
            return true;
    return false;
}

std::vector<int> positions(const std::vector<ldrn::PortLabel>& ports, int node)
{
    std::vector<int> out;
    for (const auto& p : ports)
        if (p.node == node)
            out.push_back(p.pos);
    return out;
}

} // namespace

TEST(Flow, IdentityPairGivesIdentityFlow)
{
    const Network net = testing_util::identity_pair(Field::create(3), 3);
    const auto flow = ldrn::find_flow(net, 0, 3);
    ASSERT_TRUE(flow);
    EXPECT_EQ(flow->layers[0][0].p_hat, (std::vector<int>{0, 1, 2}));
    EXPECT_EQ(flow->layers[0][0].q_hat, (std::vector<int>{0, 1, 2}));
    EXPECT_EQ(flow->layers[1][0].p_hat, (std::vector<int>{0, 1, 2}));
    EXPECT_TRUE(flow->layers[1][0].q_hat.empty());
    EXPECT_TRUE(verify_flow(net, *flow).empty());
    EXPECT_FALSE(ldrn::find_flow(net, 0, 4));
}

TEST(Flow, RateZeroIsEmpty)
{
    const Network net = rate3();
    const auto flow = ldrn::find_flow(net, 0, 0);
    ASSERT_TRUE(flow);
    EXPECT_TRUE(verify_flow(net, *flow).empty());
    EXPECT_TRUE(ldrn::unicast_transmit(net, *flow, std::vector<Elem>{}).empty());
}

TEST(Flow, PinnedRateThreeInstance)
{
    const Network net = rate3();
    ASSERT_EQ(ldrn::min_cut(net, 0).value, 3);
    EXPECT_FALSE(ldrn::find_flow(net, 0, 4));
    const auto flow = ldrn::find_flow(net, 0, 3);
    ASSERT_TRUE(flow);
    EXPECT_TRUE(verify_flow(net, *flow).empty());
    EXPECT_EQ(positions(flow->p_set(1), 0), (std::vector<int>{0, 2}));
    EXPECT_EQ(positions(flow->p_set(1), 1), (std::vector<int>{0}));
    EXPECT_EQ(positions(flow->p_set(2), 0), (std::vector<int>{0}));
    EXPECT_EQ(positions(flow->p_set(2), 1), (std::vector<int>{0, 1}));
    // Property 4 at every layer, by Leibniz expansion: all three submatrices are nonsingular over GF(2).
    for (int i = 0; i + 1 <= flow->destination.layer; ++i) {
        const auto rows = flow->p_set(i + 1);
        const auto cols = flow->q_set(i);
        EXPECT_EQ(oracle::det_leibniz(ldrn::submatrix(net.transfer[i], rows, cols)), 1u) << "layer " << i + 1;
    }
    for (const auto& w : ldrn::sweep_messages(net.field, 3))
        ASSERT_EQ(ldrn::unicast_transmit(net, *flow, w), w);
}

TEST(Flow, TamperedFlowsAreRejected)
{
    const Network net = rate3();
    const Flow good = *ldrn::find_flow(net, 0, 3);

    Flow dropped = good;
    dropped.layers[1][0].q_hat.pop_back();
    const auto v1 = verify_flow(net, dropped);
    EXPECT_TRUE(mentions(v1, "property 1") || mentions(v1, "property 2")) << v1.front();

    // Swap one Q^ port for an unused port of the same node until the flow submatrix turns singular.
    Flow singular = good;
    bool found = false;
    for (int i = 0; i < good.destination.layer && !found; ++i)
        for (int j = 0; j < net.node_count(i) && !found; ++j)
            for (std::size_t slot = 0; slot < good.layers[i][j].q_hat.size() && !found; ++slot)
                for (int q = 0; q < net.layers[i][j].tx && !found; ++q) {
                    const auto& used = good.layers[i][j].q_hat;
                    if (std::find(used.begin(), used.end(), q) != used.end())
                        continue;
                    Flow trial = good;
                    trial.layers[i][j].q_hat[slot] = q;
                    if (mentions(verify_flow(net, trial), "property 4")) {
                        singular = trial;
                        found = true;
                    }
                }
    ASSERT_TRUE(found);
    EXPECT_TRUE(mentions(verify_flow(net, singular), "property 4"));
    EXPECT_THROW(ldrn::unicast_transmit(net, singular, std::vector<Elem>{1, 0, 1}), ldrn::Error);

    Flow wrong_dest = good;
    wrong_dest.layers.back()[0].p_hat.pop_back();
    EXPECT_FALSE(verify_flow(net, wrong_dest).empty());
}

TEST(Flow, DependentColumnBreaksPropertyFour)
{
    // Column 3 of G_1 repeats column 1.
    const Network net =
        testing_util::make_network(Field(), {{{3, 3}}, {{2, 2}}}, {{{1, 0, 1}, {0, 1, 0}}}, {{2, 1}});
    EXPECT_EQ(ldrn::min_cut(net, 0).value, 2);
    const auto flow = ldrn::find_flow(net, 0, 2);
    ASSERT_TRUE(flow);
    EXPECT_TRUE(verify_flow(net, *flow).empty());
    EXPECT_EQ(flow->layers[0][0].q_hat, (std::vector<int>{0, 1}));
    Flow bad = *flow;
    bad.layers[0][0].q_hat = {0, 2};
    EXPECT_TRUE(mentions(verify_flow(net, bad), "property 4"));
}

TEST(Flow, IdentityChainDecodes)
{
    const Field f = Field::create(5);
    const std::vector<std::vector<Elem>> id{{1, 0}, {0, 1}};
    const Network net =
        testing_util::make_network(f, {{{2, 2}}, {{2, 2}}, {{2, 2}}, {{2, 2}}}, {id, id, id}, {{4, 1}});
    const auto flow = ldrn::find_flow(net, 0, 2);
    ASSERT_TRUE(flow);
    for (const auto& w : ldrn::sweep_messages(f, 2))
        EXPECT_EQ(ldrn::unicast_transmit(net, *flow, w), w);
}

TEST(Flow, SaveLoadRoundTrip)
{
    const Network net = testing_util::quickstart();
    for (std::size_t l = 0; l < net.destinations.size(); ++l) {
        const Flow flow = *ldrn::find_flow(net, l, 3);
        EXPECT_EQ(ldrn::load_flow(ldrn::save_flow(flow)), flow);
    }
    EXPECT_THROW(ldrn::load_flow("{\"rate\": 1}"), ldrn::ParseError);
}

TEST(Flow, FeasibleExactlyUpToMinCut)
{
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        ldrn::GeneratorParams gp;
        gp.seed = seed;
        gp.node_counts = {1, 3, 2, 2};
        gp.dim_max = 3;
        gp.density = 0.6;
        gp.p = 3;
        gp.destinations.count = 2;
        const Network net = generate_random(gp);
        for (std::size_t l = 0; l < 2; ++l) {
            const int c = ldrn::min_cut(net, l).value;
            for (int r = 0; r <= c + 1; ++r) {
                const auto flow = ldrn::find_flow(net, l, r);
                ASSERT_EQ(flow.has_value(), r <= c) << seed << " dest " << l << " rate " << r;
                if (flow)
                    ASSERT_TRUE(verify_flow(net, *flow).empty());
            }
        }
    }
}
