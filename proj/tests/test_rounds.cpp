#include "ldrn/capacity.hpp"
#include "ldrn/error.hpp"
#include "ldrn/flow.hpp"
#include "ldrn/rounds.hpp"
#include "helpers.hpp"

#include <gtest/gtest.h>

#include <random>

using ldrn::Elem;
using ldrn::Field;
using ldrn::Network;

TEST(Rounds, RequiredRoundsExamples)
{
    EXPECT_EQ(ldrn::required_rounds(2, 1), 1u);
    EXPECT_EQ(ldrn::required_rounds(2, 3), 2u);
    EXPECT_EQ(ldrn::required_rounds(5, 4), 1u);
    EXPECT_EQ(ldrn::required_rounds(2, 4), 3u);
    EXPECT_EQ(ldrn::required_rounds(3, 8), 2u);
    EXPECT_EQ(ldrn::required_rounds(3, 9), 3u);
    EXPECT_THROW(ldrn::required_rounds(4, 1), ldrn::Error);
    EXPECT_THROW(ldrn::required_rounds(2, 0), ldrn::Error);
}

TEST(Rounds, RoundPlanInvariant)
{
    for (std::uint32_t p : {2u, 3u, 5u, 7u})
        for (std::uint64_t g = 1; g <= 50; ++g) {
            const auto plan = ldrn::make_round_plan(p, g);
            EXPECT_GE(plan.lifted.order(), g + 1);
            EXPECT_EQ(plan.lifted.characteristic(), p);
            EXPECT_EQ(plan.lifted.degree(), plan.k);
            if (plan.k > 1)
                EXPECT_LT(plan.lifted.order() / p, g + 1);
        }
}

TEST(Rounds, LiftKeepsTopologyAndEntries)
{
    const Network base = testing_util::three_dest_gf2();
    const Network same = ldrn::lift_network(base, 1);
    EXPECT_EQ(same, base);
    const Network lifted = ldrn::lift_network(base, 2);
    EXPECT_EQ(lifted.field, Field::create(2, 2));
    EXPECT_EQ(lifted.layers, base.layers);
    EXPECT_EQ(lifted.destinations, base.destinations);
    for (std::size_t i = 0; i < base.transfer.size(); ++i) {
        EXPECT_EQ(lifted.transfer[i].to_rows(), base.transfer[i].to_rows());
        EXPECT_EQ(lifted.transfer[i].row_labels(), base.transfer[i].row_labels());
    }
    EXPECT_TRUE(validate(lifted).empty());
    EXPECT_THROW(ldrn::lift_network(lifted, 2), ldrn::Error);
}

TEST(Rounds, LiftPreservesMinCutAndFlows)
{
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        ldrn::GeneratorParams gp;
        gp.seed = seed;
        gp.node_counts = {1, 3, 2, 2};
        gp.density = 0.6;
        gp.p = seed % 2 == 0 ? 2 : 3;
        gp.destinations.count = 2;
        const Network base = generate_random(gp);
        const Network lifted = ldrn::lift_network(base, 3);
        for (std::size_t l = 0; l < 2; ++l) {
            const int c = ldrn::min_cut(base, l).value;
            EXPECT_EQ(ldrn::min_cut(lifted, l).value, c);
            EXPECT_TRUE(ldrn::find_flow(lifted, l, c).has_value());
        }
    }
}

TEST(Rounds, PackExamples)
{
    const Field gf4 = Field::create(2, 2);
    EXPECT_EQ(ldrn::pack(gf4, {{1}, {0}}), (std::vector<Elem>{1}));
    EXPECT_EQ(ldrn::pack(gf4, {{0}, {1}}), (std::vector<Elem>{2}));
    EXPECT_EQ(ldrn::pack(gf4, {{0, 0}, {0, 0}}), (std::vector<Elem>{0, 0}));
    const Field gf5 = Field::create(5);
    EXPECT_EQ(ldrn::pack(gf5, {{3, 4}}), (std::vector<Elem>{3, 4}));
    EXPECT_THROW(ldrn::pack(gf4, {{1}}), ldrn::Error);
    EXPECT_THROW(ldrn::pack(gf4, {{1}, {1, 0}}), ldrn::Error);
    EXPECT_THROW(ldrn::pack(gf4, {{2}, {0}}), ldrn::Error);
    EXPECT_THROW(ldrn::unpack(gf4, std::vector<Elem>{4}), ldrn::Error);
}

TEST(Rounds, PackUnpackAndTransferCommute)
{
    const Network base = testing_util::three_dest_gf2();
    const std::uint32_t k = 3;
    const Network lifted = ldrn::lift_network(base, k);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<Elem> bit(0, 1);
    for (int n = 0; n < 300; ++n) {
        for (int i = 0; i + 1 < base.layer_count(); ++i) {
            std::vector<std::vector<Elem>> rounds(k, std::vector<Elem>(static_cast<std::size_t>(base.tx_total(i))));
            for (auto& r : rounds)
                for (auto& e : r)
                    e = bit(rng);
            const auto packed = ldrn::pack(lifted.field, rounds);
            ASSERT_EQ(ldrn::unpack(lifted.field, packed), rounds);
            std::vector<std::vector<Elem>> per_round;
            for (const auto& r : rounds)
                per_round.push_back(transfer(base, i, r));
            ASSERT_EQ(transfer(lifted, i, packed), ldrn::pack(lifted.field, per_round));
        }
    }
}
