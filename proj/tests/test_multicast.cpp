#include "ldrn/capacity.hpp"
#include "ldrn/error.hpp"
#include "ldrn/multicast.hpp"
#include "ldrn/sim.hpp"
#include "bruteforce.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using ldrn::BuildOptions;
using ldrn::CodeState;
using ldrn::Elem;
using ldrn::Field;
using ldrn::Matrix;
using ldrn::Mode;
using ldrn::MulticastCode;
using ldrn::Network;

namespace {

std::vector<ldrn::Flow> flows_for(const Network& net, int rate)
{
    std::vector<ldrn::Flow> out;
    for (std::size_t l = 0; l < net.destinations.size(); ++l)
        out.push_back(*ldrn::find_flow(net, l, rate));
    return out;
}

Matrix unlabeled(Matrix m)
{
    m.set_labels({}, {});
    return m;
}

// After port q was assigned, F A of every active destination rebuilt from scratch matches the state and is nonsingular.
void expect_all_nonsingular(const CodeState& s, std::size_t q)
{
    const auto row = s.x().row(q);
    const std::vector<Elem> u(row.begin(), row.end());
    for (const auto& d : s.active()) {
        const Matrix h = bruteforce::product_after(s, d.dest, q, u);
        ASSERT_NE(oracle::det_leibniz(h), 0u);
        ASSERT_EQ(h, unlabeled(d.h));
    }
}

ldrn::GeneratorParams micro_params(std::uint64_t seed, std::uint32_t p, std::uint32_t k, int g)
{
    ldrn::GeneratorParams gp;
    gp.seed = seed;
    gp.node_counts = {1, 2, 2, 2};
    gp.dim_min = 1;
    gp.dim_max = 3;
    gp.density = 0.8;
    gp.p = p;
    gp.k = k;
    gp.destinations.count = g;
    return gp;
}

} // namespace

TEST(Combine, SatisfiesEveryPair)
{
    std::mt19937_64 rng(3);
    for (const Field& f : {Field::create(3), Field::create(2, 2), Field::create(5), Field::create(2, 3)}) {
        std::uniform_int_distribution<Elem> d(0, f.order() - 1);
        for (int trial = 0; trial < 500; ++trial) {
            const std::size_t n = 1 + trial % (f.order() - 1);
            std::vector<std::vector<Elem>> a, b;
            while (a.size() < n) {
                std::vector<Elem> x(3), y(3);
                for (auto& e : x)
                    e = d(rng);
                for (auto& e : y)
                    e = d(rng);
                if (f.dot(x, y) != 0) {
                    a.push_back(x);
                    b.push_back(y);
                }
            }
            const auto c = ldrn::combine_nonorthogonal(f, a, b);
            std::vector<Elem> w(3, 0);
            for (std::size_t t = 0; t < n; ++t)
                for (std::size_t k = 0; k < 3; ++k)
                    w[k] = f.add(w[k], f.mul(c[t], a[t][k]));
            for (std::size_t s = 0; s < n; ++s)
                ASSERT_NE(f.dot(w, b[s]), 0u) << f.name() << " trial " << trial;
        }
    }
    EXPECT_TRUE(ldrn::combine_nonorthogonal(Field(), {}, {}).empty());
    EXPECT_THROW(ldrn::combine_nonorthogonal(Field(), {{1, 0}}, {{0, 1}}), ldrn::Error);
}

TEST(CodeState, InitialBookkeepingOnQuickstart)
{
    const Network net = testing_util::quickstart();
    const auto flows = flows_for(net, 3);
    const CodeState s = CodeState::init(net, flows);
    EXPECT_EQ(s.layer(), 0);
    ASSERT_EQ(s.active().size(), 2u);
    for (const auto& d : s.active()) {
        // A holds unit rows, so H is exactly the flow submatrix of G_1.
        const Matrix expected = unlabeled(ldrn::submatrix(net.transfer[0], flows[d.dest].p_set(1), flows[d.dest].q_set(0)));
        EXPECT_EQ(unlabeled(d.h), expected);
        EXPECT_EQ(determinant(d.h), oracle::det_leibniz(expected));
        EXPECT_NE(oracle::det_leibniz(expected), 0u);
    }
    // Pinned: det H per destination at layer 1.
    EXPECT_EQ(determinant(s.active()[0].h), 3u);
    EXPECT_EQ(determinant(s.active()[1].h), 3u);
    // y_1 has the identity on the source's flow ports.
    EXPECT_EQ(unlabeled(s.condition_matrix(0)), Matrix::identity(net.field, 3));
}

TEST(CodeState, RejectsMismatchedFlows)
{
    const Network net = testing_util::quickstart();
    auto flows = flows_for(net, 3);
    auto low = flows;
    low[1] = *ldrn::find_flow(net, 1, 2);
    EXPECT_THROW(CodeState::init(net, low), ldrn::Error);
    auto shifted = flows;
    shifted[1].layers[0][0].p_hat = {0, 1};
    EXPECT_THROW(CodeState::init(net, shifted), ldrn::Error);
    EXPECT_THROW(CodeState::init(net, {flows[0]}), ldrn::Error);
}

TEST(CodeState, GammaBasics)
{
    // G_1 = I, so H = I and gamma equals alpha; an all-zero column gives gamma = 0.
    const Network net = testing_util::make_network(Field::create(5), {{{2, 3}}, {{2, 2}}},
                                                   {{{1, 0, 0}, {0, 1, 0}}}, {{2, 1}});
    const CodeState s = CodeState::init(net, flows_for(net, 2));
    EXPECT_EQ(unlabeled(s.active()[0].h), Matrix::identity(net.field, 2));
    EXPECT_EQ(s.gamma(0, 0), (std::vector<Elem>{1, 0}));
    EXPECT_EQ(s.gamma(0, 1), (std::vector<Elem>{0, 1}));
    EXPECT_EQ(s.gamma(0, 2), (std::vector<Elem>{0, 0}));
}

TEST(CodeState, UpdatesThatLeaveHUnchanged)
{
    const Network net = testing_util::quickstart();
    CodeState s = CodeState::init(net, flows_for(net, 3));
    // Case 1 with u = y(p_l): the source's first port copies its first receive port.
    const Matrix before = s.active()[0].h;
    s.apply_update(0, {1, 0, 0});
    EXPECT_EQ(s.active()[0].h, before);
    // Case 2 with u = 0 on a layer-2 port outside a flow, when one exists.
    s.apply_update(1, {0, 1, 0});
    s.apply_update(2, {0, 0, 1});
    s.advance_layer();
    for (std::size_t q = 0; q < s.port_count(); ++q) {
        const auto cons = s.constraints(q);
        const bool off_all = std::none_of(cons.begin(), cons.end(), [](const auto& c) { return c.on_flow; });
        if (off_all) {
            std::vector<Matrix> hs;
            for (const auto& d : s.active())
                hs.push_back(d.h);
            s.apply_update(q, std::vector<Elem>(s.node_rows(q).size(), 0));
            for (std::size_t t = 0; t < hs.size(); ++t)
                EXPECT_EQ(s.active()[t].h, hs[t]);
            return;
        }
        s.apply_update(q, ldrn::assign_deterministic(s, q).theta);
    }
}

TEST(CodeState, RejectsOutOfOrderAndSingularUpdates)
{
    const Network net = testing_util::quickstart();
    CodeState s = CodeState::init(net, flows_for(net, 3));
    EXPECT_THROW(s.apply_update(1, {0, 1, 0}), ldrn::Error);
    EXPECT_THROW(s.apply_update(0, {1, 0}), ldrn::Error);
    EXPECT_THROW(s.apply_update(0, {0, 0, 0}), ldrn::InvariantError);
    EXPECT_THROW(s.advance_layer(), ldrn::Error);
}

TEST(Deterministic, GoldenTranscriptOnQuickstart)
{
    const Network net = testing_util::quickstart();
    std::vector<ldrn::TranscriptEntry> transcript;
    BuildOptions opt;
    opt.transcript = &transcript;
    const MulticastCode code = ldrn::build_code(net, opt);
    EXPECT_EQ(ldrn::transcript_json(net.field, transcript),
              testing_util::read_text(std::string(LDRN_DATA_DIR) + "/quickstart_transcript.json"));
    EXPECT_TRUE(ldrn::verify_code(net, code).empty());
}

TEST(Deterministic, EveryStepCheckedFromScratch)
{
    const Network net = testing_util::quickstart();
    CodeState s = CodeState::init(net, flows_for(net, 3));
    while (!s.finished()) {
        while (!s.layer_done()) {
            const std::size_t q = s.next_port();
            const auto a = ldrn::assign_deterministic(s, q);
            // Every scalar inequality holds when evaluated directly.
            for (const auto& c : s.constraints(q))
                ASSERT_NE(ldrn::constraint_value(net.field, c, a.u), 0u);
            ASSERT_TRUE(bruteforce::admissible(s, q, a.u));
            ASSERT_EQ(bruteforce::combine(s, q, a.theta), a.u);
            s.apply_update(q, a.theta);
            expect_all_nonsingular(s, q);
        }
        s.advance_layer();
        for (std::size_t l = 0; l < s.flows().size(); ++l)
            if (s.flows()[l].destination.layer >= s.layer())
                ASSERT_NE(oracle::det_leibniz(s.condition_matrix(l)), 0u);
    }
    for (const auto& d : s.decoders())
        ASSERT_TRUE(d.has_value());
}

TEST(Deterministic, EmptyWGivesZero)
{
    // Two destinations in layer 2 only: layer-2 ports have no active destinations, so u = 0.
    const Network net = testing_util::make_network(Field::create(3), {{{2, 2}}, {{2, 2}, {2, 2}}, {{1, 1}}},
                                                   {{{1, 0}, {0, 1}, {0, 1}, {1, 0}}, {{1, 1, 1, 1}}},
                                                   {{2, 1}, {2, 2}});
    CodeState s = CodeState::init(net, flows_for(net, 2));
    s.apply_update(0, ldrn::assign_deterministic(s, 0).theta);
    s.apply_update(1, ldrn::assign_deterministic(s, 1).theta);
    s.advance_layer();
    EXPECT_TRUE(s.finished());
}

TEST(Deterministic, RefusesSmallField)
{
    const Network net = testing_util::three_dest_gf2();
    EXPECT_THROW(ldrn::build_code(net), ldrn::FieldTooSmall);
    try {
        ldrn::build_code(net);
    }
    catch (const ldrn::FieldTooSmall& e) {
        EXPECT_NE(std::string(e.what()).find("extension field"), std::string::npos);
    }
}

TEST(Deterministic, MatchesBruteForceOnMicroInstances)
{
    int ports = 0;
    for (auto [p, k, g] : std::vector<std::tuple<int, int, int>>{{3, 1, 2}, {2, 2, 2}, {2, 2, 3}, {2, 1, 1}})
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const Network net = generate_random(micro_params(seed, p, k, g));
            const int rate = std::min(ldrn::multicast_capacity(net), net.dims({0, 0}).rx);
            CodeState s = CodeState::init(net, flows_for(net, rate));
            while (!s.finished()) {
                while (!s.layer_done()) {
                    const std::size_t q = s.next_port();
                    const auto a = ldrn::assign_deterministic(s, q);
                    const auto check = bruteforce::check_port(s, q, a.u);
                    ASSERT_GT(check.satisfying, 0u);
                    ASSERT_TRUE(check.chosen_ok);
                    ASSERT_TRUE(check.formula_agrees);
                    s.apply_update(q, a.theta);
                    ++ports;
                }
                s.advance_layer();
            }
        }
    EXPECT_GT(ports, 100);
}

TEST(Randomized, SeededRunsAreReproducible)
{
    const Network net = testing_util::quickstart();
    BuildOptions opt;
    opt.mode = Mode::Randomized;
    opt.seed = 42;
    const MulticastCode a = ldrn::build_code(net, opt);
    const MulticastCode b = ldrn::build_code(net, opt);
    EXPECT_EQ(a, b);
    EXPECT_TRUE(ldrn::verify_code(net, a).empty());
    opt.seed = 43;
    EXPECT_TRUE(ldrn::verify_code(net, ldrn::build_code(net, opt)).empty());
}

TEST(Randomized, NoActiveDestinationsAcceptsAnyDraw)
{
    const Network net = testing_util::make_network(Field::create(3), {{{2, 2}}, {{2, 2}}, {{1, 1}}},
                                                   {{{1, 0}, {0, 1}}, {{1, 1}}}, {{2, 1}});
    CodeState s = CodeState::init(net, flows_for(net, 2));
    s.apply_update(0, {1, 0});
    s.apply_update(1, {0, 1});
    s.advance_layer();
    EXPECT_TRUE(s.finished());
}

TEST(Randomized, DrawFailureRateWithinBound)
{
    const Network net = testing_util::quickstart();  // |F| = 4 = 2g
    std::mt19937_64 rng(7);
    int draws = 0;
    int failures = 0;
    CodeState s = CodeState::init(net, flows_for(net, 3));
    while (!s.finished()) {
        while (!s.layer_done()) {
            const std::size_t q = s.next_port();
            for (int t = 0; t < 200; ++t) {
                const auto d = ldrn::draw_random(s, q, rng);
                ++draws;
                failures += d.accepted ? 0 : 1;
                ASSERT_EQ(d.accepted, bruteforce::admissible(s, q, d.u));
            }
            s.apply_update(q, ldrn::assign_randomized(s, q, rng, 20).theta);
        }
        s.advance_layer();
    }
    const double bound = 2.0 / 4.0;
    const double sigma = std::sqrt(bound * (1 - bound) / draws);
    EXPECT_LE(static_cast<double>(failures) / draws, bound + 3 * sigma);
}

TEST(Randomized, RetriesExhaustedReportsZeroFactors)
{
    const Network net = testing_util::quickstart();
    CodeState s = CodeState::init(net, flows_for(net, 3));
    // Consume the first port so the second still has to fix a flow row; zero retries eventually fail.
    std::mt19937_64 rng(1);
    bool thrown = false;
    for (int t = 0; t < 200 && !thrown; ++t) {
        try {
            (void)ldrn::assign_randomized(s, 0, rng, 0);
        }
        catch (const ldrn::RetriesExhausted& e) {
            thrown = true;
            EXPECT_NE(std::string(e.what()).find("zero factors"), std::string::npos);
        }
    }
    EXPECT_TRUE(thrown);
}

TEST(BuildCode, UnicastAndEmptyCodes)
{
    const Network net = testing_util::identity_pair(Field::create(2), 3);
    const MulticastCode code = ldrn::build_code(net);
    EXPECT_EQ(code.rate, 3);
    EXPECT_EQ(code.destinations[0].decoder, Matrix::identity(net.field, 3));
    EXPECT_TRUE(ldrn::verify_code(net, code).empty());

    BuildOptions zero;
    zero.rate = 0;
    const MulticastCode empty = ldrn::build_code(testing_util::quickstart(), zero);
    EXPECT_EQ(empty.rate, 0);
    EXPECT_EQ(empty.destinations[0].decoder.rows(), 0u);
    EXPECT_TRUE(ldrn::verify_code(testing_util::quickstart(), empty).empty());

    BuildOptions too_high;
    too_high.rate = 4;
    EXPECT_THROW(ldrn::build_code(testing_util::quickstart(), too_high), ldrn::Error);
}

TEST(BuildCode, LocalMapsStayInsideTheirNode)
{
    const Network net = testing_util::quickstart();
    const MulticastCode code = ldrn::build_code(net);
    for (int i = 0; i < net.layer_count(); ++i)
        for (int j = 0; j < net.node_count(i); ++j) {
            EXPECT_EQ(static_cast<int>(code.theta[i][j].rows()), net.dims({i, j}).tx);
            EXPECT_EQ(static_cast<int>(code.theta[i][j].cols()), net.dims({i, j}).rx);
        }
}

TEST(BuildCode, SaveLoadRoundTrip)
{
    const Network net = testing_util::quickstart();
    const MulticastCode code = ldrn::build_code(net);
    const std::string text = ldrn::save_code(code);
    EXPECT_EQ(ldrn::load_code(text), code);
    EXPECT_EQ(ldrn::save_code(ldrn::load_code(text)), text);
    EXPECT_THROW(ldrn::load_code("{\"field\": {\"p\": 4, \"k\": 1}}"), ldrn::ParseError);
}
