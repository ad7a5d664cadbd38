#include "monty/monty.h"

#include <gtest/gtest.h>

#include <httplib.h>

#include <string>

namespace {

bool eq(monty_rational a, std::int64_t num, std::int64_t den) { return a.num == num && a.den == den; }

} // namespace

TEST(CApi, ParsesBiasAndReportsErrors) {
    monty_rational q{};
    ASSERT_EQ(monty_bias_parse("0.25", &q), MONTY_OK);
    EXPECT_TRUE(eq(q, 1, 4));
    EXPECT_EQ(monty_bias_parse("3/2", &q), MONTY_E_OUT_OF_RANGE);
    EXPECT_NE(std::string(monty_last_error()).find("3/2"), std::string::npos);
    EXPECT_EQ(monty_bias_parse("x", &q), MONTY_E_PARSE);
    EXPECT_EQ(monty_bias_parse(nullptr, &q), MONTY_E_INVALID_ARGUMENT);
    ASSERT_EQ(monty_rational_parse("-6/4", &q), MONTY_OK);
    EXPECT_TRUE(eq(q, -3, 2));
    EXPECT_EQ(monty_rational_parse("99999999999999999999", &q), MONTY_E_OVERFLOW);
}

TEST(CApi, CoreModel) {
    monty_box doors[2];
    size_t n = 0;
    ASSERT_EQ(monty_legal_host_doors(MONTY_BOX_T, doors, &n), MONTY_OK);
    EXPECT_EQ(n, 2u);
    ASSERT_EQ(monty_legal_host_doors(MONTY_BOX_L, doors, &n), MONTY_OK);
    EXPECT_EQ(n, 1u);
    EXPECT_EQ(doors[0], MONTY_BOX_R);

    monty_box opened{};
    ASSERT_EQ(monty_host_choose(MONTY_BOX_T, {1, 2}, 0.25, &opened), MONTY_OK);
    EXPECT_EQ(opened, MONTY_BOX_R);
    EXPECT_EQ(monty_host_choose(MONTY_BOX_T, {1, 2}, 1.0, &opened), MONTY_E_OUT_OF_RANGE);

    monty_transcript t{};
    ASSERT_EQ(monty_play(MONTY_GAME_II, MONTY_BOX_T, {1, 2}, MONTY_SWITCH, 0.9, &t), MONTY_OK);
    EXPECT_EQ(t.host_opened, MONTY_BOX_L);
    EXPECT_EQ(t.outcome, MONTY_LOSE);
    EXPECT_EQ(t.decided_before_reveal, 1);
    EXPECT_EQ(monty_play(MONTY_GAME_I, MONTY_BOX_T, {3, 2}, MONTY_SWITCH, 0.1, &t), MONTY_E_OUT_OF_RANGE);
}

TEST(CApi, Analytics) {
    monty_posterior p{};
    ASSERT_EQ(monty_posterior_given_opened({1, 2}, MONTY_BOX_R, &p), MONTY_OK);
    EXPECT_TRUE(eq(p.p_switch_win, 2, 3));
    EXPECT_TRUE(eq(p.p_stay_win, 1, 3));
    EXPECT_TRUE(eq(p.bayes_ratio, 2, 1));
    EXPECT_EQ(p.bayes_ratio_infinite, 0);
    ASSERT_EQ(monty_posterior_from_sample_space({0, 1}, MONTY_BOX_R, &p), MONTY_OK);
    EXPECT_EQ(p.bayes_ratio_infinite, 1);
    EXPECT_EQ(monty_posterior_given_opened({1, 2}, MONTY_BOX_T, &p), MONTY_E_INVALID_DOOR);

    monty_rational r{};
    int inf = -1;
    ASSERT_EQ(monty_bayes_ratio({0, 1}, &r, &inf), MONTY_OK);
    EXPECT_EQ(inf, 1);

    monty_atom atoms[4];
    ASSERT_EQ(monty_enumerate_sample_space({3, 4}, atoms), MONTY_OK);
    EXPECT_TRUE(eq(atoms[0].probability, 1, 12));
    EXPECT_TRUE(eq(atoms[1].probability, 1, 4));

    monty_game2_report g{};
    ASSERT_EQ(monty_game_two_win(MONTY_SWITCH, &g), MONTY_OK);
    EXPECT_TRUE(eq(g.p_win_switch, 2, 3));
    EXPECT_TRUE(eq(g.per_placement[MONTY_BOX_T], 0, 1));

    ASSERT_EQ(monty_long_run_switch_rate({7, 13}, &r), MONTY_OK);
    EXPECT_TRUE(eq(r, 2, 3));

    double lo = 0, hi = 0;
    ASSERT_EQ(monty_wilson_interval(0, 10, &lo, &hi), MONTY_OK);
    EXPECT_EQ(lo, 0.0);
    EXPECT_EQ(monty_wilson_interval(0, 0, &lo, &hi), MONTY_E_INVALID_ARGUMENT);
}

TEST(CApi, SimulationHandles) {
    monty_sim_config c;
    monty_sim_config_init(&c);
    c.trials = 10000;
    c.seed = 3;
    c.bias = {1, 4};
    monty_simulation* sim = nullptr;
    ASSERT_EQ(monty_simulate(&c, &sim), MONTY_OK);
    monty_sim_summary s{};
    ASSERT_EQ(monty_simulation_summary(sim, &s), MONTY_OK);
    EXPECT_EQ(s.overall.games, 10000u);
    EXPECT_EQ(s.given_opened[MONTY_BOX_L].games + s.given_opened[MONTY_BOX_R].games, 10000u);
    EXPECT_TRUE(eq(s.exact_given_opened[MONTY_BOX_R], 4, 5));
    EXPECT_EQ(monty_simulation_check_count(sim), 4u);
    monty_sigma_check check{};
    ASSERT_EQ(monty_simulation_check(sim, 0, &check), MONTY_OK);
    EXPECT_STREQ(check.name, "win_rate");
    EXPECT_EQ(monty_simulation_check(sim, 9, &check), MONTY_E_OUT_OF_RANGE);
    monty_simulation_free(sim);

    c.trials = 0;
    EXPECT_EQ(monty_simulate(&c, &sim), MONTY_E_INVALID_ARGUMENT);
    c.trials = 10;
    c.strategy = MONTY_STRATEGY_BIAS_AWARE;
    c.variant = MONTY_GAME_II;
    EXPECT_EQ(monty_simulate(&c, &sim), MONTY_E_INVALID_ARGUMENT);
}

TEST(CApi, Sweep) {
    monty_sim_config c;
    monty_sim_config_init(&c);
    c.trials = 5000;
    monty_rational grid[] = {{0, 1}, {1, 2}, {1, 1}};
    monty_sweep* sweep = nullptr;
    ASSERT_EQ(monty_sweep_bias(grid, 3, &c, &sweep), MONTY_OK);
    ASSERT_EQ(monty_sweep_size(sweep), 3u);
    monty_sim_summary s{};
    ASSERT_EQ(monty_simulation_summary(monty_sweep_row(sweep, 1), &s), MONTY_OK);
    EXPECT_TRUE(eq(s.config.bias, 1, 2));
    EXPECT_EQ(monty_sweep_row(sweep, 3), nullptr);
    monty_sweep_free(sweep);

    monty_rational bad[] = {{1, 2}, {5, 4}};
    EXPECT_EQ(monty_sweep_bias(bad, 2, &c, &sweep), MONTY_E_OUT_OF_RANGE);
    EXPECT_NE(std::string(monty_last_error()).find("q=5/4"), std::string::npos);
}

TEST(CApi, ServerLifecycle) {
    monty_server_config c;
    monty_server_config_init(&c);
    c.port = 0;
    c.q_default = {1, 4};
    monty_server* server = nullptr;
    ASSERT_EQ(monty_server_create(&c, &server), MONTY_OK);
    int port = 0;
    ASSERT_EQ(monty_server_start(server, &port), MONTY_OK);
    httplib::Client client("127.0.0.1", port);
    auto res = client.Post("/sessions", "{}", "application/json");
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 201);
    EXPECT_NE(res->body.find("\"den\":4"), std::string::npos);
    monty_server_stop(server);
    monty_server_free(server);

    c.q_default = {2, 1};
    EXPECT_EQ(monty_server_create(&c, &server), MONTY_E_OUT_OF_RANGE);
}
