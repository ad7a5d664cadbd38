#include "render.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

using namespace monty::cli;

namespace {

bool eq(monty_rational a, monty_rational b) { return a.num == b.num && a.den == b.den; }

bool eq(const monty_rate& a, const monty_rate& b) {
    return a.wins == b.wins && a.games == b.games && a.defined == b.defined &&
           (!a.defined || (a.rate == b.rate && a.ci_low == b.ci_low && a.ci_high == b.ci_high));
}

bool eq(const monty_posterior& a, const monty_posterior& b) {
    return a.opened == b.opened && eq(a.p_switch_win, b.p_switch_win) && eq(a.p_stay_win, b.p_stay_win) &&
           a.bayes_ratio_infinite == b.bayes_ratio_infinite && eq(a.bayes_ratio, b.bayes_ratio);
}

bool eq(const SimReport& a, const SimReport& b) {
    const auto &x = a.summary, &y = b.summary;
    bool same = x.config.variant == y.config.variant && eq(x.config.bias, y.config.bias) &&
                x.config.strategy == y.config.strategy && x.config.trials == y.config.trials &&
                x.config.seed == y.config.seed && x.wins_total == y.wins_total && eq(x.overall, y.overall) &&
                eq(x.exact_rate, y.exact_rate) && x.agrees_3sigma == y.agrees_3sigma &&
                x.elapsed_seconds == y.elapsed_seconds && a.checks.size() == b.checks.size();
    if (x.config.strategy == MONTY_STRATEGY_MIXED) {
        same = same && eq(x.config.mixed_switch_probability, y.config.mixed_switch_probability);
    }
    for (monty_box d : {MONTY_BOX_L, MONTY_BOX_R}) {
        same = same && eq(x.given_opened[d], y.given_opened[d]) && eq(x.exact_given_opened[d], y.exact_given_opened[d]) &&
               eq(x.exact_opened_fraction[d], y.exact_opened_fraction[d]);
    }
    for (std::size_t i = 0; same && i < a.checks.size(); ++i) {
        const Check &c = a.checks[i], &d = b.checks[i];
        same = c.name == d.name && c.observed == d.observed && eq(c.expected, d.expected) && c.n == d.n &&
               c.bound == d.bound && c.pass == d.pass;
    }
    return same;
}

// JSON text round trip: print, parse the text, rebuild.
json reparse(const json& j) { return json::parse(j.dump(2)); }

} // namespace

TEST(RenderRoundTrip, PosteriorsOverBiasGrid) {
    for (int k = 0; k <= 64; ++k) {
        for (monty_box door : {MONTY_BOX_L, MONTY_BOX_R}) {
            monty_posterior p{};
            ASSERT_EQ(monty_posterior_given_opened({k, 64}, door, &p), MONTY_OK);
            ASSERT_TRUE(eq(posterior_from_json(reparse(posterior_to_json(p))), p));
        }
    }
}

TEST(RenderRoundTrip, GameTwoAndAtoms) {
    for (monty_decision d : {MONTY_STAY, MONTY_SWITCH}) {
        monty_game2_report r{};
        ASSERT_EQ(monty_game_two_win(d, &r), MONTY_OK);
        monty_game2_report back = game2_from_json(reparse(game2_to_json(r)));
        EXPECT_EQ(back.decision, r.decision);
        EXPECT_TRUE(eq(back.p_win_switch, r.p_win_switch));
        EXPECT_TRUE(eq(back.p_win_stay, r.p_win_stay));
        for (int b = 0; b < 3; ++b) EXPECT_TRUE(eq(back.per_placement[b], r.per_placement[b]));
    }
    for (int k = 0; k <= 16; ++k) {
        Atoms atoms{};
        ASSERT_EQ(monty_enumerate_sample_space({k, 16}, atoms.data()), MONTY_OK);
        Atoms back = atoms_from_json(reparse(atoms_to_json(atoms)));
        for (int i = 0; i < 4; ++i) {
            EXPECT_EQ(back[i].car, atoms[i].car);
            EXPECT_EQ(back[i].switch_target, atoms[i].switch_target);
            EXPECT_EQ(back[i].result, atoms[i].result);
            EXPECT_TRUE(eq(back[i].probability, atoms[i].probability));
        }
    }
}

TEST(RenderRoundTrip, SimulationReportsOnRandomConfigs) {
    std::mt19937_64 gen(2718);
    const monty_strategy_kind kinds[] = {MONTY_STRATEGY_ALWAYS_STAY, MONTY_STRATEGY_ALWAYS_SWITCH,
                                         MONTY_STRATEGY_MIXED, MONTY_STRATEGY_BIAS_AWARE};
    for (int i = 0; i < 40; ++i) {
        monty_sim_config c;
        monty_sim_config_init(&c);
        c.variant = gen() % 2 ? MONTY_GAME_I : MONTY_GAME_II;
        c.bias = {static_cast<std::int64_t>(gen() % 9), 8};
        c.strategy = kinds[gen() % 4];
        if (c.strategy == MONTY_STRATEGY_BIAS_AWARE) c.variant = MONTY_GAME_I;
        c.mixed_switch_probability = {static_cast<std::int64_t>(gen() % 4), 3};
        c.trials = 1 + gen() % 3000; // small runs exercise undefined conditionals
        c.seed = gen();
        monty_simulation* sim = nullptr;
        ASSERT_EQ(monty_simulate(&c, &sim), MONTY_OK) << monty_last_error();
        SimReport report = collect(sim);
        monty_simulation_free(sim);
        ASSERT_TRUE(eq(sim_from_json(reparse(sim_to_json(report))), report)) << sim_to_json(report).dump();
    }
}

TEST(RenderJson, EnvelopeSchemaAndUndefinedMarker) {
    monty_sim_config c;
    monty_sim_config_init(&c);
    c.trials = 1;
    monty_simulation* sim = nullptr;
    ASSERT_EQ(monty_simulate(&c, &sim), MONTY_OK);
    json j = sim_to_json(collect(sim));
    monty_simulation_free(sim);
    for (const char* key : {"command", "inputs", "results", "exact", "verdict"}) EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_FALSE(j["inputs"].contains("batch_size"));
    const json& g = j["results"]["given_opened"];
    bool one_undefined = g["L"]["rate"].is_null() != g["R"]["rate"].is_null();
    EXPECT_TRUE(one_undefined);
    for (const char* k : {"num", "den", "approx"}) EXPECT_TRUE(j["exact"]["win_rate"].contains(k));
}

TEST(RenderCsv, Rfc4180Quoting) {
    EXPECT_EQ(csv_field("plain"), "plain");
    EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
    EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    EXPECT_EQ(csv_field("two\nlines"), "\"two\nlines\"");
    std::ostringstream os;
    csv_row(os, {"a", "b,c"});
    EXPECT_EQ(os.str(), "a,\"b,c\"\r\n");
}

TEST(RenderCsv, FixedHeadersAndColumnCounts) {
    auto count_columns = [](const std::string& line) {
        return static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
    };
    monty_sim_config c;
    monty_sim_config_init(&c);
    c.trials = 2000;
    monty_simulation* sim = nullptr;
    ASSERT_EQ(monty_simulate(&c, &sim), MONTY_OK);
    SimReport report = collect(sim);
    monty_simulation_free(sim);

    std::ostringstream sim_csv;
    write_simulate(sim_csv, Format::Csv, report);
    std::istringstream lines(sim_csv.str());
    std::string line;
    std::getline(lines, line);
    EXPECT_EQ(line, "metric,wins,games,rate,ci_low,ci_high,exact,exact_approx,delta,within_3sigma\r");
    int rows = 0;
    while (std::getline(lines, line)) {
        EXPECT_EQ(count_columns(line), kSimulateCsvHeader.size());
        ++rows;
    }
    EXPECT_EQ(rows, 4);

    std::ostringstream sweep_csv;
    write_sweep(sweep_csv, Format::Csv, {report, report});
    std::istringstream sweep_lines(sweep_csv.str());
    std::getline(sweep_lines, line);
    EXPECT_EQ(line.substr(0, 15), "q,q_approx,seed");
    rows = 0;
    while (std::getline(sweep_lines, line)) {
        EXPECT_EQ(count_columns(line), kSweepCsvHeader.size());
        ++rows;
    }
    EXPECT_EQ(rows, 8);
}
