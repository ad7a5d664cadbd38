// monty: exact posteriors, simulations, bias sweeps and the session server
// for the biased-host three-box game.
//
// Exit codes: 0 success, 1 self-check or runtime failure, 2 usage error.

#include "render.hpp"

#include "monty/monty.h"

#include <CLI11.hpp>

#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace monty::cli;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RuntimeFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

monty_rational parse_bias(const std::string& text) {
    monty_rational q{};
    if (monty_bias_parse(text.c_str(), &q) != MONTY_OK) {
        throw UsageError("--q: " + std::string(monty_last_error()));
    }
    return q;
}

monty_box parse_opened(const std::string& text) {
    if (text == "L" || text == "l") return MONTY_BOX_L;
    if (text == "R" || text == "r") return MONTY_BOX_R;
    if (text == "T" || text == "t") throw UsageError("--opened: the host never opens the contestant's box T");
    throw UsageError("--opened must be L or R");
}

monty_decision parse_decision(const std::string& text) {
    if (text == "stay" || text == "Stay") return MONTY_STAY;
    if (text == "switch" || text == "Switch") return MONTY_SWITCH;
    throw UsageError("--decision must be stay or switch");
}

monty_variant parse_variant(const std::string& text) {
    if (text == "I" || text == "1" || text == "GameI") return MONTY_GAME_I;
    if (text == "II" || text == "2" || text == "GameII") return MONTY_GAME_II;
    throw UsageError("--variant must be I or II");
}

void parse_strategy(const std::string& text, monty_sim_config& c) {
    if (text == "stay") {
        c.strategy = MONTY_STRATEGY_ALWAYS_STAY;
    } else if (text == "switch") {
        c.strategy = MONTY_STRATEGY_ALWAYS_SWITCH;
    } else if (text == "bias-aware") {
        c.strategy = MONTY_STRATEGY_BIAS_AWARE;
    } else if (text.rfind("mixed:", 0) == 0) {
        c.strategy = MONTY_STRATEGY_MIXED;
        if (monty_bias_parse(text.c_str() + 6, &c.mixed_switch_probability) != MONTY_OK) {
            throw UsageError("--strategy: " + std::string(monty_last_error()));
        }
    } else {
        throw UsageError("--strategy must be stay, switch, bias-aware or mixed:<p>");
    }
}

Format parse_format(const std::string& text) {
    if (text == "human") return Format::Human;
    if (text == "json") return Format::Json;
    if (text == "csv") return Format::Csv;
    throw UsageError("--format must be human, json or csv");
}

void check(monty_status status, bool usage_on_invalid = true) {
    if (status == MONTY_OK) return;
    std::string msg = monty_last_error();
    bool usage = status == MONTY_E_INVALID_ARGUMENT || status == MONTY_E_INVALID_DOOR ||
                 status == MONTY_E_OUT_OF_RANGE || status == MONTY_E_PARSE;
    if (usage && usage_on_invalid) throw UsageError(msg);
    throw RuntimeFailure(msg);
}

// "start:stop:step" (inclusive) or "a,b,c"; every value exact.
std::vector<monty_rational> parse_grid(const std::string& spec) {
    std::vector<monty_rational> grid;
    if (spec.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(spec);
        for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
        if (parts.size() != 3) throw UsageError("--grid range must be start:stop:step");
        monty_rational start{}, stop{}, step{};
        for (auto [text, out] : {std::pair{&parts[0], &start}, std::pair{&parts[1], &stop}, std::pair{&parts[2], &step}}) {
            if (monty_rational_parse(text->c_str(), out) != MONTY_OK) {
                throw UsageError("--grid: " + std::string(monty_last_error()));
            }
        }
        if (step.num <= 0) throw UsageError("--grid step must be positive");
        // start + k*step <= stop, all in exact arithmetic over a common denominator.
        for (std::int64_t k = 0;; ++k) {
            __int128 den = static_cast<__int128>(start.den) * step.den;
            __int128 num = static_cast<__int128>(start.num) * step.den + static_cast<__int128>(k) * step.num * start.den;
            if (num * stop.den > static_cast<__int128>(stop.num) * den) break;
            if (grid.size() >= 100000) throw UsageError("--grid has too many points");
            std::string text = std::to_string(static_cast<long long>(num)) + "/" + std::to_string(static_cast<long long>(den));
            grid.push_back(parse_bias(text));
        }
    } else {
        std::stringstream ss(spec);
        for (std::string part; std::getline(ss, part, ',');) grid.push_back(parse_bias(part));
    }
    if (grid.empty()) throw UsageError("--grid is empty");
    return grid;
}

struct SimFlags {
    std::string variant = "I";
    std::string q = "1/2";
    std::string strategy = "switch";
    std::uint64_t trials = 1000000;
    std::uint64_t seed = 0;
    std::uint64_t batch_size = 0;
    unsigned threads = 0;

    void add_to(CLI::App* cmd, bool with_q) {
        cmd->add_option("--variant", variant, "Game variant: I (reveal, then decide) or II (commit first)")
            ->capture_default_str();
        if (with_q) cmd->add_option("--q", q, "Host bias P(open R | car at T), as a/b or decimal")->capture_default_str();
        cmd->add_option("--strategy", strategy, "stay | switch | bias-aware | mixed:<p>")->capture_default_str();
        cmd->add_option("--trials", trials, "Games per run")->capture_default_str()->check(CLI::PositiveNumber);
        cmd->add_option("--seed", seed, "RNG seed (MONTY_SEED overrides when absent)")
            ->envname("MONTY_SEED")
            ->capture_default_str();
        cmd->add_option("--batch-size", batch_size, "Trials per parallel work unit (0: default)");
        cmd->add_option("--threads", threads, "Worker threads (0: hardware concurrency)");
    }

    monty_sim_config config() const {
        monty_sim_config c;
        monty_sim_config_init(&c);
        c.variant = parse_variant(variant);
        c.bias = parse_bias(q);
        parse_strategy(strategy, c);
        c.trials = trials;
        c.seed = seed;
        c.batch_size = batch_size;
        c.threads = threads;
        return c;
    }
};

struct SimDeleter {
    void operator()(monty_simulation* s) const { monty_simulation_free(s); }
};
struct SweepDeleter {
    void operator()(monty_sweep* s) const { monty_sweep_free(s); }
};
struct ServerDeleter {
    void operator()(monty_server* s) const { monty_server_free(s); }
};

int run(int argc, char** argv) {
    CLI::App app{"Exact and simulated win probabilities for the biased-host three-box game"};
    app.require_subcommand(1);
    std::string format = "human";
    app.add_option("--format", format, "Output format: human, json, csv")->capture_default_str();

    std::string q = "1/2", opened = "R", decision = "switch", grid = "0:1:1/4";

    auto* exact = app.add_subcommand("exact", "Posterior win probabilities after the host opens a door");
    exact->add_option("--q", q, "Host bias P(open R | car at T), as a/b or decimal")->capture_default_str();
    exact->add_option("--opened", opened, "Door the host opened: L or R")->capture_default_str();
    exact->add_option("--format", format, "Output format: human, json, csv");

    auto* game2 = app.add_subcommand("game2", "Win probability when the decision is committed before the reveal");
    game2->add_option("--decision", decision, "stay or switch")->capture_default_str();
    game2->add_option("--format", format, "Output format: human, json, csv");

    auto* enumerate = app.add_subcommand("enumerate", "The four-atom sample space with exact probabilities");
    enumerate->add_option("--q", q, "Host bias")->capture_default_str();
    enumerate->add_option("--format", format, "Output format: human, json, csv");

    SimFlags sim_flags;
    auto* simulate = app.add_subcommand("simulate", "Seeded Monte Carlo run checked against the exact values");
    sim_flags.add_to(simulate, true);
    simulate->add_option("--format", format, "Output format: human, json, csv");

    SimFlags sweep_flags;
    sweep_flags.trials = 100000;
    auto* sweep = app.add_subcommand("sweep", "Simulate across a grid of host biases");
    sweep_flags.add_to(sweep, false);
    sweep->add_option("--grid", grid, "start:stop:step or comma list of q values")->capture_default_str();
    sweep->add_option("--format", format, "Output format: human, json, csv");

    std::string bind = "127.0.0.1", cors = "*", log_path, q_default = "1/2";
    int port = 8080;
    std::optional<std::uint64_t> server_seed;
    auto* serve = app.add_subcommand("serve", "Run the interactive session service");
    serve->add_option("--port", port, "TCP port")->capture_default_str()->check(CLI::Range(0, 65535));
    serve->add_option("--bind", bind, "Bind address")->capture_default_str();
    serve->add_option("--q-default", q_default, "Host bias for sessions that do not set q")->capture_default_str();
    serve->add_option("--cors-origin", cors, "Access-Control-Allow-Origin value (empty disables)")->capture_default_str();
    serve->add_option("--transcript-log", log_path, "Append one JSON line per resolved session");
    serve->add_option("--seed", server_seed, "Seed for car placement and host draws");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const Format fmt = parse_format(format);

    if (*exact) {
        monty_rational bias = parse_bias(q);
        monty_box door = parse_opened(opened);
        monty_posterior bayes{}, sample_space{};
        check(monty_posterior_given_opened(bias, door, &bayes));
        check(monty_posterior_from_sample_space(bias, door, &sample_space));
        write_exact(std::cout, fmt, bias, bayes, sample_space);
        return kExitOk;
    }
    if (*game2) {
        monty_game2_report report{};
        check(monty_game_two_win(parse_decision(decision), &report));
        write_game2(std::cout, fmt, report);
        return kExitOk;
    }
    if (*enumerate) {
        monty_rational bias = parse_bias(q);
        Atoms atoms{};
        check(monty_enumerate_sample_space(bias, atoms.data()));
        write_enumerate(std::cout, fmt, bias, atoms);
        return kExitOk;
    }
    if (*simulate) {
        monty_sim_config config = sim_flags.config();
        monty_simulation* raw = nullptr;
        check(monty_simulate(&config, &raw));
        std::unique_ptr<monty_simulation, SimDeleter> sim(raw);
        SimReport report = collect(sim.get());
        write_simulate(std::cout, fmt, report);
        return report.summary.agrees_3sigma ? kExitOk : kExitFailure;
    }
    if (*sweep) {
        monty_sim_config base = sweep_flags.config();
        std::vector<monty_rational> points = parse_grid(grid);
        monty_sweep* raw = nullptr;
        check(monty_sweep_bias(points.data(), points.size(), &base, &raw));
        std::unique_ptr<monty_sweep, SweepDeleter> handle(raw);
        std::vector<SimReport> rows;
        bool pass = true;
        for (std::size_t i = 0; i < monty_sweep_size(handle.get()); ++i) {
            rows.push_back(collect(monty_sweep_row(handle.get(), i)));
            pass = pass && rows.back().summary.agrees_3sigma;
        }
        write_sweep(std::cout, fmt, rows);
        return pass ? kExitOk : kExitFailure;
    }
    if (*serve) {
        monty_server_config config;
        monty_server_config_init(&config);
        config.bind_address = bind.c_str();
        config.port = port;
        config.cors_origin = cors.c_str();
        config.q_default = parse_bias(q_default);
        config.transcript_log = log_path.empty() ? nullptr : log_path.c_str();
        if (server_seed) {
            config.has_seed = 1;
            config.seed = *server_seed;
        }
        monty_server* raw = nullptr;
        check(monty_server_create(&config, &raw), false);
        std::unique_ptr<monty_server, ServerDeleter> server(raw);
        int bound = 0;
        check(monty_server_bind(server.get(), &bound), false);
        std::cerr << "listening on http://" << bind << ":" << bound << std::endl;
        check(monty_server_run(server.get()), false);
        return kExitOk;
    }
    return kExitUsage;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}
