#include "monty/monty.h"

#include "monty/analytics.hpp"
#include "monty/error.hpp"
#include "monty/server.hpp"
#include "monty/simulation.hpp"

#include <new>
#include <string>

using namespace monty;

struct monty_simulation {
    SimulationResult result;
    ExactExpectation exact;
    std::vector<SigmaCheck> checks;
};

struct monty_sweep {
    std::vector<monty_simulation> rows;
};

struct monty_server {
    std::unique_ptr<SessionServer> server;
};

namespace {

thread_local std::string last_error;

monty_status status_of(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument: return MONTY_E_INVALID_ARGUMENT;
    case ErrorCode::InvalidDoor: return MONTY_E_INVALID_DOOR;
    case ErrorCode::OutOfRange: return MONTY_E_OUT_OF_RANGE;
    case ErrorCode::Parse: return MONTY_E_PARSE;
    case ErrorCode::Overflow: return MONTY_E_OVERFLOW;
    case ErrorCode::Io: return MONTY_E_IO;
    case ErrorCode::Internal: return MONTY_E_INTERNAL;
    }
    return MONTY_E_INTERNAL;
}

template <typename F>
monty_status guard(F&& body) {
    try {
        body();
        last_error.clear();
        return MONTY_OK;
    } catch (const Error& e) {
        last_error = e.what();
        return status_of(e.code());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return MONTY_E_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return MONTY_E_INTERNAL;
    }
}

void require(const void* p, const char* what) {
    if (!p) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must not be null");
}

Box box_in(monty_box b) {
    switch (b) {
    case MONTY_BOX_T: return Box::T;
    case MONTY_BOX_L: return Box::L;
    case MONTY_BOX_R: return Box::R;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown box label");
}

monty_box box_out(Box b) {
    switch (b) {
    case Box::T: return MONTY_BOX_T;
    case Box::L: return MONTY_BOX_L;
    case Box::R: return MONTY_BOX_R;
    }
    return MONTY_BOX_T;
}

Variant variant_in(monty_variant v) {
    if (v == MONTY_GAME_I) return Variant::GameI;
    if (v == MONTY_GAME_II) return Variant::GameII;
    throw Error(ErrorCode::InvalidArgument, "unknown game variant");
}

Decision decision_in(monty_decision d) {
    if (d == MONTY_STAY) return Decision::Stay;
    if (d == MONTY_SWITCH) return Decision::Switch;
    throw Error(ErrorCode::InvalidArgument, "unknown decision");
}

Rational rational_in(monty_rational r) { return Rational(r.num, r.den); }
monty_rational rational_out(const Rational& r) { return {r.num(), r.den()}; }
HostBias bias_in(monty_rational r) { return HostBias(rational_in(r)); }

monty_posterior posterior_out(const PosteriorReport& p) {
    monty_posterior out{};
    out.opened = box_out(p.opened);
    out.p_switch_win = rational_out(p.p_switch_win);
    out.p_stay_win = rational_out(p.p_stay_win);
    out.bayes_ratio_infinite = p.bayes_ratio.is_infinite() ? 1 : 0;
    out.bayes_ratio = p.bayes_ratio.is_infinite() ? monty_rational{0, 1} : rational_out(p.bayes_ratio.value());
    return out;
}

Strategy strategy_in(const monty_sim_config& c) {
    switch (c.strategy) {
    case MONTY_STRATEGY_ALWAYS_STAY: return Strategy::always_stay();
    case MONTY_STRATEGY_ALWAYS_SWITCH: return Strategy::always_switch();
    case MONTY_STRATEGY_MIXED: return Strategy::mixed(rational_in(c.mixed_switch_probability));
    case MONTY_STRATEGY_BIAS_AWARE: return Strategy::bias_aware();
    }
    throw Error(ErrorCode::InvalidArgument, "unknown strategy");
}

monty_strategy_kind strategy_out(const Strategy& s) {
    switch (s.kind) {
    case Strategy::Kind::AlwaysStay: return MONTY_STRATEGY_ALWAYS_STAY;
    case Strategy::Kind::AlwaysSwitch: return MONTY_STRATEGY_ALWAYS_SWITCH;
    case Strategy::Kind::Mixed: return MONTY_STRATEGY_MIXED;
    case Strategy::Kind::BiasAware: return MONTY_STRATEGY_BIAS_AWARE;
    }
    return MONTY_STRATEGY_ALWAYS_SWITCH;
}

SimulationConfig config_in(const monty_sim_config& c) {
    SimulationConfig s;
    s.variant = variant_in(c.variant);
    s.bias = bias_in(c.bias);
    s.strategy = strategy_in(c);
    s.trials = c.trials;
    s.seed = c.seed;
    s.batch_size = c.batch_size;
    s.threads = c.threads;
    return s;
}

monty_sim_config config_out(const SimulationConfig& s) {
    monty_sim_config c{};
    c.variant = s.variant == Variant::GameI ? MONTY_GAME_I : MONTY_GAME_II;
    c.bias = rational_out(s.bias.q());
    c.strategy = strategy_out(s.strategy);
    c.mixed_switch_probability = rational_out(s.strategy.switch_probability);
    c.trials = s.trials;
    c.seed = s.seed;
    c.batch_size = s.batch_size;
    c.threads = s.threads;
    return c;
}

monty_rate rate_out(const RateEstimate& e) {
    monty_rate r{};
    r.wins = e.tally.wins;
    r.games = e.tally.games;
    r.defined = e.rate ? 1 : 0;
    if (e.rate) {
        r.rate = *e.rate;
        r.ci_low = e.ci95->low;
        r.ci_high = e.ci95->high;
    }
    return r;
}

monty_simulation wrap(SimulationResult result) {
    monty_simulation sim;
    sim.exact = exact_expectation(result.config.variant, result.config.bias, result.config.strategy);
    sim.checks = three_sigma_checks(result);
    sim.result = std::move(result);
    return sim;
}

} // namespace

extern "C" {

const char* monty_last_error(void) { return last_error.c_str(); }

const char* monty_version(void) { return "1.0.0"; }

monty_status monty_rational_parse(const char* text, monty_rational* out) {
    return guard([&] {
        require(text, "text");
        require(out, "out");
        *out = rational_out(Rational::parse(text));
    });
}

monty_status monty_bias_parse(const char* text, monty_rational* out) {
    return guard([&] {
        require(text, "text");
        require(out, "out");
        *out = rational_out(HostBias::parse(text).q());
    });
}

monty_status monty_legal_host_doors(monty_box car, monty_box doors[2], size_t* count) {
    return guard([&] {
        require(doors, "doors");
        require(count, "count");
        auto legal = legal_host_doors(box_in(car));
        for (std::size_t i = 0; i < legal.size(); ++i) doors[i] = box_out(legal[i]);
        *count = legal.size();
    });
}

monty_status monty_host_choose(monty_box car, monty_rational q, double draw, monty_box* out) {
    return guard([&] {
        require(out, "out");
        if (!(draw >= 0.0 && draw < 1.0)) throw Error(ErrorCode::OutOfRange, "draw must lie in [0, 1)");
        *out = box_out(host_choose(box_in(car), bias_in(q), draw));
    });
}

monty_status monty_play(monty_variant variant, monty_box car, monty_rational q, monty_decision decision,
                        double draw, monty_transcript* out) {
    return guard([&] {
        require(out, "out");
        if (!(draw >= 0.0 && draw < 1.0)) throw Error(ErrorCode::OutOfRange, "draw must lie in [0, 1)");
        GameTranscript t = play(variant_in(variant), box_in(car), bias_in(q), decision_in(decision), draw);
        out->variant = variant;
        out->car = box_out(t.car);
        out->bias = rational_out(t.bias.q());
        out->host_opened = box_out(t.host_opened);
        out->decision = decision;
        out->outcome = t.outcome == Outcome::Win ? MONTY_WIN : MONTY_LOSE;
        out->seed_index = t.seed_index;
        out->decided_before_reveal = t.decided_before_reveal ? 1 : 0;
    });
}

monty_status monty_posterior_given_opened(monty_rational q, monty_box opened, monty_posterior* out) {
    return guard([&] {
        require(out, "out");
        *out = posterior_out(posterior_given_opened(bias_in(q), box_in(opened)));
    });
}

monty_status monty_posterior_from_sample_space(monty_rational q, monty_box opened, monty_posterior* out) {
    return guard([&] {
        require(out, "out");
        *out = posterior_out(posterior_from_sample_space(bias_in(q), box_in(opened)));
    });
}

monty_status monty_bayes_ratio(monty_rational q, monty_rational* out, int* infinite) {
    return guard([&] {
        require(out, "out");
        require(infinite, "infinite");
        ExtendedRational r = bayes_ratio(bias_in(q));
        *infinite = r.is_infinite() ? 1 : 0;
        *out = r.is_infinite() ? monty_rational{0, 1} : rational_out(r.value());
    });
}

monty_status monty_enumerate_sample_space(monty_rational q, monty_atom out[4]) {
    return guard([&] {
        require(out, "out");
        auto atoms = enumerate_sample_space(bias_in(q));
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            out[i].car = box_out(atoms[i].car);
            out[i].switch_target = box_out(atoms[i].switch_target);
            out[i].result = atoms[i].result == Outcome::Win ? MONTY_WIN : MONTY_LOSE;
            out[i].probability = rational_out(atoms[i].probability);
        }
    });
}

monty_status monty_game_two_win(monty_decision decision, monty_game2_report* out) {
    return guard([&] {
        require(out, "out");
        GameIIReport r = game_two_win(decision_in(decision));
        out->decision = decision;
        out->p_win_switch = rational_out(r.p_win_switch);
        out->p_win_stay = rational_out(r.p_win_stay);
        for (auto [box, p] : r.per_placement) out->per_placement[box_out(box)] = rational_out(p);
    });
}

monty_status monty_long_run_switch_rate(monty_rational q, monty_rational* out) {
    return guard([&] {
        require(out, "out");
        *out = rational_out(long_run_switch_rate(bias_in(q)));
    });
}

void monty_sim_config_init(monty_sim_config* config) {
    if (!config) return;
    *config = config_out(SimulationConfig{});
    config->batch_size = 0;
}

monty_status monty_simulate(const monty_sim_config* config, monty_simulation** out) {
    return guard([&] {
        require(config, "config");
        require(out, "out");
        *out = new monty_simulation(wrap(run(config_in(*config))));
    });
}

monty_status monty_simulation_summary(const monty_simulation* sim, monty_sim_summary* out) {
    return guard([&] {
        require(sim, "sim");
        require(out, "out");
        const SimulationResult& r = sim->result;
        *out = monty_sim_summary{};
        out->config = config_out(r.config);
        out->wins_total = r.wins_total;
        out->overall = rate_out(r.overall);
        out->exact_rate = rational_out(sim->exact.unconditional);
        out->exact_given_opened[MONTY_BOX_T] = {0, 1};
        out->exact_opened_fraction[MONTY_BOX_T] = {0, 1};
        for (Box door : {Box::L, Box::R}) {
            out->given_opened[box_out(door)] = rate_out(r.conditional.at(door));
            out->exact_given_opened[box_out(door)] = rational_out(sim->exact.given_opened.at(door));
            out->exact_opened_fraction[box_out(door)] = rational_out(sim->exact.opened_fraction.at(door));
        }
        bool agrees = true;
        for (const auto& c : sim->checks) agrees = agrees && c.pass;
        out->agrees_3sigma = agrees ? 1 : 0;
        out->elapsed_seconds = r.elapsed_seconds;
    });
}

size_t monty_simulation_check_count(const monty_simulation* sim) { return sim ? sim->checks.size() : 0; }

monty_status monty_simulation_check(const monty_simulation* sim, size_t index, monty_sigma_check* out) {
    return guard([&] {
        require(sim, "sim");
        require(out, "out");
        if (index >= sim->checks.size()) throw Error(ErrorCode::OutOfRange, "check index out of range");
        const SigmaCheck& c = sim->checks[index];
        out->name = c.name.c_str();
        out->observed = c.observed;
        out->expected = rational_out(c.expected);
        out->n = c.n;
        out->bound = c.bound;
        out->pass = c.pass ? 1 : 0;
    });
}

void monty_simulation_free(monty_simulation* sim) { delete sim; }

monty_status monty_wilson_interval(uint64_t wins, uint64_t games, double* low, double* high) {
    return guard([&] {
        require(low, "low");
        require(high, "high");
        Interval ci = wilson_interval(wins, games);
        *low = ci.low;
        *high = ci.high;
    });
}

monty_status monty_sweep_bias(const monty_rational* grid, size_t count, const monty_sim_config* base,
                              monty_sweep** out) {
    return guard([&] {
        require(base, "base");
        require(out, "out");
        if (count > 0) require(grid, "grid");
        std::vector<HostBias> biases;
        biases.reserve(count);
        for (std::size_t i = 0; i < count; ++i) {
            try {
                biases.push_back(bias_in(grid[i]));
            } catch (const Error& e) {
                throw Error(e.code(), "q=" + std::to_string(grid[i].num) + "/" + std::to_string(grid[i].den) +
                                          ": " + e.what());
            }
        }
        auto rows = sweep_bias(biases, config_in(*base));
        auto sweep = std::make_unique<monty_sweep>();
        sweep->rows.reserve(rows.size());
        for (auto& row : rows) sweep->rows.push_back(wrap(std::move(row.result)));
        *out = sweep.release();
    });
}

size_t monty_sweep_size(const monty_sweep* sweep) { return sweep ? sweep->rows.size() : 0; }

const monty_simulation* monty_sweep_row(const monty_sweep* sweep, size_t index) {
    if (!sweep || index >= sweep->rows.size()) return nullptr;
    return &sweep->rows[index];
}

void monty_sweep_free(monty_sweep* sweep) { delete sweep; }

void monty_server_config_init(monty_server_config* config) {
    if (!config) return;
    *config = monty_server_config{};
    config->bind_address = "127.0.0.1";
    config->port = 8080;
    config->cors_origin = "*";
    config->q_default = {1, 2};
}

monty_status monty_server_create(const monty_server_config* config, monty_server** out) {
    return guard([&] {
        require(config, "config");
        require(out, "out");
        ServerConfig c;
        if (config->bind_address) c.bind_address = config->bind_address;
        if (config->port < 0 || config->port > 65535) throw Error(ErrorCode::OutOfRange, "port out of range");
        c.port = config->port;
        c.cors_origin = config->cors_origin ? config->cors_origin : "*";
        c.sessions.q_default = bias_in(config->q_default).q();
        if (config->transcript_log) c.sessions.transcript_log = config->transcript_log;
        if (config->has_seed) c.sessions.seed = config->seed;
        auto handle = std::make_unique<monty_server>();
        handle->server = std::make_unique<SessionServer>(std::move(c));
        *out = handle.release();
    });
}

monty_status monty_server_bind(monty_server* server, int* port) {
    return guard([&] {
        require(server, "server");
        int p = server->server->bind();
        if (port) *port = p;
    });
}

monty_status monty_server_run(monty_server* server) {
    return guard([&] {
        require(server, "server");
        server->server->run();
    });
}

monty_status monty_server_start(monty_server* server, int* port) {
    return guard([&] {
        require(server, "server");
        int p = server->server->start();
        if (port) *port = p;
    });
}

void monty_server_stop(monty_server* server) {
    if (server) server->server->stop();
}

void monty_server_free(monty_server* server) { delete server; }

} // extern "C"
